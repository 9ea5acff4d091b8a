"""Finite decision tables: the realizable tuples of a problem plus its decisions.

Row-sets are handled everywhere as Python ``int`` bitmasks (bit ``i`` set means
row ``i`` is present); they are cheap to intersect and hashable, which makes
them suitable as memo keys.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence

from .errors import BadDecision, BadDimension, DuplicateTuple, EmptyTable, TableError

FORMAT = "dtable-v1"

Row = tuple[tuple[int, ...], int]


@dataclass(frozen=True)
class DecisionTable:
    n: int
    rows: tuple[Row, ...]
    name: Optional[str] = None

    def __post_init__(self):
        _check(self.n, self.rows)

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def tuples(self) -> list[tuple[int, ...]]:
        return [t for t, _ in self.rows]

    @property
    def decisions(self) -> list[int]:
        return [d for _, d in self.rows]

    @cached_property
    def full_mask(self) -> int:
        return (1 << len(self.rows)) - 1

    @cached_property
    def column_masks(self) -> tuple[tuple[int, int], ...]:
        """``column_masks[c][v]`` is the row-set where column ``c`` equals ``v``."""
        out = []
        for c in range(self.n):
            ones = 0
            for i, (t, _) in enumerate(self.rows):
                if t[c]:
                    ones |= 1 << i
            out.append((self.full_mask & ~ones, ones))
        return tuple(out)

    @cached_property
    def decision_masks(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for i, (_, d) in enumerate(self.rows):
            out[d] = out.get(d, 0) | (1 << i)
        return out

    @property
    def is_injective(self) -> bool:
        return len(self.decision_masks) == len(self.rows)

    @property
    def is_constant(self) -> bool:
        return len(self.decision_masks) == 1

    def decision_of(self, mask: int) -> Optional[int]:
        """The common decision of a nonempty row-set, or None if it is mixed."""
        if not mask:
            return None
        d = self.rows[(mask & -mask).bit_length() - 1][1]
        return d if mask & ~self.decision_masks[d] == 0 else None

    def restrict(self, mask: int, column: int, value: int) -> int:
        return mask & self.column_masks[column][value]

    def is_split(self, mask: int, column: int) -> bool:
        """True when ``column`` takes both values on the row-set."""
        m0, m1 = self.column_masks[column]
        return bool(mask & m0) and bool(mask & m1)

    def select(self, constraints: Iterable[tuple[int, int]]) -> int:
        mask = self.full_mask
        for c, v in constraints:
            mask &= self.column_masks[c][v]
        return mask

    def canonical(self) -> "DecisionTable":
        """Copy with rows in lexicographic tuple order."""
        return DecisionTable(self.n, tuple(sorted(self.rows)), self.name)

    def relabel(self, decisions: Sequence[int]) -> "DecisionTable":
        return DecisionTable(self.n, tuple((t, d) for (t, _), d in zip(self.rows, decisions)), self.name)

    def to_dict(self) -> dict:
        rows = sorted(self.rows)
        return {
            "format": FORMAT,
            "n": self.n,
            "rows": [{"t": "".join(map(str, t)), "d": d} for t, d in rows],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_dict())


def _check(n, rows) -> None:
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise BadDimension(f"attribute count must be a positive integer, got {n!r}")
    if not rows:
        raise EmptyTable("a decision table needs at least one row")
    seen = set()
    for t, d in rows:
        if len(t) != n:
            raise BadDimension(f"tuple {t!r} has length {len(t)}, expected {n}")
        if any(v not in (0, 1) for v in t):
            raise TableError(f"tuple {t!r} is not a 0/1 vector")
        if t in seen:
            raise DuplicateTuple(f"tuple {''.join(map(str, t))} occurs twice")
        seen.add(t)
        if not isinstance(d, int) or isinstance(d, bool) or d < 1:
            raise BadDecision(f"decision {d!r} is not a positive integer")


def make_table(n: int, rows: Iterable[tuple[Sequence[int], int]], name: Optional[str] = None) -> DecisionTable:
    """Build a table; rows keep the order given."""
    return DecisionTable(n, tuple((tuple(int(v) for v in t), d) for t, d in rows), name)


def parse_bits(s: str) -> tuple[int, ...]:
    if not isinstance(s, str) or any(ch not in "01" for ch in s):
        raise TableError(f"bad tuple string {s!r}")
    return tuple(int(ch) for ch in s)


def from_dict(doc: dict) -> DecisionTable:
    if not isinstance(doc, dict) or doc.get("format") != FORMAT:
        raise TableError(f"not a {FORMAT} document")
    try:
        n = doc["n"]
        rows = [(parse_bits(r["t"]), r["d"]) for r in doc["rows"]]
    except (KeyError, TypeError) as exc:
        raise TableError(f"malformed {FORMAT} document: {exc}") from exc
    return make_table(n, rows).canonical()


def loads(text: str) -> DecisionTable:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise TableError(f"invalid JSON: {exc}") from exc
    return from_dict(doc)


def read_table(path) -> DecisionTable:
    with open(path) as fh:
        return loads(fh.read())


def write_table(table: DecisionTable, path) -> None:
    with open(path, "w") as fh:
        fh.write(table.dumps() + "\n")
