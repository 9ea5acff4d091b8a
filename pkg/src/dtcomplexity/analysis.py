"""Structural parameters of a decision table.

Reduction parameters measured here bound the parameter of any infinite
system the table is a restriction of only from below; reports say so with an
"at scale n" qualifier.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Iterable, Optional

from .cover import DEFAULT_MAX_SETS, min_cover
from .errors import IncompatibleSystem, ResourceLimit
from .table import DecisionTable

FULL_ROWS = "full_rows"
ALL_PARTIAL = "all_partial"

# ceiling on 3**n * rows for the all-partial reduction sweep
ALL_PARTIAL_LIMIT = 2_000_000


@dataclass(frozen=True)
class Rule:
    constraints: tuple[tuple[int, int], ...]
    matched: frozenset[int]

    def __len__(self) -> int:
        return len(self.constraints)

    @property
    def columns(self) -> tuple[int, ...]:
        return tuple(c for c, _ in self.constraints)


def make_rule(table: DecisionTable, constraints: Iterable[tuple[int, int]]) -> Rule:
    cons = tuple(sorted(set(constraints)))
    cols = [c for c, _ in cons]
    if len(cols) != len(set(cols)):
        raise ValueError("a rule may constrain each column at most once")
    mask = table.select(cons)
    return Rule(cons, frozenset(i for i in range(len(table)) if mask >> i & 1))


def row_rule(table: DecisionTable, row: int) -> Rule:
    """The full assignment of a row, as a rule over every column."""
    return make_rule(table, enumerate(table.rows[row][0]))


@dataclass(frozen=True)
class AnalysisReport:
    N: int
    idim: int
    reduction_full_rows: int
    reduction_all: Optional[int]
    prop6_ok: bool

    def to_dict(self) -> dict:
        return {
            "N": self.N,
            "idim": self.idim,
            "reduction_full_rows": self.reduction_full_rows,
            "reduction_all": self.reduction_all,
            "prop6_ok": self.prop6_ok,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_dict())


def count_realizable(table: DecisionTable) -> int:
    return len(table)


def is_shattered(table: DecisionTable, columns: tuple[int, ...]) -> bool:
    return len({tuple(t[c] for c in columns) for t in table.tuples}) == 1 << len(columns)


def independence_dimension(table: DecisionTable) -> int:
    """Size of the largest column set on which the rows realize every 0/1 pattern."""
    top = min(table.n, len(table).bit_length() - 1)
    for m in range(top, 0, -1):
        if any(is_shattered(table, cols) for cols in itertools.combinations(range(table.n), m)):
            return m
    return 0


def min_consistent_rule(table: DecisionTable, row: int, max_sets: int = DEFAULT_MAX_SETS) -> Rule:
    """Shortest part of a row's assignment whose matched rows all share the row's decision.

    Every row with a different decision has to disagree with some kept
    constraint, which makes this a set cover; ties go to the
    lexicographically smallest column set.
    """
    t, d = table.rows[row]
    target = table.full_mask & ~table.decision_masks[d]
    sets = [table.column_masks[c][1 - t[c]] for c in range(table.n)]
    cols = min_cover(target, sets, max_sets=max_sets)
    return make_rule(table, ((c, t[c]) for c in cols))


def min_same_solution_subsystem(table: DecisionTable, assignment: Rule, max_sets: int = DEFAULT_MAX_SETS) -> Rule:
    """Fewest constraints of ``assignment`` selecting exactly the same rows."""
    if not assignment.matched:
        raise IncompatibleSystem("the system has no solution among the table rows")
    matched = 0
    for i in assignment.matched:
        matched |= 1 << i
    target = table.full_mask & ~matched
    cons = assignment.constraints
    sets = [table.column_masks[c][1 - v] for c, v in cons]
    picked = min_cover(target, sets, max_sets=max_sets)
    return make_rule(table, (cons[j] for j in picked))


def reduction_parameter(table: DecisionTable, scope: str = FULL_ROWS) -> int:
    """Largest minimal same-solution subsystem over full rows or all compatible partial systems."""
    if scope == FULL_ROWS:
        return max(len(min_same_solution_subsystem(table, row_rule(table, i))) for i in range(len(table)))
    if scope != ALL_PARTIAL:
        raise ValueError(f"unknown scope {scope!r}")
    if 3 ** table.n * len(table) > ALL_PARTIAL_LIMIT:
        raise ResourceLimit(f"all-partial sweep over 3^{table.n} systems is beyond the limit")
    best = 0
    for pattern in itertools.product((None, 0, 1), repeat=table.n):
        cons = [(c, v) for c, v in enumerate(pattern) if v is not None]
        rule = make_rule(table, cons)
        if rule.matched:
            best = max(best, len(min_same_solution_subsystem(table, rule)))
    return best


def check_prop6(table: DecisionTable, worst_selection: bool = False,
                N: Optional[int] = None, idim: Optional[int] = None) -> bool:
    """Realizable-count bounds from the independence dimension.

    N <= (4n)^idim whenever idim < n; a shattered full column set means the
    whole cube is realized.  The lower bound n + 1 <= N only holds for worst
    selections, so it is checked only when ``worst_selection`` is set.
    """
    n = table.n
    N = count_realizable(table) if N is None else N
    idim = independence_dimension(table) if idim is None else idim
    ok = N == 2 ** n if idim == n else N <= (4 * n) ** idim
    if worst_selection:
        ok = ok and n + 1 <= N
    return ok


def analyze(table: DecisionTable, reduction: str = "rows") -> AnalysisReport:
    N = count_realizable(table)
    idim = independence_dimension(table)
    red_rows = reduction_parameter(table, FULL_ROWS)
    red_all = reduction_parameter(table, ALL_PARTIAL) if reduction == "all" else None
    return AnalysisReport(N, idim, red_rows, red_all, check_prop6(table, N=N, idim=idim))
