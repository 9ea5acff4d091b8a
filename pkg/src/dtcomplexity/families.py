"""Parametric attribute families and the tables they generate.

Built-in kinds:

``U1-threshold``
    l_i(j) = 1 iff j > i over the universe {1, ..., B}.
``U2-point``
    p_i(j) = 1 iff j == i over the universe {1, ..., B}.
``U3-full``
    every tuple is realizable; attribute i reads bit i-1 of the object, so
    any set of distinct attributes is independent.
``half-plane``
    two attributes per line a*x + b*y + c = 0 over a finite point set; the
    first is 1 on the closed side where the expression is >= 0, the second
    on the closed side where it is <= 0.  Coordinates are exact rationals.
``feature-threshold``
    attributes s(f_i + c) over a finite set of feature vectors, where
    s(x) = 1 iff x >= 0.
``custom``
    an explicit object-by-attribute 0/1 matrix.

Attribute ids are 1-based throughout.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Mapping, Optional, Sequence

from .errors import TableError, UnknownAttribute, UniverseTooSmall, Unsupported
from .table import DecisionTable, make_table

U1 = "U1-threshold"
U2 = "U2-point"
U3 = "U3-full"
HALF_PLANE = "half-plane"
FEATURE = "feature-threshold"
CUSTOM = "custom"

KINDS = (U1, U2, U3, HALF_PLANE, FEATURE, CUSTOM)
INFINITE_KINDS = (U1, U2, U3)

# exhaustive worst-selection search is used while C(attrs, n) stays below this
SELECTION_SEARCH_LIMIT = 20000


@dataclass(frozen=True)
class AttributeFamily:
    kind: str
    params: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise Unsupported(f"unknown family kind {self.kind!r}")

    @property
    def is_finite(self) -> bool:
        return self.kind not in INFINITE_KINDS

    def attribute_ids(self) -> list[int]:
        """All attribute ids of a finite family."""
        if not self.is_finite:
            raise Unsupported(f"{self.kind} has infinitely many attributes")
        if self.kind == HALF_PLANE:
            return list(range(1, 2 * len(self.params["lines"]) + 1))
        if self.kind == FEATURE:
            return list(range(1, len(self.params["thresholds"]) + 1))
        matrix = self.params["matrix"]
        return list(range(1, len(matrix[0]) + 1)) if matrix else []

    def universe(self, attr_indices: Sequence[int]) -> Sequence:
        top = max(attr_indices)
        if self.kind in (U1, U2):
            bound = self.params.get("bound")
            if bound is None:
                bound = top + 1
            if bound <= top:
                raise UniverseTooSmall(f"bound {bound} must exceed the largest attribute index {top}")
            return range(1, bound + 1)
        if self.kind == U3:
            return range(1 << top)
        if self.kind == HALF_PLANE:
            return self.params["points"]
        if self.kind == FEATURE:
            return self.params["values"]
        return range(len(self.params["matrix"]))

    def evaluate(self, attr: int, obj) -> int:
        if self.kind == U1:
            return int(obj > attr)
        if self.kind == U2:
            return int(obj == attr)
        if self.kind == U3:
            return (obj >> (attr - 1)) & 1
        if self.kind == HALF_PLANE:
            a, b, c = self.params["lines"][(attr - 1) // 2]
            x, y = obj
            expr = a * x + b * y + c
            return int(expr >= 0) if attr % 2 == 1 else int(expr <= 0)
        if self.kind == FEATURE:
            feature, offset = self.params["thresholds"][attr - 1]
            return int(obj[feature] + offset >= 0)
        return int(self.params["matrix"][obj][attr - 1])

    def check_indices(self, attr_indices: Sequence[int]) -> None:
        if not attr_indices:
            raise UnknownAttribute("at least one attribute is required")
        for i in attr_indices:
            if not isinstance(i, int) or i < 1:
                raise UnknownAttribute(f"attribute id {i!r} is not a positive integer")
        if self.is_finite:
            top = len(self.attribute_ids())
            bad = [i for i in attr_indices if i > top]
            if bad:
                raise UnknownAttribute(f"attribute ids {bad} exceed the family's {top} attributes")

    def label(self) -> str:
        return {U1: "u1", U2: "u2", U3: "u3", HALF_PLANE: "halfplane", FEATURE: "feature"}.get(self.kind, "custom")


def u1(bound: Optional[int] = None) -> AttributeFamily:
    return AttributeFamily(U1, {"bound": bound})


def u2(bound: Optional[int] = None) -> AttributeFamily:
    return AttributeFamily(U2, {"bound": bound})


def u3() -> AttributeFamily:
    return AttributeFamily(U3, {})


def half_plane(points, lines) -> AttributeFamily:
    pts = tuple((Fraction(x), Fraction(y)) for x, y in points)
    lns = []
    for a, b, c in lines:
        if a == 0 and b == 0:
            raise TableError("a line needs a nonzero normal vector")
        lns.append((Fraction(a), Fraction(b), Fraction(c)))
    return AttributeFamily(HALF_PLANE, {"points": pts, "lines": tuple(lns)})


def feature_threshold(values, thresholds) -> AttributeFamily:
    vals = tuple(tuple(Fraction(v) for v in row) for row in values)
    ths = tuple((int(i), Fraction(c)) for i, c in thresholds)
    return AttributeFamily(FEATURE, {"values": vals, "thresholds": ths})


def custom(matrix) -> AttributeFamily:
    return AttributeFamily(CUSTOM, {"matrix": tuple(tuple(int(v) for v in row) for row in matrix)})


def default_half_plane(bound: int = 4) -> AttributeFamily:
    """Three pencils of parallel lines over a half-integer grid.

    Lines x = k, y = k and x + y = k for k = 1..bound-1; points (i/2, j/2) for
    0 <= i, j <= 2*bound, so some points sit exactly on lines.
    """
    lines = []
    for k in range(1, bound):
        lines += [(1, 0, -k), (0, 1, -k), (1, 1, -k)]
    points = [(Fraction(i, 2), Fraction(j, 2)) for i in range(2 * bound + 1) for j in range(2 * bound + 1)]
    return half_plane(points, lines)


def default_feature(bound: int = 5) -> AttributeFamily:
    """Two integer features over {0..bound-1}^2 with thresholds x_i >= c."""
    values = [(x, y) for x in range(bound) for y in range(bound)]
    thresholds = [(i, -c) for i in (0, 1) for c in range(1, bound)]
    return feature_threshold(values, thresholds)


@dataclass(frozen=True)
class Labeling:
    mode: str = "injective"
    mapping: Optional[Mapping[tuple[int, ...], int]] = None

    def __post_init__(self):
        if self.mode not in ("injective", "constant", "explicit"):
            raise ValueError(f"unknown labeling mode {self.mode!r}")
        if self.mode == "explicit" and self.mapping is None:
            raise ValueError("explicit labeling needs a mapping")

    def assign(self, tuples: Sequence[tuple[int, ...]]) -> list[int]:
        if self.mode == "injective":
            return list(range(1, len(tuples) + 1))
        if self.mode == "constant":
            return [1] * len(tuples)
        try:
            return [self.mapping[t] for t in tuples]
        except KeyError as exc:
            raise TableError(f"labeling has no decision for tuple {exc.args[0]}") from None


INJECTIVE = Labeling("injective")
CONSTANT = Labeling("constant")


def realizable_tuples(family: AttributeFamily, attr_indices: Sequence[int]) -> list[tuple[int, ...]]:
    family.check_indices(attr_indices)
    seen = {tuple(family.evaluate(i, a) for i in attr_indices) for a in family.universe(attr_indices)}
    return sorted(seen)


def generate(family: AttributeFamily, attr_indices: Sequence[int], labeling: Labeling = INJECTIVE) -> DecisionTable:
    """Table of all tuples realized over the family's universe, in lexicographic order."""
    attr_indices = list(attr_indices)
    tuples = realizable_tuples(family, attr_indices)
    name = f"{family.label()}({','.join(map(str, attr_indices))})"
    return make_table(len(attr_indices), zip(tuples, labeling.assign(tuples)), name=name)


def canonical_worst_selection(family: AttributeFamily, n: int, search_limit: int = SELECTION_SEARCH_LIMIT) -> list[int]:
    """Attribute ids whose table has the most realizable tuples among n-selections.

    For U1, U2 and U3 this is (1, ..., n).  Finite families are searched over
    distinct attributes: exhaustively (lexicographically first maximum) when
    the number of n-subsets is at most ``search_limit``, otherwise greedily,
    adding the attribute that most increases the count (lowest id on ties).
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if family.kind in INFINITE_KINDS:
        return list(range(1, n + 1))
    if family.kind == CUSTOM:
        raise Unsupported("worst selections are not defined for custom families")
    ids = family.attribute_ids()
    if n > len(ids):
        raise Unsupported(f"family has only {len(ids)} attributes, {n} requested")
    if math.comb(len(ids), n) <= search_limit:
        best, best_count = None, -1
        for combo in itertools.combinations(ids, n):
            count = len(realizable_tuples(family, combo))
            if count > best_count:
                best, best_count = list(combo), count
        return best
    chosen: list[int] = []
    for _ in range(n):
        rest = [i for i in ids if i not in chosen]
        pick = max(rest, key=lambda i: (len(realizable_tuples(family, chosen + [i])), -i))
        chosen.append(pick)
    return sorted(chosen)


def worst_table(family: AttributeFamily, n: int) -> DecisionTable:
    return generate(family, canonical_worst_selection(family, n), INJECTIVE)


def from_name(name: str, bound: Optional[int] = None) -> AttributeFamily:
    """Built-in family from its short command-line name."""
    name = name.lower()
    if name == "u1":
        return u1(bound)
    if name == "u2":
        return u2(bound)
    if name == "u3":
        return u3()
    if name == "halfplane":
        return default_half_plane(bound or 4)
    if name == "feature":
        return default_feature(bound or 5)
    raise Unsupported(f"unknown family {name!r}")
