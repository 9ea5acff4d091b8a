"""Brute-force minima used to cross-check the solvers.

The searches range over every tree shape the definitions allow: any column
at a working node (constant ones included), any nonempty set of outgoing
labels, empty branches, and for nondeterministic trees any number of edges
per label and at the root.  Nothing here assumes two-way splits or rule
characterizations.  Subtrees are memoized on (rows reaching the node, rows
they must cover, remaining depth) since any two subtrees agreeing on those
are interchangeable; every minimum is reconstructed as a tree and checked
with ``validate`` before it is returned.

Caps default to n <= 3 columns (and <= 8 rows for the nondeterministic
search), depth <= n and nodes <= 2^(n+1); a minimum outside the caps raises
ResourceLimit.
"""
from __future__ import annotations

from typing import Optional

from .errors import ResourceLimit
from .table import DecisionTable
from .tree import DecisionTree, Node, Terminal, Work
from .treeops import DET, NONDET, validate

INF = float("inf")


def _check_caps(table: DecisionTable, max_columns: int, max_rows: Optional[int]) -> None:
    if table.n > max_columns:
        raise ResourceLimit(f"oracle limited to {max_columns} columns, table has {table.n}")
    if max_rows is not None and len(table) > max_rows:
        raise ResourceLimit(f"oracle limited to {max_rows} rows, table has {len(table)}")


def _leaf_decision(table: DecisionTable, mask: int) -> Optional[int]:
    """Decision a terminal may carry on this row-set, or None if no label is sound."""
    if not mask:
        return min(table.decision_masks)
    return table.decision_of(mask)


class _DetSearch:
    def __init__(self, table: DecisionTable):
        self.table = table
        self.memo: dict = {}

    def best(self, mask: int, depth: int):
        key = (mask, depth)
        if key in self.memo:
            return self.memo[key][0]
        t = self.table
        if _leaf_decision(t, mask) is not None:
            self.memo[key] = (1, None)
            return 1
        best, choice = INF, None
        if depth > 0:
            for c in range(t.n):
                for labels in ((0,), (1,), (0, 1)):
                    if any(mask & t.column_masks[c][v] for v in (0, 1) if v not in labels):
                        continue
                    v = 1 + sum(self.best(mask & t.column_masks[c][lab], depth - 1) for lab in labels)
                    if v < best:
                        best, choice = v, (c, labels)
        self.memo[key] = (best, choice)
        return best

    def build(self, mask: int, depth: int) -> Node:
        choice = self.memo[(mask, depth)][1]
        if choice is None:
            return Terminal(_leaf_decision(self.table, mask))
        c, labels = choice
        return Work(c, tuple((lab, self.build(mask & self.table.column_masks[c][lab], depth - 1)) for lab in labels))


class _NondetSearch:
    def __init__(self, table: DecisionTable):
        self.table = table
        self.memo: dict = {}
        self.multi_memo: dict = {}

    def best(self, mask: int, cover: int, depth: int):
        """Fewest nodes of a sound subtree entered by ``mask`` whose paths cover ``cover``."""
        key = (mask, cover, depth)
        if key in self.memo:
            return self.memo[key][0]
        t = self.table
        if _leaf_decision(t, mask) is not None:
            self.memo[key] = (1, None)
            return 1
        best, choice = INF, None
        if depth > 0:
            for c in range(t.n):
                m0, m1 = mask & t.column_masks[c][0], mask & t.column_masks[c][1]
                c0, c1 = cover & m0, cover & m1
                v = 1 + self.multi(m0, c0, depth - 1) + self.multi(m1, c1, depth - 1)
                if not c0 and not c1:
                    # at least one edge has to leave the node
                    alt = [(1 + self.best(m, 0, depth - 1), lab) for lab, m in ((0, m0), (1, m1))]
                    v, lab = min(alt)
                    if v < best:
                        best, choice = v, (c, "one", lab)
                elif v < best:
                    best, choice = v, (c, "multi")
        self.memo[key] = (best, choice)
        return best

    def multi(self, mask: int, cover: int, depth: int):
        """Fewest nodes of zero or more sibling subtrees on ``mask`` jointly covering ``cover``."""
        if not cover:
            return 0
        key = (mask, cover, depth)
        if key in self.multi_memo:
            return self.multi_memo[key][0]
        low = cover & -cover
        rest = cover & ~low
        best, pick = INF, None
        sub = rest
        while True:
            part = sub | low
            v = self.best(mask, part, depth) + self.multi(mask, cover & ~part, depth)
            if v < best:
                best, pick = v, part
            if not sub:
                break
            sub = (sub - 1) & rest
        self.multi_memo[key] = (best, pick)
        return best

    def build(self, mask: int, cover: int, depth: int) -> Node:
        choice = self.memo[(mask, cover, depth)][1]
        t = self.table
        if choice is None:
            return Terminal(_leaf_decision(t, mask))
        c = choice[0]
        if choice[1] == "one":
            lab = choice[2]
            return Work(c, ((lab, self.build(mask & t.column_masks[c][lab], 0, depth - 1)),))
        edges = []
        for lab in (0, 1):
            m = mask & t.column_masks[c][lab]
            edges += [(lab, node) for node in self.build_multi(m, cover & m, depth - 1)]
        return Work(c, tuple(edges))

    def build_multi(self, mask: int, cover: int, depth: int) -> list[Node]:
        out = []
        while cover:
            part = self.multi_memo[(mask, cover, depth)][1]
            out.append(self.build(mask, part, depth))
            cover &= ~part
        return out

    def root(self, depth: int):
        full = self.table.full_mask
        return 1 + self.multi(full, full, depth)

    def root_tree(self, depth: int) -> DecisionTree:
        full = self.table.full_mask
        return DecisionTree(self.build_multi(full, full, depth))


def _checked(tree: DecisionTree, table: DecisionTable, mode: str) -> DecisionTree:
    report = validate(tree, table, mode)
    if not report.ok:
        raise AssertionError(f"oracle produced an invalid tree: {report.violations[:3]}")
    return tree


def det_min_nodes(table: DecisionTable, max_depth: int) -> tuple[Optional[int], Optional[DecisionTree]]:
    search = _DetSearch(table)
    cost = search.best(table.full_mask, max_depth)
    if cost == INF:
        return None, None
    tree = DecisionTree.single(search.build(table.full_mask, max_depth))
    return 1 + cost, _checked(tree, table, DET)


def nondet_min_nodes(table: DecisionTable, max_depth: int) -> tuple[Optional[int], Optional[DecisionTree]]:
    """Fewest nodes of a nondeterministic solving tree of depth <= max_depth, with a witness."""
    search = _NondetSearch(table)
    cost = search.root(max_depth)
    if cost == INF:
        return None, None
    return cost, _checked(search.root_tree(max_depth), table, NONDET)


def exhaustive_det_oracle(table: DecisionTable, max_nodes: Optional[int] = None, max_depth: Optional[int] = None,
                          max_columns: int = 3) -> tuple[int, int]:
    """(minimum depth, minimum node count) over all deterministic solving trees within the caps."""
    _check_caps(table, max_columns, None)
    max_depth = table.n if max_depth is None else max_depth
    max_nodes = 2 ** (table.n + 1) if max_nodes is None else max_nodes
    search = _DetSearch(table)
    depth = next((d for d in range(max_depth + 1) if search.best(table.full_mask, d) < INF), None)
    if depth is None:
        raise ResourceLimit(f"no deterministic solving tree of depth <= {max_depth}")
    nodes, _ = det_min_nodes(table, max_depth)
    if nodes > max_nodes:
        raise ResourceLimit(f"minimum node count exceeds the cap {max_nodes}")
    return depth, nodes


def exhaustive_nondet_oracle(table: DecisionTable, max_nodes: Optional[int] = None, max_depth: Optional[int] = None,
                             max_columns: int = 3, max_rows: int = 8) -> tuple[int, int]:
    """(minimum depth, minimum node count) over all nondeterministic solving trees within the caps."""
    _check_caps(table, max_columns, max_rows)
    max_depth = table.n if max_depth is None else max_depth
    max_nodes = 2 ** (table.n + 1) if max_nodes is None else max_nodes
    search = _NondetSearch(table)
    depth = next((d for d in range(max_depth + 1) if search.root(d) < INF), None)
    if depth is None:
        raise ResourceLimit(f"no nondeterministic solving tree of depth <= {max_depth}")
    nodes, _ = nondet_min_nodes(table, max_depth)
    if nodes > max_nodes:
        raise ResourceLimit(f"minimum node count exceeds the cap {max_nodes}")
    return depth, nodes
