"""Exact minimum-depth and minimum-node decision trees.

Deterministic optimizers are dynamic programs over row-sets: the rows that
reach a node determine everything below it.  Only columns that split the
current row-set are tried, and only with both branches, because a working
node on a constant column or with a single edge can always be spliced out.
Ties go to the lowest column index.
"""
from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Optional

from . import oracles
from .analysis import min_consistent_rule, min_same_solution_subsystem, reduction_parameter, row_rule
from .errors import ResourceLimit
from .table import DecisionTable
from .tree import DecisionTree, Node, Terminal, Work

EXACT = "exact"
UPPER_BOUND = "upper_bound"
INFEASIBLE = "infeasible"

DEFAULT_MEMO_LIMIT = 1 << 24
INF = float("inf")


@dataclass
class SolveResult:
    objective: Optional[int]
    tree: Optional[DecisionTree]
    optimality: str
    stats: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "objective": self.objective,
            "optimality": self.optimality,
            "tree": self.tree.to_dict() if self.tree is not None else None,
            "stats": self.stats,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_dict())


class _Memo(dict):
    def __init__(self, limit: int):
        super().__init__()
        self.limit = limit

    def __setitem__(self, key, value):
        if len(self) >= self.limit:
            raise ResourceLimit(f"memo table exceeded {self.limit} entries")
        super().__setitem__(key, value)


def _split_columns(table: DecisionTable, mask: int) -> list[int]:
    """Columns splitting the row-set, dropping later columns that induce the same partition."""
    seen, out = set(), []
    for c in range(table.n):
        if table.is_split(mask, c):
            part = mask & table.column_masks[c][0]
            if part not in seen:
                seen.add(part)
                out.append(c)
    return out


def _distinct_decisions(table: DecisionTable, mask: int) -> int:
    return sum(1 for m in table.decision_masks.values() if m & mask)


def _stats(memo, start) -> dict:
    return {"subproblems": len(memo), "ms": round((time.perf_counter() - start) * 1000, 3)}


def _build(table: DecisionTable, memo, key_of, mask: int, *extra) -> Node:
    d = table.decision_of(mask)
    choice = memo[key_of(mask, *extra)][1]
    if choice is None:
        return Terminal(d)
    nxt = tuple(e - 1 for e in extra)
    return Work(choice, (
        (0, _build(table, memo, key_of, table.restrict(mask, choice, 0), *nxt)),
        (1, _build(table, memo, key_of, table.restrict(mask, choice, 1), *nxt)),
    ))


def min_depth_det(table: DecisionTable, memo_limit: int = DEFAULT_MEMO_LIMIT) -> SolveResult:
    start = time.perf_counter()
    memo = _Memo(memo_limit)

    def depth(mask: int) -> int:
        hit = memo.get(mask)
        if hit is not None:
            return hit[0]
        if table.decision_of(mask) is not None:
            memo[mask] = (0, None)
            return 0
        best, col = INF, None
        for c in _split_columns(table, mask):
            v = 1 + max(depth(mask & table.column_masks[c][0]), depth(mask & table.column_masks[c][1]))
            if v < best:
                best, col = v, c
                if best == 1:
                    break
        memo[mask] = (best, col)
        return best

    h = depth(table.full_mask)
    tree = DecisionTree.single(_build(table, memo, lambda m: m, table.full_mask))
    return SolveResult(h, tree, EXACT, _stats(memo, start))


def min_nodes_det(table: DecisionTable, memo_limit: int = DEFAULT_MEMO_LIMIT) -> SolveResult:
    start = time.perf_counter()
    memo = _Memo(memo_limit)

    def cost(mask: int) -> int:
        hit = memo.get(mask)
        if hit is not None:
            return hit[0]
        if table.decision_of(mask) is not None:
            memo[mask] = (1, None)
            return 1
        floor = 2 * _distinct_decisions(table, mask) - 1
        best, col = INF, None
        for c in _split_columns(table, mask):
            v = 1 + cost(mask & table.column_masks[c][0]) + cost(mask & table.column_masks[c][1])
            if v < best:
                best, col = v, c
                if best == floor:
                    break
        memo[mask] = (best, col)
        return best

    total = 1 + cost(table.full_mask)
    tree = DecisionTree.single(_build(table, memo, lambda m: m, table.full_mask))
    return SolveResult(total, tree, EXACT, _stats(memo, start))


def min_nodes_det_budgeted(table: DecisionTable, depth_budget: int,
                           memo_limit: int = DEFAULT_MEMO_LIMIT) -> SolveResult:
    """Fewest nodes among deterministic solving trees of depth at most ``depth_budget``."""
    if depth_budget < 0:
        raise ValueError("depth budget must be non-negative")
    start = time.perf_counter()
    memo = _Memo(memo_limit)
    budget_cap = min(depth_budget, table.n)

    def cost(mask: int, budget: int):
        key = (mask, budget)
        hit = memo.get(key)
        if hit is not None:
            return hit[0]
        if table.decision_of(mask) is not None:
            memo[key] = (1, None)
            return 1
        if budget == 0:
            memo[key] = (INF, None)
            return INF
        floor = 2 * _distinct_decisions(table, mask) - 1
        best, col = INF, None
        for c in _split_columns(table, mask):
            v = 1 + cost(mask & table.column_masks[c][0], budget - 1) + cost(mask & table.column_masks[c][1], budget - 1)
            if v < best:
                best, col = v, c
                if best == floor:
                    break
        memo[key] = (best, col)
        return best

    total = cost(table.full_mask, budget_cap)
    if total == INF:
        return SolveResult(None, None, INFEASIBLE, _stats(memo, start))
    node = _build(table, memo, lambda m, b: (m, b), table.full_mask, budget_cap)
    return SolveResult(1 + total, DecisionTree.single(node), EXACT, _stats(memo, start))


def chain(constraints, decision: int) -> Node:
    """A single path testing the constraints in the given order."""
    node: Node = Terminal(decision)
    for attr, label in reversed(list(constraints)):
        node = Work(attr, ((label, node),))
    return node


def rule_tree(paths) -> DecisionTree:
    """Merge (constraints, decision) paths at a shared root; identical paths collapse."""
    unique = sorted({(tuple(sorted(cons)), d) for cons, d in paths})
    return DecisionTree(chain(cons, d) for cons, d in unique)


def min_depth_nondet(table: DecisionTable) -> SolveResult:
    """Minimum nondeterministic depth: the longest of the rows' shortest consistent rules.

    A covering path of a solving tree is a consistent rule for the rows it
    covers, and per-row rules merged at the root give a solving tree, so the
    two minima coincide.
    """
    start = time.perf_counter()
    rules = [min_consistent_rule(table, i) for i in range(len(table))]
    tree = rule_tree((r.constraints, table.rows[i][1]) for i, r in enumerate(rules))
    h = max(len(r) for r in rules)
    return SolveResult(h, tree, EXACT, {"subproblems": len(rules), "ms": round((time.perf_counter() - start) * 1000, 3)})


def build_reduction_tree(table: DecisionTable) -> SolveResult:
    """One path per row through a minimal same-solution subsystem of its full assignment.

    A constant-decision table gets the bare root-to-terminal tree instead.
    The objective is the node count; depth and the measured reduction
    parameter are in the stats.
    """
    start = time.perf_counter()
    if table.is_constant:
        tree = DecisionTree.single(Terminal(table.rows[0][1]))
        m_hat = reduction_parameter(table)
    else:
        subs = [min_same_solution_subsystem(table, row_rule(table, i)) for i in range(len(table))]
        tree = rule_tree((s.constraints, table.rows[i][1]) for i, s in enumerate(subs))
        m_hat = max(len(s) for s in subs)
    met = tree.metrics()
    stats = {"subproblems": len(table), "ms": round((time.perf_counter() - start) * 1000, 3),
             "h": met.h, "m_hat": m_hat, "bound_L": (m_hat + 1) * len(table) + 1}
    return SolveResult(met.L, tree, UPPER_BOUND, stats)


def min_nodes_nondet(table: DecisionTable, memo_limit: int = DEFAULT_MEMO_LIMIT,
                     oracle_columns: int = 3, oracle_rows: int = 8) -> SolveResult:
    """Minimum node count of a nondeterministic solving tree, with its optimality grade.

    Injective tables: every row needs its own terminal and a minimum tree
    has at least as many working nodes as terminals minus one, so 2 * rows is
    a lower bound that the deterministic optimum attains.  Small tables go to
    the exhaustive search.  Otherwise the deterministic optimum is reported
    as an upper bound next to the lower bound 2 * (distinct decisions), and
    graded exact only when the two meet.
    """
    start = time.perf_counter()
    det = min_nodes_det(table, memo_limit)
    lower = 2 * len(table.decision_masks)
    if table.is_injective:
        if det.objective != lower:
            raise AssertionError(f"deterministic optimum {det.objective} misses the injective bound {lower}")
        det.stats.update(lower_bound=lower, ms=round((time.perf_counter() - start) * 1000, 3))
        return SolveResult(det.objective, det.tree, EXACT, det.stats)
    if table.n <= oracle_columns and len(table) <= oracle_rows:
        nodes, tree = oracles.nondet_min_nodes(table, max_depth=table.n)
        return SolveResult(nodes, tree, EXACT, {"subproblems": 0, "ms": round((time.perf_counter() - start) * 1000, 3),
                                                "lower_bound": lower})
    grade = EXACT if det.objective == lower else UPPER_BOUND
    det.stats.update(lower_bound=lower, ms=round((time.perf_counter() - start) * 1000, 3))
    return SolveResult(det.objective, det.tree, grade, det.stats)
