"""Random generators and tiny brute-force enumerators shared by the tests."""
from __future__ import annotations

import itertools
import random
from functools import lru_cache

from dtcomplexity.families import generate, u1, u2, u3
from dtcomplexity.table import DecisionTable, make_table
from dtcomplexity.tree import DecisionTree, Terminal, Work


def T1(n):
    return generate(u1(), range(1, n + 1))


def T2(n):
    return generate(u2(), range(1, n + 1))


def T3(n):
    return generate(u3(), range(1, n + 1))


def random_table(rng: random.Random, n: int, injective: bool = False, max_decisions: int = 3) -> DecisionTable:
    cube = list(itertools.product((0, 1), repeat=n))
    k = rng.randint(1, len(cube))
    tuples = sorted(rng.sample(cube, k))
    if injective:
        decisions = list(range(1, k + 1))
        rng.shuffle(decisions)
    else:
        decisions = [rng.randint(1, max_decisions) for _ in tuples]
    return make_table(n, zip(tuples, decisions))


def random_solving_det_tree(rng: random.Random, table: DecisionTable, stop: float = 0.5) -> DecisionTree:
    """A deterministic tree solving the table, with wasted tests and dead branches mixed in."""

    def grow(mask: int, depth: int):
        d = table.decision_of(mask)
        if not mask:
            if depth > 2 or rng.random() < 0.6:
                return Terminal(rng.choice(sorted(table.decision_masks)))
        elif d is not None and (depth > 3 or rng.random() < stop):
            return Terminal(d)
        c = rng.randrange(table.n)
        m0, m1 = mask & table.column_masks[c][0], mask & table.column_masks[c][1]
        labels = [lab for lab, m in ((0, m0), (1, m1)) if m]
        if not labels:
            labels = [rng.randint(0, 1)]
        if len(labels) == 1 and rng.random() < 0.3:
            labels = [0, 1]
        return Work(c, tuple((lab, grow(m0 if lab == 0 else m1, depth + 1)) for lab in labels))

    return DecisionTree.single(grow(table.full_mask, 0))


def random_tree(rng: random.Random, n: int, deterministic: bool, binary: bool = False, max_depth: int = 4,
                decisions: int = 3) -> DecisionTree:
    """Unconstrained random tree over n columns (not tied to any table)."""

    def grow(depth: int):
        if depth >= max_depth or rng.random() < 0.35:
            return Terminal(rng.randint(1, decisions))
        c = rng.randrange(n)
        if binary:
            labels = [0, 1]
        elif deterministic:
            labels = rng.choice([[0], [1], [0, 1]])
        else:
            labels = [rng.randint(0, 1) for _ in range(rng.randint(1, 3))]
        return Work(c, tuple((lab, grow(depth + 1)) for lab in labels))

    fan = 1 if deterministic else rng.randint(1, 3)
    return DecisionTree(grow(0) for _ in range(fan))


def full_by_deletion(node) -> bool:
    """Exhaustive form of the full-subtree test: try every subset of edges to keep at each node."""
    if isinstance(node, Terminal):
        return True
    edges = node.edges
    for r in range(1, len(edges) + 1):
        for keep in itertools.combinations(edges, r):
            labels = sorted(lab for lab, _ in keep)
            if labels == [0, 1] and all(full_by_deletion(child) for _, child in keep):
                return True
    return False


def enumerate_trees(n: int, decisions, max_nodes: int, deterministic: bool):
    """Every tree (up to edge order) over n columns with at most ``max_nodes`` nodes, root included."""
    decisions = sorted(decisions)

    @lru_cache(maxsize=None)
    def subtrees(size: int):
        out = []
        if size == 1:
            return tuple(Terminal(d) for d in decisions)
        for c in range(n):
            if deterministic:
                for labels in ((0,), (1,)):
                    out += [Work(c, ((labels[0], s),)) for s in subtrees(size - 1)]
                for a in range(1, size - 1):
                    for s0 in subtrees(a):
                        for s1 in subtrees(size - 1 - a):
                            out.append(Work(c, ((0, s0), (1, s1))))
            else:
                for edges in multisets(size - 1):
                    out.append(Work(c, edges))
        return tuple(out)

    @lru_cache(maxsize=None)
    def labeled(size: int):
        return tuple((lab, s) for lab in (0, 1) for s in subtrees(size))

    def multisets_of(pool_fn, total: int, min_index=0, min_size=1):
        # multisets of items drawn from pool_fn(size) with sizes summing to total, in nondecreasing (size, index) order
        if total == 0:
            yield ()
            return
        for size in range(min_size, total + 1):
            pool = pool_fn(size)
            start = min_index if size == min_size else 0
            for i in range(start, len(pool)):
                for rest in multisets_of(pool_fn, total - size, i, size):
                    yield (pool[i],) + rest

    @lru_cache(maxsize=None)
    def multisets(total: int):
        return tuple(multisets_of(labeled, total))

    for size in range(2, max_nodes + 1):
        if deterministic:
            for s in subtrees(size - 1):
                yield DecisionTree.single(s)
        else:
            for kids in multisets_of(subtrees, size - 1):
                yield DecisionTree(kids)
