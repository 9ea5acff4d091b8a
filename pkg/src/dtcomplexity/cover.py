"""Exact minimum set cover over bitmask universes with lexicographic tie-breaking."""
from __future__ import annotations

from typing import Optional, Sequence

from .errors import ResourceLimit

DEFAULT_MAX_SETS = 24
DEFAULT_NODE_LIMIT = 5_000_000


def _greedy(target: int, sets: Sequence[int], cands: Sequence[int]) -> list[int]:
    left, picked = target, []
    while left:
        best = max(cands, key=lambda i: ((sets[i] & left).bit_count(), -i))
        picked.append(best)
        left &= ~sets[best]
    return sorted(picked)


def min_cover(target: int, sets: Sequence[int], max_sets: int = DEFAULT_MAX_SETS,
              node_limit: int = DEFAULT_NODE_LIMIT) -> Optional[tuple[int, ...]]:
    """Smallest index set whose sets jointly cover ``target``.

    Among covers of minimum size the lexicographically smallest sorted index
    tuple is returned.  Returns None when no cover exists.  The search
    deepens the size bound from a counting lower bound up to the greedy
    cover's size; each round is a depth-first walk over index combinations in
    lexicographic order, pruned by suffix unions and a counting bound.
    """
    if not target:
        return ()
    cands = [i for i, s in enumerate(sets) if s & target]
    union = 0
    for i in cands:
        union |= sets[i]
    if target & ~union:
        return None
    if len(cands) > max_sets:
        raise ResourceLimit(f"set cover over {len(cands)} candidate sets exceeds the limit of {max_sets}")

    m = len(cands)
    suffix_union = [0] * (m + 1)
    suffix_best = [0] * (m + 1)
    for j in range(m - 1, -1, -1):
        suffix_union[j] = suffix_union[j + 1] | sets[cands[j]]
        suffix_best[j] = max(suffix_best[j + 1], (sets[cands[j]] & target).bit_count())

    upper = _greedy(target, sets, cands)
    lower = -(-target.bit_count() // suffix_best[0])
    visited = 0

    def search(left: int, start: int, budget: int, chosen: list[int]) -> Optional[list[int]]:
        nonlocal visited
        visited += 1
        if visited > node_limit:
            raise ResourceLimit(f"set cover search exceeded {node_limit} nodes")
        if not left:
            return chosen
        if budget == 0 or left & ~suffix_union[start]:
            return None
        if -(-left.bit_count() // suffix_best[start]) > budget:
            return None
        for j in range(start, m):
            s = sets[cands[j]]
            if not s & left:
                continue
            if left & ~suffix_union[j]:
                break
            found = search(left & ~s, j + 1, budget - 1, chosen + [cands[j]])
            if found is not None:
                return found
        return None

    for k in range(lower, len(upper) + 1):
        found = search(target, 0, k, [])
        if found is not None:
            return tuple(found)
    raise AssertionError("greedy cover size was not reachable")  # pragma: no cover
