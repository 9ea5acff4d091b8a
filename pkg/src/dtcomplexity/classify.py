"""Worst-case profiles of attribute families and their complexity classification.

Everything is measured on finite restrictions, so every verdict holds "at
scale n" only.  Profile rows are computed on the canonical worst selection
with injective decisions; a relabelled problem is solved by the same trees
with terminals renamed, so injective decisions maximize all four measures.
"""
from __future__ import annotations

import csv
import io
import itertools
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import oracles
from .analysis import count_realizable, independence_dimension, reduction_parameter
from .errors import InconsistentProfile
from .families import INJECTIVE, INFINITE_KINDS, AttributeFamily, canonical_worst_selection, generate
from .solvers import build_reduction_tree, min_depth_det, min_depth_nondet, min_nodes_det, min_nodes_det_budgeted, min_nodes_nondet
from .table import DecisionTable
from .treeops import DET, NONDET, validate

CSV_HEADER = ["n", "h_ld", "h_la", "L_ld", "L_la", "N", "idim", "m_hat"]

# worst-over-selections is confirmed by search up to this n
SELECTION_CHECK_MAX_N = 3

# caps for the exhaustive nondeterministic search inside reachability checks
REACH_ORACLE_ROWS = 10
REACH_ORACLE_COLUMNS = 8


def thread_count() -> int:
    raw = os.environ.get("DT_THREADS")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return os.cpu_count() or 1


@dataclass(frozen=True)
class ProfileEntry:
    n: int
    h_ld: int
    h_la: int
    L_ld: int
    L_la: int
    N: int
    idim: int
    m_hat: int
    selection: tuple[int, ...]
    L_la_optimality: str
    worst_confirmed: Optional[bool] = None


@dataclass(frozen=True)
class WorstCaseProfile:
    family: str
    entries: tuple[ProfileEntry, ...]

    def column(self, name: str) -> list[int]:
        return [getattr(e, name) for e in self.entries]

    @property
    def n_max(self) -> int:
        return self.entries[-1].n

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for e in self.entries:
            writer.writerow([getattr(e, k) for k in CSV_HEADER])
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {"family": self.family, "entries": [
            {**{k: getattr(e, k) for k in CSV_HEADER}, "selection": list(e.selection),
             "L_la_optimality": e.L_la_optimality, "worst_confirmed": e.worst_confirmed}
            for e in self.entries]}


def measures(table: DecisionTable) -> tuple[int, int, int, int]:
    """(h_ld, h_la, L_ld, L_la) of one table."""
    return (min_depth_det(table).objective, min_depth_nondet(table).objective,
            min_nodes_det(table).objective, min_nodes_nondet(table).objective)


def _alternative_selections(family: AttributeFamily, n: int):
    """Selections of size 1..n (repeats allowed) drawn from a small attribute pool."""
    pool = list(range(1, n + 2)) if family.kind in INFINITE_KINDS else family.attribute_ids()
    for k in range(1, n + 1):
        yield from itertools.combinations_with_replacement(pool, k)


def _entry(family: AttributeFamily, n: int, check_selection: bool) -> ProfileEntry:
    selection = canonical_worst_selection(family, n)
    table = generate(family, selection, INJECTIVE)
    h_ld, h_la, L_ld = min_depth_det(table).objective, min_depth_nondet(table).objective, min_nodes_det(table).objective
    la = min_nodes_nondet(table)
    confirmed = None
    if check_selection and n <= SELECTION_CHECK_MAX_N:
        ours = (h_ld, h_la, L_ld, la.objective)
        confirmed = all(all(a <= b for a, b in zip(measures(generate(family, alt, INJECTIVE)), ours))
                        for alt in _alternative_selections(family, n))
    return ProfileEntry(n, h_ld, h_la, L_ld, la.objective, count_realizable(table), independence_dimension(table),
                        reduction_parameter(table), tuple(selection), la.optimality, confirmed)


def worstcase_profile(family: AttributeFamily, n_range: Sequence[int], check_selection: bool = True,
                      threads: Optional[int] = None) -> WorstCaseProfile:
    ns = list(n_range)
    workers = min(threads or thread_count(), max(1, len(ns)))
    if workers == 1:
        entries = [_entry(family, n, check_selection) for n in ns]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            entries = list(pool.map(lambda n: _entry(family, n, check_selection), ns))
    return WorstCaseProfile(family.label(), tuple(entries))


@dataclass(frozen=True)
class LocalType:
    h_ld_type: str
    h_la_type: str
    L_type: str
    w_class: str
    scale: int

    def to_dict(self) -> dict:
        return {"h_ld_type": self.h_ld_type, "h_la_type": self.h_la_type, "L_type": self.L_type,
                "w_class": self.w_class, "scale": self.scale, "qualifier": f"at scale n={self.scale}"}

    def dumps(self) -> str:
        return json.dumps(self.to_dict())


TABLE_ROWS = {("LOG", "CON", "POL"): "W1", ("LIN", "LIN", "POL"): "W2", ("LIN", "LIN", "EXP"): "W3"}


def local_type(profile: WorstCaseProfile) -> LocalType:
    """Fit the behaviour types of a profile and map them to a complexity class.

    h_la counts as constant when it does not change over the upper half of
    the profiled range (at least two points); that is a finite-scale proxy.
    """
    entries = profile.entries
    ns = [e.n for e in entries]
    if ns != list(range(ns[0], ns[0] + len(ns))) or ns[-1] < 4:
        raise InconsistentProfile("local type needs a contiguous profile reaching n >= 4")
    for e in entries:
        if e.h_ld < math.ceil(math.log2(e.N)) or e.h_ld > e.n:
            raise InconsistentProfile(f"h_ld({e.n})={e.h_ld} outside [ceil(log2 N), n]")
        if not e.h_la <= e.h_ld:
            raise InconsistentProfile(f"h_la({e.n}) exceeds h_ld({e.n})")
        if e.L_la != e.L_ld:
            raise InconsistentProfile(f"L_la({e.n}) != L_ld({e.n})")

    h_ld_type = "LIN" if all(e.h_ld == e.n for e in entries) else "LOG"

    window = entries[-max(2, len(entries) // 2):]
    if len({e.h_la for e in window}) == 1:
        h_la_type = "CON"
    elif all(e.h_la == e.n for e in entries):
        h_la_type = "LIN"
    else:
        raise InconsistentProfile("h_la neither settles nor equals n")

    if all(e.L_ld == 2 ** (e.n + 1) for e in entries):
        L_type = "EXP"
    else:
        L_type = "POL"
        for e in entries:
            if not 2 * (e.n + 1) <= e.L_ld <= 2 * (4 * e.n) ** e.idim:
                raise InconsistentProfile(f"L_ld({e.n})={e.L_ld} outside the polynomial bounds")

    combo = (h_ld_type, h_la_type, L_type)
    if combo not in TABLE_ROWS:
        raise InconsistentProfile(f"behaviour {combo} matches no admissible local type")
    return LocalType(h_ld_type, h_la_type, L_type, TABLE_ROWS[combo], profile.n_max)


@dataclass
class ReachabilityReport:
    kind: str
    n: int
    h_star: int
    L_star: int
    reachable: str  # "yes" | "no" | "unknown"
    certificate: dict = field(default_factory=dict)
    witness: Optional[object] = None

    def to_dict(self) -> dict:
        return {"kind": self.kind, "n": self.n, "h_star": self.h_star, "L_star": self.L_star,
                "reachable": self.reachable, "certificate": self.certificate,
                "witness": self.witness.to_dict() if self.witness is not None else None}

    def dumps(self) -> str:
        return json.dumps(self.to_dict())


def _oracle_within_caps(table: DecisionTable) -> bool:
    return len(table) <= REACH_ORACLE_ROWS and table.n <= REACH_ORACLE_COLUMNS


def reachability_for_table(table: DecisionTable, kind: str, n: Optional[int] = None) -> ReachabilityReport:
    n = table.n if n is None else n
    if kind == "ld":
        h_star = min_depth_det(table).objective
        L_star = min_nodes_det(table).objective
        res = min_nodes_det_budgeted(table, h_star)
        witness = res.tree
        m = witness.metrics()
        ok = res.objective <= L_star and validate(witness, table, DET).ok and m.h <= h_star
        return ReachabilityReport("ld", n, h_star, L_star, "yes" if ok else "no",
                                  {"type": "witness", "h": m.h, "L": m.L}, witness)
    if kind != "la":
        raise ValueError(f"unknown reachability kind {kind!r}")

    h_star = min_depth_nondet(table).objective
    la = min_nodes_nondet(table)
    L_star = la.objective
    cert: dict = {}
    if la.optimality != "exact":
        cert["note"] = "minimum nondeterministic node count is only an upper bound"

    if h_star == min_depth_det(table).objective:
        res = min_nodes_det_budgeted(table, h_star)
        m = res.tree.metrics()
        if m.L <= L_star:
            cert.update(type="witness", source="deterministic", h=m.h, L=m.L)
            return ReachabilityReport("la", n, h_star, L_star, "yes", cert, res.tree)

    verdict = "unknown"
    if table.is_injective and 2 ** h_star < len(table):
        verdict = "no"
        cert["analytic"] = {"two_pow_h": 2 ** h_star, "N": len(table),
                            "argument": "a binary tree of depth h has at most 2^h terminals, fewer than N; "
                                        "any other tree without full fan-outs has more than 2N - 1 non-root nodes"}
    if _oracle_within_caps(table):
        nodes, tree = oracles.nondet_min_nodes(table, max_depth=h_star)
        cert["oracle"] = {"max_depth": h_star, "max_nodes": L_star, "min_nodes": nodes,
                          "found": nodes is not None and nodes <= L_star}
        if nodes is not None and nodes <= L_star:
            if verdict == "no":
                raise AssertionError("analytic certificate contradicted by exhaustive search")
            cert["type"] = "witness"
            return ReachabilityReport("la", n, h_star, L_star, "yes", cert, tree)
        verdict = "no"
    if verdict == "no":
        cert["type"] = "analytic" if "analytic" in cert else "oracle"
    return ReachabilityReport("la", n, h_star, L_star, verdict, cert, None)


def verify_reachability(family: AttributeFamily, n: int, kind: str) -> ReachabilityReport:
    table = generate(family, canonical_worst_selection(family, n), INJECTIVE)
    return reachability_for_table(table, kind, n)


def boundary_la_pair_for_table(table: DecisionTable) -> dict:
    res = build_reduction_tree(table)
    m = res.tree.metrics()
    m_hat = reduction_parameter(table)
    L_la = 2 * count_realizable(table)
    bound_L = (m_hat + 1) * L_la // 2 + 1
    ok = validate(res.tree, table, NONDET).ok and m.h <= m_hat and m.L <= bound_L
    return {"n": table.n, "m_hat": m_hat, "h": m.h, "L": m.L, "bound_h": m_hat, "bound_L": bound_L, "ok": ok,
            "tree": res.tree.to_dict()}


def verify_boundary_la_pair(family: AttributeFamily, n: int) -> dict:
    return boundary_la_pair_for_table(generate(family, canonical_worst_selection(family, n), INJECTIVE))
