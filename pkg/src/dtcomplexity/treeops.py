"""Checking trees against tables and the structural transforms used in proofs of optimality."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .errors import AttributeOutOfRange
from .table import DecisionTable
from .tree import DecisionTree, Node, Path, Terminal, Work

DET = "det"
NONDET = "nondet"


@dataclass(frozen=True)
class Violation:
    kind: str  # "row", "path" or "node"
    index: int
    reason: str

    def to_dict(self) -> dict:
        return {"kind": self.kind, "index": self.index, "reason": self.reason}


@dataclass(frozen=True)
class VerificationReport:
    mode: str
    violations: tuple[Violation, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {"mode": self.mode, "ok": self.ok, "violations": [v.to_dict() for v in self.violations]}


@dataclass(frozen=True)
class TreeClass:
    in_G_d: bool
    in_G_d2: bool
    in_G_a_f: bool


def path_mask(table: DecisionTable, path: Path) -> int:
    mask = table.full_mask
    for attr, label in path.steps:
        if not 0 <= attr < table.n:
            raise AttributeOutOfRange(f"attribute f{attr} outside table of dimension {table.n}")
        mask &= table.column_masks[attr][label]
    return mask


def path_rowset(table: DecisionTable, path: Path) -> list[int]:
    """Indices of the rows satisfying every test on the path."""
    mask = path_mask(table, path)
    return [i for i in range(len(table)) if mask >> i & 1]


def validate(tree: DecisionTree, table: DecisionTable, mode: str = DET) -> VerificationReport:
    if mode not in (DET, NONDET):
        raise ValueError(f"unknown mode {mode!r}")
    out: list[Violation] = []
    bad_attrs = sorted(a for a in tree.attributes() if a >= table.n)
    if bad_attrs:
        for info in tree.nodes:
            if info.kind == "work" and info.node.attr >= table.n:
                out.append(Violation("node", info.id, f"attribute f{info.node.attr} outside table of dimension {table.n}"))
        return VerificationReport(mode, tuple(out))

    if mode == DET:
        root = tree.nodes[0]
        if len(root.children) != 1:
            out.append(Violation("node", 0, f"root has {len(root.children)} leaving edges"))
        for info in tree.nodes:
            if info.kind == "work":
                labels = [label for label, _ in info.node.edges]
                if len(labels) != len(set(labels)):
                    out.append(Violation("node", info.id, "edges leaving a working node repeat a label"))

    covered = 0
    for pid, path in enumerate(tree.paths()):
        mask = path_mask(table, path)
        covered |= mask
        for i, (t, d) in enumerate(table.rows):
            if mask >> i & 1 and d != path.decision:
                bits = "".join(map(str, t))
                out.append(Violation("row", i, f"row {bits} (decision {d}) reaches path {pid} ending in decision {path.decision}"))
    for i, (t, _) in enumerate(table.rows):
        if not covered >> i & 1:
            out.append(Violation("row", i, f"row {''.join(map(str, t))} is not covered by any complete path"))
    return VerificationReport(mode, tuple(out))


def solves(tree: DecisionTree, table: DecisionTable, mode: str = DET) -> bool:
    return validate(tree, table, mode).ok


def is_full(node: Node) -> bool:
    """Whether deleting some edges leaves a 0/1-complete tree ending only in original terminals.

    Such a pruned tree exists iff the node is a terminal, or it is a working
    node with a full child under a 0-edge and a full child under a 1-edge;
    keeping one of each and deleting the rest is the deletion set.
    """
    if isinstance(node, Terminal):
        return True
    has = [False, False]
    for label, child in node.edges:
        if not has[label] and is_full(child):
            has[label] = True
    return has[0] and has[1]


def is_full_subtree(tree: DecisionTree, edge: int) -> bool:
    return is_full(tree.subtree(edge))


def _fanouts_not_full(children) -> bool:
    return len(children) < 2 or not any(is_full(c) for c in children)


def tree_class(tree: DecisionTree) -> TreeClass:
    deterministic = len(tree.children) == 1
    binary = True
    no_full_fanout = _fanouts_not_full(tree.children)
    for info in tree.nodes:
        if info.kind != "work":
            continue
        by_label: dict[int, list[Node]] = {0: [], 1: []}
        for label, child in info.node.edges:
            by_label[label].append(child)
        if any(len(v) > 1 for v in by_label.values()):
            deterministic = False
        if not (len(by_label[0]) == 1 and len(by_label[1]) == 1):
            binary = False
        if not all(_fanouts_not_full(v) for v in by_label.values()):
            no_full_fanout = False
    return TreeClass(deterministic, deterministic and binary, no_full_fanout)


def prune_unrealizable(tree: DecisionTree, table: DecisionTable) -> DecisionTree:
    """Drop every node and edge that lies on no realizable complete path."""

    def prune(node: Node, mask: int) -> Optional[Node]:
        if not mask:
            return None
        if isinstance(node, Terminal):
            return node
        kept = []
        for label, child in node.edges:
            sub = prune(child, mask & table.column_masks[node.attr][label])
            if sub is not None:
                kept.append((label, sub))
        return Work(node.attr, tuple(kept)) if kept else None

    kept = [s for s in (prune(c, table.full_mask) for c in tree.children) if s is not None]
    if not kept:
        raise ValueError("tree has no realizable complete path on this table")
    return DecisionTree(kept)


def collapse_single_child(tree: DecisionTree) -> DecisionTree:
    """Splice out every working node that has exactly one leaving edge."""

    def collapse(node: Node) -> Node:
        if isinstance(node, Terminal):
            return node
        if len(node.edges) == 1:
            return collapse(node.edges[0][1])
        return Work(node.attr, tuple((label, collapse(child)) for label, child in node.edges))

    return DecisionTree(collapse(c) for c in tree.children)


def normalize(tree: DecisionTree, table: DecisionTable) -> DecisionTree:
    return collapse_single_child(prune_unrealizable(tree, table))
