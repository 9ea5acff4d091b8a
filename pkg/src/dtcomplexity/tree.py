"""Decision trees with an unlabeled root, metrics, and dtree-v1 / DOT output.

Trees are immutable nested values.  Edges are kept sorted by (label, child
canonical key), so two trees are equal exactly when they are isomorphic and
serialization is byte-stable.  Node ids are preorder positions in that
canonical order; the root is node 0 and an edge is identified by the id of
the node it enters.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Optional, Union

from .errors import TreeFormatError

FORMAT = "dtree-v1"


@dataclass(frozen=True)
class Terminal:
    decision: int

    @cached_property
    def key(self) -> tuple:
        return ("t", self.decision)


@dataclass(frozen=True)
class Work:
    attr: int
    edges: tuple[tuple[int, "Node"], ...]

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(sorted(self.edges, key=lambda e: (e[0], e[1].key))))

    @cached_property
    def key(self) -> tuple:
        return ("w", self.attr, tuple((label, child.key) for label, child in self.edges))


Node = Union[Terminal, Work]


@dataclass(frozen=True)
class Path:
    """A complete path: the (attribute, label) tests in root-to-leaf order."""
    steps: tuple[tuple[int, int], ...]
    decision: int

    def __len__(self) -> int:
        return len(self.steps)


@dataclass(frozen=True)
class TreeMetrics:
    L: int
    L_t: int
    L_w: int
    h: int


@dataclass(frozen=True)
class NodeInfo:
    id: int
    kind: str  # "root" | "work" | "term"
    node: Optional[Node]
    parent: Optional[int]
    edge_label: Optional[int]
    children: tuple[int, ...]


class DecisionTree:
    """A root with one or more subtrees hanging from unlabeled edges."""

    def __init__(self, children):
        children = tuple(children)
        if not children:
            raise TreeFormatError("the root needs at least one leaving edge")
        self.children = tuple(sorted(children, key=lambda c: c.key))

    @classmethod
    def single(cls, node: Node) -> "DecisionTree":
        return cls((node,))

    @cached_property
    def key(self) -> tuple:
        return ("r", tuple(c.key for c in self.children))

    def __eq__(self, other):
        return isinstance(other, DecisionTree) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"DecisionTree({self.metrics()})"

    @cached_property
    def nodes(self) -> tuple[NodeInfo, ...]:
        infos: list[NodeInfo] = []
        root_children: list[int] = []
        infos.append(None)  # placeholder for the root

        def visit(node: Node, parent: int, label: Optional[int]) -> int:
            nid = len(infos)
            infos.append(None)
            kids = []
            if isinstance(node, Work):
                for lab, child in node.edges:
                    kids.append(visit(child, nid, lab))
            kind = "work" if isinstance(node, Work) else "term"
            infos[nid] = NodeInfo(nid, kind, node, parent, label, tuple(kids))
            return nid

        for child in self.children:
            root_children.append(visit(child, 0, None))
        infos[0] = NodeInfo(0, "root", None, None, None, tuple(root_children))
        return tuple(infos)

    def subtree(self, edge: int) -> Node:
        """The subtree entered by the edge with the given id."""
        if not 0 < edge < len(self.nodes):
            raise KeyError(f"no edge enters node {edge}")
        return self.nodes[edge].node

    def metrics(self) -> TreeMetrics:
        terms = works = 0
        for info in self.nodes[1:]:
            if info.kind == "term":
                terms += 1
            else:
                works += 1
        return TreeMetrics(1 + terms + works, terms, works, max(len(p) for p in self.paths()))

    def paths(self) -> list[Path]:
        """All complete paths in canonical (preorder) order."""
        out: list[Path] = []

        def walk(node: Node, steps: tuple):
            if isinstance(node, Terminal):
                out.append(Path(steps, node.decision))
                return
            for label, child in node.edges:
                walk(child, steps + ((node.attr, label),))

        for child in self.children:
            walk(child, ())
        return out

    def attributes(self) -> set[int]:
        return {info.node.attr for info in self.nodes if info.kind == "work"}

    # serialization

    def to_dict(self) -> dict:
        nodes = []
        for info in self.nodes:
            if info.kind == "root":
                nodes.append({"id": 0, "kind": "root", "edges": [{"to": c} for c in info.children]})
            elif info.kind == "work":
                edges = [{"label": self.nodes[c].edge_label, "to": c} for c in info.children]
                nodes.append({"id": info.id, "kind": "work", "attr": info.node.attr, "edges": edges})
            else:
                nodes.append({"id": info.id, "kind": "term", "decision": info.node.decision})
        return {"format": FORMAT, "root": 0, "nodes": nodes}

    def dumps(self) -> str:
        return json.dumps(self.to_dict())

    def to_dot(self, name: str = "tree") -> str:
        lines = [f"digraph {name} {{"]
        for info in self.nodes:
            if info.kind == "root":
                lines.append(f'  n0 [shape=point];')
            elif info.kind == "work":
                lines.append(f'  n{info.id} [label="f{info.node.attr}"];')
            else:
                lines.append(f'  n{info.id} [label="d={info.node.decision}", shape=box];')
        for info in self.nodes:
            for c in info.children:
                if info.kind == "root":
                    lines.append(f"  n0 -> n{c};")
                else:
                    lines.append(f'  n{info.id} -> n{c} [label="{self.nodes[c].edge_label}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def iter_nodes(node: Node) -> Iterator[Node]:
    yield node
    if isinstance(node, Work):
        for _, child in node.edges:
            yield from iter_nodes(child)


def from_dict(doc: dict) -> DecisionTree:
    """Parse a dtree-v1 document, checking that it describes a well-formed tree."""
    if not isinstance(doc, dict) or doc.get("format") != FORMAT:
        raise TreeFormatError(f"not a {FORMAT} document")
    try:
        by_id = {}
        for raw in doc["nodes"]:
            nid = raw["id"]
            if nid in by_id:
                raise TreeFormatError(f"duplicate node id {nid!r}")
            by_id[nid] = raw
        root_id = doc["root"]
    except (KeyError, TypeError) as exc:
        raise TreeFormatError(f"malformed {FORMAT} document: {exc}") from exc
    if root_id not in by_id or by_id[root_id].get("kind") != "root":
        raise TreeFormatError("root id does not name a root node")
    if sum(1 for raw in by_id.values() if raw.get("kind") == "root") != 1:
        raise TreeFormatError("exactly one root node is required")

    visited: set = set()

    def build(nid) -> Node:
        if nid not in by_id:
            raise TreeFormatError(f"edge to unknown node {nid!r}")
        if nid in visited:
            raise TreeFormatError(f"node {nid!r} has more than one entering edge")
        visited.add(nid)
        raw = by_id[nid]
        kind = raw.get("kind")
        if kind == "term":
            d = raw.get("decision")
            if not isinstance(d, int) or isinstance(d, bool) or d < 1:
                raise TreeFormatError(f"terminal {nid!r} has bad decision {d!r}")
            return Terminal(d)
        if kind == "work":
            attr = raw.get("attr")
            if not isinstance(attr, int) or isinstance(attr, bool) or attr < 0:
                raise TreeFormatError(f"working node {nid!r} has bad attribute {attr!r}")
            edges = raw.get("edges") or []
            if not edges:
                raise TreeFormatError(f"working node {nid!r} has no leaving edges")
            out = []
            for e in edges:
                if e.get("label") not in (0, 1) or isinstance(e.get("label"), bool):
                    raise TreeFormatError(f"edge from working node {nid!r} needs label 0 or 1")
                out.append((e["label"], build(e.get("to"))))
            return Work(attr, tuple(out))
        if kind == "root":
            raise TreeFormatError("an edge enters the root")
        raise TreeFormatError(f"node {nid!r} has unknown kind {kind!r}")

    visited.add(root_id)
    root_edges = by_id[root_id].get("edges") or []
    if not root_edges:
        raise TreeFormatError("the root needs at least one leaving edge")
    if any("label" in e for e in root_edges):
        raise TreeFormatError("edges leaving the root are unlabeled")
    tree = DecisionTree(build(e.get("to")) for e in root_edges)
    if len(visited) != len(by_id):
        raise TreeFormatError("some nodes are not reachable from the root")
    return tree


def loads(text: str) -> DecisionTree:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise TreeFormatError(f"invalid JSON: {exc}") from exc
    return from_dict(doc)


def read_tree(path) -> DecisionTree:
    with open(path) as fh:
        return loads(fh.read())


def write_tree(tree: DecisionTree, path) -> None:
    with open(path, "w") as fh:
        fh.write(tree.dumps() + "\n")


def write_dot(tree: DecisionTree, path) -> None:
    with open(path, "w") as fh:
        fh.write(tree.to_dot())
