"""Multi-rooted phylogenetic networks and their structural predicates."""
from __future__ import annotations

import enum
import re
from collections import deque
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from types import MappingProxyType

from .tree import RootedTree

LABEL_RE = re.compile(r"[A-Za-z0-9_]+")


class NetworkError(ValueError):
    """Raised for structurally malformed networks."""


class NotArborealError(NetworkError):
    """Raised when an operation needs an arboreal network and gets something else."""


class NonSimpleGraphError(NetworkError):
    """Suppressing degree-2 vertices produced a multi-edge or a loop."""


class VertexClass(enum.Enum):
    ROOT = "root"
    LEAF = "leaf"
    TREE_VERTEX = "tree-vertex"
    HYBRID = "hybrid"
    INVALID = "invalid"


def _vkey(v):
    return str(v)


class Network:
    """An acyclic digraph whose sinks carry distinct leaf labels.

    ``arcs`` is an iterable of ``(tail, head)`` pairs and ``labels`` maps leaf
    vertices to labels. Vertices not touched by any arc may be passed through
    ``vertices``. Instances are immutable; all iteration is in sorted order.
    """

    __slots__ = ("_vertices", "_arcs", "_labels", "_children", "_parents", "_leaf_of")

    def __init__(self, arcs: Iterable[tuple], labels: Mapping, vertices: Iterable = ()):
        arc_set = set()
        for t, h in arcs:
            if t == h:
                raise NetworkError(f"self-arc at {t!r}")
            arc_set.add((t, h))
        verts = set(vertices)
        for t, h in arc_set:
            verts.add(t)
            verts.add(h)
        children: dict = {v: [] for v in verts}
        parents: dict = {v: [] for v in verts}
        for t, h in arc_set:
            children[t].append(h)
            parents[h].append(t)
        leaf_of = {}
        for v, lab in labels.items():
            if v not in verts:
                raise NetworkError(f"labeled vertex {v!r} is not in the network")
            if not isinstance(lab, str) or not LABEL_RE.fullmatch(lab):
                raise NetworkError(f"bad leaf label {lab!r}")
            if children[v] or len(parents[v]) != 1:
                raise NetworkError(f"labeled vertex {v!r} must have in-degree 1 and out-degree 0")
            if lab in leaf_of:
                raise NetworkError(f"label {lab!r} used twice")
            leaf_of[lab] = v
        self._vertices = tuple(sorted(verts, key=_vkey))
        self._arcs = tuple(sorted(arc_set, key=lambda a: (_vkey(a[0]), _vkey(a[1]))))
        self._children = {v: tuple(sorted(cs, key=_vkey)) for v, cs in children.items()}
        self._parents = {v: tuple(sorted(ps, key=_vkey)) for v, ps in parents.items()}
        self._labels = MappingProxyType(dict(labels))
        self._leaf_of = MappingProxyType(leaf_of)
        if len(self.topological_order()) != len(self._vertices):
            raise NetworkError("network contains a directed cycle")

    @property
    def vertices(self) -> tuple:
        return self._vertices

    @property
    def arcs(self) -> tuple:
        return self._arcs

    @property
    def labels(self) -> Mapping:
        return self._labels

    @property
    def label_set(self) -> frozenset[str]:
        return frozenset(self._leaf_of)

    def leaf(self, label: str):
        """The vertex carrying ``label``."""
        return self._leaf_of[label]

    def children(self, v) -> tuple:
        return self._children[v]

    def parents(self, v) -> tuple:
        return self._parents[v]

    def in_degree(self, v) -> int:
        return len(self._parents[v])

    def out_degree(self, v) -> int:
        return len(self._children[v])

    def __contains__(self, v):
        return v in self._children

    def topological_order(self) -> list:
        indeg = {v: len(ps) for v, ps in self._parents.items()}
        queue = deque(v for v in self._vertices if indeg[v] == 0)
        order = []
        while queue:
            v = queue.popleft()
            order.append(v)
            for c in self._children[v]:
                indeg[c] -= 1
                if indeg[c] == 0:
                    queue.append(c)
        return order

    def roots(self) -> list:
        return [v for v in self._vertices if classify(self, v) is VertexClass.ROOT]

    def hybrids(self) -> list:
        return [v for v in self._vertices if classify(self, v) is VertexClass.HYBRID]

    def relabel(self, mapping: Mapping[str, str]) -> Network:
        """Copy with leaf labels renamed through ``mapping`` (missing keys kept)."""
        return Network(
            self._arcs,
            {v: mapping.get(lab, lab) for v, lab in self._labels.items()},
            self._vertices,
        )

    def rename_vertices(self, mapping: Mapping) -> Network:
        return Network(
            [(mapping.get(t, t), mapping.get(h, h)) for t, h in self._arcs],
            {mapping.get(v, v): lab for v, lab in self._labels.items()},
            [mapping.get(v, v) for v in self._vertices],
        )

    def __eq__(self, other):
        if not isinstance(other, Network):
            return NotImplemented
        return (
            self._vertices == other._vertices
            and self._arcs == other._arcs
            and dict(self._labels) == dict(other._labels)
        )

    def __hash__(self):
        return hash((self._arcs, frozenset(self._labels.items())))

    def __repr__(self):
        return f"Network({len(self._vertices)} vertices, {len(self._arcs)} arcs, X={sorted(self.label_set)})"


def classify(net: Network, v) -> VertexClass:
    if v not in net:
        raise KeyError(f"unknown vertex {v!r}")
    i, o = net.in_degree(v), net.out_degree(v)
    if i == 0 and o >= 2:
        return VertexClass.ROOT
    if i == 1 and o == 0 and v in net.labels:
        return VertexClass.LEAF
    if i >= 2 and o == 1:
        return VertexClass.HYBRID
    if i == 1 and o >= 2:
        return VertexClass.TREE_VERTEX
    return VertexClass.INVALID


@dataclass(frozen=True)
class Violation:
    vertex: object
    rule: str

    def __str__(self):
        return self.rule if self.vertex is None else f"{self.vertex}: {self.rule}"


@dataclass(frozen=True)
class ValidityReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok


def validate_m_network(net: Network) -> ValidityReport:
    """Check every m-network rule and report all violations found."""
    found = []
    for v in net.vertices:
        cls = classify(net, v)
        i, o = net.in_degree(v), net.out_degree(v)
        if cls is VertexClass.INVALID:
            found.append(Violation(v, f"forbidden degree pattern (in={i}, out={o})"))
        elif cls is VertexClass.ROOT and o != 2:
            found.append(Violation(v, f"root out-degree {o}, must be 2"))
    if len(net.label_set) < 3:
        found.append(Violation(None, f"|X| = {len(net.label_set)} < 3"))
    if net.vertices and not _connected(underlying_graph(net)):
        found.append(Violation(None, "underlying graph is not connected"))
    return ValidityReport(tuple(found))


@dataclass(frozen=True)
class UndirectedView:
    """Undirected simple graph on network vertices, leaf labels inherited."""

    vertices: tuple
    edges: frozenset
    labels: Mapping

    def adjacency(self) -> dict:
        adj = {v: set() for v in self.vertices}
        for e in self.edges:
            a, b = tuple(e)
            adj[a].add(b)
            adj[b].add(a)
        return adj

    def degree(self, v) -> int:
        return sum(1 for e in self.edges if v in e)


def underlying_graph(net: Network) -> UndirectedView:
    return UndirectedView(
        net.vertices, frozenset(frozenset(a) for a in net.arcs), net.labels
    )


def _connected(view: UndirectedView) -> bool:
    if not view.vertices:
        return True
    adj = view.adjacency()
    start = view.vertices[0]
    seen = {start}
    stack = [start]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(view.vertices)


def suppress_degree_two(view: UndirectedView) -> UndirectedView:
    """Replace every unlabeled degree-2 vertex and its two edges by one edge.

    Raises :class:`NonSimpleGraphError` if a replacement edge already exists
    (the suppressed graph would not be simple).
    """
    adj = view.adjacency()
    labels = view.labels
    pending = deque(v for v in view.vertices if len(adj[v]) == 2 and v not in labels)
    while pending:
        v = pending.popleft()
        if v not in adj or len(adj[v]) != 2:
            continue
        a, b = sorted(adj[v], key=_vkey)
        if b in adj[a]:
            raise NonSimpleGraphError(f"suppressing {v!r} duplicates edge {a!r}-{b!r}")
        del adj[v]
        adj[a].discard(v)
        adj[b].discard(v)
        adj[a].add(b)
        adj[b].add(a)
    verts = tuple(v for v in view.vertices if v in adj)
    edges = frozenset(frozenset((a, b)) for a in adj for b in adj[a])
    return UndirectedView(verts, edges, view.labels)


def is_arboreal(net: Network) -> bool:
    """True iff the suppressed underlying graph is an unrooted phylogenetic tree on X."""
    try:
        red = suppress_degree_two(underlying_graph(net))
    except NonSimpleGraphError:
        return False
    if len(red.edges) != len(red.vertices) - 1 or not _connected(red):
        return False
    adj = red.adjacency()
    if any(len(ns) == 2 for ns in adj.values()):
        return False
    tips = {v for v, ns in adj.items() if len(ns) <= 1}
    return tips == set(net.labels)


def is_stack_free(net: Network) -> bool:
    hyb = set(net.hybrids())
    return not any(t in hyb and h in hyb for t, h in net.arcs)


def is_banyan(net: Network) -> bool:
    for v in net.vertices:
        cls = classify(net, v)
        if cls is VertexClass.HYBRID:
            if any(classify(net, p) is not VertexClass.ROOT for p in net.parents(v)):
                return False
        elif cls is VertexClass.LEAF:
            if classify(net, net.parents(v)[0]) not in (VertexClass.ROOT, VertexClass.HYBRID):
                return False
    return True


def _reachable(net: Network, v) -> list:
    seen = {v}
    out = [v]
    for u in out:
        for c in net.children(u):
            if c not in seen:
                seen.add(c)
                out.append(c)
    return out


def leaves_below(net: Network, v) -> frozenset[str]:
    if v not in net:
        raise KeyError(f"unknown vertex {v!r}")
    return frozenset(net.labels[u] for u in _reachable(net, v) if u in net.labels)


def descendant_tree(net: Network, r) -> RootedTree:
    """The part of ``net`` below ``r`` as a rooted tree, one-child vertices suppressed.

    Raises :class:`NotArborealError` if two directed paths from ``r`` meet.
    """
    if r not in net:
        raise KeyError(f"unknown vertex {r!r}")
    below = _reachable(net, r)
    inside = set(below)
    for u in below[1:]:
        if sum(1 for p in net.parents(u) if p in inside) != 1:
            raise NotArborealError(f"paths from {r!r} meet at {u!r}")

    def skip(u):
        while len(net.children(u)) == 1:
            u = net.children(u)[0]
        return u

    top = skip(r)
    children = {}
    stack = [top]
    while stack:
        u = stack.pop()
        cs = [skip(c) for c in net.children(u)]
        if cs:
            children[u] = cs
            stack.extend(cs)
    labels = {u: net.labels[u] for u in inside if u in net.labels}
    return RootedTree(top, children, labels)


def reticulated_cherries(net: Network) -> frozenset[tuple[str, str]]:
    out = set()
    for h in net.hybrids():
        b = net.children(h)[0]
        if b not in net.labels:
            continue
        for p in net.parents(h):
            for a in net.children(p):
                if a in net.labels and a != b:
                    out.add((net.labels[a], net.labels[b]))
    return frozenset(out)


def generalized_cherries(net: Network) -> frozenset[frozenset[str]]:
    """Leaf sets of tree vertices whose children are all leaves."""
    out = set()
    for v in net.vertices:
        if classify(net, v) is not VertexClass.TREE_VERTEX:
            continue
        kids = net.children(v)
        if all(c in net.labels for c in kids):
            out.add(frozenset(net.labels[c] for c in kids))
    return frozenset(out)
