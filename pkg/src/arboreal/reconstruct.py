"""Reconstruction of stack-free arboreal networks from triplet and duet systems.

The pipeline has three stages:

1. :func:`dr_partition` splits the label set into blocks that no duet
   crosses internally and that keep every triplet whole.
2. :func:`scaffold` splits each block into components (the leaf sets left
   when all roots are deleted) and finds one root edge per root of the
   target network, remembering the leaves seen on either side of it.
3. :func:`refine_and_assemble` runs BUILD below every root edge and glues
   the resulting trees together on shared clusters, inserting a hybrid above
   any cluster that ends up with several parents.

:func:`ara` chains the stages and checks the result by re-extracting its
constraints, so it returns a network only when the input is exactly the
triplet and duet system of one.
"""
from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass, field
from itertools import chain

import numpy as np

from . import kernels
from .buildtree import IncompatibleTripletsError, build_rows
from .encoding import CHAIN, Codec, Duet, Triplet, duet_keys, support, triplet_keys
from .network import (
    Network,
    NetworkError,
    is_arboreal,
    is_stack_free,
    underlying_graph,
    validate_m_network,
)


@dataclass(frozen=True)
class Partition:
    blocks: tuple[frozenset[str], ...]

    def block_of(self, label: str) -> int:
        for i, b in enumerate(self.blocks):
            if label in b:
                return i
        raise KeyError(label)


@dataclass(frozen=True)
class RootEdge:
    """One root of the network being rebuilt, seen as an edge between two components.

    Orientation ``a`` collects triplets whose cherry lies in ``endpoints[0]``
    and outgroup in ``endpoints[1]``; orientation ``b`` the reverse. For a duet
    edge each near set holds the duet leaf on its own side and each far set the
    leaf on the other side.
    """

    id: str
    kind: str
    endpoints: tuple[int, int]
    near_a: frozenset[str]
    near_b: frozenset[str]
    far_a: frozenset[str]
    far_b: frozenset[str]
    blocks: tuple[int, ...]

    @property
    def leaves(self) -> frozenset[str]:
        return self.near_a | self.near_b | self.far_a | self.far_b


@dataclass(frozen=True)
class LeafSetGraph:
    """A multigraph whose vertices are leaf sets; compared by value."""

    components: frozenset
    edges: tuple

    @classmethod
    def of(cls, comps: Iterable[frozenset], pairs: Iterable[tuple[frozenset, frozenset]]):
        canon = sorted(tuple(sorted((tuple(sorted(a)), tuple(sorted(b))))) for a, b in pairs)
        return cls(frozenset(comps), tuple(canon))


@dataclass(frozen=True)
class ComponentGraph:
    comps: tuple[tuple[frozenset[str], ...], ...]
    edges: tuple[RootEdge, ...]
    anc: dict = field(hash=False)

    @property
    def components(self) -> list[frozenset[str]]:
        """All components in global index order (the index used by ``endpoints``)."""
        return [c for block in self.comps for c in block]

    def leaf_set_graph(self) -> LeafSetGraph:
        comps = self.components
        return LeafSetGraph.of(comps, [(comps[e.endpoints[0]], comps[e.endpoints[1]]) for e in self.edges])


class _Problem:
    """Integer-coded view of a (triplets, duets) input."""

    def __init__(self, r: Iterable[Triplet], d: Iterable[Duet], labels: Iterable[str] = ()):
        flat = list(chain.from_iterable(r))
        d = frozenset(d)
        self.codec = Codec(set(flat).union(support((), d), labels))
        codes = np.fromiter(map(self.codec.code.__getitem__, flat), dtype=np.int64, count=len(flat))
        self.keys = self.codec.keys(codes.reshape(-1, 3))
        self.rows = self.codec.rows(self.keys)
        self.duets = self.codec.duet_rows(d)
        self.duet_set = d


def _partition(prob: _Problem) -> Partition | None:
    n = prob.codec.n
    which = kernels.closure_blocks(prob.rows, prob.duets, n)
    if which is None:
        return None
    groups: dict[int, list[int]] = {}
    for code, w in enumerate(which.tolist()):
        groups.setdefault(w, []).append(code)
    labs = prob.codec.labels
    blocks = sorted((frozenset(labs[c] for c in cs) for cs in groups.values()), key=min)
    return Partition(tuple(blocks))


def dr_partition(r: Iterable[Triplet], d: Iterable[Duet]) -> Partition | None:
    """Blocks separating both ends of every duet while keeping each triplet whole.

    Each duet endpoint seeds a block grown through triplets sharing a leaf;
    labels reached from no endpoint form one extra block. Returns ``None``
    when both ends of a duet fall into the same block.
    """
    prob = _Problem(r, d)
    if prob.codec.n == 0:
        raise ValueError("empty constraint system")
    return _partition(prob)


def _group_sets(keys: np.ndarray, n: int) -> dict[int, list[int]]:
    out: dict[int, list[int]] = {}
    for k in np.unique(keys).tolist():
        e, leaf = divmod(k, n)
        out.setdefault(e, []).append(leaf)
    return out


def _scaffold(prob: _Problem, part: Partition) -> ComponentGraph | None:
    codec = prob.codec
    n = codec.n
    labs = codec.labels
    block_of = np.full(n, -1, dtype=np.int64)
    for i, b in enumerate(part.blocks):
        for lab in b:
            block_of[codec.code[lab]] = i
    if (block_of < 0).any():
        return None
    rows, duets = prob.rows, prob.duets
    tb = block_of[rows]
    if len(rows) and not ((tb[:, 0] == tb[:, 1]) & (tb[:, 0] == tb[:, 2])).all():
        return None
    if len(duets) and (block_of[duets[:, 0]] == block_of[duets[:, 1]]).any():
        return None

    comp = kernels.pair_components(rows[:, 0], rows[:, 1], n)
    ncomp = int(comp.max()) + 1 if n else 0
    comp_sets: list[list[int]] = [[] for _ in range(ncomp)]
    for code, c in enumerate(comp.tolist()):
        comp_sets[c].append(code)
    comp_block = [int(block_of[cs[0]]) for cs in comp_sets]

    per_block: list[list[int]] = [[] for _ in part.blocks]
    for c in range(ncomp):
        per_block[comp_block[c]].append(c)
    for i, b in enumerate(part.blocks):
        if len(b) > 1 and len(per_block[i]) == 1:
            return None
    # renumber components block by block so endpoints index ComponentGraph.components
    order = [c for cs in per_block for c in cs]
    new_id = np.empty(max(ncomp, 1), dtype=np.int64)
    for i, c in enumerate(order):
        new_id[c] = i
    comp = new_id[comp]
    comps = tuple(tuple(frozenset(labs[x] for x in comp_sets[c]) for c in cs) for cs in per_block)

    edges: list[RootEdge] = []
    ca = comp[rows[:, 0]] if len(rows) else np.empty(0, dtype=np.int64)
    cc = comp[rows[:, 2]] if len(rows) else np.empty(0, dtype=np.int64)
    cross = ca != cc
    if cross.any():
        xr = rows[cross]
        a, c = ca[cross], cc[cross]
        lo, hi = np.minimum(a, c), np.maximum(a, c)
        key = lo * ncomp + hi
        fwd = a < c
        near_a = _group_sets(np.concatenate([key[fwd] * n + xr[fwd, 0], key[fwd] * n + xr[fwd, 1]]), n)
        far_a = _group_sets(key[fwd] * n + xr[fwd, 2], n)
        bwd = ~fwd
        near_b = _group_sets(np.concatenate([key[bwd] * n + xr[bwd, 0], key[bwd] * n + xr[bwd, 1]]), n)
        far_b = _group_sets(key[bwd] * n + xr[bwd, 2], n)
        for k in np.unique(key).tolist():
            e0, e1 = divmod(k, ncomp)

            def lab(d):
                return frozenset(labs[x] for x in d.get(k, ()))

            edges.append(RootEdge(
                f"e{len(edges)}", "triplet", (e0, e1),
                lab(near_a), lab(near_b), lab(far_a), lab(far_b), (comp_block[order[e0]],),
            ))
    for x, y in duets.tolist():
        cx, cy = int(comp[x]), int(comp[y])
        if cx > cy:
            cx, cy, x, y = cy, cx, y, x
        sx, sy = frozenset((labs[x],)), frozenset((labs[y],))
        edges.append(RootEdge(
            f"e{len(edges)}", "duet", (cx, cy), sx, sy, sy, sx,
            (comp_block[order[cx]], comp_block[order[cy]]),
        ))

    # the components joined by root edges must form a tree
    if len(edges) != ncomp - 1:
        return None
    ends = np.array([e.endpoints for e in edges], dtype=np.int64).reshape(-1, 2)
    if ncomp and kernels.pair_components(ends[:, 0], ends[:, 1], ncomp).max() != 0:
        return None

    anc: dict[str, list[str]] = {lab: [] for lab in labs}
    for e in edges:
        for lab in sorted(e.near_a | e.near_b):
            anc[lab].append(e.id)
    return ComponentGraph(comps, tuple(edges), {k: tuple(v) for k, v in anc.items()})


def scaffold(r: Iterable[Triplet], d: Iterable[Duet], p: Partition) -> ComponentGraph | None:
    """Components of every block and the root edges between them, or ``None``.

    Fails when a block of two or more labels has a connected cherry graph,
    or when the components and root edges do not form a tree.
    """
    return _scaffold(_Problem(r, d), p)


def leaf_vertex(label: str) -> str:
    return "x" + label


def _assemble(prob: _Problem, cg: ComponentGraph) -> Network | None:
    codec = prob.codec
    n = codec.n
    code = codec.code
    registry: dict[int, str] = {}
    parents: dict[str, list[str]] = {}
    labels: dict[str, str] = {}
    inside = np.zeros(n, dtype=bool)
    for i, e in enumerate(cg.edges):
        s = sorted(code[lab] for lab in e.leaves)
        inside[:] = False
        inside[s] = True
        rows = prob.rows[inside[prob.rows].all(axis=1)] if len(prob.rows) else prob.rows
        try:
            tree = build_rows(rows, np.array(s, dtype=np.int64), codec)
        except IncompatibleTripletsError:
            return None
        if len(tree.children(tree.root)) != 2:
            return None
        root_id = f"r{i}"
        vid = {tree.root: root_id}
        masks: dict = {}
        for v in reversed(tree.vertices()):
            if tree.is_leaf(v):
                masks[v] = 1 << code[tree.label(v)]
            else:
                masks[v] = 0
                for c in tree.children(v):
                    masks[v] |= masks[c]
        for v in tree.vertices()[1:]:
            m = masks[v]
            if m not in registry:
                if tree.is_leaf(v):
                    name = leaf_vertex(tree.label(v))
                    labels[name] = tree.label(v)
                else:
                    name = f"t{len(registry) - len(labels)}"
                registry[m] = name
                parents[name] = []
            vid[v] = registry[m]
        for v in tree.vertices():
            for c in tree.children(v):
                p, ch = vid[v], vid[c]
                if p not in parents[ch]:
                    parents[ch].append(p)

    arcs = []
    n_hyb = 0
    for m, child in registry.items():
        ps = parents[child]
        if len(ps) == 1:
            arcs.append((ps[0], child))
        else:
            h = f"h{n_hyb}"
            n_hyb += 1
            arcs.extend((p, h) for p in ps)
            arcs.append((h, child))
    try:
        return Network(arcs, labels)
    except NetworkError:
        return None


def refine_and_assemble(cg: ComponentGraph, r: Iterable[Triplet]) -> Network | None:
    """Build the tree below each root edge and merge equal clusters into one network.

    Returns ``None`` if BUILD fails for some edge or its tree's root does not
    have exactly two children.
    """
    d = [Duet(*sorted(e.near_a | e.near_b)) for e in cg.edges if e.kind == "duet"]
    labels = frozenset().union(*cg.components)
    return _assemble(_Problem(r, d, labels), cg)


def _verify(net: Network, prob: _Problem) -> bool:
    if not validate_m_network(net).ok or not is_arboreal(net) or not is_stack_free(net):
        return False
    if net.label_set != frozenset(prob.codec.labels):
        return False
    keys = triplet_keys(net, prob.codec)
    if not np.array_equal(keys, prob.keys):
        return False
    return duet_keys(net, prob.codec, keys, CHAIN) == prob.duet_set


def ara(r: Iterable[Triplet], d: Iterable[Duet]) -> Network | None:
    """Rebuild the stack-free arboreal network inducing exactly ``r`` and ``d``.

    Returns ``None`` when no such network exists. Raises ``ValueError`` when
    fewer than three labels are involved.
    """
    prob = _Problem(r, d)
    if prob.codec.n < 3:
        raise ValueError("need at least three labels")
    part = _partition(prob)
    if part is None:
        return None
    cg = _scaffold(prob, part)
    if cg is None:
        return None
    net = _assemble(prob, cg)
    if net is None or not _verify(net, prob):
        return None
    return net


def component_graph_of(net: Network) -> LeafSetGraph:
    """Leaf sets left after deleting every degree-2 vertex, joined by the deleted vertices."""
    adj = underlying_graph(net).adjacency()
    removed = {v for v, ns in adj.items() if len(ns) == 2}
    comp_of: dict = {}
    comps = []
    for v in net.vertices:
        if v in removed or v in comp_of:
            continue
        idx = len(comps)
        comp_of[v] = idx
        stack = [v]
        members = []
        while stack:
            u = stack.pop()
            members.append(u)
            for w in adj[u]:
                if w not in removed and w not in comp_of:
                    comp_of[w] = idx
                    stack.append(w)
        comps.append(frozenset(net.labels[u] for u in members if u in net.labels))
    pairs = []
    for v in sorted(removed, key=str):
        a, b = sorted(adj[v], key=str)
        if a in comp_of and b in comp_of:
            pairs.append((comps[comp_of[a]], comps[comp_of[b]]))
    return LeafSetGraph.of(comps, pairs)
