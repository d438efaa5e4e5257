"""The BUILD algorithm: triplet compatibility and tree construction with polytomies."""
from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass

import numpy as np

from . import kernels
from .encoding import Codec, Triplet
from .tree import RootedTree


class IncompatibleTripletsError(ValueError):
    """No rooted tree displays the triplets; ``leaves`` is where BUILD got stuck."""

    def __init__(self, leaves: Iterable[str]):
        self.leaves = frozenset(leaves)
        super().__init__(f"cluster graph is connected on {sorted(self.leaves)}")


@dataclass(frozen=True)
class ClusterGraph:
    vertices: tuple
    edges: frozenset

    def components(self) -> list[frozenset]:
        """Connected components, ordered by smallest member."""
        idx = {v: i for i, v in enumerate(self.vertices)}
        a = [idx[min(e)] for e in self.edges]
        b = [idx[max(e)] for e in self.edges]
        comp = kernels.pair_components(a, b, len(self.vertices))
        groups: dict[int, set] = {}
        for v, c in zip(self.vertices, comp.tolist()):
            groups.setdefault(c, set()).add(v)
        return [frozenset(groups[k]) for k in sorted(groups)]


def cluster_graph(sys: Iterable[Triplet], leaves: Iterable[str]) -> ClusterGraph:
    """Graph on ``leaves`` with an edge ``{a, b}`` per triplet ``ab|c`` inside ``leaves``."""
    leaves = frozenset(leaves)
    edges = frozenset(
        frozenset(t[:2]) for t in sys if t[0] in leaves and t[1] in leaves and t[2] in leaves
    )
    return ClusterGraph(tuple(sorted(leaves)), edges)


def tree_from_parents(parent: np.ndarray, leaf_codes: np.ndarray, codec: Codec) -> RootedTree:
    """Wrap a kernel parent array (leaves first) as a RootedTree with preorder ids."""
    parent = parent.tolist()
    n_leaves = len(leaf_codes)
    children: dict[int, list] = {}
    top = None
    for v, p in enumerate(parent):
        if p < 0:
            top = v
        else:
            children.setdefault(p, []).append(v)
    labels = {i: codec.labels[c] for i, c in enumerate(leaf_codes.tolist())}
    raw = RootedTree(top, children, labels)
    order = {v: i for i, v in enumerate(raw.vertices())}
    return RootedTree(
        order[top],
        {order[v]: [order[c] for c in raw.children(v)] for v in order if not raw.is_leaf(v)},
        {order[v]: labels[v] for v in order if v < n_leaves},
    )


def build_rows(rows: np.ndarray, leaf_codes: np.ndarray, codec: Codec) -> RootedTree:
    """BUILD on integer-coded triplets; ``leaf_codes`` sorted ascending."""
    parent, failed = kernels.build(rows, leaf_codes, codec.n)
    if parent is None:
        raise IncompatibleTripletsError(codec.labels[c] for c in failed.tolist())
    return tree_from_parents(parent, leaf_codes, codec)


def build(sys: Iterable[Triplet], leaves: Iterable[str]) -> RootedTree:
    """A rooted tree on exactly ``leaves`` displaying every triplet that fits inside them.

    Triplets mentioning labels outside ``leaves`` are ignored. Children of a
    vertex are the components of the cluster graph, so polytomies appear
    wherever the triplets leave structure unresolved. Raises
    :class:`IncompatibleTripletsError` when no such tree exists.
    """
    leaves = frozenset(leaves)
    if not leaves:
        raise ValueError("cannot build a tree on an empty leaf set")
    sys = [t for t in sys if t[0] in leaves and t[1] in leaves and t[2] in leaves]
    codec = Codec(leaves)
    leaf_codes = np.arange(codec.n, dtype=np.int64)
    return build_rows(codec.triplet_rows(sys), leaf_codes, codec)
