"""Rooted phylogenetic trees (polytomies allowed)."""
from __future__ import annotations

from collections.abc import Hashable, Mapping

import numpy as np


class TreeError(ValueError):
    """Raised when a rooted tree would violate its structural invariants."""


class RootedTree:
    """A rooted tree whose leaves carry distinct labels.

    Internal vertices have at least two children. Children lists are kept
    ordered by the smallest label below each child, so two trees built from
    the same data compare and print identically.
    """

    __slots__ = ("root", "_children", "_labels", "_min_label", "_leafsets")

    def __init__(
        self,
        root: Hashable,
        children: Mapping[Hashable, list | tuple],
        labels: Mapping[Hashable, str],
    ):
        kids = {v: tuple(cs) for v, cs in children.items() if cs}
        seen = {root}
        order = [root]
        for v in order:
            for c in kids.get(v, ()):
                if c in seen:
                    raise TreeError(f"vertex {c!r} reached twice")
                seen.add(c)
                order.append(c)
        min_label: dict[Hashable, str] = {}
        for v in reversed(order):
            cs = kids.get(v, ())
            if not cs:
                if v not in labels:
                    raise TreeError(f"leaf {v!r} has no label")
                min_label[v] = labels[v]
            else:
                if len(cs) == 1:
                    raise TreeError(f"vertex {v!r} has exactly one child")
                if v in labels:
                    raise TreeError(f"labeled vertex {v!r} has children")
                min_label[v] = min(min_label[c] for c in cs)
        leaf_labels = {v: labels[v] for v in order if v not in kids}
        if len(set(leaf_labels.values())) != len(leaf_labels):
            raise TreeError("leaf labels are not distinct")
        self.root = root
        self._children = {v: tuple(sorted(cs, key=min_label.__getitem__)) for v, cs in kids.items()}
        self._labels = leaf_labels
        self._min_label = min_label
        self._leafsets: dict | None = None

    def children(self, v) -> tuple:
        return self._children.get(v, ())

    def is_leaf(self, v) -> bool:
        return v not in self._children

    def label(self, v) -> str:
        return self._labels[v]

    @property
    def labels(self) -> dict:
        return dict(self._labels)

    def vertices(self) -> list:
        """Vertices in preorder."""
        out = [self.root]
        for v in out:
            out.extend(self._children.get(v, ()))
        return out

    def leaf_labels(self) -> frozenset[str]:
        return frozenset(self._labels.values())

    def leaf_set(self, v) -> frozenset[str]:
        if self._leafsets is None:
            sets: dict = {}
            for u in reversed(self.vertices()):
                if u in self._labels:
                    sets[u] = frozenset((self._labels[u],))
                else:
                    sets[u] = frozenset().union(*(sets[c] for c in self._children[u]))
            self._leafsets = sets
        return self._leafsets[v]

    def clusters(self) -> frozenset[frozenset[str]]:
        """Leaf sets of all vertices (the usual cluster encoding of a tree)."""
        return frozenset(self.leaf_set(v) for v in self.vertices())

    def newick(self) -> str:
        """Nested-parentheses shape string, e.g. ``((1,2),3)``."""

        def rec(v):
            if v in self._labels:
                return self._labels[v]
            return "(" + ",".join(rec(c) for c in self._children[v]) + ")"

        return rec(self.root)

    def to_arcs(self) -> list[tuple]:
        return [(v, c) for v in self.vertices() for c in self._children.get(v, ())]

    def csr(self, code_of: Mapping[str, int]):
        """Integer CSR form consumed by :func:`arboreal.kernels.tree_triplets`."""
        verts = self.vertices()
        index = {v: i for i, v in enumerate(verts)}
        ptr = np.zeros(len(verts) + 1, dtype=np.int64)
        idx = []
        leaf_code = np.full(len(verts), -1, dtype=np.int64)
        for i, v in enumerate(verts):
            cs = self._children.get(v, ())
            ptr[i + 1] = ptr[i] + len(cs)
            idx.extend(index[c] for c in cs)
            if v in self._labels:
                leaf_code[i] = code_of[self._labels[v]]
        return ptr, np.array(idx, dtype=np.int64), leaf_code, 0

    def __eq__(self, other):
        if not isinstance(other, RootedTree):
            return NotImplemented
        return self.clusters() == other.clusters()

    def __hash__(self):
        return hash(self.clusters())

    def __repr__(self):
        return f"RootedTree({self.newick()})"
