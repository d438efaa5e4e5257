"""Triplets, duets and the constraint systems induced by arboreal networks."""
from __future__ import annotations

from collections.abc import Iterable
from itertools import chain

import numpy as np

from . import kernels
from .network import (
    Network,
    NotArborealError,
    descendant_tree,
    is_arboreal,
)

CHAIN = "chain"
LITERAL = "literal-path"


class Triplet(tuple):
    """Rooted triplet ``xy|z``: cherry ``{x, y}`` (stored with ``x < y``), outgroup ``z``."""

    __slots__ = ()

    def __new__(cls, a: str, b: str, c: str):
        if a == b or a == c or b == c:
            raise ValueError(f"triplet leaves must be distinct: {a!r}, {b!r}, {c!r}")
        if b < a:
            a, b = b, a
        return tuple.__new__(cls, (a, b, c))

    @property
    def cherry(self) -> tuple[str, str]:
        return self[0], self[1]

    @property
    def outgroup(self) -> str:
        return self[2]

    @property
    def leaves(self) -> frozenset[str]:
        return frozenset(self)

    def __repr__(self):
        sep = "" if all(len(s) == 1 for s in self) else " "
        return f"{self[0]}{sep}{self[1]}|{self[2]}"

    __str__ = __repr__


class Duet(tuple):
    """Unordered leaf pair ``<x, y>`` stored with ``x < y``."""

    __slots__ = ()

    def __new__(cls, a: str, b: str):
        if a == b:
            raise ValueError(f"duet leaves must be distinct: {a!r}")
        if b < a:
            a, b = b, a
        return tuple.__new__(cls, (a, b))

    @property
    def leaves(self) -> frozenset[str]:
        return frozenset(self)

    def __repr__(self):
        return f"<{self[0]},{self[1]}>"

    __str__ = __repr__


_new = tuple.__new__

TripletSystem = frozenset  # frozenset[Triplet]
DuetSystem = frozenset  # frozenset[Duet]


def support(r: Iterable[Triplet], d: Iterable[Duet] = ()) -> frozenset[str]:
    return frozenset(chain.from_iterable(r)) | frozenset(chain.from_iterable(d))


def restrict_triplets(sys: Iterable[Triplet], keep: Iterable[str]) -> frozenset[Triplet]:
    keep = frozenset(keep)
    return frozenset(t for t in sys if t[0] in keep and t[1] in keep and t[2] in keep)


class Codec:
    """Dense integer codes for labels, assigned in sorted label order.

    Triplets are packed into single int64 keys ``(x*n + y)*n + z`` so whole
    systems can be sorted, deduplicated and compared as numpy arrays.
    """

    def __init__(self, labels: Iterable[str]):
        self.labels = sorted(set(labels))
        self.code = {lab: i for i, lab in enumerate(self.labels)}
        self.n = len(self.labels)

    def triplet_rows(self, sys: Iterable[Triplet]) -> np.ndarray:
        flat = np.fromiter(map(self.code.__getitem__, chain.from_iterable(sys)), dtype=np.int64)
        return flat.reshape(-1, 3)

    def duet_rows(self, sys: Iterable[Duet]) -> np.ndarray:
        code = self.code
        return np.array([code[s] for d in sorted(sys) for s in d], dtype=np.int64).reshape(-1, 2)

    def keys(self, rows: np.ndarray) -> np.ndarray:
        n = self.n
        return np.unique((rows[:, 0] * n + rows[:, 1]) * n + rows[:, 2])

    def rows(self, keys: np.ndarray) -> np.ndarray:
        n = self.n
        rest, z = np.divmod(keys, n)
        x, y = np.divmod(rest, n)
        return np.stack([x, y, z], axis=1).astype(np.int64)

    def decode_triplets(self, rows: np.ndarray) -> frozenset[Triplet]:
        labs = self.labels
        return frozenset(_new(Triplet, (labs[a], labs[b], labs[c])) for a, b, c in rows.tolist())

    def decode_duets(self, rows: Iterable) -> frozenset[Duet]:
        labs = self.labels
        return frozenset(_new(Duet, (labs[a], labs[b])) for a, b in rows)


def _require_arboreal(net: Network):
    if not is_arboreal(net):
        raise NotArborealError("network is not arboreal")


def _root_vertices(net: Network) -> list:
    return [v for v in net.vertices if net.in_degree(v) == 0 and net.out_degree(v) >= 1]


def triplet_keys(net: Network, codec: Codec) -> np.ndarray:
    """Sorted unique triplet keys induced by ``net`` (no arboreal check)."""
    parts = []
    for r in _root_vertices(net):
        tree = descendant_tree(net, r)
        parts.append(kernels.tree_triplets(*tree.csr(codec.code)))
    if not parts:
        return np.empty(0, dtype=np.int64)
    return codec.keys(np.concatenate(parts))


def induced_triplets(net: Network) -> frozenset[Triplet]:
    """All triplets ``xy|z`` displayed below some root of an arboreal network."""
    _require_arboreal(net)
    codec = Codec(net.label_set)
    return codec.decode_triplets(codec.rows(triplet_keys(net, codec)))


def _covered_pairs(keys: np.ndarray, codec: Codec) -> set:
    rows = codec.rows(keys)
    n = codec.n
    pk = np.concatenate(
        [rows[:, 0] * n + rows[:, 1], np.minimum(rows[:, 0], rows[:, 2]) * n + np.maximum(rows[:, 0], rows[:, 2]),
         np.minimum(rows[:, 1], rows[:, 2]) * n + np.maximum(rows[:, 1], rows[:, 2])]
    )
    return set(np.unique(pk).tolist())


def _single_leaf_end(net: Network, v):
    """Follow out-degree-1 vertices down from ``v``; the leaf reached, else ``None``."""
    while net.out_degree(v) == 1:
        v = net.children(v)[0]
    return v if v in net.labels else None


def duet_witnesses(net: Network) -> dict:
    """Chain-mode duet candidates mapped to the roots that witness them.

    A root witnesses ``<x, y>`` when it has exactly two children and each
    child leads, through out-degree-1 vertices only, to a single leaf.
    """
    out: dict = {}
    for r in _root_vertices(net):
        kids = net.children(r)
        if len(kids) != 2:
            continue
        ends = [_single_leaf_end(net, c) for c in kids]
        if None in ends:
            continue
        d = Duet(net.labels[ends[0]], net.labels[ends[1]])
        out.setdefault(d, []).append(r)
    return out


def _literal_candidates(net: Network) -> set:
    leaves = sorted(net.labels, key=lambda v: net.labels[v])
    adj = {v: set(net.children(v)) | set(net.parents(v)) for v in net.vertices}
    found = set()
    for i, s in enumerate(leaves):
        # count degree-2 vertices strictly inside each path from s
        count = {s: 0}
        stack = [s]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w in count:
                    continue
                count[w] = count[u] + (1 if len(adj[u]) == 2 and u != s else 0)
                stack.append(w)
        for t in leaves[i + 1:]:
            if count.get(t) == 1:
                found.add(Duet(net.labels[s], net.labels[t]))
    return found


def duet_keys(net: Network, codec: Codec, tkeys: np.ndarray, mode: str = CHAIN) -> frozenset[Duet]:
    if mode == CHAIN:
        cands = set(duet_witnesses(net))
    elif mode in (LITERAL, "literal"):
        cands = _literal_candidates(net)
    else:
        raise ValueError(f"unknown duet mode {mode!r}")
    covered = _covered_pairs(tkeys, codec)
    n = codec.n
    code = codec.code
    return frozenset(d for d in cands if code[d[0]] * n + code[d[1]] not in covered)


def induced_duets(net: Network, mode: str = CHAIN) -> frozenset[Duet]:
    """Duets induced by an arboreal network.

    ``mode="chain"`` (default): ``<x, y>`` for every root whose two children
    each reach a single leaf through hybrids only, and which no induced
    triplet covers. ``mode="literal-path"``: pairs joined by an undirected
    path through exactly one degree-2 vertex, again not covered by a triplet.
    """
    _require_arboreal(net)
    codec = Codec(net.label_set)
    return duet_keys(net, codec, triplet_keys(net, codec), mode)
