"""Comparing networks: the duet-triplet distance and label-preserving isomorphism."""
from __future__ import annotations

import numpy as np

from .encoding import Codec, _require_arboreal, duet_keys, triplet_keys
from .network import Network


def duet_triplet_distance(n1: Network, n2: Network) -> int:
    """Size of the symmetric difference of the combined triplet and duet systems.

    Both networks must be arboreal and share a label set.
    """
    if n1.label_set != n2.label_set:
        raise ValueError(
            f"label sets differ: {sorted(n1.label_set ^ n2.label_set)} not shared"
        )
    _require_arboreal(n1)
    _require_arboreal(n2)
    codec = Codec(n1.label_set)
    k1 = triplet_keys(n1, codec)
    k2 = triplet_keys(n2, codec)
    d1 = duet_keys(n1, codec, k1)
    d2 = duet_keys(n2, codec, k2)
    return int(np.setxor1d(k1, k2, assume_unique=True).size) + len(d1 ^ d2)


def _signatures(net: Network, intern: dict) -> dict:
    """Bottom-up structural signature of each vertex, as an interned int."""
    sig = {}
    for v in reversed(net.topological_order()):
        key = (net.labels.get(v), tuple(sorted(sig[c] for c in net.children(v))))
        sig[v] = intern.setdefault(key, len(intern))
    return sig


def is_isomorphic(n1: Network, n2: Network) -> bool:
    """True iff some arc-preserving bijection maps each leaf to the leaf with its label."""
    if (
        len(n1.vertices) != len(n2.vertices)
        or len(n1.arcs) != len(n2.arcs)
        or n1.label_set != n2.label_set
    ):
        return False
    intern: dict = {}
    s1 = _signatures(n1, intern)
    s2 = _signatures(n2, intern)
    if sorted(s1.values()) != sorted(s2.values()):
        return False
    by_sig: dict = {}
    for w, s in s2.items():
        by_sig.setdefault(s, []).append(w)

    order = list(reversed(n1.topological_order()))
    fwd: dict = {}
    used: set = set()

    def fits(v, w) -> bool:
        if n1.in_degree(v) != n2.in_degree(w):
            return False
        return {fwd[c] for c in n1.children(v)} == set(n2.children(w))

    # depth-first over vertices, children before parents; iters[i] resumes the
    # candidate scan for order[i] after a backtrack
    iters: list = [None] * len(order)
    i = 0
    while 0 <= i < len(order):
        v = order[i]
        if iters[i] is None:
            iters[i] = iter(by_sig[s1[v]])
        else:
            used.discard(fwd.pop(v))
        for w in iters[i]:
            if w not in used and fits(v, w):
                fwd[v] = w
                used.add(w)
                i += 1
                break
        else:
            iters[i] = None
            i -= 1
    return i == len(order)
