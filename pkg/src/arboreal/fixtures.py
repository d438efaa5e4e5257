"""Small hand-drawn networks used throughout the tests, docs and CLI demos.

Leaf vertices are named ``x<label>``; roots ``r*``, hybrids ``h*``.
"""
from __future__ import annotations

from .network import Network


def _net(spec: str) -> Network:
    """Build a network from ``"a>b c>d ..."``; heads written ``#k`` are leaf ``k``."""
    arcs = []
    labels = {}
    for tok in spec.split():
        t, h = tok.split(">")
        if h.startswith("#"):
            lab = h[1:]
            h = "x" + lab
            labels[h] = lab
        arcs.append((t, h))
    return Network(arcs, labels)


# 2-rooted, X = {1..5}; induces 12|5, 13|5, 23|5, 23|1, 23|4 and no duets.
NB1 = _net("r1>#5 r1>u u>#1 u>h r2>#4 r2>h h>w w>#2 w>#3")

# Single root of out-degree 3: a rooted tree but not an m-network.
NA = _net("r>c c>#1 c>#2 r>#3 r>#4")

# The only arboreal network inducing exactly {12|3, 12|4}.
NB2 = _net("r1>#3 r1>h r2>#4 r2>h h>c c>#1 c>#2")

# NC and ND share the triplet 12|3 but differ in their duet.
NC = _net("r1>#3 r1>p p>#1 p>h r2>#4 r2>h h>#2")
ND = _net("r1>#3 r1>p p>#2 p>h r2>#4 r2>h h>#1")

# Arboreal with a stacked hybrid (h1 -> h2); same constraints as NF.
NE = _net("r1>#2 r1>h1 r2>#3 r2>h1 h1>h2 r3>#4 r3>h2 h2>#1")

# Banyan, stack-free: three roots over a single hybrid.
NF = _net("r1>#2 r1>h r2>#3 r2>h r3>#4 r3>h h>#1")

# X = {1..6}; (3,4) is a reticulated cherry and 56|4 is induced.
NC1 = _net("r1>t t>#1 t>#2 r1>u u>#3 u>h h>#4 r2>h r2>w w>#5 w>#6")

# X = {1..10}, four roots, hybrids h345 (three parents) and h9.
FX4 = _net(
    "r1>c12 c12>#1 c12>#2 r1>h345 r2>h345 r2>h9 r0>h9 h9>#9 r0>#10 "
    "h345>v345 v345>#3 v345>#4 v345>#5 r3>#8 r3>w w>h345 w>v67 v67>#6 v67>#7"
)

ALL = {"NB1": NB1, "NA": NA, "NB2": NB2, "NC": NC, "ND": ND, "NE": NE, "NF": NF, "NC1": NC1, "FX4": FX4}
