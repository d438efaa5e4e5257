import random

import pytest
from hypothesis import given, strategies as st

from arboreal.fixtures import ALL, FX4, NB2, NC, ND, NE, NF
from arboreal.metric import duet_triplet_distance, is_isomorphic
from arboreal.network import Network
from conftest import generated


def test_distance_examples():
    assert duet_triplet_distance(NB2, NC) == 2
    assert duet_triplet_distance(NE, NF) == 0
    assert duet_triplet_distance(FX4, FX4) == 0


def test_distance_needs_same_labels():
    with pytest.raises(ValueError):
        duet_triplet_distance(NB2, FX4)


def test_isomorphism_examples():
    assert not is_isomorphic(NC, ND)
    assert not is_isomorphic(NE, NF)
    for net in ALL.values():
        renamed = net.rename_vertices({v: f"v_{v}" for v in net.vertices})
        assert is_isomorphic(net, renamed)


def test_isomorphism_respects_labels():
    swapped = NC.relabel({"1": "2", "2": "1"})
    assert not is_isomorphic(NC, swapped)
    assert is_isomorphic(ND, swapped)


def test_isomorphism_backtracks_over_twins():
    # r1 and r2 look alike from below; only the second assignment of r1 works
    def net(names):
        a, b = names
        return Network(
            [(a, "h1"), (a, "h2"), (b, "h1"), (b, "h2"), ("h1", "x1"), ("h2", "x2"), ("r3", "h2"), ("r3", "x3")],
            {"x1": "1", "x2": "2", "x3": "3"},
        )

    assert is_isomorphic(net(("r1", "r2")), net(("q", "p")))


def shuffled(net, seed):
    rnd = random.Random(seed)
    names = [f"n{i}" for i in range(len(net.vertices))]
    rnd.shuffle(names)
    return net.rename_vertices(dict(zip(net.vertices, names)))


@given(st.integers(1, 2000))
def test_isomorphic_to_shuffled_copy(seed):
    net = generated(seed)
    assert is_isomorphic(net, shuffled(net, seed))
    assert is_isomorphic(shuffled(net, seed), net)


@given(st.integers(1, 500), st.integers(1, 500), st.integers(1, 500))
def test_metric_axioms(a, b, c):
    n = 7
    x, y, z = generated(a, n), generated(b, n), generated(c, n)
    dxy = duet_triplet_distance(x, y)
    assert dxy >= 0
    assert dxy == duet_triplet_distance(y, x)
    assert dxy <= duet_triplet_distance(x, z) + duet_triplet_distance(z, y)
    assert (dxy == 0) == is_isomorphic(x, y)
    assert is_isomorphic(x, y) == is_isomorphic(y, x)
    if is_isomorphic(x, y) and is_isomorphic(y, z):
        assert is_isomorphic(x, z)


def test_zero_distance_pairs_are_isomorphic():
    # small n gives many coincident networks, exercising d = 0 between distinct seeds
    nets = [generated(s, 4) for s in range(1, 80)]
    for x in nets[:30]:
        for y in nets:
            assert (duet_triplet_distance(x, y) == 0) == is_isomorphic(x, y)
