"""The compiled kernels and the pure-Python fallback must agree exactly."""
import numpy as np
import pytest
from hypothesis import given, strategies as st

from arboreal import _kernels_py, kernels
from arboreal.encoding import Codec, triplet_keys
from arboreal.network import descendant_tree
from conftest import generated

compiled = pytest.importorskip("arboreal._kernels")


def trip_arrays(max_codes=9):
    return st.integers(3, max_codes).flatmap(
        lambda n: st.tuples(
            st.just(n),
            st.lists(st.permutations(range(n)).map(lambda p: (min(p[0], p[1]), max(p[0], p[1]), p[2])), max_size=25),
            st.sets(st.integers(0, n - 1), min_size=1),
        )
    )


def as_rows(rows, width=3):
    return np.array(rows, dtype=np.int64).reshape(-1, width)


def same(a, b):
    if a is None or b is None:
        return a is None and b is None
    return np.array_equal(a, b)


def test_backend_selected():
    assert kernels.BACKEND in ("cython", "python")


@given(trip_arrays())
def test_build_backends_agree(case):
    n, rows, leaves = case
    trip = as_rows(rows)
    leaves = np.array(sorted(leaves), dtype=np.int64)
    p_py, f_py = _kernels_py.build(trip, leaves, n)
    p_c, f_c = compiled.build(trip, leaves, n)
    assert same(p_py, p_c) and same(f_py, f_c)


def build_with_limit(module, limit, *args):
    original = module.DENSE_MAX
    module.DENSE_MAX = limit
    try:
        return module.build(*args)
    finally:
        module.DENSE_MAX = original


@pytest.mark.parametrize("module", [compiled, _kernels_py], ids=["cython", "python"])
@given(case=trip_arrays())
def test_build_list_path_agrees(module, case):
    n, rows, leaves = case
    trip = as_rows(rows)
    leaves = np.array(sorted(leaves), dtype=np.int64)
    p_dense, f_dense = build_with_limit(module, 10**6, trip, leaves, n)
    p_list, f_list = build_with_limit(module, 0, trip, leaves, n)
    assert same(p_dense, p_list) and same(f_dense, f_list)


@given(st.integers(1, 300))
def test_build_backends_agree_on_network_systems(seed):
    net = generated(seed, 6 + seed % 20, target_roots=1 + seed % 3)
    codec = Codec(net.label_set)
    rows = codec.rows(triplet_keys(net, codec))
    leaves = np.arange(codec.n, dtype=np.int64)
    results = [
        build_with_limit(module, limit, rows, leaves, codec.n)
        for module in (compiled, _kernels_py)
        for limit in (0, 10**6)
    ]
    for parent, failed in results[1:]:
        assert same(parent, results[0][0]) and same(failed, results[0][1])


@given(trip_arrays(), st.lists(st.tuples(st.integers(0, 8), st.integers(0, 8)), max_size=4))
def test_closure_blocks_agree(case, duets):
    n, rows, _ = case
    duets = as_rows([(a, b) for a, b in duets if a < b < n], 2)
    trip = as_rows(rows)
    assert same(_kernels_py.closure_blocks(trip, duets, n), compiled.closure_blocks(trip, duets, n))


@given(st.integers(1, 12).flatmap(lambda n: st.tuples(st.just(n), st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))))))
def test_pair_components_agree(case):
    n, pairs = case
    a = np.array([p[0] for p in pairs], dtype=np.int64)
    b = np.array([p[1] for p in pairs], dtype=np.int64)
    c_py = _kernels_py.pair_components(a, b, n)
    assert np.array_equal(c_py, compiled.pair_components(a, b, n))
    # components are numbered in order of their smallest vertex
    firsts = [int(np.flatnonzero(c_py == k)[0]) for k in range(c_py.max() + 1)]
    assert firsts == sorted(firsts)


@given(st.integers(1, 500))
def test_tree_triplets_agree(seed):
    net = generated(seed)
    codec = Codec(net.label_set)
    for r in net.roots():
        args = descendant_tree(net, r).csr(codec.code)
        assert np.array_equal(_kernels_py.tree_triplets(*args), compiled.tree_triplets(*args))


def test_wrappers_accept_empty_input():
    parent, failed = kernels.build([], [0, 1, 2], 3)
    assert failed is None and parent.tolist() == [3, 3, 3, -1]
    assert kernels.closure_blocks([], [], 3).tolist() == [-1, -1, -1]
    assert kernels.pair_components([], [], 3).tolist() == [0, 1, 2]
