import pytest
from hypothesis import given, strategies as st

from arboreal.encoding import induced_triplets
from arboreal.fixtures import NF
from arboreal.generate import GenConfig, GenerationError, XorShift64Star, random_network
from arboreal.metric import is_isomorphic
from arboreal.network import is_arboreal, is_stack_free, validate_m_network


def test_xorshift_reference_values():
    rng = XorShift64Star(0)
    rng.state = 1
    # x ^= x>>12; x ^= x<<25; x ^= x>>27 from state 1, times the multiplier
    assert rng.next_u64() == (0x2000001 * 0x2545F4914F6CDD1D) % 2**64
    a, b = XorShift64Star(42), XorShift64Star(42)
    assert [a.next_u64() for _ in range(5)] == [b.next_u64() for _ in range(5)]
    assert XorShift64Star(0).state != 0


def test_xorshift_ranges():
    rng = XorShift64Star(7)
    assert all(0 <= rng.random() < 1 for _ in range(1000))
    assert set(rng.below(3) for _ in range(1000)) == {0, 1, 2}
    with pytest.raises(ValueError):
        rng.below(0)


def test_config_validation():
    with pytest.raises(ValueError):
        GenConfig(2)
    with pytest.raises(ValueError):
        GenConfig(5, target_roots=0)
    with pytest.raises(ValueError):
        GenConfig(5, weights={"grow-leaf": -1.0})
    with pytest.raises(ValueError):
        GenConfig(5, weights={"grow-leaf": 0.0})
    with pytest.raises(ValueError):
        GenConfig(5, weights={"teleport": 1.0})
    with pytest.raises(GenerationError):
        random_network(GenConfig(5, target_roots=5))
    with pytest.raises(GenerationError):
        random_network(GenConfig(5, weights={"root-cherry": 1.0}))


def test_three_leaf_single_root_is_a_triplet():
    for seed in range(20):
        net = random_network(GenConfig(3, seed, target_roots=1))
        assert len(net.roots()) == 1
        assert len(induced_triplets(net)) == 1


def test_deterministic():
    cfg = GenConfig(12, 99)
    assert random_network(cfg).arcs == random_network(cfg).arcs
    assert random_network(cfg).arcs != random_network(GenConfig(12, 100)).arcs


def test_nf_reachable():
    weights = {"grow-leaf": 0.0, "new-root-hybrid": 1.0, "extend-hybrid": 5.0}
    hits = [s for s in range(200) if is_isomorphic(random_network(GenConfig(4, s, 3, weights)), NF)]
    assert hits


@given(st.integers(3, 30), st.integers(0, 2**64 - 1), st.none() | st.integers(1, 29))
def test_always_valid(n, seed, roots):
    if roots is not None and roots > n - 1:
        return
    net = random_network(GenConfig(n, seed, roots))
    assert validate_m_network(net).ok
    assert is_arboreal(net) and is_stack_free(net)
    assert len(net.label_set) == n
    assert net.label_set == {str(i) for i in range(1, n + 1)}
    if roots is not None:
        assert len(net.roots()) == roots


def test_coverage_at_ten_leaves():
    nets = [random_network(GenConfig(10, s)) for s in range(1, 1001)]
    assert any(len(n.roots()) == 1 for n in nets)
    assert any(len(n.roots()) >= 3 for n in nets)
    assert any(any(len(n.parents(h)) >= 3 for h in n.hybrids()) for n in nets)
    assert any(any(len(n.children(v)) >= 3 for v in n.vertices) for n in nets)
    assert all(is_stack_free(n) for n in nets)
