import pytest
from hypothesis import given, strategies as st

from arboreal.fixtures import ALL, FX4, NA, NB1, NB2, NC, NC1, NE, NF
from arboreal.network import (
    Network,
    NetworkError,
    NonSimpleGraphError,
    NotArborealError,
    UndirectedView,
    VertexClass,
    classify,
    descendant_tree,
    generalized_cherries,
    is_arboreal,
    is_banyan,
    is_stack_free,
    leaves_below,
    reticulated_cherries,
    suppress_degree_two,
    underlying_graph,
    validate_m_network,
)
from conftest import generated


def cherry():
    return Network([("r", "a"), ("r", "b")], {"a": "a", "b": "b"})


def test_classify_fixture_vertices():
    assert classify(NF, "h") is VertexClass.HYBRID
    assert classify(NF, "r1") is VertexClass.ROOT
    assert classify(NC, "p") is VertexClass.TREE_VERTEX
    for v in NB1.labels:
        assert classify(NB1, v) is VertexClass.LEAF


def test_classify_in1_out1_is_invalid():
    net = Network([("a", "b"), ("b", "c")], {"c": "1"})
    assert classify(net, "b") is VertexClass.INVALID


def test_classify_unknown_vertex():
    with pytest.raises(KeyError):
        classify(NF, "nope")


def test_validate_reports_root_outdegree():
    report = validate_m_network(NA)
    assert not report.ok
    assert [v.rule for v in report.violations] == ["root out-degree 3, must be 2"]


@pytest.mark.parametrize("name", ["NB1", "NB2", "NC", "ND", "NE", "NF", "NC1", "FX4"])
def test_fixtures_are_m_networks(name):
    assert validate_m_network(ALL[name]).ok


def test_validate_small_label_set():
    rules = [v.rule for v in validate_m_network(cherry()).violations]
    assert rules == ["|X| = 2 < 3"]


def test_validate_reports_everything():
    net = Network([("r", "a"), ("r", "b"), ("r", "c"), ("s", "t"), ("t", "d")], {"a": "1", "b": "2", "c": "3", "d": "4"})
    rules = {v.rule for v in validate_m_network(net).violations}
    assert "root out-degree 3, must be 2" in rules
    assert "underlying graph is not connected" in rules
    assert any("forbidden degree pattern" in r for r in rules)


def test_network_rejects_cycles_and_bad_labels():
    with pytest.raises(NetworkError):
        Network([("a", "b"), ("b", "a")], {})
    with pytest.raises(NetworkError):
        Network([("a", "a")], {})
    with pytest.raises(NetworkError):
        Network([("r", "a")], {"a": "bad label"})
    with pytest.raises(NetworkError):
        Network([("r", "a"), ("r", "b")], {"a": "1", "b": "1"})
    with pytest.raises(NetworkError):
        Network([("r", "a"), ("a", "b")], {"a": "1"})


def test_underlying_graph_counts():
    u = underlying_graph(FX4)
    assert (len(u.vertices), len(u.edges)) == (20, 19)
    u = underlying_graph(NC)
    assert (len(u.vertices), len(u.edges)) == (8, 7)
    u = underlying_graph(cherry())
    assert u.edges == {frozenset("ra"), frozenset("rb")}


def test_suppress_path_and_fixed_point():
    red = suppress_degree_two(underlying_graph(cherry()))
    assert red.vertices == ("a", "b")
    assert red.edges == {frozenset("ab")}
    star = UndirectedView(("c", "x", "y", "z"), frozenset({frozenset("cx"), frozenset("cy"), frozenset("cz")}), {})
    assert suppress_degree_two(star) == star


def test_suppress_fx4_gives_tree_on_labels():
    red = suppress_degree_two(underlying_graph(FX4))
    adj = red.adjacency()
    tips = sorted(FX4.labels[v] for v, ns in adj.items() if len(ns) == 1)
    assert tips == sorted(FX4.label_set)
    assert len(red.edges) == len(red.vertices) - 1
    assert all(len(ns) != 2 for ns in adj.values())


def test_suppress_detects_multi_edge():
    square = UndirectedView(
        ("a", "b", "c", "d"),
        frozenset({frozenset("ab"), frozenset("bc"), frozenset("cd"), frozenset("da")}),
        {},
    )
    with pytest.raises(NonSimpleGraphError):
        suppress_degree_two(square)


def test_is_arboreal():
    assert is_arboreal(NB1)
    assert is_arboreal(FX4)
    assert is_arboreal(cherry())
    # two roots sharing two hybrids close a cycle in the underlying graph
    na = Network(
        [("r1", "h1"), ("r1", "h2"), ("r2", "h1"), ("r2", "h2"), ("h1", "x1"), ("h2", "x2"), ("r3", "h2"), ("r3", "x3")],
        {"x1": "1", "x2": "2", "x3": "3"},
    )
    assert not is_arboreal(na)


def test_stack_free_and_banyan():
    assert not is_stack_free(NE)
    assert is_stack_free(NF)
    assert is_stack_free(cherry())
    assert is_banyan(NF)
    assert not is_banyan(NC)
    assert not is_banyan(NE)


def test_leaves_below():
    assert leaves_below(NB1, "r1") == {"1", "2", "3", "5"}
    assert leaves_below(NF, "h") == {"1"}
    assert leaves_below(NF, "x3") == {"3"}


def test_descendant_tree():
    assert descendant_tree(NB1, "r2").newick() == "((2,3),4)"
    assert descendant_tree(NC, "r1").newick() == "((1,2),3)"
    assert descendant_tree(cherry(), "r").newick() == "(a,b)"


def test_descendant_tree_rejects_meeting_paths():
    net = Network([("r", "a"), ("r", "b"), ("a", "h"), ("b", "h"), ("h", "x"), ("a", "y"), ("b", "z")], {"x": "1", "y": "2", "z": "3"})
    with pytest.raises(NotArborealError):
        descendant_tree(net, "r")


def test_reticulated_cherries():
    assert ("3", "4") in reticulated_cherries(NC1)
    # h has parents r2 (other child 4) and p (other child 1)
    assert reticulated_cherries(NC) == {("4", "2"), ("1", "2")}
    assert reticulated_cherries(cherry()) == set()


def test_generalized_cherries():
    assert frozenset("345") in generalized_cherries(FX4)
    assert generalized_cherries(NB2) == {frozenset("12")}
    assert generalized_cherries(NF) == set()


def test_relabel_and_rename():
    m = NC.relabel({"1": "a"})
    assert m.label_set == {"a", "2", "3", "4"}
    r = NC.rename_vertices({"p": "q"})
    assert "q" in r and "p" not in r
    assert r != NC


@given(st.integers(1, 400))
def test_generated_classes_partition_vertices(seed):
    net = generated(seed)
    assert validate_m_network(net).ok
    assert is_arboreal(net) and is_stack_free(net)
    u = underlying_graph(net)
    assert len(u.edges) == len(u.vertices) - 1
    for v in net.vertices:
        assert classify(net, v) is not VertexClass.INVALID
    for r in net.roots():
        assert descendant_tree(net, r).leaf_labels() == leaves_below(net, r)


@given(st.integers(1, 400))
def test_suppress_idempotent(seed):
    once = suppress_degree_two(underlying_graph(generated(seed)))
    assert suppress_degree_two(once) == once
