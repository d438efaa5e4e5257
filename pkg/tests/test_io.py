import pytest
from hypothesis import given, strategies as st

from arboreal.encoding import Duet, induced_duets, induced_triplets
from arboreal.fixtures import ALL, FX4, NC, NF
from arboreal.io import ParseError, emit_dot, parse_constraints, parse_net, serialize_constraints, serialize_net
from arboreal.network import Network
from conftest import generated
from test_encoding import T


def test_serialize_nc():
    lines = serialize_net(NC).splitlines()
    assert [ln[0] for ln in lines] == ["A"] * 7 + ["L"] * 4
    assert lines[:7] == sorted(lines[:7])
    assert serialize_net(NC).endswith("\n")


@pytest.mark.parametrize("name", sorted(ALL))
def test_fixture_round_trip(name):
    text = serialize_net(ALL[name])
    assert parse_net(text) == ALL[name]
    assert serialize_net(parse_net(text)) == text


@given(st.integers(1, 1000))
def test_generated_round_trip(seed):
    net = generated(seed)
    assert parse_net(serialize_net(net)) == net


def test_parse_ignores_comments_and_blanks():
    text = "# a cherry\n\nA r a\nA r b\n  \nL a 1\nL b 2\n"
    net = parse_net(text)
    assert net.label_set == {"1", "2"}


@pytest.mark.parametrize(
    "text,line",
    [
        ("A x x\n", 1),
        ("A r a\nB r a\n", 2),
        ("A r a\nA r\n", 2),
        ("A r a-b\n", 1),
        ("A r a\nL q 1\n", 2),
        ("A r a\nA a b\nL a 1\n", 3),
        ("A r a\nA r b\nL a 1\nL b 1\n", 4),
    ],
)
def test_parse_errors_carry_line(text, line):
    with pytest.raises(ParseError) as err:
        parse_net(text)
    assert err.value.line == line


def test_parse_cycle_is_error():
    with pytest.raises(ParseError):
        parse_net("A a b\nA b a\n")


def test_constraints():
    r, d = parse_constraints("T 1 2 3\nT 2 1 3\n# x\nD 4 2\nD 2 4\n")
    assert r == {T("12|3")} and d == {Duet("2", "4")}
    assert serialize_constraints(r, d) == "T 1 2 3\nD 2 4\n"
    for bad in ("T 1 1 3\n", "D 2 2\n", "T 1 2\n", "X 1 2 3\n"):
        with pytest.raises(ParseError):
            parse_constraints(bad)


def test_fx4_constraint_file():
    text = serialize_constraints(induced_triplets(FX4), induced_duets(FX4))
    r, d = parse_constraints(text)
    assert (len(r), len(d)) == (31, 1)
    assert serialize_constraints(r, d) == text


def test_dot_shapes():
    dot = emit_dot(NF)
    assert dot.count("shape=box") == 3 and dot.count("shape=diamond") == 1
    dot = emit_dot(FX4)
    assert dot.count("shape=box") == 4 and dot.count("shape=diamond") == 2
    tree = Network([("r", "t"), ("r", "c"), ("t", "a"), ("t", "b")], {"a": "1", "b": "2", "c": "3"})
    assert "diamond" not in emit_dot(tree)
    assert emit_dot(FX4) == emit_dot(FX4)
    assert 'label="10"' in emit_dot(FX4)
