import pytest
from hypothesis import given
from hypothesis import strategies as st

from flucid.context import (
    Context,
    ContextSet,
    DefEnv,
    Dim,
    Var,
    construct_context,
    desugar_context_set,
    dot_dimension,
    override,
    query,
)
from flucid.errors import TYPE_ERROR, UNBOUND_DIMENSION, EvalError, ParseError

contexts = st.dictionaries(st.sampled_from("abcde"), st.integers(-5, 5), max_size=4).map(Context)


@pytest.mark.parametrize(
    "left, right, expected",
    [
        ({"d": 1}, {"d": 5}, {"d": 5}),
        ({}, {"e": 2}, {"e": 2}),
        ({"d": 1, "e": 2}, {"e": 9}, {"d": 1, "e": 9}),
    ],
)
def test_override_is_right_biased(left, right, expected):
    assert override(Context(left), right) == Context(expected)


def test_query():
    assert query(Context({"d": 0}), "d") == 0
    assert Context({"d": 3, "e": 7}).query("e") == 7
    with pytest.raises(EvalError) as info:
        Context({"d": 3}).query("e")
    assert info.value.kind == UNBOUND_DIMENSION
    assert "'e'" in str(info.value)


def test_context_is_hashable_and_order_free():
    assert Context({"d": 1, "e": 2}) == Context({"e": 2, "d": 1})
    assert hash(Context({"d": 1, "e": 2})) == hash(Context({"e": 2, "d": 1}))
    assert str(Context({"e": 2, "d": 1})) == "[d:1, e:2]"


@pytest.mark.parametrize(
    "pairs, expected",
    [
        ([("d", 2)], {"d": 2}),
        ([("d", 1), ("e", 2)], {"d": 1, "e": 2}),
        ([("d", 1), ("d", 2)], {"d": 2}),
    ],
)
def test_construct_context(pairs, expected):
    assert construct_context(pairs) == Context(expected)


def test_construct_context_checks_dimensions_and_tags():
    env = DefEnv({"d": Dim(), "x": Var(None)})
    assert construct_context([("d", 4)], env) == Context({"d": 4})
    with pytest.raises(EvalError) as info:
        construct_context([("x", 1)], env)
    assert info.value.kind == TYPE_ERROR
    with pytest.raises(EvalError):
        construct_context([("d", True)])


def test_context_sets():
    assert desugar_context_set([[("d", 1)], [("d", 2)]]) == ContextSet(
        [Context({"d": 1}), Context({"d": 2})]
    )
    assert desugar_context_set([[("d", 1)]]) == ContextSet([Context({"d": 1})])
    with pytest.raises(ParseError):
        desugar_context_set([])
    with pytest.raises(ParseError):
        desugar_context_set([[("d",)]])


def test_context_set_algebra():
    a, b, c = Context({"d": 1}), Context({"d": 2}), Context({"d": 3})
    s, t = ContextSet([a, b]), ContextSet([b, c])
    assert list(s.union(t)) == [a, b, c]
    assert list(s.intersection(t)) == [b]
    assert len(ContextSet([a, a])) == 1
    assert str(s) == "{[d:1], [d:2]}"


def test_compound_dimension():
    env = DefEnv({"evidence.time": Dim()})
    name = dot_dimension("evidence", "time", env)
    assert name == "evidence.time"
    assert Context({name: 4}).query(name) == 4
    with pytest.raises(EvalError) as info:
        dot_dimension("a", "b", env)
    assert info.value.kind == UNBOUND_DIMENSION


def test_defenv_override_leaves_original_alone():
    base = DefEnv({"d": Dim()})
    extended = base.override({"e": Dim()})
    assert "e" in extended and "e" not in base
    assert extended.uid != base.uid


@given(contexts, contexts, contexts)
def test_override_is_associative(p, q, r):
    assert p.override(q).override(r) == p.override(q.override(r))


@given(contexts)
def test_override_identities(p):
    assert p.override({}) == p
    assert Context().override(p) == p
    assert p.override(p) == p


@given(contexts, contexts)
def test_override_right_wins_on_shared_keys(p, q):
    r = p.override(q)
    for d in r:
        assert r[d] == (q[d] if d in q else p[d])
