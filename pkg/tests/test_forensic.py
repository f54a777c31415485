import itertools
import string

import pytest
from hypothesis import given
from hypothesis import strategies as st

from flucid import Program, combine, product
from flucid.values import BoundedStream, seq_eq

runs = st.lists(st.sampled_from("ABCxyz"), max_size=3).map(tuple)
run_streams = st.lists(runs, max_size=5).map(BoundedStream)


def cross(s1, s2):
    return [r1 + r2 for r2, r1 in itertools.product(s2, s1)]


def test_combine_examples():
    assert seq_eq(combine(BoundedStream([("A",), ("B",)]), "c"), [("A", "c"), ("B", "c")])
    assert seq_eq(combine(BoundedStream(), "c"), [])
    assert seq_eq(combine(BoundedStream([()]), "c"), [("c",)])
    assert seq_eq(combine(BoundedStream([("A",)]), ("b", "c")), [("A", "b", "c")])


def test_product_examples():
    s1 = BoundedStream([("A",), ("B",)])
    s2 = BoundedStream([("c",), ("d",)])
    assert seq_eq(product(s1, s2), [("A", "c"), ("B", "c"), ("A", "d"), ("B", "d")])
    assert seq_eq(product(BoundedStream(), s2), [])
    assert seq_eq(product(BoundedStream([("A",)]), BoundedStream([("c",)])), [("A", "c")])


def test_non_run_elements_are_rejected():
    with pytest.raises(TypeError):
        combine(BoundedStream([1]), "c")
    with pytest.raises(TypeError):
        product(BoundedStream([("A",)]), BoundedStream([2]))


def _stream(lengths, alphabet):
    letters = iter(alphabet)
    return BoundedStream(tuple(next(letters) for _ in range(n)) for n in lengths)


def _length_patterns(n):
    # every run-length pattern for short streams, the four rotations of 0..3 for longer ones
    if n <= 2:
        return list(itertools.product(range(4), repeat=n))
    base = [0, 1, 2, 3]
    return [tuple((base * 2)[k:k + n]) for k in range(4)]


def test_product_matches_brute_force_on_small_streams():
    checked = 0
    for n1, n2 in itertools.product(range(6), repeat=2):
        for p1 in _length_patterns(n1):
            for p2 in _length_patterns(n2):
                s1 = _stream(p1, string.ascii_uppercase)
                s2 = _stream(p2, string.ascii_lowercase)
                got = product(s1, s2)
                assert len(got) == n1 * n2
                assert seq_eq(got, cross(s1, s2))
                checked += 1
    assert checked > 1000


@given(run_streams, run_streams)
def test_product_cardinality_and_order(s1, s2):
    got = product(s1, s2)
    assert len(got) == len(s1) * len(s2)
    assert seq_eq(got, cross(s1, s2))


@given(run_streams, runs)
def test_combine_extends_every_run(s, e):
    got = combine(s, e)
    assert seq_eq(got, [r + e for r in s])


@given(run_streams, run_streams)
def test_product_is_concatenated_combines(s1, s2):
    pieces = [v for r in s2 for v in combine(s1, r)]
    assert seq_eq(product(s1, s2), pieces)


def test_language_forms_match_host_functions():
    src = """
    {op}(A, {arg}, d) where
      dimension d;
      A = nth(seq(seq(1), seq(2, 3)), #.d);
      B = nth(seq(seq(30), seq(40), seq(50)), #.d);
    end
    """
    a = BoundedStream([(1,), (2, 3)])
    b = BoundedStream([(30,), (40,), (50,)])
    via_product = Program(src.format(op="product", arg="B")).stream("d", 0, 20)
    assert seq_eq(via_product, cross(a, b))
    via_combine = Program(src.format(op="combine", arg="seq(7, 8)")).stream("d", 0, 20)
    assert seq_eq(via_combine, combine(a, (7, 8)))
