import pickle

import pytest
from hypothesis import given

from flucid.values import (
    BOD,
    EOD,
    BoundedStream,
    defined_values,
    format_stream,
    format_value,
    is_bod,
    is_eod,
    is_marker,
    parse_stream,
    reverse,
    seq_eq,
    stream,
    strict_eq,
    truthy,
)

from strategies import elements, streams

X = stream(*range(1, 11))


def test_at_inside_and_out_of_range():
    assert X.at(0) == 1
    assert X.at(9) == 10
    assert X.at(-1) is BOD
    assert X.at(-7) is BOD
    assert X.at(10) is EOD
    assert X.at(11) is EOD


def test_empty_stream_is_eod_everywhere_from_zero():
    s = BoundedStream()
    assert s.at(0) is EOD
    assert s.at(-1) is BOD
    assert len(s) == 0


def test_marker_predicates():
    assert is_eod(EOD)
    assert not is_eod(5)
    assert not is_eod(BOD)
    assert is_bod(BOD) and not is_bod(EOD)
    assert is_marker(BOD) and is_marker(EOD) and not is_marker(0)


def test_markers_survive_pickling():
    assert pickle.loads(pickle.dumps(EOD)) is EOD
    assert pickle.loads(pickle.dumps(BOD)) is BOD


def test_markers_rejected_as_elements():
    with pytest.raises(ValueError):
        stream(1, EOD)


@pytest.mark.parametrize(
    "xs, expected",
    [([1, 2, 3], [3, 2, 1]), ([], []), (list(range(1, 11)), list(range(10, 0, -1)))],
)
def test_reverse(xs, expected):
    assert reverse(BoundedStream(xs)) == BoundedStream(expected)


def test_defined_values():
    assert defined_values(stream(1, 2)) == [1, 2]
    assert defined_values(BoundedStream()) == []


def test_strict_eq_keeps_booleans_and_ints_apart():
    assert not strict_eq(True, 1)
    assert not strict_eq(0, False)
    assert strict_eq(True, True)
    assert strict_eq((1, True), (1, True))
    assert not strict_eq((1, True), (1, 1))
    assert not strict_eq(EOD, BOD)
    assert stream(1, 0) != stream(True, False)


def test_seq_eq_checks_length():
    assert seq_eq([1, 2], [1, 2])
    assert not seq_eq([1, 2], [1])


def test_truthy():
    assert truthy(True) and not truthy(False)
    assert truthy(3) and not truthy(0)
    with pytest.raises(TypeError):
        truthy(EOD)


def test_format_value():
    assert format_value(True) == "T"
    assert format_value(False) == "F"
    assert format_value(-3) == "-3"
    assert format_value(EOD) == "eod"
    assert format_value((1, (2, False))) == "(1,(2,F))"


def test_format_and_parse_literal():
    s = stream(1, True, (2, 3), ())
    assert format_stream(s) == "[1 T (2,3) ()]"
    assert parse_stream("[1 T (2,3) ()]") == s
    assert parse_stream("[1, 2, F]") == stream(1, 2, False)


@pytest.mark.parametrize("bad", ["1 2", "[1 2", "[x]", "[1] 2", "[(1 2]"])
def test_parse_stream_rejects_malformed(bad):
    with pytest.raises(ValueError):
        parse_stream(bad)


@given(streams(elements))
def test_literal_round_trip(s):
    assert parse_stream(format_stream(s)) == s


@given(streams(elements))
def test_reverse_is_an_involution(s):
    assert reverse(reverse(s)) == s


@given(streams(elements))
def test_reverse_positions(s):
    r = reverse(s)
    n = len(s)
    assert all(strict_eq(r.at(i), s.at(n - 1 - i)) for i in range(n))


@given(streams(elements))
def test_equal_streams_hash_alike(s):
    assert hash(s) == hash(BoundedStream(list(s)))
