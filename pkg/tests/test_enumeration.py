"""Pairing, rational, sequence, and support codes are all bijections."""

from fractions import Fraction

from hypothesis import given, strategies as st

from wctree.enumeration import (calkin_wilf, calkin_wilf_index, pair,
                                rational_decode, rational_encode, seq_decode,
                                seq_encode, support_decode, support_encode,
                                unpair)

naturals = st.integers(min_value=0, max_value=10**9)


@given(naturals, naturals)
def test_pair_unpair_roundtrip(a, b):
    assert unpair(pair(a, b)) == (a, b)


@given(naturals)
def test_unpair_pair_roundtrip(n):
    a, b = unpair(n)
    assert pair(a, b) == n


def test_pair_is_monotone_enough():
    # first few diagonal values, fixed so the coding never drifts
    assert [pair(a, b) for a, b in [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1)]] == \
        [0, 1, 2, 3, 4]


def test_calkin_wilf_hits_small_rationals():
    seen = {calkin_wilf(n) for n in range(1, 200)}
    for q in [Fraction(1), Fraction(1, 2), Fraction(2, 3), Fraction(5, 4)]:
        assert q in seen


@given(st.integers(min_value=1, max_value=5000))
def test_calkin_wilf_index_inverts(n):
    assert calkin_wilf_index(calkin_wilf(n)) == n


nonzero_rationals = st.fractions(
    min_value=-100, max_value=100, max_denominator=64).filter(lambda q: q != 0)


@given(nonzero_rationals)
def test_rational_code_roundtrip(q):
    assert rational_decode(rational_encode(q)) == q


def test_zero_has_no_rational_code():
    import pytest
    with pytest.raises(ValueError):
        rational_encode(Fraction(0))


@given(st.lists(naturals, max_size=8))
def test_seq_code_roundtrip(xs):
    assert seq_decode(seq_encode(tuple(xs))) == tuple(xs)


def test_seq_code_small_values():
    assert seq_encode(()) == 0
    # every natural decodes to something that re-encodes to itself
    for n in range(300):
        assert seq_encode(seq_decode(n)) == n


@given(st.lists(
    st.tuples(st.integers(min_value=0, max_value=200), nonzero_rationals),
    max_size=6, unique_by=lambda t: t[0]))
def test_support_code_roundtrip(raw):
    entries = tuple(sorted(raw))
    assert support_decode(support_encode(entries)) == entries


def test_support_decode_total():
    for n in range(300):
        assert support_encode(support_decode(n)) == n
