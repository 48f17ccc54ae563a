from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from tropfay.errors import InputError
from tropfay.rational import fmt, frac, inverse, matmul, row_times, vec

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=12)


def test_frac_accepts_exact_forms():
    assert frac("3/4") == Fraction(3, 4)
    assert frac(" -2 ") == -2
    assert frac("3.5") == Fraction(7, 2)
    assert frac(Fraction(1, 3)) == Fraction(1, 3)


@pytest.mark.parametrize("bad", [0.5, True, "x", "1/0", None, [1]])
def test_frac_rejects_inexact_or_malformed(bad):
    with pytest.raises(InputError):
        frac(bad)


@given(rationals)
def test_fmt_round_trips(q):
    assert frac(fmt(q)) == q


@given(st.lists(st.lists(rationals, min_size=3, max_size=3), min_size=3, max_size=3))
def test_inverse_is_two_sided(rows):
    M = tuple(vec(r) for r in rows)
    try:
        Mi = inverse(M)
    except Exception:
        return  # singular
    I = tuple(tuple(Fraction(int(i == j)) for j in range(3)) for i in range(3))
    assert matmul(M, Mi) == I and matmul(Mi, M) == I


def test_row_times_is_row_vector_product():
    assert row_times((1, 2), ((1, 0), (3, 4))) == (7, 8)
