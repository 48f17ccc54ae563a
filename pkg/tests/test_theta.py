from fractions import Fraction
import random

import pytest
from hypothesis import given, strategies as st

from tropfay.errors import DimensionMismatch, NotPositiveDefinite
from tropfay.theta import (Membership, in_domain, q_form, reduce, restricted_ls, theta,
                           theta_char)

from oracles import theta_box, theta_char_box

K1 = ((12,),)
K2 = ((18, -3), (-3, 6))
h = Fraction(1, 2)
qs = st.fractions(-40, 40, max_denominator=6)


def test_q_form_examples():
    assert q_form(K1, (0,), (0,), (7,)) == 0
    assert q_form(K1, (0,), (1,), (-11,)) == -5
    assert q_form(K2, (0, 0), (0, -1), (6, Fraction(7, 2))) == -h


def test_theta_examples():
    r = theta(K1, (0,))
    assert r.value == 0 and r.argmin == ((0,),)
    r = theta(K2, (6, Fraction(7, 2)))
    assert r.value == -h and set(r.argmin) == {(0, -1), (-1, -1)} and not r.unique
    r = theta(K1, (-11,))
    assert r.value == -5 and r.argmin == ((1,),)
    assert theta(K1, (12,)).value == -6


def test_theta_char_example():
    assert theta_char(K2, (-h, 0), (11, 0)).value == Fraction(-13, 4)


def test_reduce_examples():
    assert reduce(K1, (12,)) == ((0,), (-1,))
    assert reduce(K1, (3,))[1] == (0,)
    assert reduce(K2, (18, -3)) == ((0, 0), (-1, 0))


@given(qs)
def test_reduce_identity(z):
    Zr, l = reduce(K2, (z, z / 3))
    lK = [sum(l[i] * K2[i][j] for i in range(2)) for j in range(2)]
    v = theta(K2, Zr).value + Fraction(sum(lK[j] * l[j] for j in range(2)), 2) + sum(l[j] * [z, z / 3][j] for j in range(2))
    assert theta(K2, (z, z / 3)).value == v


def test_membership_examples():
    assert in_domain(K2, (6, Fraction(7, 2)), (0, -1)) is Membership.BOUNDARY
    assert in_domain(K1, (3,), (0,)) is Membership.INTERIOR
    assert in_domain(K1, (6,), (0,)) is Membership.BOUNDARY
    assert in_domain(K2, (Fraction(-15, 2), Fraction(-3, 2)), (0, 0)) is Membership.BOUNDARY


def test_restricted_ls_count():
    for g in range(1, 5):
        assert len(restricted_ls(g)) == g * (g + 1)


def test_errors():
    with pytest.raises(DimensionMismatch):
        theta(K2, (1,))
    with pytest.raises(NotPositiveDefinite):
        theta(((1, 2), (2, 1)), (0, 0))


@st.composite
def spd(draw, g):
    """Diagonally dominant symmetric integer matrices, plus a mild shear."""
    M = [[0] * g for _ in range(g)]
    for i in range(g):
        for j in range(i + 1, g):
            M[i][j] = M[j][i] = draw(st.integers(-4, 4))
    for i in range(g):
        M[i][i] = sum(abs(M[i][j]) for j in range(g) if j != i) + draw(st.integers(1, 8))
    return tuple(tuple(r) for r in M)


@given(st.integers(1, 3).flatmap(lambda g: st.tuples(spd(g), st.lists(qs, min_size=g, max_size=g))))
def test_theta_matches_box_enumeration(args):
    K, Z = args
    r = theta(K, Z)
    v, arg = theta_box(K, Z, R=4 if len(K) < 3 else 3)
    # reduced Z keeps the minimiser close, but the box is centred at 0
    if all(abs(x) <= 8 for x in Z):
        assert r.value == v and list(r.argmin) == arg
    else:
        assert r.value <= v


@given(st.lists(st.fractions(-8, 8, max_denominator=4), min_size=2, max_size=2),
       st.lists(st.sampled_from([-h, 0, h, 1]), min_size=2, max_size=2))
def test_theta_char_matches_box(Z, beta):
    v, arg = theta_char_box(K2, beta, Z)
    r = theta_char(K2, beta, Z)
    assert r.value == v and list(r.argmin) == arg


def test_theta_on_near_singular_forms():
    rng = random.Random(1)
    K = ((1000, 999), (999, 1000))
    for _ in range(50):
        Z = (Fraction(rng.randint(-3000, 3000), 7), Fraction(rng.randint(-3000, 3000), 5))
        a = theta(K, Z)
        # brute force around the real minimiser
        import itertools
        det = Fraction(1000 * 1000 - 999 * 999)
        c = (-(Z[0] * 1000 - Z[1] * 999) / det, -(-Z[0] * 999 + Z[1] * 1000) / det)
        best = min(Fraction(1, 2) * (1000 * m0 * m0 + 2 * 999 * m0 * m1 + 1000 * m1 * m1) + m0 * Z[0] + m1 * Z[1]
                   for m0 in range(int(c[0]) - 40, int(c[0]) + 41)
                   for m1 in range(int(c[1]) - 40, int(c[1]) + 41))
        assert a.value == best
