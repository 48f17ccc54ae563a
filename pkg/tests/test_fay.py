from fractions import Fraction
import random

import pytest
from hypothesis import given, settings, strategies as st

from tropfay.curve import build_graph, curve_data, locate
from tropfay.errors import DimensionMismatch, NonHalfIntegerBeta
from tropfay.fay import (AMBIGUOUS, HOLDS, VIOLATED, FayInput, alpha_for, bilinear_identity,
                         bilinear_sides, canonical_closed_forms, canonical_input,
                         canonical_integrals, fay_check, fay_signs, fay_terms,
                         half_period_checks, identity_holds, sign_pattern)
from tropfay.sampling import generic_invariants, graph_point, half_integer_beta, rational_vec
from tropfay.theta import theta, theta_char
from tropfay.udtoda import SpectralInvariants

h = Fraction(1, 2)
EX = curve_data(SpectralInvariants.of((11, 5, 2, 0)))
G1 = curve_data(SpectralInvariants.of((6, 1, 0)))


def ex_counter():
    pts = tuple(locate(EX, X, Y) for X, Y in ((3, 6), (0, 0), (0, 11), (3, 5)))
    return FayInput(EX, pts, (0, 0), (-h, 0), ((-1, -1), (0, 0), (-1, 0), (0, 0)))


def test_counterexample_terms():
    inp = ex_counter()
    A1, A2, A3, A4 = inp.lifts()
    assert (A3[0] - A1[0], A3[1] - A1[1]) == (2, 1)
    assert tuple(a - b for a, b in zip(A4, A2)) == (2, 1)
    assert tuple(a - b for a, b in zip(A3, A2)) == (-11, 0)
    assert tuple(a - b for a, b in zip(A4, A1)) == (15, 2)
    assert tuple(a - b for a, b in zip(A4, A3)) == (13, 1)
    assert tuple(a - b for a, b in zip(A2, A1)) == (13, 1)
    assert fay_terms(inp) == (-9, Fraction(-15, 2), Fraction(-17, 2))


def test_counterexample_verdict():
    v = fay_check(ex_counter())
    assert v.status == AMBIGUOUS and v.signs.s[0] is None
    assert v.satisfied == ()
    # the tie sits at (6, 7/2)
    tie = theta(EX.K, (6, Fraction(7, 2)))
    assert set(tie.argmin) == {(0, -1), (-1, -1)}


def test_alpha_and_beta_checks():
    assert alpha_for((-h, 0)) == (h, 0)
    assert alpha_for((0, h, -h)) == (-h, h, 0)
    with pytest.raises(NonHalfIntegerBeta):
        alpha_for((0, 0))
    with pytest.raises(NonHalfIntegerBeta):
        FayInput(EX, ex_counter().points, (0, 0), (Fraction(1, 3), 0))
    with pytest.raises(DimensionMismatch):
        FayInput(EX, ex_counter().points[:3], (0, 0), (h, 0))


def test_sign_pattern():
    assert sign_pattern((1, 1, -1)) == 2
    assert sign_pattern((-1, 1, 1)) == 0
    assert sign_pattern((1, 1, 1)) is None
    assert sign_pattern((None, 1, -1)) is None


def test_canonical_configuration_genus_one():
    inp = canonical_input(G1, (0,))
    sg = fay_signs(inp)
    assert sg.s == (1, 1, -1)
    v = fay_check(inp)
    assert v.status == HOLDS and v.index == 3
    assert bilinear_sides(G1, (0,)) == (0, 0)


def test_degenerate_configuration():
    G = build_graph(EX)
    P, Q = graph_point(random.Random(0), G), graph_point(random.Random(1), G)
    inp = FayInput(EX, (P, Q, P, Q), (1, 2), (-h, -h))
    A1, A2, _, _ = inp.lifts()
    d21 = tuple(a - b for a, b in zip(A2, A1))
    d12 = tuple(-x for x in d21)
    F1 = fay_terms(inp)[0]
    assert F1 == 2 * theta(EX.K, (1, 2)).value + theta_char(EX.K, (-h, -h), d21).value \
        + theta_char(EX.K, (-h, -h), d12).value


@given(st.integers(0, 10**6), st.integers(1, 4))
def test_bilinear_identity_random(seed, g):
    rng = random.Random(seed)
    cd = curve_data(generic_invariants(rng, g))
    assert canonical_integrals(cd) == canonical_closed_forms(cd)
    assert bilinear_identity(cd, rational_vec(rng, g, 30))


def test_bilinear_identity_examples():
    assert bilinear_identity(EX, (0, 0))
    lam = EX.lambda_vec
    assert bilinear_identity(EX, tuple(-x for x in lam))


@given(st.integers(0, 10**6), st.integers(1, 4))
def test_canonical_signs_force_holds3(seed, g):
    rng = random.Random(seed)
    cd = curve_data(generic_invariants(rng, g))
    v = fay_check(canonical_input(cd, rational_vec(rng, g, 30)))
    assert v.signs.s == (1, 1, -1)
    assert v.status == HOLDS and v.index == 3


@given(st.integers(0, 10**6), st.integers(1, 4))
def test_half_period_memberships(seed, g):
    assert half_period_checks(curve_data(generic_invariants(random.Random(seed), g))).ok


def test_half_period_examples():
    assert half_period_checks(EX).ok


@settings(max_examples=150)
@given(st.integers(0, 10**6), st.integers(1, 3))
def test_real_locus_never_violates(seed, g):
    rng = random.Random(seed)
    cd = curve_data(generic_invariants(rng, g))
    G = build_graph(cd)
    pts = tuple(graph_point(rng, G, real_only=True) for _ in range(4))
    w = tuple(tuple(rng.randint(-1, 1) for _ in range(g)) for _ in range(4))
    v = fay_check(FayInput(cd, pts, rational_vec(rng, g, 40), half_integer_beta(rng, g), w))
    assert v.status != VIOLATED
    if v.status == HOLDS:
        assert identity_holds(v.F, v.index - 1)


def test_counterexample_ambiguity_ignores_Z():
    # the signs depend only on the point integrals, so moving Z never resolves s_1
    rng = random.Random(7)
    base = ex_counter()
    for _ in range(20):
        Z = rational_vec(rng, 2, 20)
        v = fay_check(FayInput(EX, base.points, Z, base.beta, base.windings))
        assert v.status == AMBIGUOUS and v.signs.s[0] is None


def test_perturbed_points_resolve():
    # moving P1, P4 off the vertical edge onto the slanted chains gives determinate signs
    rng = random.Random(11)
    G = build_graph(EX)
    base = ex_counter()
    seen = 0
    for _ in range(80):
        pts = (graph_point(rng, G, real_only=True), base.points[1], base.points[2],
               graph_point(rng, G, real_only=True))
        v = fay_check(FayInput(EX, pts, rational_vec(rng, 2, 20), base.beta, base.windings))
        if v.status != AMBIGUOUS:
            seen += 1
            assert v.status == HOLDS and identity_holds(v.F, v.index - 1)
    assert seen > 20


def test_verdict_json_shape():
    js = fay_check(ex_counter()).to_json()
    assert js["F"] == ["-9/1", "-15/2", "-17/2"]
    assert js["s"][0] == "Ambiguous" and js["status"] == AMBIGUOUS
