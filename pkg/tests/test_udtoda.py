from fractions import Fraction
import random

import pytest
from hypothesis import given, strategies as st

from tropfay.errors import InputError, InvalidState, UnsupportedGenus
from tropfay.sampling import ud_state
from tropfay.udtoda import (SpectralInvariants, UDState, evolve, evolve_step, invariants,
                            is_generic, on_curve, phase_shift, tropical_poly_F)

from oracles import invariants_bruteforce, tropical_F, ud_step_reference

S = UDState.of


def states(max_g=4):
    @st.composite
    def _s(draw):
        g = draw(st.integers(1, max_g))
        q = st.fractions(0, 10, max_denominator=4)
        Q = draw(st.lists(q, min_size=g + 1, max_size=g + 1))
        W = draw(st.lists(q, min_size=g + 1, max_size=g + 1))
        extra = draw(st.fractions(Fraction(1, 4), 5, max_denominator=4))
        W[0] += max(Fraction(0), sum(Q) - sum(W)) + extra
        return S(Q, W)
    return _s()


def test_phase_shift_examples():
    assert phase_shift(S((0, 0), (1, 1)), 1) == 0
    assert phase_shift(S((0, 1), (2, 3)), 1) == 0
    s = S((3, 1), (2, 3))
    assert phase_shift(s, 1) == 0 and phase_shift(s, 2) == -1


@pytest.mark.parametrize("Q,W,Q1,W1", [
    ((0, 0), (1, 1), (0, 0), (1, 1)),
    ((0, 1), (2, 3), (0, 1), (3, 2)),
    ((0, 1), (0, 5), (0, 1), (1, 4)),
])
def test_single_step_examples(Q, W, Q1, W1):
    assert evolve_step(S(Q, W)) == S(Q1, W1)


def test_invariant_examples():
    assert invariants(S((0, 1), (2, 3))).C == (6, 1, 0)
    assert invariants(S((0, 1), (0, 5))).C == (6, 1, 0)
    assert invariants(S((0, 0, 0), (1, 1, 1))).C == (3, 0, 0, 0)


def test_genericity_examples():
    assert is_generic(SpectralInvariants.of((11, 5, 2, 0)))
    assert is_generic(SpectralInvariants.of((6, 1, 0)))
    assert not is_generic(SpectralInvariants.of((4, 2, 0)))


def test_curve_membership_examples():
    C = SpectralInvariants.of((11, 5, 2, 0))
    assert tropical_poly_F(C, 0, 0)[1] >= 2
    assert on_curve(C, 0, 11)
    assert tropical_poly_F(C, -100, -1000)[1] == 1


def test_phase_space_is_enforced():
    with pytest.raises(InvalidState):
        S((1, 1), (1, 1))
    with pytest.raises(InputError):
        UDState(1, (0, 0, 0), (1, 1, 1))
    with pytest.raises(UnsupportedGenus):
        S((0,) * 8, (1,) * 8)


@given(states())
def test_step_matches_reference_formula(s):
    Qn, Wn = ud_step_reference(s.Q, s.W)
    assert evolve_step(s) == UDState(s.g, Qn, Wn)


@given(states())
def test_invariants_match_independent_set_bruteforce(s):
    assert invariants(s).C == invariants_bruteforce(s.Q, s.W)


@given(states(), st.integers(1, 6))
def test_invariants_are_conserved(s, steps):
    C = invariants(s)
    for t in evolve(s, steps):
        assert invariants(t) == C
        assert sum(t.Q) < sum(t.W)


@given(states(), st.integers(0, 5))
def test_evolution_commutes_with_rotation(s, k):
    assert evolve_step(s.rotate(k)) == evolve_step(s).rotate(k)


@given(states(max_g=3), st.fractions(-6, 6, max_denominator=2), st.fractions(-6, 20, max_denominator=2))
def test_F_agrees_with_term_enumeration(s, X, Y):
    C = invariants(s)
    assert tropical_poly_F(C, X, Y) == tropical_F(C.C, X, Y)


def test_json_round_trip():
    s = ud_state(random.Random(3), 3)
    assert UDState.from_json(s.to_json()) == s
    C = invariants(s)
    assert SpectralInvariants.from_json(C.to_json()) == C
