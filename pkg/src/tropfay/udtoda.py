"""Ultra-discrete periodic Toda lattice: phase space, time evolution and
its conserved tropical polynomials C_{-1}, C_0, ..., C_g.

Sites are 1-based and cyclic modulo g+1, matching the usual lattice
notation; internally the tuples are 0-based.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InputError, InvalidState, UnsupportedGenus
from .rational import fmt_vec, vec

MAX_GENUS = 6


def check_genus(g: int) -> None:
    if not isinstance(g, int) or isinstance(g, bool):
        raise InputError(f"genus must be an int, got {g!r}")
    if not 1 <= g <= MAX_GENUS:
        raise UnsupportedGenus(f"genus {g} outside supported range 1..{MAX_GENUS}")


@dataclass(frozen=True)
class UDState:
    g: int
    Q: tuple[Fraction, ...]
    W: tuple[Fraction, ...]

    def __post_init__(self):
        check_genus(self.g)
        object.__setattr__(self, "Q", vec(self.Q))
        object.__setattr__(self, "W", vec(self.W))
        if len(self.Q) != self.g + 1 or len(self.W) != self.g + 1:
            raise InputError(f"Q and W need g+1 = {self.g + 1} entries")
        if not sum(self.Q) < sum(self.W):
            raise InvalidState(f"sum(Q) = {sum(self.Q)} is not below sum(W) = {sum(self.W)}")

    @classmethod
    def of(cls, Q: Sequence, W: Sequence) -> "UDState":
        return cls(len(Q) - 1, tuple(Q), tuple(W))

    def q(self, n: int) -> Fraction:
        return self.Q[(n - 1) % (self.g + 1)]

    def w(self, n: int) -> Fraction:
        return self.W[(n - 1) % (self.g + 1)]

    def rotate(self, k: int = 1) -> "UDState":
        """Site n of the result holds site n+k of self."""
        N = self.g + 1
        return UDState(self.g, tuple(self.Q[(i + k) % N] for i in range(N)),
                       tuple(self.W[(i + k) % N] for i in range(N)))

    def to_json(self) -> dict:
        return {"g": self.g, "Q": fmt_vec(self.Q), "W": fmt_vec(self.W)}

    @classmethod
    def from_json(cls, obj: dict) -> "UDState":
        try:
            Q, W = obj["Q"], obj["W"]
        except (KeyError, TypeError) as exc:
            raise InputError("state JSON needs keys 'Q' and 'W'") from exc
        g = obj.get("g", len(Q) - 1)
        return cls(g, tuple(Q), tuple(W))


@dataclass(frozen=True)
class SpectralInvariants:
    """C = (C_{-1}, C_0, ..., C_g)."""

    g: int
    C: tuple[Fraction, ...]

    def __post_init__(self):
        check_genus(self.g)
        object.__setattr__(self, "C", vec(self.C))
        if len(self.C) != self.g + 2:
            raise InputError(f"C needs g+2 = {self.g + 2} entries, got {len(self.C)}")

    @classmethod
    def of(cls, C: Sequence) -> "SpectralInvariants":
        return cls(len(C) - 2, tuple(C))

    def c(self, i: int) -> Fraction:
        """C_i for -1 <= i <= g."""
        if not -1 <= i <= self.g:
            raise IndexError(i)
        return self.C[i + 1]

    def to_json(self) -> dict:
        return {"g": self.g, "C": fmt_vec(self.C)}

    @classmethod
    def from_json(cls, obj) -> "SpectralInvariants":
        if isinstance(obj, dict):
            C = obj.get("C")
            if C is None:
                raise InputError("invariants JSON needs key 'C'")
            g = obj.get("g", len(C) - 2)
            return cls(g, tuple(C))
        return cls.of(tuple(obj))


def phase_shift(state: UDState, n: int) -> Fraction:
    """X_n = min_{k=0..g} sum_{l=1..k} (W_{n-l} - Q_{n-l}); always <= 0."""
    best = acc = Fraction(0)
    for l in range(1, state.g + 1):
        acc += state.w(n - l) - state.q(n - l)
        if acc < best:
            best = acc
    return best


def evolve_step(state: UDState) -> UDState:
    g = state.g
    Qn = []
    for n in range(1, g + 2):
        Qn.append(min(state.w(n), state.q(n) - phase_shift(state, n)))
    Wn = [state.q(n + 1) + state.w(n) - Qn[n - 1] for n in range(1, g + 2)]
    if not sum(Qn) < sum(Wn):
        # conservation of C_{-1} and C_0 makes this unreachable
        raise AssertionError("evolution left the phase space")
    return UDState(g, tuple(Qn), tuple(Wn))


def evolve(state: UDState, steps: int) -> list[UDState]:
    """Orbit [state, step(state), ...] of length steps+1."""
    orbit = [state]
    for _ in range(steps):
        orbit.append(evolve_step(orbit[-1]))
    return orbit


def _path_min_sets(a: Sequence[Fraction], kmax: int) -> list:
    """Minimum weight of k pairwise non-adjacent entries of a path, k = 0..kmax.

    None marks an impossible size.
    """
    # excl[k]: best with last entry unchosen; incl[k]: last entry chosen
    excl = [Fraction(0)] + [None] * kmax
    incl = [None] * (kmax + 1)
    for x in a:
        new_excl = [_min2(excl[k], incl[k]) for k in range(kmax + 1)]
        new_incl = [None] + [None if excl[k - 1] is None else excl[k - 1] + x
                             for k in range(1, kmax + 1)]
        excl, incl = new_excl, new_incl
    return [_min2(excl[k], incl[k]) for k in range(kmax + 1)]


def _min2(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return a if a <= b else b


def cyclic_independent_minima(seq: Sequence[Fraction], kmax: int) -> list:
    """Minimum weight of k cyclically non-adjacent entries of seq, k = 0..kmax."""
    n = len(seq)
    without_first = _path_min_sets(seq[1:], kmax)
    with_first = [None] * (kmax + 1)
    if kmax >= 1:
        rest = _path_min_sets(seq[2:n - 1], kmax - 1)
        for k in range(1, kmax + 1):
            if rest[k - 1] is not None:
                with_first[k] = rest[k - 1] + seq[0]
    return [_min2(a, b) for a, b in zip(without_first, with_first)]


def interleave(state: UDState) -> tuple[Fraction, ...]:
    """The cycle (Q_1, W_1, Q_2, W_2, ..., Q_{g+1}, W_{g+1})."""
    out = []
    for q, w in zip(state.Q, state.W):
        out += [q, w]
    return tuple(out)


def invariants(state: UDState) -> SpectralInvariants:
    g = state.g
    mins = cyclic_independent_minima(interleave(state), g + 1)
    C = [sum(state.Q) + sum(state.W)]
    C += [mins[g + 1 - i] for i in range(0, g + 1)]
    return SpectralInvariants(g, tuple(C))


def is_generic(inv: SpectralInvariants) -> bool:
    g, c = inv.g, inv.c
    if not c(-1) > 2 * c(0):
        return False
    if any(not c(i) + c(i + 2) > 2 * c(i + 1) for i in range(0, g - 1)):
        return False
    return c(g - 1) > 2 * c(g)


def F_terms(inv: SpectralInvariants, X, Y) -> list[Fraction]:
    """The affine terms of F(X, Y) = min[2Y, Y + min_k(kX + C_k), C_{-1}],
    with C_{g+1} := 0 for the (g+1)X term."""
    X, Y = Fraction(X), Fraction(Y)
    g = inv.g
    terms = [2 * Y]
    terms += [Y + (g + 1) * X]
    terms += [Y + k * X + inv.c(k) for k in range(g, -1, -1)]
    terms += [inv.c(-1)]
    return terms


def tropical_poly_F(inv: SpectralInvariants, X, Y) -> tuple[Fraction, int]:
    """Value of F and the number of terms attaining it.

    (X, Y) lies on the tropical curve iff the count is at least 2.
    """
    terms = F_terms(inv, X, Y)
    v = min(terms)
    return v, sum(1 for t in terms if t == v)


def on_curve(inv: SpectralInvariants, X, Y) -> bool:
    return tropical_poly_F(inv, X, Y)[1] >= 2
