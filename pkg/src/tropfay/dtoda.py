"""Discrete periodic Toda lattice: exact evolution, Lax characteristic
polynomial, and the ultra-discretization harness that compares it with the
UD-pToda under I = e^{-Q/eps}, V = e^{-W/eps}.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import mpmath

from .errors import InputError, InvalidState, NonPositive
from .rational import fmt, fmt_vec, vec
from .udtoda import UDState, check_genus, evolve as ud_evolve, invariants

DEFAULT_DPS = 50


@dataclass(frozen=True)
class DiscreteState:
    g: int
    I: tuple[Fraction, ...]
    V: tuple[Fraction, ...]

    def __post_init__(self):
        check_genus(self.g)
        object.__setattr__(self, "I", vec(self.I))
        object.__setattr__(self, "V", vec(self.V))
        if len(self.I) != self.g + 1 or len(self.V) != self.g + 1:
            raise InputError(f"I and V need g+1 = {self.g + 1} entries")
        if any(x <= 0 for x in self.I + self.V):
            raise InvalidState("I and V entries must be positive")
        if not _prod(self.I) > _prod(self.V):
            raise InvalidState("need prod(I) > prod(V)")

    @classmethod
    def of(cls, I: Sequence, V: Sequence) -> "DiscreteState":
        return cls(len(I) - 1, tuple(I), tuple(V))

    def to_json(self) -> dict:
        return {"g": self.g, "I": fmt_vec(self.I), "V": fmt_vec(self.V)}


def _prod(xs):
    p = 1
    for x in xs:
        p = p * x
    return p


def _step(I: Sequence, V: Sequence):
    """Subtraction-free evolution; works for Fraction and mpf alike."""
    N = len(I)
    ratio = _prod(V) / _prod(I)
    In = []
    for n in range(N):
        den, term = 1, 1
        for k in range(1, N):
            term = term * V[(n - k) % N] / I[(n - k) % N]
            den = den + term
        In.append(V[n] + I[n] * (1 - ratio) / den)
    Vn = [I[(n + 1) % N] * V[n] / In[n] for n in range(N)]
    return In, Vn


def d_evolve(s: DiscreteState) -> DiscreteState:
    In, Vn = _step(s.I, s.V)
    out = DiscreteState(s.g, tuple(In), tuple(Vn))
    N = s.g + 1
    # the original form I' = I + V - V'_{n-1} must agree
    assert all(In[n] == s.I[n] + s.V[n] - Vn[(n - 1) % N] for n in range(N))
    return out


def d_orbit(s: DiscreteState, steps: int) -> list[DiscreteState]:
    out = [s]
    for _ in range(steps):
        out.append(d_evolve(out[-1]))
    return out


# ---------------------------------------------------------------- Lax matrix

# polynomials in x and y^{+-1}: {(deg_x, deg_y): coeff}
Poly = dict


def _padd(p: Poly, q: Poly, sign=1) -> Poly:
    out = dict(p)
    for k, v in q.items():
        out[k] = out.get(k, 0) + sign * v
        if out[k] == 0:
            del out[k]
    return out


def _pmul(p: Poly, q: Poly) -> Poly:
    out: Poly = {}
    for (a, b), u in p.items():
        for (c, d), v in q.items():
            k = (a + c, b + d)
            out[k] = out.get(k, 0) + u * v
            if out[k] == 0:
                del out[k]
    return out


def lax_matrix(s: DiscreteState) -> list[list[Poly]]:
    """x I + L(y) with polynomial entries."""
    g, N = s.g, s.g + 1
    a = [s.I[(n + 1) % N] + s.V[n] for n in range(N)]
    b = [s.I[n] * s.V[n] for n in range(N)]
    sg = (-1) ** g
    M: list[list[Poly]] = [[{} for _ in range(N)] for _ in range(N)]
    for n in range(N):
        M[n][n] = _padd({(1, 0): Fraction(1)}, {(0, 0): a[n]})
        if n + 1 < N:
            M[n][n + 1] = _padd(M[n][n + 1], {(0, 0): Fraction(1)})
            M[n + 1][n] = _padd(M[n + 1][n], {(0, 0): b[n + 1]})
    M[0][N - 1] = _padd(M[0][N - 1], {(0, -1): sg * b[0]})
    M[N - 1][0] = _padd(M[N - 1][0], {(0, 1): Fraction(sg)})
    return M


def poly_det(M: Sequence[Sequence[Poly]]) -> Poly:
    """Laplace expansion along rows, memoised on the set of used columns."""
    n = len(M)

    @lru_cache(maxsize=None)
    def minor(row: int, used: int) -> tuple:
        if row == n:
            return (((0, 0), 1),)
        acc: Poly = {}
        sign = 1
        for col in range(n):
            if used >> col & 1:
                continue
            if M[row][col]:
                sub = dict(minor(row + 1, used | 1 << col))
                acc = _padd(acc, _pmul(M[row][col], sub), sign)
            sign = -sign
        return tuple(acc.items())

    return dict(minor(0, 0))


@dataclass(frozen=True)
class CharPoly:
    """c_{-1}, c_0, ..., c_g of y^2 + y(x^{g+1} + c_g x^g + ... + c_0) + c_{-1}."""

    g: int
    c: tuple[Fraction, ...]

    def coeff(self, i: int) -> Fraction:
        return self.c[i + 1]

    def to_json(self) -> dict:
        return {"g": self.g, "c": fmt_vec(self.c)}


def char_poly(s: DiscreteState) -> CharPoly:
    g = s.g
    f = _pmul(poly_det(lax_matrix(s)), {(0, 1): 1})
    if f.get((0, 2)) != 1 or f.get((g + 1, 1)) != 1:
        raise AssertionError(f"unexpected leading terms in {f}")
    allowed = {(0, 2), (0, 0)} | {(i, 1) for i in range(g + 2)}
    stray = set(f) - allowed
    if stray:
        raise AssertionError(f"unexpected monomials {stray}")
    c = (f.get((0, 0), Fraction(0)),) + tuple(f.get((i, 1), Fraction(0)) for i in range(g + 1))
    return CharPoly(g, tuple(Fraction(x) for x in c))


# ---------------------------------------------------------------- UD limit


def _mpf(x) -> mpmath.mpf:
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    return mpmath.mpf(x)


def to_fraction(x: mpmath.mpf) -> Fraction:
    """Exact value of a binary mpf."""
    if not isinstance(x, mpmath.mpf):
        x = mpmath.mpf(x)
    man, exp = x.man_exp
    return Fraction(int(man)) * Fraction(2) ** int(exp)


def log_eps(x, eps, dps: int = DEFAULT_DPS) -> mpmath.mpf:
    """-eps log x."""
    with mpmath.workdps(dps):
        xv, ev = _mpf(x), _mpf(eps)
        if xv <= 0:
            raise NonPositive(f"log of non-positive value {x}")
        if ev <= 0:
            raise NonPositive(f"eps must be positive, got {eps}")
        return -ev * mpmath.log(xv)


def exp_eps(X, eps, dps: int = DEFAULT_DPS) -> mpmath.mpf:
    """e^{-X/eps}."""
    with mpmath.workdps(dps):
        return mpmath.exp(-_mpf(X) / _mpf(eps))


def ud_add(A, B, eps, dps: int = DEFAULT_DPS) -> mpmath.mpf:
    """-eps log(e^{-A/eps} + e^{-B/eps}); tends to min(A, B)."""
    with mpmath.workdps(dps):
        return log_eps(exp_eps(A, eps, dps) + exp_eps(B, eps, dps), eps, dps)


def ud_mul(A, B, eps, dps: int = DEFAULT_DPS) -> mpmath.mpf:
    """-eps log(e^{-A/eps} e^{-B/eps}) = A + B."""
    with mpmath.workdps(dps):
        return log_eps(exp_eps(A, eps, dps) * exp_eps(B, eps, dps), eps, dps)


@dataclass(frozen=True)
class TrajectoryRow:
    eps: Fraction
    t: int
    n: int
    I: mpmath.mpf
    V: mpmath.mpf
    err_Q: mpmath.mpf
    err_W: mpmath.mpf


@dataclass(frozen=True)
class TrajectoryReport:
    rows: tuple[TrajectoryRow, ...]
    sup: dict                     # eps -> sup error over Q and W

    def to_json(self) -> dict:
        return {"sup": {fmt(e): mpmath.nstr(v, 12) for e, v in self.sup.items()}}


def ud_trajectory_compare(state: UDState, eps_list: Sequence, steps: int,
                          dps: int = DEFAULT_DPS) -> TrajectoryReport:
    """Run the discrete system from I = e^{-Q/eps}, V = e^{-W/eps} in
    dps-digit floating point and measure its distance to the UD orbit."""
    ud = ud_evolve(state, steps)
    rows, sup = [], {}
    with mpmath.workdps(dps):
        for eps in eps_list:
            eps = Fraction(eps)
            I = [exp_eps(q, eps, dps) for q in state.Q]
            V = [exp_eps(w, eps, dps) for w in state.W]
            worst = mpmath.mpf(0)
            for t in range(steps + 1):
                if t:
                    I, V = _step(I, V)
                for n in range(state.g + 1):
                    eq = abs(log_eps(I[n], eps, dps) - _mpf(ud[t].Q[n]))
                    ew = abs(log_eps(V[n], eps, dps) - _mpf(ud[t].W[n]))
                    worst = max(worst, eq, ew)
                    rows.append(TrajectoryRow(eps, t, n + 1, I[n], V[n], eq, ew))
            sup[eps] = worst
    return TrajectoryReport(tuple(rows), sup)


def exponentiate(state: UDState, eps, dps: int = DEFAULT_DPS) -> DiscreteState:
    """I = e^{-Q/eps}, V = e^{-W/eps}, rounded to dps digits then held exactly."""
    with mpmath.workdps(dps):
        I = tuple(to_fraction(exp_eps(q, eps, dps)) for q in state.Q)
        V = tuple(to_fraction(exp_eps(w, eps, dps)) for w in state.W)
    return DiscreteState(state.g, I, V)


def ud_char_consistency(state: UDState, eps_list: Sequence,
                        dps: int = DEFAULT_DPS) -> dict:
    """eps -> (|-eps log c_i - C_i|)_{i=-1..g}."""
    C = invariants(state).C
    out = {}
    for eps in eps_list:
        eps = Fraction(eps)
        cp = char_poly(exponentiate(state, eps, dps))
        errs = []
        for ci, Ci in zip(cp.c, C):
            if ci <= 0:
                raise NonPositive(f"characteristic coefficient {ci} is not positive")
            errs.append(abs(log_eps(ci, eps, dps) - _mpf(Ci)))
        out[eps] = tuple(errs)
    return out
