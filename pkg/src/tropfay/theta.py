"""Tropical Riemann theta function with characteristics.

    Theta(Z)        = min_m  1/2 mKm^T + mZ^T
    Theta[beta](Z)  = 1/2 beta K beta^T + beta Z^T + min_m q_beta(m, Z)
    q_beta(m, Z)    = 1/2 mKm^T + m(Z + beta K)^T

The minimum over Z^g is found by Fincke-Pohst enumeration around the real
minimiser -Z K^{-1}.  Pruning runs in floating point with a generous
slack; every surviving candidate is then evaluated exactly, so the value
and the complete arg-min set are exact rationals and integer vectors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import DimensionMismatch, InputError, NotPositiveDefinite
from .rational import Mat, Vec, dot, fmt, inverse, mat, row_times, vadd, vec

IntVec = tuple[int, ...]

# relative slack for float pruning; exact evaluation follows
_SLACK = 1e-7


@dataclass(frozen=True)
class ThetaResult:
    value: Fraction
    argmin: tuple[IntVec, ...]

    @property
    def unique(self) -> bool:
        return len(self.argmin) == 1

    def to_json(self) -> dict:
        return {"value": fmt(self.value), "argmin": [list(m) for m in self.argmin],
                "unique": self.unique}


class Membership(Enum):
    INTERIOR = "Interior"
    BOUNDARY = "Boundary"
    OUTSIDE = "Outside"


@dataclass(frozen=True)
class _Prepared:
    K: Mat
    Kinv: Mat
    U: tuple[tuple[float, ...], ...]   # unit upper triangular, K = U^T diag(d) U
    d: tuple[float, ...]
    Kf: tuple[tuple[float, ...], ...]
    Kinv_f: tuple[tuple[float, ...], ...]


def as_matrix(K) -> Mat:
    K = mat(K)
    g = len(K)
    if g == 0 or any(len(r) != g for r in K):
        raise DimensionMismatch("K must be a non-empty square matrix")
    if any(K[i][j] != K[j][i] for i in range(g) for j in range(i)):
        raise InputError("K must be symmetric")
    return K


@lru_cache(maxsize=256)
def _prepare(K: Mat) -> _Prepared:
    g = len(K)
    # exact LDL^T; positive pivots <=> positive definite
    Lw = [[Fraction(0)] * g for _ in range(g)]
    d = [Fraction(0)] * g
    for j in range(g):
        d[j] = K[j][j] - sum((Lw[j][k] ** 2 * d[k] for k in range(j)), Fraction(0))
        if d[j] <= 0:
            raise NotPositiveDefinite(f"K is not positive definite (pivot {j + 1} = {d[j]})")
        Lw[j][j] = Fraction(1)
        for i in range(j + 1, g):
            s = K[i][j] - sum((Lw[i][k] * Lw[j][k] * d[k] for k in range(j)), Fraction(0))
            Lw[i][j] = s / d[j]
    U = tuple(tuple(float(Lw[j][i]) for j in range(g)) for i in range(g))
    Kinv = inverse(K)
    return _Prepared(K, Kinv, U, tuple(float(x) for x in d),
                     tuple(tuple(float(x) for x in r) for r in K),
                     tuple(tuple(float(x) for x in r) for r in Kinv))


def prepare(K) -> _Prepared:
    return _prepare(as_matrix(K))


def diagonal_margin(K) -> Fraction:
    """r = min_i (K_ii - sum_{j != i} |K_ij|)."""
    K = as_matrix(K)
    g = len(K)
    return min(K[i][i] - sum(abs(K[i][j]) for j in range(g) if j != i) for i in range(g))


def _check_dim(K: Mat, *vs: Sequence) -> None:
    for v in vs:
        if len(v) != len(K):
            raise DimensionMismatch(f"vector of length {len(v)} for {len(K)}x{len(K)} K")


def q_form(K, beta, m, Z) -> Fraction:
    """q_beta(m, Z) = 1/2 mKm^T + m(Z + beta K)^T."""
    K = as_matrix(K)
    beta, m, Z = vec(beta), vec(m), vec(Z)
    _check_dim(K, beta, m, Z)
    mK = row_times(m, K)
    return dot(mK, m) / 2 + dot(m, Z) + dot(mK, beta)


def _q0(K: Mat, m: IntVec, Z: Vec) -> Fraction:
    g = len(K)
    s = Fraction(0)
    for i in range(g):
        if m[i]:
            row = K[i]
            s += m[i] * (sum((row[j] * m[j] for j in range(g) if m[j]), Fraction(0)) / 2 + Z[i])
    return s


def _close_points(P: _Prepared, c: Sequence[float]) -> list[IntVec]:
    """All m with (m-c)K(m-c)^T within slack of the minimum (float)."""
    g = len(c)
    U, d, Kf = P.U, P.d, P.Kf

    def qf(m):
        x = [m[i] - c[i] for i in range(g)]
        return sum(x[i] * Kf[i][j] * x[j] for i in range(g) for j in range(g))

    start = tuple(int(round(ci)) for ci in c)
    best = qf(start)
    bound = best + _SLACK * (1.0 + abs(best))
    found: list[tuple[float, IntVec]] = []
    m = [0] * g

    def rec(i: int, partial: float):
        nonlocal best, bound
        s = 0.0
        for j in range(i + 1, g):
            s += U[i][j] * (m[j] - c[j])
        centre = c[i] - s
        rem = bound - partial
        if rem < 0:
            return
        rad = math.sqrt(rem / d[i])
        lo = math.ceil(centre - rad - 1e-9)
        hi = math.floor(centre + rad + 1e-9)
        for v in range(lo, hi + 1):
            y = v - centre
            p = partial + d[i] * y * y
            if p > bound:
                continue
            m[i] = v
            if i == 0:
                found.append((p, tuple(m)))
                if p < best:
                    best = p
                    bound = best + _SLACK * (1.0 + abs(best))
            else:
                rec(i - 1, p)
        m[i] = 0

    rec(g - 1, 0.0)
    return [mm for p, mm in found if p <= bound]


def reduce(K, Z) -> tuple[Vec, IntVec]:
    """Shift Z by a lattice vector lK so that Z K^{-1} lies in [-1/2, 1/2)^g.

    Returns (Z + lK, l).  Theta transforms as
    Theta(Z) = Theta(Z + lK) + 1/2 lKl^T + lZ^T.
    """
    K = as_matrix(K)
    Z = vec(Z)
    _check_dim(K, Z)
    P = _prepare(K)
    w = row_times(Z, P.Kinv)
    l = tuple(-math.floor(x + Fraction(1, 2)) for x in w)
    return vadd(Z, row_times(l, K)), l


def theta(K, Z) -> ThetaResult:
    K = as_matrix(K)
    Z = vec(Z)
    _check_dim(K, Z)
    P = _prepare(K)
    Zr, l = reduce(K, Z)
    c = [-sum(float(Zr[i]) * P.Kinv_f[i][j] for i in range(len(K))) for j in range(len(K))]
    cands = [tuple(a + b for a, b in zip(m, l)) for m in _close_points(P, c)]
    vals = {m: _q0(K, m, Z) for m in cands}
    v = min(vals.values())
    return ThetaResult(v, tuple(sorted(m for m, x in vals.items() if x == v)))


def theta_char(K, beta, Z) -> ThetaResult:
    """Theta[beta](Z); argmin is the arg-min of q_beta(., Z)."""
    K = as_matrix(K)
    beta, Z = vec(beta), vec(Z)
    _check_dim(K, beta, Z)
    bK = row_times(beta, K)
    inner = theta(K, vadd(Z, bK))
    return ThetaResult(dot(bK, beta) / 2 + dot(beta, Z) + inner.value, inner.argmin)


def theta_value(K, Z) -> Fraction:
    return theta(K, Z).value


def restricted_ls(g: int) -> list[IntVec]:
    """The test vectors +-(e_j + ... + e_k), 1 <= j <= k <= g."""
    out = []
    for j in range(g):
        for k in range(j, g):
            v = tuple(int(j <= i <= k) for i in range(g))
            out.append(v)
            out.append(tuple(-x for x in v))
    return out


def domain_margin(K: Mat, Z: Vec, m: Sequence, l: Sequence) -> Fraction:
    """f_m(Z, l) = lZ^T + lK(m + l/2)^T."""
    lK = row_times(vec(l), K)
    return dot(vec(l), Z) + dot(lK, vadd(vec(m), tuple(Fraction(x, 2) for x in l)))


def classify(values: Iterable[Fraction]) -> Membership:
    low = min(values)
    if low > 0:
        return Membership.INTERIOR
    if low == 0:
        return Membership.BOUNDARY
    return Membership.OUTSIDE


def in_domain(K, Z, m) -> Membership:
    """Position of Z relative to the closed region D_m where m attains Theta(Z)."""
    K = as_matrix(K)
    Z, mv = vec(Z), tuple(int(x) for x in m)
    _check_dim(K, Z, mv)
    _prepare(K)
    return classify(domain_margin(K, Z, mv, l) for l in restricted_ls(len(K)))
