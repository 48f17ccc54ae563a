"""Tau-function form of the UD-pToda.

A solution is a lattice T_n^t that is quasi-periodic in n,
    T_{n+g+1}^t = T_n^t + (a n + b t + c),
so two consecutive time slices are stored as a window holding n = 0..g of
each row plus (a, b, c).  Every other index is reached through `extend`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .curve import CurveData
from .errors import DimensionMismatch, EmptyASet, QuasiPeriodicityBroken
from .rational import Vec, dot, fmt, fmt_vec, gbar, unit, vadd, vec, vscale, vsub
from .theta import theta
from .udtoda import UDState, evolve_step


@dataclass(frozen=True)
class Quasi:
    a: Fraction
    b: Fraction
    c: Fraction

    def at(self, n: int, s: int) -> Fraction:
        """c_n^s = a n + b s + c."""
        return self.a * n + self.b * s + self.c

    def as_tuple(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.a, self.b, self.c)


def extend(row: Sequence[Fraction], g: int, q: Quasi, s: int, n: int) -> Fraction:
    """T_n^s from the stored values T_0^s .. T_g^s."""
    N = g + 1
    k, r = divmod(n, N)
    # sum of c_{r + jN}^s for j = 0..k-1, valid for negative k as well
    return row[r] + k * (q.a * r + q.b * s + q.c) + q.a * N * k * (k - 1) / 2


@dataclass(frozen=True)
class TauWindow:
    g: int
    t: int
    L: Fraction
    Cg: Fraction
    rows: tuple[Vec, Vec]          # T^t and T^{t+1}, n = 0..g
    quasi: Quasi

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(vec(r) for r in self.rows))
        if len(self.rows) != 2 or any(len(r) != self.g + 1 for r in self.rows):
            raise DimensionMismatch(f"a window needs two rows of length {self.g + 1}")
        q = self.quasi
        if not 2 * q.b - q.a < (self.g + 1) * self.L:
            raise QuasiPeriodicityBroken("2b - a < (g+1)L fails")

    def T(self, s: int, n: int) -> Fraction:
        if s not in (self.t, self.t + 1):
            raise IndexError(f"time {s} outside window {self.t}..{self.t + 1}")
        return extend(self.rows[s - self.t], self.g, self.quasi, s, n)

    def to_json(self) -> dict:
        return {"g": self.g, "t": self.t, "L": fmt(self.L), "Cg": fmt(self.Cg),
                "rows": [fmt_vec(r) for r in self.rows],
                "quasi": fmt_vec(self.quasi.as_tuple())}


def tau_X(w: TauWindow, n: int, k: int) -> Fraction:
    t, T = w.t, w.T
    best = None
    for j in range(k + 1):
        v = (j * w.L + 2 * T(t + 1, n - j - 1) + T(t, n) + T(t, n - 1)
             - (2 * T(t + 1, n - 1) + T(t, n - j) + T(t, n - j - 1)))
        if best is None or v < best:
            best = v
    return best


def x_recursion_holds(w: TauWindow, n: int, k: int) -> bool:
    """2T_{n-1}^{t+1} + X^(k)_n = min[2T_{n-1}^{t+1}, L + 2T_{n-2}^{t+1} + T_n^t - T_{n-2}^t + X^(k-1)_{n-1}]."""
    t, T = w.t, w.T
    lhs = 2 * T(t + 1, n - 1) + tau_X(w, n, k)
    rhs = min(2 * T(t + 1, n - 1),
              w.L + 2 * T(t + 1, n - 2) + T(t, n) - T(t, n - 2) + tau_X(w, n - 1, k - 1))
    return lhs == rhs


def next_row(w: TauWindow) -> Vec:
    """T^{t+2}_n for n = 0..g."""
    t, T = w.t, w.T
    return tuple(2 * T(t + 1, n) - T(t, n) + tau_X(w, n + 1, w.g) for n in range(w.g + 1))


def phi_S(w: TauWindow) -> TauWindow:
    g, t, T = w.g, w.t, w.T
    new = next_row(w)
    for n in range(g + 1):
        if tau_X(w, n + 1, g + 1) != tau_X(w, n + 1, g):
            raise QuasiPeriodicityBroken(f"X^(g+1) != X^(g) at n={n + 1}")
    # the rule must also reproduce the next period directly
    for n in range(g + 1):
        direct = 2 * T(t + 1, n + g + 1) - T(t, n + g + 1) + tau_X(w, n + g + 2, g)
        if direct != new[n] + w.quasi.at(n, t + 2):
            raise QuasiPeriodicityBroken(f"row t+2 breaks (a,b,c) at n={n}")
    return TauWindow(g, t + 1, w.L, w.Cg, (w.rows[1], new), w.quasi)


def sigma(w: TauWindow) -> UDState:
    t, T, L, Cg = w.t, w.T, w.L, w.Cg
    Q, W = [], []
    for n in range(1, w.g + 2):
        W.append(L + T(t + 1, n - 1) + T(t, n + 1) - T(t, n) - T(t + 1, n) + Cg)
        Q.append(T(t, n - 1) + T(t + 1, n) - T(t + 1, n - 1) - T(t, n) + Cg)
    return UDState(w.g, tuple(Q), tuple(W))


def _full(row, g, q, s, n):
    return extend(row, g, q, s, n)


def bilinear_check(rows: Sequence[Sequence], g: int, L, quasi: Quasi, t: int) -> bool:
    """T_n^{t-1} + T_n^{t+1} = min[2T_n^t, T_{n-1}^{t+1} + T_{n+1}^{t-1} + L], n = 0..g.

    rows are T^{t-1}, T^t, T^{t+1}.
    """
    r0, r1, r2 = (vec(r) for r in rows)
    L = Fraction(L)

    def T(k, s, n):
        return _full((r0, r1, r2)[k], g, quasi, s, n)

    for n in range(g + 1):
        lhs = T(0, t - 1, n) + T(2, t + 1, n)
        rhs = min(2 * T(1, t, n), T(2, t + 1, n - 1) + T(0, t - 1, n + 1) + L)
        if lhs != rhs:
            return False
    return True


def a_set(rows: Sequence[Sequence], g: int, quasi: Quasi, t: int) -> frozenset[int]:
    """Residues n mod g+1 with T_n^t + T_n^{t+2} = 2T_n^{t+1}; rows are t, t+1, t+2."""
    r0, r1, r2 = (vec(r) for r in rows)
    out = set()
    for n in range(g + 1):
        here = r0[n] + r2[n] == 2 * r1[n]
        nN = n + g + 1
        there = (_full(r0, g, quasi, t, nN) + _full(r2, g, quasi, t + 2, nN)
                 == 2 * _full(r1, g, quasi, t + 1, nN))
        if here != there:
            raise QuasiPeriodicityBroken(f"membership of {n} is not periodic")
        if here:
            out.add(n)
    if not out:
        raise EmptyASet(f"A_{t} is empty")
    return frozenset(out)


def quasi_for(cd: CurveData, Z0: Sequence) -> Quasi:
    g, L = cd.g, cd.L
    return Quasi(-g * L, dot(gbar(g), cd.lambda_vec),
                 dot(gbar(g), vec(Z0)) - Fraction(g * (g + 1), 2) * L)


def theta_row(cd: CurveData, Z0: Sequence, s: int, ns) -> Vec:
    Le1 = vscale(cd.L, unit(cd.g, 1))
    return tuple(theta(cd.K, vadd(vsub(vec(Z0), vscale(n, Le1)), vscale(s, cd.lambda_vec))).value
                 for n in ns)


def iota(cd: CurveData, Z0: Sequence, t: int = 0) -> TauWindow:
    g, L = cd.g, cd.L
    Z0 = vec(Z0)
    if len(Z0) != g:
        raise DimensionMismatch(f"Z0 has {len(Z0)} entries, genus is {g}")
    q = quasi_for(cd, Z0)
    assert (g + 1) * L - 2 * q.b + q.a == cd.p[-1] > 0
    rows = (theta_row(cd, Z0, t, range(g + 1)), theta_row(cd, Z0, t + 1, range(g + 1)))
    w = TauWindow(g, t, L, cd.inv.c(g), rows, q)
    # spot check the extension against direct theta values one period out
    for s in (t, t + 1):
        direct = theta_row(cd, Z0, s, [g + 1, -1])
        if direct != (w.T(s, g + 1), w.T(s, -1)):
            raise QuasiPeriodicityBroken("theta rows do not follow (a, b, c)")
    return w


def rows_of(cd: CurveData, Z0: Sequence, ts: Sequence[int]) -> list[Vec]:
    return [theta_row(cd, Z0, s, range(cd.g + 1)) for s in ts]


def diagram_holds(cd: CurveData, Z0: Sequence, t: int) -> bool:
    """phi_T . sigma_t . iota_t = sigma_{t+1} . phi_S . iota_t = sigma_{t+1} . iota_{t+1}."""
    w = iota(cd, Z0, t)
    a = evolve_step(sigma(w))
    b = sigma(phi_S(w))
    c = sigma(iota(cd, Z0, t + 1))
    return a == b == c


def translation_flow_check(cd: CurveData, Z0: Sequence, steps: int) -> bool:
    """The UD-pToda orbit of sigma(iota(Z0, 0)) is the straight line Z0 + s lam."""
    Z0 = vec(Z0)
    state = sigma(iota(cd, Z0, 0))
    for s in range(1, steps + 1):
        state = evolve_step(state)
        if state != sigma(iota(cd, Z0, s)):
            return False
        if state != sigma(iota(cd, vadd(Z0, vscale(s, cd.lambda_vec)), 0)):
            return False
    return True


def solve(cd: CurveData, Z0: Sequence, steps: int) -> list[tuple[int, TauWindow, UDState, bool]]:
    """Evolve by phi_S; each record carries sigma of the window and whether it
    matches direct UD-pToda evolution of the initial state."""
    w = iota(cd, Z0, 0)
    direct = sigma(w)
    out = [(0, w, direct, True)]
    for _ in range(steps):
        w = phi_S(w)
        direct = evolve_step(direct)
        st = sigma(w)
        out.append((w.t, w, st, st == direct))
    return out
