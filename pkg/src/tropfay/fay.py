"""Tropical Fay trisecant identity: the three terms F_1, F_2, F_3, the sign
calculus deciding which of them equals the minimum of the other two, and the
bilinear specialization that drives the Toda tau function.

Points live on the universal cover of Gamma: a point on the graph plus an
integer winding vector w, whose lift has Abel-Jacobi image
    A(P) = AJ(base -> P) + w K
with AJ taken along the deterministic shortest path from the bottom-left
vertex.  Every integral between points is A(end) - A(start).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .curve import (CurveData, PointOnCurve, abel_jacobi, build_graph,
                    lattice_coordinates, locate, vertex_point)
from .errors import DimensionMismatch, NonHalfIntegerBeta, NotOnCurve
from .rational import (Mat, Vec, fmt, fmt_vec, is_integral, ones, row_times,
                       unit, vadd, vec, vscale, vsub, dot)
from .theta import Membership, ThetaResult, in_domain, theta, theta_char

HOLDS = "Holds"
AMBIGUOUS = "SignAmbiguous"
VIOLATED = "Violated"


def check_beta(beta: Sequence, g: int) -> Vec:
    beta = vec(beta)
    if len(beta) != g:
        raise DimensionMismatch(f"beta has {len(beta)} entries, genus is {g}")
    if any((2 * b).denominator != 1 for b in beta):
        raise NonHalfIntegerBeta(f"beta entries must lie in Z/2: {[str(b) for b in beta]}")
    if all(b.denominator == 1 for b in beta):
        raise NonHalfIntegerBeta("beta must be non-zero modulo Z^g")
    return beta


def alpha_for(beta: Sequence) -> Vec:
    """+1/2 at the first non-integral slot i of beta, -1/2 at slot i-1 if any."""
    beta = check_beta(beta, len(beta))
    i = next(k for k, b in enumerate(beta) if b.denominator != 1)
    a = [Fraction(0)] * len(beta)
    a[i] = Fraction(1, 2)
    if i >= 1:
        a[i - 1] = Fraction(-1, 2)
    return tuple(a)


@dataclass(frozen=True)
class FayInput:
    cd: CurveData
    points: tuple[PointOnCurve, PointOnCurve, PointOnCurve, PointOnCurve]
    Z: Vec
    beta: Vec
    windings: tuple[tuple[int, ...], ...] = field(default=())

    def __post_init__(self):
        g = self.cd.g
        if len(self.points) != 4:
            raise DimensionMismatch("exactly four points are needed")
        object.__setattr__(self, "Z", vec(self.Z))
        if len(self.Z) != g:
            raise DimensionMismatch(f"Z has {len(self.Z)} entries, genus is {g}")
        object.__setattr__(self, "beta", check_beta(self.beta, g))
        w = self.windings or tuple((0,) * g for _ in range(4))
        w = tuple(tuple(int(x) for x in v) for v in w)
        if len(w) != 4 or any(len(v) != g for v in w):
            raise DimensionMismatch("need four winding vectors of length g")
        object.__setattr__(self, "windings", w)

    @property
    def alpha(self) -> Vec:
        return alpha_for(self.beta)

    def lifts(self) -> tuple[Vec, Vec, Vec, Vec]:
        return tuple(lift(self.cd, P, w) for P, w in zip(self.points, self.windings))


def base_point(cd: CurveData) -> PointOnCurve:
    return vertex_point(build_graph(cd), 0)


def lift(cd: CurveData, P: PointOnCurve, winding: Sequence[int] = ()) -> Vec:
    a = abel_jacobi(cd, base_point(cd), P)
    if winding:
        a = vadd(a, row_times(vec(winding), cd.K))
    return a


def winding_for(cd: CurveData, P: PointOnCurve, target: Sequence) -> tuple[int, ...]:
    """Winding vector whose lift of P has image target; target must be a lift."""
    l = lattice_coordinates(cd.K, vsub(vec(target), lift(cd, P)))
    if not is_integral(l):
        raise NotOnCurve(f"{[str(t) for t in target]} is not an Abel-Jacobi image of P")
    return tuple(int(x) for x in l)


# ---------------------------------------------------------------- terms


@dataclass(frozen=True)
class _Evaluated:
    F: tuple[Fraction, Fraction, Fraction]
    char_args: tuple[ThetaResult, ...]   # six Theta[beta] results in k-order


def _evaluate(inp: FayInput) -> _Evaluated:
    K, Z, beta = inp.cd.K, inp.Z, inp.beta
    A1, A2, A3, A4 = inp.lifts()

    def I(a, b):
        return vsub(b, a)

    def th(v):
        return theta(K, vadd(Z, v)).value

    def tc(v):
        return theta_char(K, beta, v)

    c32, c14 = tc(I(A3, A2)), tc(I(A1, A4))
    c31, c42 = tc(I(A3, A1)), tc(I(A4, A2))
    c43, c12 = tc(I(A4, A3)), tc(I(A1, A2))
    F1 = th(I(A1, A3)) + th(I(A2, A4)) + c32.value + c14.value
    F2 = th(I(A2, A3)) + th(I(A1, A4)) + c31.value + c42.value
    F3 = th(vsub(vadd(A3, A4), vadd(A1, A2))) + th(tuple(Fraction(0) for _ in Z)) \
        + c43.value + c12.value
    # k_3 uses the arg-min at int_{P3}^{P4}; Theta[beta] is even so the
    # value agrees with int_{P4}^{P3}
    c34 = tc(I(A3, A4))
    return _Evaluated((F1, F2, F3), (c32, c14, c31, c42, c34, c12))


def fay_terms(inp: FayInput) -> tuple[Fraction, Fraction, Fraction]:
    return _evaluate(inp).F


@dataclass(frozen=True)
class FaySigns:
    k: tuple[int | None, int | None, int | None]
    s: tuple[int | None, int | None, int | None]   # None marks an undetermined sign
    argmins: tuple[tuple[tuple[int, ...], ...], ...]

    @property
    def determinate(self) -> bool:
        return None not in self.s


def _signs(inp: FayInput, ev: _Evaluated) -> FaySigns:
    a = inp.alpha
    ks, ss = [], []
    for i in range(3):
        r1, r2 = ev.char_args[2 * i], ev.char_args[2 * i + 1]
        if not (r1.unique and r2.unique):
            ks.append(None)
            ss.append(None)
            continue
        k = 2 * dot(a, vadd(r1.argmin[0], r2.argmin[0])) + (1 if i == 2 else 0)
        assert k.denominator == 1
        k = int(k)
        ks.append(k)
        ss.append(1 if k % 2 == 0 else -1)
    return FaySigns(tuple(ks), tuple(ss), tuple(r.argmin for r in ev.char_args))


def fay_signs(inp: FayInput) -> FaySigns:
    return _signs(inp, _evaluate(inp))


def sign_pattern(s: Sequence[int | None]) -> int | None:
    """0-based index i with s_i opposite to the other two, if determinate."""
    if None in s:
        return None
    for i in range(3):
        if s[(i + 1) % 3] == s[(i + 2) % 3] == -s[i]:
            return i
    return None


def identity_holds(F: Sequence[Fraction], i: int) -> bool:
    return F[i] == min(F[(i + 1) % 3], F[(i + 2) % 3])


@dataclass(frozen=True)
class FayVerdict:
    F: tuple[Fraction, Fraction, Fraction]
    signs: FaySigns
    status: str
    index: int | None = None          # 1-based i for Holds(i) / Violated(i)
    satisfied: tuple[int, ...] = ()   # every 1-based i with F_i = min(others)

    @property
    def label(self) -> str:
        return f"{self.status}({self.index})" if self.index else self.status

    def to_json(self) -> dict:
        return {"F": fmt_vec(self.F), "k": list(self.signs.k),
                "s": [("Ambiguous" if x is None else x) for x in self.signs.s],
                "status": self.status, "index": self.index,
                "satisfied": list(self.satisfied), "label": self.label,
                "argmins": [[list(m) for m in am] for am in self.signs.argmins]}


def fay_check(inp: FayInput) -> FayVerdict:
    ev = _evaluate(inp)
    sg = _signs(inp, ev)
    F = ev.F
    sat = tuple(i + 1 for i in range(3) if identity_holds(F, i))
    if not sg.determinate:
        return FayVerdict(F, sg, AMBIGUOUS, None, sat)
    i = sign_pattern(sg.s)
    if i is None:
        # all three signs equal: the theorem says this cannot happen
        return FayVerdict(F, sg, VIOLATED, None, sat)
    status = HOLDS if identity_holds(F, i) else VIOLATED
    return FayVerdict(F, sg, status, i + 1, sat)


# ---------------------------------------------------------------- bilinear case


def canonical_points(cd: CurveData) -> tuple[PointOnCurve, ...]:
    g, L, pg, h = cd.g, cd.L, cd.p[-1], (cd.g + 1) * cd.inv.c(cd.g)
    lg, l0 = cd.lam[g], cd.lam[0]
    coords = [(lg, L / 2 + pg / 2 + h), (l0, h), (l0, L + h), (lg, L / 2 - pg / 2 + h)]
    return tuple(locate(cd, X, Y) for X, Y in coords)


def canonical_lifts(cd: CurveData) -> tuple[Vec, Vec, Vec, Vec]:
    """Targets A(P_1..P_4) = (-L e_1 - lam, 0, -L e_1, lam)."""
    g = cd.g
    Le1 = vscale(cd.L, unit(g, 1))
    zero = tuple(Fraction(0) for _ in range(g))
    lam = cd.lambda_vec
    return (vsub(vscale(-1, Le1), lam), zero, vscale(-1, Le1), lam)


def canonical_input(cd: CurveData, Z: Sequence, beta: Sequence | None = None) -> FayInput:
    pts = canonical_points(cd)
    w = tuple(winding_for(cd, P, t) for P, t in zip(pts, canonical_lifts(cd)))
    if beta is None:
        beta = vscale(Fraction(-1, 2), ones(cd.g))
    return FayInput(cd, pts, vec(Z), vec(beta), w)


def canonical_integrals(cd: CurveData) -> dict[str, Vec]:
    """The six integrals between the canonical lifts, computed from the graph."""
    A1, A2, A3, A4 = FayInput(cd, canonical_points(cd), (0,) * cd.g,
                              (Fraction(-1, 2),) * cd.g,
                              canonical_input(cd, (0,) * cd.g).windings).lifts()
    return {"13": vsub(A3, A1), "24": vsub(A4, A2), "23": vsub(A3, A2),
            "14": vsub(A4, A1), "34": vsub(A4, A3), "12": vsub(A2, A1)}


def canonical_closed_forms(cd: CurveData) -> dict[str, Vec]:
    g, lam = cd.g, cd.lambda_vec
    Le1 = vscale(cd.L, unit(g, 1))
    return {"13": lam, "24": lam, "23": vscale(-1, Le1),
            "14": vadd(Le1, vscale(2, lam)), "34": vadd(Le1, lam), "12": vadd(Le1, lam)}


def bilinear_sides(cd: CurveData, Z: Sequence) -> tuple[Fraction, Fraction]:
    """(min[2T(Z+lam), T(Z-Le1) + T(Z+Le1+2lam) + L], T(Z+2lam) + T(Z))."""
    K, Z, lam = cd.K, vec(Z), cd.lambda_vec
    if len(Z) != cd.g:
        raise DimensionMismatch(f"Z has {len(Z)} entries, genus is {cd.g}")
    Le1 = vscale(cd.L, unit(cd.g, 1))

    def T(v):
        return theta(K, v).value

    lhs = min(2 * T(vadd(Z, lam)),
              T(vsub(Z, Le1)) + T(vadd(vadd(Z, Le1), vscale(2, lam))) + cd.L)
    rhs = T(vadd(Z, vscale(2, lam))) + T(Z)
    return lhs, rhs


def bilinear_identity(cd: CurveData, Z: Sequence) -> bool:
    ints, forms = canonical_integrals(cd), canonical_closed_forms(cd)
    assert ints == forms, (ints, forms)
    lhs, rhs = bilinear_sides(cd, Z)
    return lhs == rhs


@dataclass(frozen=True)
class HalfPeriodReport:
    boundary_at_betaK: bool
    interior: dict[tuple[int, int], bool]
    symmetric: dict[tuple[int, int], bool]

    @property
    def ok(self) -> bool:
        return self.boundary_at_betaK and all(self.interior.values()) \
            and all(self.symmetric.values())

    def to_json(self) -> dict:
        return {"boundary_at_betaK": self.boundary_at_betaK,
                "interior": {f"{n},{t}": v for (n, t), v in self.interior.items()},
                "symmetric": {f"{n},{t}": v for (n, t), v in self.symmetric.items()},
                "ok": self.ok}


def half_period_checks(cd: CurveData) -> HalfPeriodReport:
    g, K = cd.g, cd.K
    beta = vscale(Fraction(-1, 2), ones(g))
    bK = row_times(beta, K)
    zero, one = (0,) * g, (1,) * g
    Le1 = vscale(cd.L, unit(g, 1))
    boundary = in_domain(K, bK, zero) is Membership.BOUNDARY
    interior, symmetric = {}, {}
    for n in (0, 1):
        for t in (0, 1, 2):
            if n == t == 0:
                continue
            v = vadd(vscale(n, Le1), vscale(t, cd.lambda_vec))
            a = in_domain(K, vadd(bK, v), zero) is Membership.INTERIOR
            b = in_domain(K, vsub(bK, v), one) is Membership.INTERIOR
            interior[(n, t)] = a
            symmetric[(n, t)] = a == b
    return HalfPeriodReport(boundary, interior, symmetric)
