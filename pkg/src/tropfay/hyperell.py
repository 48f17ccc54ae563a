"""Numeric check of the UD-limit of the hyperelliptic spectral curve

    v^2 = Delta(u)^2 - 4 c_{-1},   Delta(u) = sum_k (-1)^k c_k u^k,  c_{g+1} = 1,

with c_i = e^{-C_i/eps}.  As eps -> 0 the roots scale like e^{-X_j/eps} with
X_j = C_j - C_{j+1}, the a-periods of the differentials built from
omega_j^0 = (1/2 pi i)(1/(u-u_j) - 1/(u-u_0)) du tend to the identity, and
-2 pi i eps times the b-periods tend to K~ = T K T.

Cuts are extremely narrow (relative width ~ e^{-p/(2 eps)}), so roots are
found at a guard precision and every integrand near a branch point is
written in terms of the offset from that branch point.  Factors belonging
to the same cut then use differences precomputed at the guard precision and
no cancellation happens at working precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import mpmath

from .curve import CurveData, MetricGraph, build_graph, curve_data, pairing_matrix, tilde_T, tilde_cycles
from .errors import InputError, NotGeneric, QuadratureNotConverged, RootOrderingFailed
from .rational import Mat, matmul
from .udtoda import SpectralInvariants, is_generic

DEFAULT_PRECISION = 60


def predicted_X(inv: SpectralInvariants) -> list[Fraction]:
    """X_j = C_j - C_{j+1} for j = 0..g, with C_{g+1} = 0."""
    g = inv.g
    C = [inv.c(j) for j in range(g + 1)] + [Fraction(0)]
    return [C[j] - C[j + 1] for j in range(g + 1)]


def lemma_pairs_hold(inv: SpectralInvariants) -> bool:
    """C_i + C_j > C_{i+1} + C_{j-1} for 0 <= i, i+2 <= j <= g."""
    g, c = inv.g, inv.c
    return all(c(i) + c(j) > c(i + 1) + c(j - 1)
               for i in range(g + 1) for j in range(i + 2, g + 1))


@dataclass(frozen=True)
class ScaledCurve:
    g: int
    inv: SpectralInvariants
    eps: Fraction
    precision: int
    guard: int
    c: tuple                 # c_{-1}, c_0, ..., c_g
    roots: tuple             # u_0 < ... < u_g
    minus: tuple             # u_j^{-1}
    plus: tuple              # u_j^{+1}
    # differences inside cut j, exact to the guard precision
    width: tuple             # u_j^+ - u_j^-
    right: tuple             # u_j^+ - u_j
    left: tuple              # u_j - u_j^-

    @property
    def sqrt_c(self):
        return mpmath.sqrt(self.c[0])

    def sigma(self, i: int) -> int:
        """Sign of Delta just right of cut i."""
        return (-1) ** (i + 1)

    def to_json(self) -> dict:
        f = lambda x: mpmath.nstr(x, 20)
        return {"g": self.g, "eps": str(self.eps), "precision": self.precision,
                "roots": [f(x) for x in self.roots], "minus": [f(x) for x in self.minus],
                "plus": [f(x) for x in self.plus]}


# A point u is carried as (anchor, t): u = anchor_value + t, where anchor
# names a branch point ('+', k) / ('-', k) / ('0', k) or None for plain u.


def _anchor_value(sc: ScaledCurve, anchor):
    kind, k = anchor
    return {"+": sc.plus, "-": sc.minus, "0": sc.roots}[kind][k]


def _offset(sc: ScaledCurve, anchor, kind: str, k: int):
    """(anchor_value - value of (kind, k)) computed without cancellation."""
    akind, ak = anchor
    if ak != k:
        return _anchor_value(sc, anchor) - _anchor_value(sc, (kind, k))
    if akind == kind:
        return mpmath.mpf(0)
    table = {("+", "-"): sc.width[k], ("+", "0"): sc.right[k], ("0", "-"): sc.left[k]}
    if (akind, kind) in table:
        return table[(akind, kind)]
    return -table[(kind, akind)]


def _diff(sc: ScaledCurve, u, kind: str, k: int):
    """u - value of (kind, k); u is a plain number or (anchor, t)."""
    if isinstance(u, tuple):
        anchor, t = u
        return _offset(sc, anchor, kind, k) + t
    return u - _anchor_value(sc, (kind, k))


def _plain(sc: ScaledCurve, u):
    if isinstance(u, tuple):
        return _anchor_value(sc, u[0]) + u[1]
    return u


def delta(sc: ScaledCurve, u):
    """Delta(u) = prod_k (u_k - u)."""
    p = mpmath.mpf(1)
    for k in range(sc.g + 1):
        p *= -_diff(sc, u, "0", k)
    return p


def disc(sc: ScaledCurve, u):
    """Delta^2 - 4c_{-1} = prod_k (u - u_k^+)(u - u_k^-)."""
    p = mpmath.mpf(1)
    for k in range(sc.g + 1):
        p *= _diff(sc, u, "+", k) * _diff(sc, u, "-", k)
    return p


def numerator(sc: ScaledCurve, j: int, u):
    """N_j(u) with omega_j^0 = (1/2 pi i) N_j(u) du / Delta(u)."""
    p = (sc.roots[j] - sc.roots[0]) * (-1) ** (sc.g + 1)
    for i in range(1, sc.g + 1):
        if i != j:
            p *= _diff(sc, u, "0", i)
    return p


@dataclass(frozen=True)
class Differential:
    """omega_j^0 = N_j du / (2 pi i Delta) and omega~_j = N_j du / (2 pi i v)."""
    j: int
    coefficients: tuple      # u_{j,0} .. u_{j,g-1} of N_j (the 1/(2 pi i) factor excluded)
    omega0: Callable
    omega_tilde: Callable    # on the sheet v = sign(Delta) sqrt(D)


def omega0(sc: ScaledCurve, j: int) -> Differential:
    if not 1 <= j <= sc.g:
        raise InputError(f"differential index j must be in 1..{sc.g}, got {j}")
    # expand N_j as a polynomial
    coeffs = [mpmath.mpf(1)]
    for i in range(1, sc.g + 1):
        if i == j:
            continue
        r = sc.roots[i]
        new = [mpmath.mpf(0)] * (len(coeffs) + 1)
        for d, a in enumerate(coeffs):
            new[d + 1] += a
            new[d] -= r * a
        coeffs = new
    scale = (sc.roots[j] - sc.roots[0]) * (-1) ** (sc.g + 1)
    coeffs = tuple(scale * a for a in coeffs)

    def w0(u):
        return numerator(sc, j, u) / delta(sc, u)

    def wt(u):
        D = delta(sc, u)
        return numerator(sc, j, u) / (mpmath.sign(D) * mpmath.sqrt(disc(sc, u)))

    return Differential(j, coeffs, w0, wt)


# ---------------------------------------------------------------- roots


def _bisect_log(f, lo, hi, iters: int):
    """Sign change of f on [lo, hi] located by bisection in log u."""
    flo = mpmath.sign(f(lo))
    a, b = mpmath.log(lo), mpmath.log(hi)
    for _ in range(iters):
        m = (a + b) / 2
        fm = mpmath.sign(f(mpmath.exp(m)))
        if fm == 0:
            return mpmath.exp(m)
        if fm == flo:
            a = m
        else:
            b = m
    return mpmath.exp((a + b) / 2)


def guard_digits(inv: SpectralInvariants, eps: Fraction, precision: int) -> int:
    return precision + int(math.ceil(float(inv.c(-1)) / (float(eps) * math.log(10)))) + 10


def scaled_curve(inv: SpectralInvariants, eps, precision: int = DEFAULT_PRECISION) -> ScaledCurve:
    if not is_generic(inv):
        raise NotGeneric("C is not generic")
    assert lemma_pairs_hold(inv)
    eps = Fraction(eps)
    if eps <= 0:
        raise InputError("eps must be positive")
    g = inv.g
    guard = guard_digits(inv, eps, precision)
    X = predicted_X(inv)
    with mpmath.workdps(guard):
        e = mpmath.mpf(eps.numerator) / eps.denominator
        c = tuple(mpmath.exp(-(mpmath.mpf(x.numerator) / x.denominator) / e) for x in inv.C)
        ck = list(c[1:]) + [mpmath.mpf(1)]     # c_0 .. c_g, c_{g+1}

        def delta_coef(u):
            return mpmath.fsum((-1) ** k * ck[k] * u ** k for k in range(g + 2))

        # brackets halfway (in X) between neighbouring predictions
        Xe = [X[0] + 2] + X + [X[g] - 2]
        edges = [mpmath.exp(-(mpmath.mpf(Xe[k].numerator) / Xe[k].denominator
                                + mpmath.mpf(Xe[k + 1].numerator) / Xe[k + 1].denominator) / (2 * e))
                 for k in range(g + 2)]
        for k, u in enumerate(edges):
            # Delta alternates in sign between its roots: (-1)^k left of u_k
            if mpmath.sign(delta_coef(u)) != (-1) ** k:
                raise RootOrderingFailed(
                    f"Delta has no root between the predicted brackets at eps={eps}; "
                    "shrink eps")
        iters = int(3.33 * guard) + 64
        roots = tuple(_bisect_log(delta_coef, edges[k], edges[k + 1], iters) for k in range(g + 1))
        sqc = mpmath.sqrt(c[0])
        twosq = 2 * sqc
        # D = (Delta - 2 sqrt c)(Delta + 2 sqrt c) with Delta in product form
        def dprod(u):
            p = mpmath.mpf(1)
            for r in roots:
                p *= (r - u)
            return p

        def D(u):
            d = dprod(u)
            return (d - twosq) * (d + twosq)

        for k in range(g + 1):
            for u in (edges[k], edges[k + 1]):
                if D(u) <= 0:
                    raise RootOrderingFailed(
                        f"cuts overlap near root {k} at eps={eps}; shrink eps")
        minus = tuple(_bisect_log(D, edges[k], roots[k], iters) for k in range(g + 1))
        plus = tuple(_bisect_log(D, roots[k], edges[k + 1], iters) for k in range(g + 1))
        seq = []
        for k in range(g + 1):
            seq += [minus[k], plus[k]]
        if not (seq[0] > 0 and all(a < b for a, b in zip(seq, seq[1:]))):
            raise RootOrderingFailed(f"branch points not strictly ordered at eps={eps}")
        if not all(minus[k] < roots[k] < plus[k] for k in range(g + 1)):
            raise RootOrderingFailed(f"interlacing fails at eps={eps}")
        width = tuple(plus[k] - minus[k] for k in range(g + 1))
        right = tuple(plus[k] - roots[k] for k in range(g + 1))
        left = tuple(roots[k] - minus[k] for k in range(g + 1))
    return ScaledCurve(g, inv, eps, precision, guard, c, roots, minus, plus, width, right, left)


def root_errors(sc: ScaledCurve) -> dict[str, mpmath.mpf]:
    """Max over j of |-eps log r_j - X_j| for the three root families."""
    X = predicted_X(sc.inv)
    with mpmath.workdps(sc.precision):
        e = mpmath.mpf(sc.eps.numerator) / sc.eps.denominator

        def err(rs):
            return max(abs(-e * mpmath.log(r) - mpmath.mpf(x.numerator) / x.denominator)
                       for r, x in zip(rs, X))

        return {"u": err(sc.roots), "u-": err(sc.minus), "u+": err(sc.plus)}


# ---------------------------------------------------------------- quadrature


def _quad(f, pts, what: str):
    val, err = mpmath.quad(f, pts, error=True, maxdegree=10)
    tol = mpmath.mpf(10) ** (-(mpmath.mp.dps // 3)) * max(1, abs(val))
    if not err <= tol:
        raise QuadratureNotConverged(f"{what}: error estimate {mpmath.nstr(err, 5)}")
    return val


def _log_pts(a, b, focus=(), n: int = 6):
    """Split [a, b] into n pieces plus extra knots around each focus point."""
    pts = {a, b}
    for k in range(1, n):
        pts.add(a + (b - a) * k / n)
    for f in focus:
        for d in (-8, -4, -2, 0, 2, 4, 8):
            x = f + d
            if a < x < b:
                pts.add(x)
    return sorted(pts)


def _half_gap(sc: ScaledCurve, j: int, anchor, t_max, sheet: int):
    """int of N_j/(sheet * sign(Delta) sqrt(D)) du from the branch point
    `anchor` out to distance t_max, integrated in r = log t."""
    kind, k = anchor
    direction = 1 if kind == "+" else -1
    w = sc.width[k]
    r_lo = mpmath.log(w) - 2.3 * (sc.precision // 2)
    r_hi = mpmath.log(t_max)

    def f(r):
        t = mpmath.exp(r)
        u = (anchor, direction * t)
        D = disc(sc, u)
        s = mpmath.sign(delta(sc, u))
        return numerator(sc, j, u) / (sheet * s * mpmath.sqrt(D)) * t

    pts = _log_pts(r_lo, r_hi, focus=(mpmath.log(w),), n=max(4, int((r_hi - r_lo) / 12)))
    return _quad(f, pts, f"gap integral near {anchor}")


def gap_integral(sc: ScaledCurve, j: int, k: int, sheet: int = 1):
    """int_{u_k^+}^{u_{k+1}^-} N_j/(sign(Delta) sqrt(D)) du on the given sheet."""
    with mpmath.workdps(sc.precision):
        a, b = sc.plus[k], sc.minus[k + 1]
        mid = mpmath.sqrt(a * b)
        left = _half_gap(sc, j, ("+", k), mid - a, sheet)
        right = _half_gap(sc, j, ("-", k + 1), b - mid, sheet)
        return left + right


def a_periods(sc: ScaledCurve):
    """A_ij = int_{a_i} omega~_j = (sigma_i / pi) int_cut N_j/sqrt|D|."""
    g = sc.g
    with mpmath.workdps(sc.precision):
        A = mpmath.matrix(g, g)
        for i in range(1, g + 1):
            h = sc.width[i] / 2
            for j in range(1, g + 1):
                # u = u_i^- + h(1 + sin th): sqrt((u-u^-)(u^+-u)) = h cos th cancels du
                def f(th, i=i, j=j):
                    t = h * (1 + mpmath.sin(th))
                    u = (("-", i), t)
                    rest = mpmath.mpf(1)
                    for k in range(g + 1):
                        if k != i:
                            rest *= _diff(sc, u, "+", k) * _diff(sc, u, "-", k)
                    return numerator(sc, j, u) / mpmath.sqrt(abs(rest))

                val = _quad(f, [-mpmath.pi / 2, 0, mpmath.pi / 2], f"a-period ({i},{j})")
                A[i - 1, j - 1] = sc.sigma(i) * val / mpmath.pi
        return A


def b_period_limits(sc: ScaledCurve):
    """P_ij = Re(-2 pi i eps int_{b_i} omega~_j) with b_i running from cut 0 to
    cut i on the upper sheet and back on the lower one."""
    g = sc.g
    with mpmath.workdps(sc.precision):
        e = mpmath.mpf(sc.eps.numerator) / sc.eps.denominator
        gaps = [[gap_integral(sc, j, k) for j in range(1, g + 1)] for k in range(g)]
        P = mpmath.matrix(g, g)
        for i in range(1, g + 1):
            for j in range(1, g + 1):
                P[i - 1, j - 1] = -2 * e * mpmath.fsum(gaps[k][j - 1] for k in range(i))
        return P


def residue_check(sc: ScaledCurve, j: int, radius_fraction=Fraction(1, 2)):
    """Contour integral of omega_j^0 on a circle around u_j; equals 1."""
    d = omega0(sc, j)
    with mpmath.workdps(sc.precision):
        r = sc.roots[j] * (mpmath.mpf(radius_fraction.numerator) / radius_fraction.denominator)
        r = min(r, (sc.roots[j] - sc.roots[j - 1]) / 2)
        if j < sc.g:
            r = min(r, (sc.roots[j + 1] - sc.roots[j]) / 2)

        def f(th):
            z = sc.roots[j] + r * mpmath.expj(th)
            return (1 / (z - sc.roots[j]) - 1 / (z - sc.roots[0])) * 1j * r * mpmath.expj(th)

        val = mpmath.quad(f, [0, mpmath.pi, 2 * mpmath.pi]) / (2j * mpmath.pi)
        return val


# ---------------------------------------------------------------- segments


@dataclass(frozen=True)
class SegmentCheck:
    kind: str          # "chain" or "vertical"
    index: int         # gap index i (chain) or root index i (vertical)
    j: int
    sheet: str         # "top" or "bottom"
    a: Fraction
    b: Fraction
    computed: mpmath.mpf
    target: Fraction
    scale: Fraction    # |a - b|, the natural size of the segment

    @property
    def rel_error(self):
        return abs(self.computed - mpmath.mpf(self.target.numerator) / self.target.denominator) \
            / (mpmath.mpf(self.scale.numerator) / self.scale.denominator)


def chain_target(i: int, j: int, Xa, Xb, top: bool) -> Fraction:
    if j <= i:
        return Fraction(0)
    return (Xa - Xb) if top else -(Xa - Xb)


def vertical_target(i: int, j: int, Ya, Yb) -> Fraction:
    if i == 0:
        return -(Ya - Yb)
    if i == j:
        return Ya - Yb
    return Fraction(0)


def _mpq(x: Fraction):
    return mpmath.mpf(x.numerator) / x.denominator


def chain_segment(sc: ScaledCurve, i: int, j: int, Xa: Fraction, Xb: Fraction, top: bool):
    """-2 pi i eps int_{u_a}^{u_b} omega~_j with X_{i+1} < X_a, X_b < X_i."""
    with mpmath.workdps(sc.precision):
        e = _mpq(sc.eps)
        sheet = 1 if top else -1

        def f(s):
            u = mpmath.exp(s)
            return numerator(sc, j, u) / (sheet * mpmath.sign(delta(sc, u))
                                          * mpmath.sqrt(disc(sc, u))) * u

        sa, sb = -_mpq(Xa) / e, -_mpq(Xb) / e
        val = _quad(f, _log_pts(min(sa, sb), max(sa, sb)), "chain segment")
        if sa > sb:
            val = -val
        return -e * val


def _vertical_offset(sc: ScaledCurve, i: int, Y: Fraction):
    """t > 0 with u = u_i^+ + t on the real branch through |y| = e^{-Y/eps}."""
    e = _mpq(sc.eps)
    ymag = mpmath.exp(-_mpq(Y) / e)
    sigma = sc.sigma(i)
    target = sigma * (ymag + sc.c[0] / ymag)   # Delta(u) = -(y + c/y), y = -sigma |y|

    def f(t):
        return delta(sc, (("+", i), t)) - target

    hi = (sc.minus[i + 1] - sc.plus[i]) / 2 if i < sc.g else sc.plus[i]
    lo = sc.width[i] * mpmath.mpf(10) ** (-sc.precision // 2)
    if mpmath.sign(f(lo)) == mpmath.sign(f(hi)):
        raise RootOrderingFailed(f"no real point at Y={Y} over root {i}")
    return _bisect_log(f, lo, hi, int(3.33 * sc.precision) + 64)


def vertical_segment(sc: ScaledCurve, i: int, j: int, Ya: Fraction, Yb: Fraction):
    """-2 pi i eps int omega~_j between the points over u_i at heights Y_a, Y_b
    (same half of the vertical edge)."""
    half = _mpq(sc.inv.c(-1)) / 2
    top = _mpq(Ya) >= half
    with mpmath.workdps(sc.precision):
        e = _mpq(sc.eps)
        ta, tb = _vertical_offset(sc, i, Ya), _vertical_offset(sc, i, Yb)
        sheet = 1 if top else -1

        def f(r):
            t = mpmath.exp(r)
            u = (("+", i), t)
            return numerator(sc, j, u) / (sheet * mpmath.sign(delta(sc, u))
                                          * mpmath.sqrt(disc(sc, u))) * t

        ra, rb = mpmath.log(ta), mpmath.log(tb)
        val = _quad(f, _log_pts(min(ra, rb), max(ra, rb)), "vertical segment")
        if ra > rb:
            val = -val
        return -e * val


def segment_checks(sc: ScaledCurve) -> list[SegmentCheck]:
    """Compare direct quadrature on within-edge segments with the closed-form
    limits: chain segments in every gap and vertical segments over every root."""
    g, inv = sc.g, sc.inv
    X = predicted_X(inv)
    Cm1 = inv.c(-1)
    out = []
    for i in range(g):
        lo, hi = X[i + 1], X[i]
        Xa, Xb = lo + (hi - lo) * Fraction(2, 3), lo + (hi - lo) * Fraction(1, 3)
        for top in (True, False):
            for j in range(1, g + 1):
                val = chain_segment(sc, i, j, Xa, Xb, top)
                out.append(SegmentCheck("chain", i, j, "top" if top else "bottom", Xa, Xb, val,
                                        chain_target(i, j, Xa, Xb, top), abs(Xa - Xb)))
    for i in range(g + 1):
        x = X[i]
        phi = min([k * x + inv.c(k) for k in range(g + 1)] + [(g + 1) * x])
        p = Cm1 - 2 * phi
        for top in (True, False):
            if top:
                Ya, Yb = Cm1 / 2 + p / 2 * Fraction(2, 3), Cm1 / 2 + p / 2 * Fraction(1, 3)
            else:
                Ya, Yb = Cm1 / 2 - p / 2 * Fraction(2, 3), Cm1 / 2 - p / 2 * Fraction(1, 3)
            for j in range(1, g + 1):
                val = vertical_segment(sc, i, j, Ya, Yb)
                out.append(SegmentCheck("vertical", i, j, "top" if top else "bottom", Ya, Yb,
                                        val, vertical_target(i, j, Ya, Yb), abs(Ya - Yb)))
    return out


# ---------------------------------------------------------------- basis change


@dataclass(frozen=True)
class BasisChangeT:
    T: Mat
    K_tilde: Mat
    cycles: tuple

    def to_json(self) -> dict:
        from .rational import fmt_vec
        return {"T": [fmt_vec(r) for r in self.T], "K_tilde": [fmt_vec(r) for r in self.K_tilde]}


def basis_change(cd: CurveData) -> BasisChangeT:
    G = build_graph(cd)
    T = tilde_T(cd.g)
    Kt = matmul(matmul(T, cd.K), T)
    cyc = tilde_cycles(G)
    assert pairing_matrix(G, cyc) == Kt
    assert all(Kt[i][j] == Kt[j][i] for i in range(cd.g) for j in range(cd.g))
    return BasisChangeT(T, Kt, cyc)


def mat_error(M, target: Mat) -> mpmath.mpf:
    """max |M_ij - target_ij| / max |target_ij|."""
    g = len(target)
    scale = max(abs(x) for r in target for x in r)
    return max(abs(M[i, j] - _mpq(Fraction(target[i][j]))) for i in range(g) for j in range(g)) \
        / _mpq(Fraction(scale))


def identity_error(A) -> mpmath.mpf:
    g = A.rows
    return max(abs(A[i, j] - (1 if i == j else 0)) for i in range(g) for j in range(g))
