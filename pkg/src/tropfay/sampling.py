"""Seeded random generators for generic curves, states, points and vectors."""

from __future__ import annotations

import random
from fractions import Fraction

from .curve import MetricGraph, PointOnCurve, point, vertex_point
from .udtoda import SpectralInvariants, UDState, is_generic


def rational(rng: random.Random, bound: int, dens=(1, 2, 3, 4)) -> Fraction:
    d = rng.choice(dens)
    return Fraction(rng.randint(-bound * d, bound * d), d)


def rational_vec(rng: random.Random, n: int, bound: int, dens=(1, 2, 3, 4)) -> tuple[Fraction, ...]:
    return tuple(rational(rng, bound, dens) for _ in range(n))


def generic_invariants(rng: random.Random, g: int, max_gap: int = 4,
                       dens=(1,)) -> SpectralInvariants:
    """A generic C built from increasing vertical-edge abscissae lam_0 < ... < lam_g.

    C_g = lam_0 and C_{g-k} = C_{g-k+1} + lam_k makes C convex; C_{-1} is
    pushed high enough for C_{-1} > 2C_0.
    """
    while True:
        d = rng.choice(dens)
        lam = [Fraction(rng.randint(0, 3 * d), d)]
        for _ in range(g):
            lam.append(lam[-1] + Fraction(rng.randint(1, max_gap * d), d))
        c = {g: lam[0]}
        for k in range(1, g + 1):
            c[g - k] = c[g - k + 1] + lam[k]
        c[-1] = 2 * c[0] + Fraction(rng.randint(1, 6 * d), d)
        inv = SpectralInvariants.of([c[i] for i in range(-1, g + 1)])
        if is_generic(inv):
            return inv


def ud_state(rng: random.Random, g: int, bound: int = 10, dens=(1, 2)) -> UDState:
    """Uniform rational Q, W in [0, bound] conditioned on sum(Q) < sum(W)."""
    while True:
        Q = tuple(abs(rational(rng, bound, dens)) for _ in range(g + 1))
        W = tuple(abs(rational(rng, bound, dens)) for _ in range(g + 1))
        if sum(Q) < sum(W):
            return UDState(g, Q, W)


def graph_point(rng: random.Random, G: MetricGraph, real_only: bool = False,
                quarter: bool = True) -> PointOnCurve:
    """A random point of Gamma with rational offset.

    real_only restricts to vertices and the slanted chains b_k, t_k, the part
    of Gamma that is the image of real points of the complex curve.
    """
    if real_only:
        if rng.random() < 0.25:
            return vertex_point(G, rng.choice(G.vertices).id)
        edges = [e for e in G.edges if e.name[0] in "bt"]
    else:
        edges = list(G.edges)
    e = rng.choice(edges)
    den = 4 if quarter else rng.choice((1, 2, 3, 4, 6))
    off = Fraction(rng.randint(0, int(e.length * den)), den)
    return point(G, e.id, min(off, e.length))


def half_integer_beta(rng: random.Random, g: int) -> tuple[Fraction, ...]:
    """beta in (1/2)Z^g with at least one non-integral entry."""
    beta = [Fraction(rng.choice((-1, 0, 1, 2)), 2) for _ in range(g)]
    if all(b.denominator == 1 for b in beta):
        beta[rng.randrange(g)] = Fraction(1, 2)
    return tuple(beta)
