"""Independent brute-force reference implementations used by the tests.

Nothing here imports the package's algorithms; each oracle recomputes a
quantity from its definition by exhaustive search or symbolic algebra.
"""

from fractions import Fraction
from itertools import combinations, product

import sympy


def theta_box(K, Z, R=4):
    """min over |m|_inf <= R of 1/2 mKm + mZ, with the full arg-min set."""
    g = len(K)
    best, arg = None, []
    for m in product(range(-R, R + 1), repeat=g):
        v = sum(Fraction(K[i][j]) * m[i] * m[j] for i in range(g) for j in range(g)) / 2 \
            + sum(m[i] * Fraction(Z[i]) for i in range(g))
        if best is None or v < best:
            best, arg = v, [m]
        elif v == best:
            arg.append(m)
    return best, sorted(arg)


def theta_char_box(K, beta, Z, R=4):
    g = len(K)
    bK = [sum(Fraction(beta[i]) * K[i][j] for i in range(g)) for j in range(g)]
    v, arg = theta_box(K, [Fraction(Z[j]) + bK[j] for j in range(g)], R)
    return sum(bK[j] * beta[j] for j in range(g)) / 2 + sum(Fraction(beta[j]) * Z[j] for j in range(g)) + v, arg


def invariants_bruteforce(Q, W):
    """C_{-1} = sum Q + sum W and C_{g-k} = min over k pairwise non-adjacent
    positions of the cyclic sequence Q_1, W_1, ..., Q_{g+1}, W_{g+1}."""
    seq = []
    for q, w in zip(Q, W):
        seq += [Fraction(q), Fraction(w)]
    n, g = len(seq), len(Q) - 1
    C = [sum(seq)]
    for i in range(0, g + 1):
        k = g + 1 - i
        best = None
        for S in combinations(range(n), k):
            if any((b - a) % n in (1, n - 1) for a, b in combinations(S, 2)):
                continue
            v = sum(seq[s] for s in S)
            best = v if best is None else min(best, v)
        C.append(best)
    return tuple(C)


def ud_step_reference(Q, W):
    """One step written with explicit min over all partial sums."""
    N = len(Q)
    Q = [Fraction(x) for x in Q]
    W = [Fraction(x) for x in W]
    Qn = []
    for n in range(N):
        sums = [Fraction(0)]
        for k in range(1, N):
            sums.append(sum(W[(n - l) % N] - Q[(n - l) % N] for l in range(1, k + 1)))
        Qn.append(min(W[n], Q[n] - min(sums)))
    Wn = [Q[(n + 1) % N] + W[n] - Qn[n] for n in range(N)]
    return tuple(Qn), tuple(Wn)


def char_poly_sympy(I, V):
    """Coefficients (c_{-1}, c_0, ..., c_g) of y * det(x + L(y)) by sympy."""
    x, y = sympy.symbols("x y")
    N = len(I)
    g = N - 1
    I = [sympy.Rational(str(v)) for v in I]
    V = [sympy.Rational(str(v)) for v in V]
    M = sympy.zeros(N, N)
    for n in range(N):
        M[n, n] = x + I[(n + 1) % N] + V[n]
        if n + 1 < N:
            M[n, n + 1] += 1
            M[n + 1, n] += I[n + 1] * V[n + 1]
    M[0, N - 1] += (-1) ** g * I[0] * V[0] / y
    M[N - 1, 0] += (-1) ** g * y
    f = sympy.expand(sympy.cancel(M.det() * y))
    P = sympy.Poly(f, x, y)
    c = [P.coeff_monomial(1)] + [P.coeff_monomial(x ** i * y) for i in range(g + 1)]
    return tuple(Fraction(int(sympy.numer(v)), int(sympy.denom(v))) for v in c)


def domain_bruteforce(K, Z, m, R=3):
    """Sign class of min over nonzero |l|_inf <= R of lZ + lK(m + l/2)."""
    g = len(K)
    best = None
    for l in product(range(-R, R + 1), repeat=g):
        if not any(l):
            continue
        v = sum(l[i] * Fraction(Z[i]) for i in range(g)) + sum(
            l[i] * K[i][j] * (Fraction(m[j]) + Fraction(l[j], 2)) for i in range(g) for j in range(g))
        best = v if best is None else min(best, v)
    return "Interior" if best > 0 else "Boundary" if best == 0 else "Outside"


def tropical_F(C, X, Y):
    """All affine terms of min[2Y, Y + min_k(kX + C_k), C_{-1}] with C_{g+1}=0."""
    g = len(C) - 2
    terms = [2 * Y, C[0]]
    for k in range(g + 2):
        Ck = C[k + 1] if k <= g else 0
        terms.append(Y + k * X + Ck)
    v = min(terms)
    return v, terms.count(v)
