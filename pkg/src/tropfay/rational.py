"""Exact rational helpers shared by every module."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionMismatch, InputError

Vec = tuple[Fraction, ...]
Mat = tuple[tuple[Fraction, ...], ...]


def frac(x) -> Fraction:
    """Coerce an int, Fraction or string ("p/q", "3.5") to a Fraction.

    Floats are rejected: a silent binary approximation would break exactness.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise InputError(f"not a rational: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"not a rational: {x!r}") from exc
    raise InputError(f"not a rational: {x!r} (use int or 'p/q' string)")


def vec(xs: Iterable) -> Vec:
    return tuple(frac(x) for x in xs)


def mat(rows: Iterable[Iterable]) -> Mat:
    return tuple(vec(r) for r in rows)


def fmt(q: Fraction) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def fmt_vec(v: Iterable[Fraction]) -> list[str]:
    return [fmt(x) for x in v]


def dot(a: Sequence, b: Sequence):
    if len(a) != len(b):
        raise DimensionMismatch(f"length {len(a)} vs {len(b)}")
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def vadd(a: Sequence, b: Sequence) -> Vec:
    if len(a) != len(b):
        raise DimensionMismatch(f"length {len(a)} vs {len(b)}")
    return tuple(Fraction(x) + y for x, y in zip(a, b))


def vsub(a: Sequence, b: Sequence) -> Vec:
    if len(a) != len(b):
        raise DimensionMismatch(f"length {len(a)} vs {len(b)}")
    return tuple(Fraction(x) - y for x, y in zip(a, b))


def vscale(s, a: Sequence) -> Vec:
    return tuple(Fraction(s) * x for x in a)


def row_times(v: Sequence, M: Sequence[Sequence]) -> Vec:
    """Row vector times matrix, v M."""
    n = len(M)
    if len(v) != n:
        raise DimensionMismatch(f"vector length {len(v)} vs matrix size {n}")
    return tuple(sum((v[i] * M[i][j] for i in range(n)), Fraction(0))
                 for j in range(len(M[0])))


def quad(v: Sequence, M: Sequence[Sequence]):
    return dot(row_times(v, M), v)


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> Mat:
    return tuple(tuple(sum((A[i][k] * B[k][j] for k in range(len(B))), Fraction(0))
                       for j in range(len(B[0])))
                 for i in range(len(A)))


def inverse(M: Sequence[Sequence]) -> Mat:
    """Exact Gauss-Jordan inverse."""
    n = len(M)
    A = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(M)]
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        A[col], A[piv] = A[piv], A[col]
        p = A[col][col]
        A[col] = [x / p for x in A[col]]
        for r in range(n):
            if r != col and A[r][col] != 0:
                f = A[r][col]
                A[r] = [x - f * y for x, y in zip(A[r], A[col])]
    return tuple(tuple(row[n:]) for row in A)


def is_integral(v: Iterable[Fraction]) -> bool:
    return all(Fraction(x).denominator == 1 for x in v)


def round_half_up(q: Fraction) -> int:
    return math.floor(q + Fraction(1, 2))


def unit(g: int, i: int) -> Vec:
    """Standard basis vector e_i, 1-based."""
    return tuple(Fraction(int(j == i - 1)) for j in range(g))


def ones(g: int, k: int | None = None) -> Vec:
    """The all-ones vector, or (1,..,1,0,..,0) with k leading ones."""
    k = g if k is None else k
    return tuple(Fraction(int(j < k)) for j in range(g))


def gbar(g: int) -> Vec:
    """(g, g-1, ..., 1)."""
    return tuple(Fraction(g - j) for j in range(g))
