"""Exact integer linear algebra: vectors, determinants, integer kernels.

Vectors are tuples of Python ints and matrices are sequences of
equal-length integer rows.  Python ints are arbitrary precision, so all
arithmetic here is exact and overflow-free.
"""

from __future__ import annotations

from math import gcd
from typing import Sequence

IntVec = tuple[int, ...]
IntMat = Sequence[Sequence[int]]


class LatticeError(ValueError):
    """Malformed input to a lattice operation."""


def mu(x: Sequence[int]) -> int:
    """min(0, x_1, ..., x_n); always <= 0."""
    if len(x) == 0:
        raise LatticeError("mu: empty vector")
    return min(0, *x)


def nu(x: Sequence[int]) -> int:
    """(x_1 + ... + x_n) - (n+1) * mu(x); always >= 0."""
    if len(x) == 0:
        raise LatticeError("nu: empty vector")
    return sum(x) - (len(x) + 1) * mu(x)


def det(m: IntMat) -> int:
    """Exact determinant by Bareiss fraction-free elimination."""
    n = len(m)
    if n == 0 or any(len(row) != n for row in m):
        raise LatticeError("det: square matrix required")
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # exact division: Bareiss invariant guarantees divisibility
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def kernel_primitive(m: IntMat) -> IntVec:
    """Primitive integer kernel vector of an n x (n+1) matrix of rank n.

    The columns of ``m`` are n+1 vectors in Z^n with a one-dimensional
    space of linear relations; returns the gcd-reduced relation with the
    first nonzero entry positive.
    """
    n = len(m)
    if n == 0 or any(len(row) != n + 1 for row in m):
        raise LatticeError("kernel_primitive: expected n rows of length n+1")
    v = []
    sign = 1
    for i in range(n + 1):
        sub = [list(row[:i]) + list(row[i + 1:]) for row in m]
        v.append(sign * det(sub))
        sign = -sign
    if all(e == 0 for e in v):
        raise LatticeError("kernel_primitive: matrix has rank < n")
    g = 0
    for e in v:
        g = gcd(g, e)
    v = [e // g for e in v]
    first = next(e for e in v if e != 0)
    if first < 0:
        v = [-e for e in v]
    # sanity: m . v == 0 exactly
    for row in m:
        if sum(r * e for r, e in zip(row, v)) != 0:
            raise LatticeError("kernel_primitive: internal error, m.v != 0")
    return tuple(v)
