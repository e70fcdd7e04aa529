"""Small integer/rational vector and matrix helpers on tuples."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence, Tuple

Vec = Tuple[int, ...]
Mat = Tuple[Tuple[int, ...], ...]


def identity(n: int) -> Mat:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def matmul(a: Mat, b: Mat) -> Mat:
    cols = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)


def matvec(a: Mat, v: Sequence) -> tuple:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def vecmat(v: Sequence, a: Mat) -> tuple:
    """Row vector times matrix (used for the contragredient action on forms)."""
    n = len(a[0]) if a else 0
    return tuple(sum(v[i] * a[i][j] for i in range(len(v))) for j in range(n))


def pair(x: Sequence, form: Sequence):
    return sum(a * b for a, b in zip(x, form))


def add(x: Sequence, y: Sequence) -> tuple:
    return tuple(a + b for a, b in zip(x, y))


def sub(x: Sequence, y: Sequence) -> tuple:
    return tuple(a - b for a, b in zip(x, y))


def neg(x: Sequence) -> tuple:
    return tuple(-a for a in x)


def scale(c, x: Sequence) -> tuple:
    return tuple(c * a for a in x)


def det(a: Mat) -> int:
    n = len(a)
    if n == 0:
        return 1
    m = [[Fraction(x) for x in row] for row in a]
    sign = 1
    out = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            sign = -sign
        out *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            if f:
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return int(sign * out)


def solve(a: Sequence[Sequence], b: Sequence) -> tuple:
    """Exact solution of the square system ``a x = b`` over Q.

    Raises ``ZeroDivisionError`` when ``a`` is singular.
    """
    import sympy

    sol = sympy.Matrix(a).LUsolve(sympy.Matrix(list(b)))
    return tuple(Fraction(int(sympy.fraction(s)[0]), int(sympy.fraction(s)[1])) for s in sol)


def inverse(a: Sequence[Sequence]) -> Tuple[Tuple[Fraction, ...], ...]:
    import sympy

    inv = sympy.Matrix(a).inv()
    return tuple(
        tuple(Fraction(int(sympy.fraction(x)[0]), int(sympy.fraction(x)[1])) for x in inv.row(i))
        for i in range(inv.rows)
    )


def int_vec(v: Sequence) -> Vec:
    out = []
    for x in v:
        f = Fraction(x)
        if f.denominator != 1:
            raise ValueError(f"non-integral entry {x}")
        out.append(int(f))
    return tuple(out)


def integer_kernel(rows: Sequence[Sequence[int]], n: int) -> list:
    """A basis of the integer vectors x with ``row . x = 0`` for every row.

    The basis spans the rational kernel; each vector is primitive.
    """
    import math

    import sympy

    if not rows:
        return [tuple(1 if i == j else 0 for j in range(n)) for i in range(n)]
    basis = sympy.Matrix(rows).nullspace()
    out = []
    for v in basis:
        dens = [sympy.fraction(x)[1] for x in v]
        lcm = 1
        for d in dens:
            lcm = lcm * int(d) // math.gcd(lcm, int(d))
        w = [int(x * lcm) for x in v]
        g = 0
        for x in w:
            g = math.gcd(g, abs(x))
        w = [x // g for x in w]
        first = next(x for x in w if x != 0)
        if first < 0:
            w = [-x for x in w]
        out.append(tuple(w))
    return out
