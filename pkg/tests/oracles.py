"""Independent brute-force oracles used by the tests."""

from __future__ import annotations

from fractions import Fraction
from math import floor
from typing import Dict, Iterable, List, Set

from bmcycles import _lattice as la
from bmcycles import affine_weyl as aw


def base_point(datum):
    """A point strictly inside the base alcove."""
    h = max((la.pair(datum.rho, a) for a in datum.positive_roots), default=0)
    return tuple(Fraction(c, h + 1) for c in datum.rho)


def hyperplane_length(datum, x) -> int:
    """Count hyperplanes ``<., a> = k`` separating a base-alcove point from its image."""
    p0 = base_point(datum)
    p1 = x.act(p0)
    total = 0
    for a in datum.positive_roots:
        u, v = la.pair(p0, a), la.pair(p1, a)
        lo, hi = min(u, v), max(u, v)
        total += floor(hi) - floor(lo)
    return total


def is_affine_reflection(datum, g) -> bool:
    if g.fin.is_identity or not (g * g == aw.identity(datum)):
        return False
    m = g.fin.matrix
    n = len(m)
    diff = [[(1 if i == j else 0) - m[i][j] for j in range(n)] for i in range(n)]
    return len(la.integer_kernel(diff, n)) == n - 1


def cover_order(datum, elements: Iterable) -> Dict[object, Set[object]]:
    """``{b: {a <= b}}`` from the transitive closure of covers inside a downward-closed set."""
    elts = list(elements)
    lengths = {x: hyperplane_length(datum, x) for x in elts}
    below: Dict[object, List[object]] = {x: [] for x in elts}
    for y in elts:
        for x in elts:
            if lengths[x] + 1 == lengths[y] and is_affine_reflection(datum, y * x.inv()):
                below[y].append(x)
    out = {}
    for b in elts:
        seen = {b}
        stack = [b]
        while stack:
            for x in below[stack.pop()]:
                if x not in seen:
                    seen.add(x)
                    stack.append(x)
        out[b] = seen
    return out
