"""The extended affine Weyl group ``X ⋊ W`` and its alcove combinatorics.

An element is stored as ``w t^nu`` (finite part ``w``, translation ``nu``),
acting on ``L ⊗ R`` by ``x -> w(x + nu)``.  Equivalently it is ``t^{w nu} w``;
``shift`` returns ``w nu``.

The base alcove ``A0`` is the dominant one, ``0 < <x, a> < 1`` for every
positive root ``a``.  Everything about an element's alcove is read off its
sign vector: for each positive root ``a`` the integer ``m_a`` with
``x(A0)`` inside the strip ``m_a < <., a> < m_a + 1``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

from . import _lattice as la
from .errors import NoFundamentalCoweights, NotDominant, NotRegular
from .root_data import FinWeyl, RootDatum, Weight


@dataclass(frozen=True)
class ExtAffWeyl:
    """``w t^nu`` with ``w`` finite and ``nu`` a lattice vector."""

    fin: FinWeyl
    trans: Weight

    def __mul__(self, other: "ExtAffWeyl") -> "ExtAffWeyl":
        nu = la.add(other.fin.act_inv(self.trans), other.trans)
        return ExtAffWeyl(self.fin * other.fin, nu)

    def inv(self) -> "ExtAffWeyl":
        return ExtAffWeyl(self.fin.inv(), la.neg(self.fin.act(self.trans)))

    def act(self, x: Sequence) -> tuple:
        return self.fin.act(la.add(x, self.trans))

    @property
    def shift(self) -> Weight:
        """The ``mu`` with ``self = t^mu w``."""
        return self.fin.act(self.trans)

    @property
    def is_translation(self) -> bool:
        return self.fin.is_identity


@dataclass(frozen=True)
class Alcove:
    """Position of an alcove: one strip index per positive root."""

    sign_vector: Tuple[int, ...]


# -- constructors -------------------------------------------------------------


def identity(datum: RootDatum) -> ExtAffWeyl:
    return ExtAffWeyl(datum.identity, datum.zero())


def translation(datum: RootDatum, nu: Sequence[int]) -> ExtAffWeyl:
    return ExtAffWeyl(datum.identity, tuple(int(c) for c in nu))


def finite(datum: RootDatum, w: FinWeyl) -> ExtAffWeyl:
    return ExtAffWeyl(w, datum.zero())


def t_w(datum: RootDatum, mu: Sequence[int], w: FinWeyl) -> ExtAffWeyl:
    """The element ``t^mu w``."""
    return ExtAffWeyl(w, w.act_inv(tuple(mu)))


def reflection(datum: RootDatum, root_index: int, k: int = 0) -> ExtAffWeyl:
    """Reflection in the hyperplane ``<x, a> = k`` for a positive root ``a``."""
    a = datum.positive_roots[root_index]
    c = datum.positive_coroots[root_index]
    n = datum.rank
    m = tuple(tuple((1 if i == j else 0) - c[i] * a[j] for j in range(n)) for i in range(n))
    return ExtAffWeyl(FinWeyl(m, m, -1), la.scale(-k, c))


# -- alcove data --------------------------------------------------------------


def sign_vector(datum: RootDatum, x: ExtAffWeyl) -> Tuple[int, ...]:
    s = x.shift
    wr = x.fin.act(datum.rho)
    return tuple(la.pair(s, a) - (1 if la.pair(wr, a) < 0 else 0) for a in datum.positive_roots)


def alcove(datum: RootDatum, x: ExtAffWeyl) -> Alcove:
    return Alcove(sign_vector(datum, x))


def length(datum: RootDatum, x: ExtAffWeyl) -> int:
    """Number of affine root hyperplanes separating ``A0`` and ``x(A0)``."""
    return sum(abs(m) for m in sign_vector(datum, x))


def elt_height(datum: RootDatum, x: ExtAffWeyl) -> int:
    """Largest number of parallel hyperplanes of one direction separating ``A0`` and ``x(A0)``."""
    return max((abs(m) for m in sign_vector(datum, x)), default=0)


def is_dominant(datum: RootDatum, x: ExtAffWeyl) -> bool:
    """Whether ``x(A0)`` lies in the dominant chamber."""
    return all(m >= 0 for m in sign_vector(datum, x))


def in_box(datum: RootDatum, x: ExtAffWeyl) -> bool:
    """Whether ``x(A0)`` lies in the fundamental box ``0 < <., a_i> < 1``."""
    s = x.shift
    wr = x.fin.act(datum.rho)
    for a in datum.simple_roots:
        if la.pair(s, a) - (1 if la.pair(wr, a) < 0 else 0) != 0:
            return False
    return True


def is_length_zero(datum: RootDatum, x: ExtAffWeyl) -> bool:
    return all(m == 0 for m in sign_vector(datum, x))


def is_regular(datum: RootDatum, x: ExtAffWeyl) -> bool:
    """No strip of ``A0`` contains ``x(A0)``: every sign-vector entry is nonzero."""
    return all(m != 0 for m in sign_vector(datum, x))


# -- Coxeter structure --------------------------------------------------------


@lru_cache(maxsize=None)
def affine_simple_reflections(datum: RootDatum) -> Tuple[ExtAffWeyl, ...]:
    """Finite simple reflections followed by one affine reflection per component."""
    out = [finite(datum, s) for s in datum.simple_reflections]
    for theta in datum.highest_roots:
        out.append(reflection(datum, datum.root_index[theta], 1))
    return tuple(out)


def left_descents(datum: RootDatum, x: ExtAffWeyl) -> List[int]:
    """Indices (into ``affine_simple_reflections``) of the left descents of ``x``."""
    sv = sign_vector(datum, x)
    out = []
    for i, a in enumerate(datum.simple_roots):
        if sv[datum.root_index[a]] <= -1:
            out.append(i)
    r = datum.ss_rank
    for c, theta in enumerate(datum.highest_roots):
        if sv[datum.root_index[theta]] >= 1:
            out.append(r + c)
    return out


def reduced_word(datum: RootDatum, x: ExtAffWeyl) -> Tuple[Tuple[int, ...], ExtAffWeyl]:
    """``(word, tau)`` with ``x = s_{word[0]} ... s_{word[-1]} tau`` reduced and ``tau`` of length 0."""
    gens = affine_simple_reflections(datum)
    word = []
    while True:
        d = left_descents(datum, x)
        if not d:
            return tuple(word), x
        word.append(d[0])
        x = gens[d[0]] * x


@lru_cache(maxsize=None)
def omega_part(datum: RootDatum, x: ExtAffWeyl) -> ExtAffWeyl:
    """The length-zero element in ``W_aff x`` (the image of ``x`` in ``Omega``)."""
    return reduced_word(datum, x)[1]


def same_omega_coset(datum: RootDatum, a: ExtAffWeyl, b: ExtAffWeyl) -> bool:
    return omega_part(datum, a) == omega_part(datum, b)


def bruhat_leq(datum: RootDatum, a: ExtAffWeyl, b: ExtAffWeyl) -> bool:
    """Bruhat order on ``W_aff ⋊ Omega``; false across ``Omega`` cosets."""
    if not same_omega_coset(datum, a, b):
        return False
    return _bruhat(datum, a, b)


@lru_cache(maxsize=None)
def _bruhat(datum: RootDatum, a: ExtAffWeyl, b: ExtAffWeyl) -> bool:
    la_, lb = length(datum, a), length(datum, b)
    if la_ > lb:
        return False
    if lb == 0 or la_ == lb:
        return a == b
    gens = affine_simple_reflections(datum)
    i = left_descents(datum, b)[0]
    s = gens[i]
    if i in left_descents(datum, a):
        return _bruhat(datum, s * a, s * b)
    return _bruhat(datum, a, s * b)


def length_lowering_reflections(datum: RootDatum, x: ExtAffWeyl) -> List[ExtAffWeyl]:
    """All affine reflections ``r`` with ``l(r x) < l(x)`` (hyperplanes separating ``A0`` and ``x(A0)``)."""
    out = []
    for idx, m in enumerate(sign_vector(datum, x)):
        ks = range(1, m + 1) if m >= 1 else range(m + 1, 1)
        if m == 0:
            continue
        for k in ks:
            out.append(reflection(datum, idx, k))
    return out


def lower_interval(datum: RootDatum, b: ExtAffWeyl) -> frozenset:
    """``{a : a <= b}`` generated by descending along Bruhat covers."""
    return _lower_interval(datum, b)


@lru_cache(maxsize=None)
def _lower_interval(datum: RootDatum, b: ExtAffWeyl) -> frozenset:
    seen = {b}
    queue = deque([b])
    while queue:
        x = queue.popleft()
        lx = length(datum, x)
        for r in length_lowering_reflections(datum, x):
            y = r * x
            if y not in seen and length(datum, y) == lx - 1:
                seen.add(y)
                queue.append(y)
    return frozenset(seen)


def bruhat_leq_subword(datum: RootDatum, a: ExtAffWeyl, b: ExtAffWeyl) -> bool:
    """Independent check via the subword property on a reduced word of ``b``."""
    wb, tb = reduced_word(datum, b)
    wa, ta = reduced_word(datum, a)
    if ta != tb or len(wa) > len(wb):
        return False
    gens = affine_simple_reflections(datum)
    target = a
    for k in range(len(wa), len(wb) + 1):
        for sub in combinations(range(len(wb)), k):
            x = tb
            for j in reversed(sub):
                x = gens[wb[j]] * x
            if x == target:
                return True
    return False


def omega_elements(datum: RootDatum, bound: int) -> List[ExtAffWeyl]:
    """Length-zero elements whose translation part has entries in ``[-bound, bound]``."""
    out = []
    for nu in product(range(-bound, bound + 1), repeat=datum.rank):
        for w in datum.weyl:
            x = ExtAffWeyl(w, tuple(nu))
            if is_length_zero(datum, x):
                out.append(x)
    return sorted(out, key=lambda x: sort_key(datum, x))


def ball(datum: RootDatum, radius: int, omegas: Iterable[ExtAffWeyl]) -> List[ExtAffWeyl]:
    """All elements ``v tau`` with ``l(v) <= radius`` and ``tau`` in ``omegas``."""
    gens = affine_simple_reflections(datum)
    seen = set(omegas)
    frontier = list(seen)
    for _ in range(radius):
        nxt = []
        for x in frontier:
            for s in gens:
                y = s * x
                if y not in seen and length(datum, y) == length(datum, x) + 1:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return sorted(seen, key=lambda x: sort_key(datum, x))


def sort_key(datum: RootDatum, x: ExtAffWeyl):
    """Canonical order: length, then translation vector, then the finite reduced word."""
    return (length(datum, x), x.trans, datum.word(x.fin))


# -- admissible sets ------------------------------------------------------------


def adm(datum: RootDatum, lam: Sequence[int]) -> frozenset:
    """``Adm(lam)``: the union of the lower Bruhat intervals of ``t^{w lam}``."""
    lam = tuple(lam)
    if not datum.is_dominant(lam):
        raise NotDominant(f"{lam} is not dominant")
    return _adm(datum, lam)


@lru_cache(maxsize=None)
def _adm(datum: RootDatum, lam: Weight) -> frozenset:
    out: Set[ExtAffWeyl] = set()
    tops = {translation(datum, w.act(lam)) for w in datum.weyl}
    for t in sorted(tops, key=lambda x: x.trans):
        if t not in out:
            out |= lower_interval(datum, t)
    return frozenset(out)


def adm_reg(datum: RootDatum, lam: Sequence[int]) -> frozenset:
    return frozenset(x for x in adm(datum, lam) if is_regular(datum, x))


def dominant_rep(datum: RootDatum, x: ExtAffWeyl) -> ExtAffWeyl:
    """The unique element of ``W x`` with dominant alcove."""
    for s in datum.weyl:
        y = finite(datum, s) * x
        if is_dominant(datum, y):
            return y
    raise AssertionError("no dominant element in a W-coset")


# -- fundamental box ------------------------------------------------------------


@lru_cache(maxsize=None)
def restricted_box(datum: RootDatum) -> Tuple[ExtAffWeyl, ...]:
    """One element ``t^{rho_w} w`` of the box per ``w`` in ``W`` (listed in ``datum.weyl`` order).

    ``rho_w`` is the sum of the fundamental coweights ``omega_i`` over the
    simple roots ``a_i`` with ``w^{-1} a_i < 0``.
    """
    fund = datum.fundamental_coweights
    if fund is None:
        raise NoFundamentalCoweights(f"{datum.name} has no integral fundamental coweights")
    out = []
    for w in datum.weyl:
        wr = w.act(datum.rho)
        rho_w = datum.zero()
        for i, a in enumerate(datum.simple_roots):
            if la.pair(wr, a) < 0:
                rho_w = la.add(rho_w, fund[i])
        x = t_w(datum, rho_w, w)
        assert in_box(datum, x)
        out.append(x)
    return tuple(out)


def box_rep(datum: RootDatum, w: FinWeyl) -> ExtAffWeyl:
    for x in restricted_box(datum):
        if x.fin == w:
            return x
    raise KeyError(w)


def box_canonical(datum: RootDatum, u: ExtAffWeyl) -> Tuple[ExtAffWeyl, Weight]:
    """Split a box element as ``u = c t^z`` with ``c`` canonical and ``z`` central."""
    if not in_box(datum, u):
        raise ValueError("element is not in the fundamental box")
    c = box_rep(datum, u.fin)
    z = la.sub(u.trans, c.trans)
    if any(la.pair(z, a) for a in datum.simple_roots):
        raise AssertionError("box elements with equal finite part differ by a non-central translation")
    return c, z


def factor_regular(datum: RootDatum, u: ExtAffWeyl) -> Tuple[ExtAffWeyl, ExtAffWeyl]:
    """Factor a regular ``u`` as ``v^{-1} w0 w1`` with ``v`` dominant and ``w1`` a canonical box element."""
    if not is_regular(datum, u):
        raise NotRegular("element is not regular")
    w0 = finite(datum, datum.w0)
    found = []
    for c in restricted_box(datum):
        v = w0 * c * u.inv()
        if is_dominant(datum, v):
            found.append((v, c))
    if len(found) != 1:
        raise AssertionError(f"expected a unique factorization, found {len(found)}")
    return found[0]


# -- genericity and actions -------------------------------------------------------


def is_m_generic(datum: RootDatum, lam: Sequence[int], p: int, m: int) -> bool:
    """Whether ``|<lam, a> + p k| > m`` for every root ``a`` and integer ``k``."""
    for a in datum.positive_roots:
        r = la.pair(lam, a) % p
        if min(r, p - r) <= m:
            return False
    return True


def dot_actions(datum: RootDatum, x: ExtAffWeyl, lam: Sequence, p: int, mode: str) -> tuple:
    """The plain, dot, p-dilated and p-dilated dot actions of ``x`` on ``lam``."""
    lam = tuple(lam)
    if mode == "plain":
        return x.act(lam)
    if mode == "dot":
        return la.sub(x.act(la.add(lam, datum.rho)), datum.rho)
    if mode == "plain_p":
        return x.fin.act(la.add(lam, la.scale(p, x.trans)))
    if mode == "dot_p":
        return la.sub(x.fin.act(la.add(la.add(lam, datum.rho), la.scale(p, x.trans))), datum.rho)
    raise ValueError(f"unknown mode {mode!r}")


def phi(datum: RootDatum, x: ExtAffWeyl, p: int) -> ExtAffWeyl:
    """``w t^mu -> pi^{-1}(w) t^{p pi^{-1}(mu)}``."""
    return ExtAffWeyl(datum.pi_inv_fin(x.fin), la.scale(p, datum.pi_inv_act(x.trans)))


def pi_act(datum: RootDatum, x: ExtAffWeyl) -> ExtAffWeyl:
    """``w t^nu -> pi(w) t^{pi(nu)}``."""
    return ExtAffWeyl(datum.pi_fin(x.fin), datum.pi_act(x.trans))


def pi_inv_act(datum: RootDatum, x: ExtAffWeyl) -> ExtAffWeyl:
    return ExtAffWeyl(datum.pi_inv_fin(x.fin), datum.pi_inv_act(x.trans))


def admissible_intersection(datum: RootDatum, u: ExtAffWeyl, bound: int) -> Tuple[frozenset, list]:
    """Intersect ``t^kappa w Adm(rho)`` over ``(kappa, w)`` with ``(t^kappa w)_dom <= w0 t^{-rho} u``.

    ``kappa`` ranges over vectors with entries in ``[-bound, bound]``.
    Returns the intersection and the list of indexing pairs.
    """
    w0 = finite(datum, datum.w0)
    top = w0 * translation(datum, la.neg(datum.rho)) * u
    A = adm(datum, datum.rho)
    pairs = []
    result: Optional[Set[ExtAffWeyl]] = None
    for kappa in product(range(-bound, bound + 1), repeat=datum.rank):
        for w in datum.weyl:
            g = t_w(datum, kappa, w)
            if bruhat_leq(datum, dominant_rep(datum, g), top):
                pairs.append((tuple(kappa), w))
                moved = {g * a for a in A}
                result = moved if result is None else result & moved
    return frozenset(result or ()), pairs


# -- serialization --------------------------------------------------------------


def fin_to_json(w: FinWeyl):
    m = w.matrix
    n = len(m)
    images = []
    for j in range(n):
        col = [m[i][j] for i in range(n)]
        if sorted(col) != [0] * (n - 1) + [1]:
            return [list(r) for r in m]
        images.append(col.index(1) + 1)
    return images


def fin_from_json(datum: RootDatum, obj) -> FinWeyl:
    n = datum.rank
    if obj and isinstance(obj[0], list):
        return datum.fin_from_matrix(obj)
    if sorted(obj) != list(range(1, n + 1)):
        raise ValueError(f"not a permutation of 1..{n}: {obj}")
    m = [[0] * n for _ in range(n)]
    for j, i in enumerate(obj):
        m[i - 1][j] = 1
    return datum.fin_from_matrix(m)


def to_json(x: ExtAffWeyl) -> dict:
    return {"w": fin_to_json(x.fin), "nu": list(x.trans)}


def from_json(datum: RootDatum, obj: dict) -> ExtAffWeyl:
    return ExtAffWeyl(fin_from_json(datum, obj["w"]), tuple(int(c) for c in obj["nu"]))
