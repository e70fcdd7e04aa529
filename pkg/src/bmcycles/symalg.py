"""Exact arithmetic in ``S = Sym(t*)`` and its localization at root hyperplanes.

Coordinates ``x_1, ..., x_n`` on ``t = L ⊗ Q`` are dual to the standard basis
of the lattice, so the linear function ``d a`` of a form ``a`` is
``sum a_i x_i``.  Polynomials (``PolyQ``) are sparse polynomials over Q from
``sympy.polys.rings``.

A ``RootFrac`` is ``numerator / prod(l^m)`` with the denominator kept as a
multiset of normalized linear forms (primitive, first nonzero coefficient
positive).  Canonical form cancels every linear factor the numerator shares
with the denominator, which makes structural equality coincide with equality
of rational functions.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Optional, Sequence, Tuple

from sympy import QQ
from sympy.polys.rings import PolyElement, ring

from . import _lattice as la
from .errors import HigherOrderPole, SchemaError
from .root_data import FinWeyl, RootDatum

PolyQ = PolyElement
Form = Tuple[int, ...]


@lru_cache(maxsize=None)
def poly_ring(n: int):
    """The ring ``Q[x_1, ..., x_n]`` and its generators."""
    if n == 0:
        R = ring("", QQ)[0]
        return R, ()
    R, *gens = ring(",".join(f"x{i + 1}" for i in range(n)), QQ)
    return R, tuple(gens)


def _qq(c) -> "QQ.dtype":
    c = Fraction(c)
    return QQ(c.numerator, c.denominator)


def _frac(c) -> Fraction:
    return Fraction(int(c.numerator), int(c.denominator))


def linear_poly(form: Sequence[int]) -> PolyQ:
    R, xs = poly_ring(len(form))
    out = R.zero
    for a, x in zip(form, xs):
        if a:
            out += a * x
    return out


def normalize_form(form: Sequence) -> Tuple[Form, Fraction]:
    """``form = c * normalized`` with ``normalized`` primitive and first nonzero entry positive."""
    fr = [Fraction(x) for x in form]
    if not any(fr):
        raise ValueError("zero linear form")
    den = 1
    for x in fr:
        den = den * x.denominator // math.gcd(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = math.gcd(g, abs(x))
    first = next(x for x in ints if x)
    s = 1 if first > 0 else -1
    return tuple(s * x // g for x in ints), Fraction(s * g, den)


def pivot(form: Sequence) -> int:
    """Highest index with a nonzero coefficient."""
    return max(i for i, a in enumerate(form) if a)


class RootFrac:
    """A rational function whose denominator is a product of linear forms."""

    __slots__ = ("n", "num", "den", "_key")

    def __init__(self, n: int, num: PolyQ, den: Dict[Form, int] = None, _canonical: bool = False):
        self.n = n
        if _canonical:
            self.num = num
            self.den = tuple(sorted(den.items())) if den else ()
        else:
            self.num, self.den = _canonicalize(n, num, dict(den or {}))
        self._key = None

    # construction
    @staticmethod
    def const(n: int, c=1) -> "RootFrac":
        R, _ = poly_ring(n)
        return RootFrac(n, R(_qq(c)), {}, _canonical=True)

    @staticmethod
    def zero(n: int) -> "RootFrac":
        return RootFrac.const(n, 0)

    @staticmethod
    def poly(n: int, p: PolyQ) -> "RootFrac":
        return RootFrac(n, p, {}, _canonical=True)

    @staticmethod
    def form(form: Sequence[int]) -> "RootFrac":
        return RootFrac.poly(len(form), linear_poly(form))

    @staticmethod
    def inv_form(form: Sequence[int]) -> "RootFrac":
        """``1 / d form``."""
        n = len(form)
        f, c = normalize_form(form)
        R, _ = poly_ring(n)
        return RootFrac(n, R(_qq(1 / c)), {f: 1})

    # value semantics
    def key(self):
        if self._key is None:
            self._key = (tuple(sorted((m, _frac(c)) for m, c in self.num.terms())), self.den)
        return self._key

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = RootFrac.const(self.n, other)
        if not isinstance(other, RootFrac):
            return NotImplemented
        return self.n == other.n and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        if not self.den:
            return f"RootFrac({self.num.as_expr()})"
        den = "*".join(f"({linear_poly(f).as_expr()})" + (f"^{m}" if m > 1 else "") for f, m in self.den)
        return f"RootFrac(({self.num.as_expr()})/{den})"

    def is_zero(self) -> bool:
        return not self.num

    def is_polynomial(self) -> bool:
        return not self.den

    def pole_order(self, form: Sequence[int]) -> int:
        f, _ = normalize_form(form)
        return dict(self.den).get(f, 0)

    def constant_value(self) -> Optional[Fraction]:
        """The value when this is a constant, else ``None``."""
        if self.den:
            return None
        if not self.num:
            return Fraction(0)
        if self.num.is_ground:
            return _frac(self.num.LC)
        return None

    # arithmetic
    def _coerce(self, other) -> "RootFrac":
        if isinstance(other, RootFrac):
            if other.n != self.n:
                raise ValueError("mismatched number of variables")
            return other
        if isinstance(other, (int, Fraction)):
            return RootFrac.const(self.n, other)
        return NotImplemented

    def __add__(self, other) -> "RootFrac":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        d1, d2 = dict(self.den), dict(other.den)
        common = dict(d1)
        for f, m in d2.items():
            common[f] = max(common.get(f, 0), m)
        n1 = self.num * _den_poly(self.n, {f: m - d1.get(f, 0) for f, m in common.items()})
        n2 = other.num * _den_poly(self.n, {f: m - d2.get(f, 0) for f, m in common.items()})
        return RootFrac(self.n, n1 + n2, common)

    __radd__ = __add__

    def __neg__(self) -> "RootFrac":
        return RootFrac(self.n, -self.num, dict(self.den), _canonical=True)

    def __sub__(self, other) -> "RootFrac":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "RootFrac":
        return (-self) + other

    def __mul__(self, other) -> "RootFrac":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return RootFrac.zero(self.n)
            return RootFrac(self.n, self.num * _qq(other), dict(self.den), _canonical=True)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d = dict(self.den)
        for f, m in other.den:
            d[f] = d.get(f, 0) + m
        return RootFrac(self.n, self.num * other.num, d)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RootFrac":
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.reciprocal()

    def reciprocal(self) -> "RootFrac":
        """Inverse, defined when the numerator factors into linear forms over Q."""
        if self.is_zero():
            raise ZeroDivisionError("reciprocal of zero")
        R, xs = poly_ring(self.n)
        c, factors = self.num.factor_list()
        out = R(1 / c) * _den_poly(self.n, dict(self.den))
        den: Dict[Form, int] = {}
        for g, m in factors:
            if any(sum(mon) != 1 for mon, _ in g.terms()):
                raise ValueError("numerator is not a product of linear forms")
            f, s = normalize_form([_frac(g.coeff(x)) for x in xs])
            out = out * R(_qq(1 / s)) ** m
            den[f] = den.get(f, 0) + m
        return RootFrac(self.n, out, den)

    def substitute(self, images: Sequence[PolyQ], form_map) -> "RootFrac":
        """Apply a linear change of variables.

        ``images[i]`` is the polynomial replacing ``x_i``; ``form_map`` sends
        a denominator form to its image form (same substitution on forms).
        """
        R, xs = poly_ring(self.n)
        num = self.num.compose(list(zip(xs, images))) if xs else self.num
        den: Dict[Form, int] = {}
        for f, m in self.den:
            g, s = normalize_form(form_map(f))
            num = num * R(_qq(1 / s)) ** m
            den[g] = den.get(g, 0) + m
        return RootFrac(self.n, num, den)


def _den_poly(n: int, den: Dict[Form, int]) -> PolyQ:
    R, _ = poly_ring(n)
    out = R.one
    for f, m in den.items():
        if m:
            out *= linear_poly(f) ** m
    return out


def _canonicalize(n: int, num: PolyQ, den: Dict[Form, int]):
    if not num:
        return num, ()
    out = {}
    for f, m in den.items():
        if m <= 0:
            continue
        lp = linear_poly(f)
        while m:
            q, r = num.div(lp)
            if r:
                break
            num = q
            m -= 1
        if m:
            out[f] = m
    return num, tuple(sorted(out.items()))


# -- operations on the datum ------------------------------------------------------


def beta(datum: RootDatum) -> RootFrac:
    """Product of the positive-root linear forms."""
    R, _ = poly_ring(datum.rank)
    out = R.one
    for a in datum.positive_roots:
        out *= linear_poly(a)
    return RootFrac.poly(datum.rank, out)


def inv_beta(datum: RootDatum) -> RootFrac:
    n = datum.rank
    R, _ = poly_ring(n)
    return RootFrac(n, R.one, {a: 1 for a in datum.positive_roots})


def act_weyl_on_frac(datum: RootDatum, w: FinWeyl, f: RootFrac) -> RootFrac:
    """``(w f)(x) = f(w^{-1} x)``; on forms this is ``a -> a w^{-1}``."""
    if w.is_identity:
        return f
    R, xs = poly_ring(datum.rank)
    inv = w.inverse
    images = []
    for i in range(datum.rank):
        g = R.zero
        for j, x in enumerate(xs):
            if inv[i][j]:
                g += inv[i][j] * x
        images.append(g)
    return f.substitute(images, w.act_form)


def residue(datum: Optional[RootDatum], f: RootFrac, alpha: Sequence[int]) -> RootFrac:
    """Residue of ``f dx_1 ^ ... ^ dx_n`` along the hyperplane ``d alpha = 0``.

    The result is expressed in the coordinates other than the pivot (highest
    index with nonzero coefficient), which is eliminated.
    """
    n = f.n
    ell, _ = normalize_form(alpha)
    mult = dict(f.den).get(ell, 0)
    if mult > 1:
        raise HigherOrderPole(f"pole of order {mult} along {ell}")
    if mult == 0:
        return RootFrac.zero(n)
    j = pivot(ell)
    aj = ell[j]
    R, xs = poly_ring(n)
    sub = R.zero
    for i, a in enumerate(ell):
        if i != j and a:
            sub += _qq(Fraction(-a, aj)) * xs[i]

    def restrict_form(g):
        c = Fraction(g[j], aj)
        return tuple(Fraction(g[i]) - c * ell[i] if i != j else Fraction(0) for i in range(n))

    num = f.num.compose([(xs[j], sub)])
    den: Dict[Form, int] = {}
    for g, m in f.den:
        if g == ell:
            continue
        h = restrict_form(g)
        if not any(h):
            raise HigherOrderPole("two denominator forms coincide on the hyperplane")
        hn, s = normalize_form(h)
        num = num * R(_qq(1 / s)) ** m
        den[hn] = den.get(hn, 0) + m
    sign = -1 if j % 2 else 1
    num = num * R(_qq(Fraction(sign, aj)))
    return RootFrac(n, num, den)


# -- serialization ----------------------------------------------------------------


def poly_to_json(p: PolyQ) -> dict:
    terms = sorted(((list(m), _frac(c)) for m, c in p.terms()), key=lambda t: t[0], reverse=True)
    return {"terms": [{"exp": e, "num": str(c.numerator), "den": str(c.denominator)} for e, c in terms]}


def poly_from_json(n: int, obj: dict) -> PolyQ:
    R, _ = poly_ring(n)
    out = R.zero
    try:
        for t in obj["terms"]:
            exp = tuple(int(e) for e in t["exp"])
            if len(exp) != n:
                raise SchemaError("exponent vector of the wrong length")
            out += R({exp: _qq(Fraction(int(t["num"]), int(t["den"])))})
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"bad polynomial: {exc}") from None
    return out


def frac_to_json(datum: RootDatum, f: RootFrac) -> dict:
    out = poly_to_json(f.num)
    poles = []
    for form, m in f.den:
        if form in datum.root_index:
            poles.append({"root_index": datum.root_index[form], "mult": m})
        else:
            poles.append({"form": list(form), "mult": m})
    out["poles"] = poles
    return out


def frac_from_json(datum: RootDatum, obj: dict) -> RootFrac:
    n = datum.rank
    num = poly_from_json(n, obj)
    den: Dict[Form, int] = {}
    try:
        for p in obj.get("poles", []):
            if "root_index" in p:
                form = datum.positive_roots[int(p["root_index"])]
            else:
                form = tuple(int(c) for c in p["form"])
            g, s = normalize_form(form)
            m = int(p["mult"])
            R, _ = poly_ring(n)
            num = num * R(_qq(1 / s)) ** m
            den[g] = den.get(g, 0) + m
    except (KeyError, IndexError, TypeError, ValueError) as exc:
        raise SchemaError(f"bad pole list: {exc}") from None
    return RootFrac(n, num, den)
