"""Localized equivariant classes on the fixed points ``W̃`` and their two actions.

A class is a finitely supported map from the extended affine Weyl group to
``RootFrac``.  The left action ``act_dot`` moves support by left
multiplication and twists coefficients through the finite part; the right
action ``act_bullet`` moves support by right multiplication and leaves
coefficients alone.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from . import affine_weyl as aw
from .affine_weyl import ExtAffWeyl
from .errors import NonPolynomial, NotRegularDominant, SchemaError, SupportViolation
from .root_data import FinWeyl, RootDatum
from .symalg import (
    RootFrac,
    act_weyl_on_frac,
    beta,
    frac_from_json,
    frac_to_json,
    inv_beta,
    residue,
)


class GKMClass:
    """Finitely supported ``W̃ -> Frac(S)``; zero coefficients are never stored."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[ExtAffWeyl, RootFrac] = ()):
        self.n = n
        self.terms: Dict[ExtAffWeyl, RootFrac] = {}
        for x, f in dict(terms).items():
            if not f.is_zero():
                self.terms[x] = f

    @staticmethod
    def zero(datum: RootDatum) -> "GKMClass":
        return GKMClass(datum.rank)

    def __getitem__(self, x: ExtAffWeyl) -> RootFrac:
        return self.terms.get(x) or RootFrac.zero(self.n)

    def __iter__(self) -> Iterator[ExtAffWeyl]:
        return iter(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def items(self):
        return self.terms.items()

    @property
    def support(self) -> frozenset:
        return frozenset(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GKMClass):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "GKMClass") -> "GKMClass":
        out = dict(self.terms)
        for x, f in other.terms.items():
            out[x] = out[x] + f if x in out else f
        return GKMClass(self.n, out)

    def __neg__(self) -> "GKMClass":
        return GKMClass(self.n, {x: -f for x, f in self.terms.items()})

    def __sub__(self, other: "GKMClass") -> "GKMClass":
        return self + (-other)

    def scale(self, c) -> "GKMClass":
        """Multiply every coefficient by ``c`` (integer, Fraction or ``RootFrac``)."""
        return GKMClass(self.n, {x: f * c for x, f in self.terms.items()})

    def __rmul__(self, c) -> "GKMClass":
        return self.scale(c)

    def __repr__(self) -> str:
        return f"GKMClass({len(self.terms)} terms)"


def total(n: int, classes: Iterable[GKMClass]) -> GKMClass:
    """Sum of classes, accumulated coefficientwise in a single pass."""
    acc: Dict[ExtAffWeyl, RootFrac] = {}
    for c in classes:
        for x, f in c.terms.items():
            acc[x] = acc[x] + f if x in acc else f
    return GKMClass(n, acc)


# -- actions -----------------------------------------------------------------------


def act_dot(datum: RootDatum, wt: ExtAffWeyl, c: GKMClass) -> GKMClass:
    """``wt . sum f_x [x] = sum (wt f_x) [wt x]``; translations act trivially on coefficients."""
    return GKMClass(c.n, {wt * x: act_weyl_on_frac(datum, wt.fin, f) for x, f in c.terms.items()})


def act_bullet(datum: RootDatum, c: GKMClass, wt: ExtAffWeyl) -> GKMClass:
    """``sum f_x [x] . wt = sum f_x [x wt]``."""
    return GKMClass(c.n, {x * wt: f for x, f in c.terms.items()})


# -- standard classes ------------------------------------------------------------


def flag_class(datum: RootDatum) -> GKMClass:
    """``sum_w sgn(w)/beta [w]``."""
    ib = inv_beta(datum)
    return GKMClass(datum.rank, {aw.finite(datum, w): ib * w.sign for w in datum.weyl})


def lambda_class(datum: RootDatum, lam: Sequence[int]) -> GKMClass:
    """``sum_w sgn(w)/beta [t^{w lam}]`` for a regular dominant ``lam``."""
    lam = tuple(lam)
    if not (datum.is_dominant(lam) and datum.is_regular_weight(lam)):
        raise NotRegularDominant(f"{lam} is not regular dominant")
    return _translation_class(datum, lam)


def rho_limit_class(datum: RootDatum) -> GKMClass:
    """``sum_w sgn(w)/beta [t^{w rho}]``."""
    return _translation_class(datum, datum.rho)


def _translation_class(datum: RootDatum, lam) -> GKMClass:
    ib = inv_beta(datum)
    return GKMClass(datum.rank, {aw.translation(datum, w.act(lam)): ib * w.sign for w in datum.weyl})


def euler_component_coeff(datum: RootDatum, c: GKMClass, w: FinWeyl) -> RootFrac:
    """Multiplicity of the component through ``t^{w rho}``: ``a_{t^{w rho}} * beta * sgn(w)``."""
    A = aw.adm(datum, datum.rho)
    outside = [x for x in c if x not in A]
    if outside:
        raise SupportViolation(f"{len(outside)} support points outside Adm(rho)")
    a = c[aw.translation(datum, w.act(datum.rho))]
    m = a * beta(datum) * w.sign
    if not m.is_polynomial():
        raise NonPolynomial("component coefficient retains a pole")
    return m


# -- orbit triples and residues --------------------------------------------------


@dataclass(frozen=True)
class OrbitTriple:
    """Three fixed points joined through one ``ker(character)``-fixed component."""

    points: Tuple[ExtAffWeyl, ExtAffWeyl, ExtAffWeyl]
    character: Tuple[int, ...]


def gen_rho_orbit_triples(datum: RootDatum) -> List[OrbitTriple]:
    """``(t^{w rho}, w t^rho s w^{-1}, t^{w s rho})`` with character ``w a`` for ``w s > w``."""
    out = []
    rho_t = aw.translation(datum, datum.rho)
    for w in datum.weyl:
        for i, s in enumerate(datum.simple_reflections):
            if datum.length(w * s) <= datum.length(w):
                continue
            W = aw.finite(datum, w)
            mid = W * rho_t * aw.finite(datum, s) * W.inv()
            pts = (
                aw.translation(datum, w.act(datum.rho)),
                mid,
                aw.translation(datum, (w * s).act(datum.rho)),
            )
            out.append(OrbitTriple(pts, w.act_form(datum.simple_roots[i])))
    return out


def shift_triples(datum: RootDatum, triples: Iterable[OrbitTriple], g: ExtAffWeyl) -> List[OrbitTriple]:
    """Move triples by left multiplication with ``g``."""
    return [OrbitTriple(tuple(g * x for x in t.points), g.fin.act_form(t.character)) for t in triples]


def check_residues(datum: RootDatum, c: GKMClass, triples: Iterable[OrbitTriple]) -> Tuple[bool, list]:
    """Check that the residue along ``ker(character)`` of each triple's coefficients sums to zero."""
    report = []
    for t in triples:
        acc = RootFrac.zero(c.n)
        for x in t.points:
            acc = acc + c[x]
        r = residue(datum, acc, t.character)
        if not r.is_zero():
            report.append({"points": [aw.to_json(x) for x in t.points], "character": list(t.character), "residue": repr(r)})
    return (not report), report


# -- recognition -----------------------------------------------------------------

CONDITIONS = {
    1: "support contained in translation elements",
    2: "support contained in Adm(rho)",
    3: "coefficient at t^rho equals 1/beta",
}


@dataclass(frozen=True)
class Verdict:
    failed: Tuple[int, ...]

    @property
    def passed(self) -> bool:
        return not self.failed

    @property
    def first(self) -> Optional[int]:
        return self.failed[0] if self.failed else None

    def __str__(self) -> str:
        return "pass" if self.passed else f"fail({self.first})"

    def to_json(self) -> dict:
        return {
            "verdict": str(self),
            "failed": [{"condition": k, "description": CONDITIONS[k]} for k in self.failed],
        }


def recognition_check(datum: RootDatum, c: GKMClass) -> Verdict:
    failed = []
    if any(not x.is_translation for x in c):
        failed.append(1)
    A = aw.adm(datum, datum.rho)
    if any(x not in A for x in c):
        failed.append(2)
    if c[aw.translation(datum, datum.rho)] != inv_beta(datum):
        failed.append(3)
    return Verdict(tuple(failed))


# -- serialization ----------------------------------------------------------------


def class_to_json(datum: RootDatum, c: GKMClass) -> dict:
    items = sorted(c.items(), key=lambda kv: aw.sort_key(datum, kv[0]))
    return {"support": [{"elt": aw.to_json(x), "coeff": frac_to_json(datum, f)} for x, f in items]}


def class_from_json(datum: RootDatum, obj: dict) -> GKMClass:
    try:
        terms = {}
        for entry in obj["support"]:
            x = aw.from_json(datum, entry["elt"])
            f = frac_from_json(datum, entry["coeff"])
            terms[x] = terms[x] + f if x in terms else f
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"bad class document: {exc}") from None
    return GKMClass(datum.rank, terms)
