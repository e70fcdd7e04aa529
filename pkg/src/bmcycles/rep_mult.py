"""Weyl module characters and baby Verma multiplicity oracles.

The group ``G`` whose representations appear here has weight lattice ``L``
and roots equal to the coroots of the datum.  Characters are finitely
supported integer functions on ``L`` (elements of ``Z[L]``).

A multiplicity oracle answers ``m(u, nu)``: the multiplicity of the simple
module with highest weight ``u •_p 0 + p nu`` in the graded baby Verma module
with highest weight ``p rho``.  Here ``u`` is a box element taken modulo
central translations, using ``(u t^z, nu) ~ (u, nu + z)`` for central ``z``.
"""

from __future__ import annotations

import json
from collections import Counter, deque
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from sympy import isprime

from . import _lattice as la
from . import affine_weyl as aw
from .affine_weyl import ExtAffWeyl
from .errors import (
    InvariantViolation,
    NotDominant,
    NotGeneric,
    OracleGap,
    OutOfRegion,
    PTooSmall,
    RankUnsupported,
    SchemaError,
)
from .genericity import Policy, require
from .root_data import FinWeyl, RootDatum, Weight, build_root_datum, height
from .tame_param import SerreWeight, serre_weight

DEFAULT_P_CAP = 101


# -- characters -----------------------------------------------------------------


class CharacterQ:
    """An element of ``Z[L]`` stored as ``{weight: coefficient}`` without zeros."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Weight, int] = ()):
        self.terms: Dict[Weight, int] = {tuple(k): int(v) for k, v in dict(terms).items() if v}

    def __eq__(self, other) -> bool:
        return isinstance(other, CharacterQ) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "CharacterQ") -> "CharacterQ":
        c = Counter(self.terms)
        c.update(other.terms)
        return CharacterQ(c)

    def __mul__(self, other: "CharacterQ") -> "CharacterQ":
        c: Counter = Counter()
        for a, x in self.terms.items():
            for b, y in other.terms.items():
                c[la.add(a, b)] += x * y
        return CharacterQ(c)

    def __getitem__(self, mu) -> int:
        return self.terms.get(tuple(mu), 0)

    def __repr__(self) -> str:
        return f"CharacterQ({dict(sorted(self.terms.items(), reverse=True))})"

    def dimension(self) -> int:
        return sum(self.terms.values())

    def is_w_invariant(self, datum: RootDatum) -> bool:
        return all(self[s.act(mu)] == m for mu, m in self.terms.items() for s in datum.simple_reflections)

    def to_json(self) -> list:
        return [{"weight": list(k), "mult": v} for k, v in sorted(self.terms.items(), reverse=True)]


def _form(datum: RootDatum, x: Sequence, y: Sequence) -> Fraction:
    """The W-invariant form ``sum_{a > 0} <x, a><y, a>``."""
    return sum((la.pair(x, a) * la.pair(y, a) for a in datum.positive_roots), 0)


def depth(datum: RootDatum, lam: Sequence[int], mu: Sequence[int]) -> Optional[Tuple[Fraction, ...]]:
    """Coefficients of ``lam - mu`` in the simple coroots, or ``None`` if it is not in their span."""
    diff = la.sub(lam, mu)
    r = datum.ss_rank
    if r == 0:
        return () if not any(diff) else None
    v = [la.pair(diff, a) for a in datum.simple_roots]
    A = [list(row) for row in datum.cartan]
    # c A = v, i.e. A^T c = v
    At = [[A[j][i] for j in range(r)] for i in range(r)]
    c = la.solve(At, v)
    rest = la.sub(diff, tuple(sum(c[i] * datum.simple_coroots[i][k] for i in range(r)) for k in range(datum.rank)))
    if any(rest):
        return None
    return c


def dominant_weights_below(datum: RootDatum, lam: Sequence[int]) -> List[Weight]:
    """Dominant ``mu <= lam``, found by subtracting positive coroots (sorted by depth)."""
    lam = tuple(lam)
    seen = {lam}
    queue = deque([lam])
    while queue:
        mu = queue.popleft()
        for c in datum.positive_coroots:
            nu = la.sub(mu, c)
            if nu not in seen and datum.is_dominant(nu):
                seen.add(nu)
                queue.append(nu)
    return sorted(seen, key=lambda mu: (sum(depth(datum, lam, mu)), tuple(-x for x in mu)))


def weight_multiplicities(datum: RootDatum, lam: Sequence[int]) -> CharacterQ:
    """Character of the Weyl module of highest weight ``lam`` by Freudenthal's formula."""
    lam = tuple(lam)
    if not datum.is_dominant(lam):
        raise NotDominant(f"{lam} is not dominant")
    dom = dominant_weights_below(datum, lam)
    rho = datum.rho
    lr = la.add(lam, rho)
    top = _form(datum, lr, lr)
    mult: Dict[Weight, int] = {}

    def m(x) -> int:
        return mult.get(datum.dominant_conjugate(x)[0], 0)

    for mu in dom:
        if mu == lam:
            mult[mu] = 1
            continue
        mr = la.add(mu, rho)
        denom = top - _form(datum, mr, mr)
        acc = 0
        for beta in datum.positive_coroots:
            k = 1
            while True:
                x = la.add(mu, la.scale(k, beta))
                mx = m(x)
                if not mx:
                    break
                acc += _form(datum, x, beta) * mx
                k += 1
        val = Fraction(2 * acc, denom)
        if val.denominator != 1:
            raise AssertionError("non-integral Freudenthal multiplicity")
        mult[mu] = int(val)
    out: Dict[Weight, int] = {}
    for mu, k in mult.items():
        if k:
            for w in datum.weyl:
                out[w.act(mu)] = k
    return CharacterQ(out)


def weyl_dimension(datum: RootDatum, lam: Sequence[int]) -> int:
    lr = la.add(tuple(lam), datum.rho)
    out = Fraction(1)
    for a in datum.positive_roots:
        out *= Fraction(la.pair(lr, a), la.pair(datum.rho, a))
    return int(out)


def alternant(datum: RootDatum, lam: Sequence[int]) -> CharacterQ:
    """``sum_w sgn(w) e^{w lam}``."""
    c: Counter = Counter()
    for w in datum.weyl:
        c[w.act(tuple(lam))] += w.sign
    return CharacterQ(c)


def weyl_identity_check(datum: RootDatum, lam: Sequence[int]) -> bool:
    """``A(lam + rho) == ch W(lam) * A(rho)`` exactly in ``Z[L]``."""
    lam = tuple(lam)
    if not datum.is_dominant(lam):
        raise NotDominant(f"{lam} is not dominant")
    lhs = alternant(datum, la.add(lam, datum.rho))
    rhs = weight_multiplicities(datum, lam) * alternant(datum, datum.rho)
    return lhs == rhs


def dominant_weights_of_height(datum: RootDatum, max_height: int) -> List[Weight]:
    """Dominant ``lam`` with ``h_lam <= max_height``, one per class modulo central translations.

    Enumerates nonnegative combinations of the fundamental coweights, plus the
    zero weight.
    """
    from itertools import product

    fund = datum.fundamental_coweights
    if fund is None:
        raise RankUnsupported("enumeration needs fundamental coweights")
    out = []
    for coeffs in product(range(max_height + 1), repeat=len(fund)):
        lam = datum.zero()
        for c, f in zip(coeffs, fund):
            lam = la.add(lam, la.scale(c, f))
        if height(datum, lam) <= max_height:
            out.append(lam)
    return out


# -- p-dilated labels -----------------------------------------------------------


def canonical_key(datum: RootDatum, u: ExtAffWeyl, nu: Sequence[int]) -> Tuple[ExtAffWeyl, Weight]:
    """Move the central part of a box element into ``nu``."""
    c, z = aw.box_canonical(datum, u)
    return c, la.add(tuple(nu), z)


def decompose_weight(datum: RootDatum, mu: Sequence[int], p: int) -> Tuple[ExtAffWeyl, Weight]:
    """Write ``mu = u •_p 0 + p nu`` with ``u`` a canonical box element."""
    found = []
    for u in aw.restricted_box(datum):
        diff = la.sub(tuple(mu), aw.dot_actions(datum, u, datum.zero(), p, "dot_p"))
        if all(d % p == 0 for d in diff):
            found.append((u, tuple(d // p for d in diff)))
    if len(found) != 1:
        raise ValueError(f"{tuple(mu)} has {len(found)} decompositions u •_p 0 + p nu")
    return found[0]


def support_top(datum: RootDatum, u: ExtAffWeyl) -> ExtAffWeyl:
    """``w0 t^{-rho} u``."""
    return aw.finite(datum, datum.w0) * aw.translation(datum, la.neg(datum.rho)) * u


def in_support(datum: RootDatum, u: ExtAffWeyl, nu: Sequence[int]) -> bool:
    """``(t^{-nu})_dom <= w0 t^{-rho} u``."""
    x = aw.dominant_rep(datum, aw.translation(datum, la.neg(tuple(nu))))
    return aw.bruhat_leq(datum, x, support_top(datum, u))


def supported_nus(datum: RootDatum, u: ExtAffWeyl) -> List[Weight]:
    """All ``nu`` passing the support criterion for ``u``, sorted."""
    out = set()
    for x in aw.lower_interval(datum, support_top(datum, u)):
        if aw.is_dominant(datum, x):
            nu = la.neg(x.trans)
            if aw.dominant_rep(datum, aw.translation(datum, la.neg(nu))) == x:
                out.add(nu)
    return sorted(out)


def boundary_nu(datum: RootDatum, u: ExtAffWeyl) -> Weight:
    """The ``nu`` with ``(t^{-nu})_dom = w0 t^{-rho} u``; its multiplicity is one."""
    return la.neg(support_top(datum, u).trans)


# -- oracles ---------------------------------------------------------------------


@dataclass
class MultOracle:
    """Multiplicities ``m(u, nu)`` for one datum and prime.

    ``entries`` is keyed by canonical ``(u, nu)``; ``region`` lists the
    canonical box elements whose supported keys are all present.
    """

    datum: RootDatum
    p: int
    entries: Dict[Tuple[ExtAffWeyl, Weight], int]
    region: frozenset
    source: str = "table"

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        d = self.datum
        for (u, nu), m in self.entries.items():
            if m < 0:
                raise InvariantViolation("negative multiplicity")
            if m and not in_support(d, u, nu):
                raise InvariantViolation(f"nonzero multiplicity outside the support criterion at nu={nu}")
            if nu == boundary_nu(d, u) and m != 1:
                raise InvariantViolation(f"boundary multiplicity {m} at nu={nu}, expected 1")
        for u in self.region:
            if (u, boundary_nu(d, u)) not in self.entries:
                raise InvariantViolation("region element without its boundary entry")

    def lookup(self, u: ExtAffWeyl, nu: Sequence[int], p: Optional[int] = None, datum: Optional[RootDatum] = None) -> int:
        if p is not None and p != self.p:
            raise OutOfRegion(f"oracle is for p={self.p}, not {p}")
        if datum is not None and datum is not self.datum:
            raise OutOfRegion("oracle is for a different datum")
        key = canonical_key(self.datum, u, nu)
        if not in_support(self.datum, *key):
            return 0
        if key[0] not in self.region:
            raise OutOfRegion("u outside the oracle region")
        if key not in self.entries:
            raise OracleGap(f"no entry for nu={key[1]}")
        return self.entries[key]

    def nonzero(self, u: ExtAffWeyl) -> List[Tuple[Weight, int]]:
        """Nonzero ``(nu, m)`` for a region element ``u`` (sorted by ``nu``)."""
        c, z = aw.box_canonical(self.datum, u)
        if c not in self.region:
            raise OutOfRegion("u outside the oracle region")
        out = []
        for nu in supported_nus(self.datum, c):
            if (c, nu) not in self.entries:
                raise OracleGap(f"no entry for nu={nu}")
            m = self.entries[(c, nu)]
            if m:
                out.append((la.sub(nu, z), m))
        return out

    def pi_symmetric(self) -> bool:
        """``m(pi u, pi nu) == m(u, nu)`` for every entry."""
        for (u, nu), m in self.entries.items():
            pu = aw.pi_act(self.datum, u)
            if self.lookup(pu, self.datum.pi_act(nu)) != m:
                return False
        return True

    def to_json(self) -> dict:
        keys = sorted(self.entries, key=lambda k: (aw.sort_key(self.datum, k[0]), k[1]))
        return {
            "p": self.p,
            "datum": self.datum.name if _is_preset(self.datum) else self.datum.to_json(),
            "source": self.source,
            "region": {"u": [aw.to_json(u) for u in sorted(self.region, key=lambda x: aw.sort_key(self.datum, x))]},
            "entries": [{"u": aw.to_json(u), "nu": list(nu), "mult": self.entries[(u, nu)]} for u, nu in keys],
        }


def _is_preset(datum: RootDatum) -> bool:
    try:
        return build_root_datum(datum.name) is datum
    except Exception:
        return False


def table_oracle(source: Union[str, Path, Mapping], datum: Optional[RootDatum] = None) -> MultOracle:
    """An oracle backed by a JSON table (a path or an already parsed document)."""
    if isinstance(source, (str, Path)):
        try:
            doc = json.loads(Path(source).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise SchemaError(f"cannot read oracle table: {exc}") from None
    else:
        doc = source
    try:
        p = int(doc["p"])
        if datum is None:
            datum = build_root_datum(doc["datum"])
        region = frozenset(aw.from_json(datum, u) for u in doc.get("region", {}).get("u", []))
        entries: Dict[Tuple[ExtAffWeyl, Weight], int] = {}
        for e in doc["entries"]:
            u = aw.from_json(datum, e["u"])
            key = canonical_key(datum, u, e["nu"])
            if key in entries:
                raise SchemaError("duplicate oracle entry")
            entries[key] = int(e["mult"])
        region = frozenset(canonical_key(datum, u, datum.zero())[0] for u in region)
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"bad oracle table: {exc}") from None
    return MultOracle(datum, p, entries, region, str(doc.get("source", "table")))


# -- the rank one module computation ------------------------------------------------


def _baby_verma_factors(n: int, p: int) -> List[int]:
    """Composition factors of the rank one graded baby Verma module over ``F_p``.

    Basis ``v_0, ..., v_{p-1}`` with ``f v_i = v_{i+1}`` and
    ``e v_i = i (n - i + 1) v_{i-1}`` where ``n`` is the highest weight's
    pairing with the simple root.  Returns the indices ``i`` such that the
    simple factors have highest weight vectors at ``v_i``.

    Each step finds the singular vectors of the current quotient (kernel of
    ``e``), takes the lowest one, which generates a simple submodule, and
    divides it out.
    """
    alive = list(range(p))
    factors = []
    while alive:
        live = set(alive)

        def e_coeff(i):
            if i == 0 or (i - 1) not in live:
                return 0
            return (i * (n - i + 1)) % p

        singular = [i for i in alive if e_coeff(i) == 0]
        i = max(singular)
        sub = [i]
        j = i + 1
        while j in live and j < p:
            sub.append(j)
            j += 1
        if any(e_coeff(k) == 0 for k in sub[1:]):
            raise AssertionError("generated submodule is not simple")
        factors.append(i)
        alive = [k for k in alive if k not in set(sub)]
    return factors


def rank1_composition_factors(datum: RootDatum, lam: Sequence[int], p: int) -> Counter:
    """Highest weights (with multiplicity) of the simple factors of the baby Verma module of weight ``lam``."""
    if datum.ss_rank != 1:
        raise RankUnsupported("the built-in module computation needs semisimple rank one")
    a = datum.simple_roots[0]
    c = datum.simple_coroots[0]
    n = la.pair(tuple(lam), a)
    return Counter(la.sub(tuple(lam), la.scale(i, c)) for i in _baby_verma_factors(n, p))


def rank1_oracle(p: int, datum: Union[str, RootDatum] = "GL_2", p_cap: int = DEFAULT_P_CAP) -> MultOracle:
    """Multiplicities computed from the explicit rank one module over ``F_p``."""
    datum = build_root_datum(datum)
    if datum.ss_rank != 1:
        raise RankUnsupported(f"{datum.name} has semisimple rank {datum.ss_rank}, expected 1")
    if not isprime(p):
        raise PTooSmall(f"{p} is not prime")
    if p <= 2 * height(datum, datum.rho):
        raise PTooSmall(f"p={p} must exceed 2 h_rho = {2 * height(datum, datum.rho)}")
    if p > p_cap:
        raise PTooSmall(f"p={p} exceeds the cap {p_cap}")
    top = la.scale(p, datum.rho)
    found: Counter = Counter()
    for hw, k in rank1_composition_factors(datum, top, p).items():
        found[decompose_weight(datum, hw, p)] += k
    entries: Dict[Tuple[ExtAffWeyl, Weight], int] = {}
    box = aw.restricted_box(datum)
    for u in box:
        for nu in supported_nus(datum, u):
            entries[(u, nu)] = found.pop((u, nu), 0)
    if any(found.values()):
        raise InvariantViolation("composition factor outside the support criterion")
    return MultOracle(datum, p, entries, frozenset(box), source=f"rank1:p={p}")


# -- Jantzen's generic pattern ----------------------------------------------------------


@dataclass(frozen=True)
class JantzenFactor:
    u: ExtAffWeyl
    nu: Weight
    weight: SerreWeight
    mult: int


def jantzen_decomposition(
    datum: RootDatum,
    w: FinWeyl,
    mu: Sequence[int],
    p: int,
    oracle: MultOracle,
    policy: Policy = Policy.STRICT,
) -> List[JantzenFactor]:
    """``sum_{u, nu} m(u, nu) F(u •_p (mu - rho + w pi nu))`` as a list of factors."""
    mu = tuple(mu)
    require("bm_relation", datum, mu, p, policy)
    out = []
    for u in sorted(oracle.region, key=lambda x: aw.sort_key(datum, x)):
        for nu, m in oracle.nonzero(u):
            xi = la.add(la.sub(mu, datum.rho), w.act(datum.pi_act(nu)))
            sw = serre_weight(datum, aw.pi_act(datum, u), xi, p)
            out.append(JantzenFactor(u, nu, sw, m))
    return out
