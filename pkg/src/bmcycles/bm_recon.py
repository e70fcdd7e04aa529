"""Breuil-Mézard cycles from baby Verma multiplicities, by defect recursion.

Notation.  ``V`` is the rho limit class ``(1/beta) sum_w sgn(w) [t^{w rho}]``.
For a canonical box element ``u`` and a weight ``xi`` the cycle ``Z(u, xi)``
is a class supported in ``t^{xi + rho} W̃_{<= w0 u}``.  The relation attached
to a presentation ``t^mu w`` reads

    t^mu w . V = sum_{u, nu} m(u, nu) Z(pi u, mu - rho + w pi nu).

Exactly one term on the right (the boundary term, ``nu`` with
``(t^{-nu})_dom = w0 t^{-rho} u``, multiplicity one) can be isolated: for a
fixed point ``z`` of ``Z(u, xi)`` write ``y = t^{-(xi + rho)} z``,
``y = sigma x`` with ``x`` dominant, ``t^kappa w = sigma t^{-rho} u`` and
``mu = xi + kappa + rho``.  The relation at ``(w, mu)`` then has ``Z(u, xi)``
as its boundary term, and every other term that reaches ``z`` has strictly
smaller defect ``l(u) - l(x)``.  Solving for the boundary coefficient gives
the recursion.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from . import _lattice as la
from . import affine_weyl as aw
from .affine_weyl import ExtAffWeyl
from .errors import (
    MissingLowerDefect,
    NotInSupportCone,
    OracleGap,
    OutOfRegion,
    RankUnsupported,
    RegionNotGeneric,
    TableGap,
    ZetaMismatch,
)
from .genericity import Policy, require, satisfies
from .gkm import GKMClass, act_dot, check_residues, gen_rho_orbit_triples, rho_limit_class, shift_triples, total
from .rep_mult import MultOracle, boundary_nu, weight_multiplicities
from .root_data import FinWeyl, RootDatum, Weight, height
from .symalg import RootFrac, beta, inv_beta
from .tame_param import Presentation, compatible_pair, compatible_presentation, is_lowest_alcove

Key = Tuple[ExtAffWeyl, Weight]


def verma_class_shifted(datum: RootDatum, w: FinWeyl, mu: Sequence[int]) -> GKMClass:
    """``t^mu w . V``."""
    return act_dot(datum, aw.t_w(datum, mu, w), rho_limit_class(datum))


def entry_key(datum: RootDatum, u: ExtAffWeyl, xi: Sequence[int]) -> Key:
    """Canonical label: ``(c t^z, xi) -> (c, xi + z)`` for a central ``z``."""
    c, z = aw.box_canonical(datum, u)
    return c, la.add(tuple(xi), z)


def support_cone(datum: RootDatum, u: ExtAffWeyl, xi: Sequence[int]) -> frozenset:
    """``t^{xi + rho} W̃_{<= w0 u}``."""
    shift = aw.translation(datum, la.add(tuple(xi), datum.rho))
    top = aw.finite(datum, datum.w0) * u
    return frozenset(shift * y for y in aw.lower_interval(datum, top))


def _factor(datum: RootDatum, z: ExtAffWeyl, u: ExtAffWeyl, xi: Sequence[int]):
    """``(x, sigma)`` with ``t^{-(xi + rho)} z = sigma x`` and ``x`` dominant."""
    y = aw.translation(datum, la.neg(la.add(tuple(xi), datum.rho))) * z
    if not aw.bruhat_leq(datum, y, aw.finite(datum, datum.w0) * u):
        raise NotInSupportCone("fixed point outside t^{xi+rho} W̃_{<= w0 u}")
    x = aw.dominant_rep(datum, y)
    sigma = y * x.inv()
    return x, sigma


def defect(datum: RootDatum, z: ExtAffWeyl, u: ExtAffWeyl, xi: Sequence[int]) -> int:
    """``l(u) - l(x)`` where ``t^{-(xi + rho)} z = sigma x`` with ``x`` dominant."""
    x, _ = _factor(datum, z, u, xi)
    return aw.length(datum, u) - aw.length(datum, x)


def recursion_presentation(datum: RootDatum, z: ExtAffWeyl, u: ExtAffWeyl, xi: Sequence[int]) -> Tuple[FinWeyl, Weight]:
    """The ``(w, mu)`` whose relation has ``Z(u, xi)`` as boundary term and reaches ``z``."""
    _, sigma = _factor(datum, z, u, xi)
    g = sigma * aw.translation(datum, la.neg(datum.rho)) * u
    kappa, w = g.shift, g.fin
    return w, la.add(la.add(tuple(xi), kappa), datum.rho)


def lhs_coefficient(datum: RootDatum, w: FinWeyl, mu: Sequence[int], z: ExtAffWeyl) -> RootFrac:
    """Coefficient of ``t^mu w . V`` at ``z``."""
    if z.fin != w:
        return RootFrac.zero(datum.rank)
    v_rho = w.act_inv(la.sub(z.shift, tuple(mu)))
    for v in datum.weyl:
        if v.act(datum.rho) == v_rho:
            return inv_beta(datum) * (v.sign * w.sign)
    return RootFrac.zero(datum.rank)


def relation_terms(
    datum: RootDatum, oracle: MultOracle, w: FinWeyl, mu: Sequence[int]
) -> List[Tuple[Key, int, Weight]]:
    """``[((pi u, xi), m, nu)]`` for the right side of the relation at ``t^mu w``.

    ``(u, nu)`` runs over the oracle's nonzero entries.
    """
    out = []
    for u in sorted(oracle.region, key=lambda x: aw.sort_key(datum, x)):
        try:
            nz = oracle.nonzero(u)
        except OutOfRegion as exc:
            raise OracleGap(str(exc)) from None
        for nu, m in nz:
            xi = la.add(la.sub(tuple(mu), datum.rho), w.act(datum.pi_act(nu)))
            out.append((entry_key(datum, aw.pi_act(datum, u), xi), m, nu))
    return out


def _check_oracle_covers(datum: RootDatum, oracle: MultOracle) -> None:
    box = aw.restricted_box(datum)
    missing = [u for u in box if u not in oracle.region]
    if missing:
        raise OracleGap(f"oracle region misses {len(missing)} box elements")


Lower = Callable[[ExtAffWeyl, ExtAffWeyl, Weight], RootFrac]


def recursion_step(
    datum: RootDatum,
    z: ExtAffWeyl,
    u: ExtAffWeyl,
    xi: Sequence[int],
    p: int,
    oracle: MultOracle,
    lower: "Mapping | Lower",
    policy: Policy = Policy.STRICT,
    h: int = 0,
    shuffle: Optional[random.Random] = None,
) -> RootFrac:
    """The coefficient of ``Z(u, xi)`` at ``z`` forced by the recursion.

    ``lower`` supplies coefficients of lower-defect cycles, either as a
    mapping ``{(z, u', xi'): coefficient}`` or as a callable.  A missing
    value raises ``MissingLowerDefect``.
    """
    u, xi = entry_key(datum, u, xi)
    require("recursion", datum, z.shift, p, policy, h=h, error=_genericity_violation())
    d = defect(datum, z, u, xi)
    w, mu = recursion_presentation(datum, z, u, xi)
    value = lhs_coefficient(datum, w, mu, z)
    terms = relation_terms(datum, oracle, w, mu)
    boundary = [(k, m) for k, m, nu in terms if k == (u, xi)]
    if len(boundary) != 1 or boundary[0][1] != 1:
        raise AssertionError("the relation does not isolate Z(u, xi) with multiplicity one")
    others = [(k, m) for k, m, nu in terms if k != (u, xi)]
    if shuffle is not None:
        shuffle.shuffle(others)
    for (u2, xi2), m in others:
        if z not in support_cone(datum, u2, xi2):
            continue
        d2 = defect(datum, z, u2, xi2)
        if d2 >= d:
            raise MissingLowerDefect(f"term of defect {d2} does not lie below defect {d}")
        if callable(lower):
            c = lower(z, u2, xi2)
        else:
            try:
                c = lower[(z, u2, xi2)]
            except KeyError:
                raise MissingLowerDefect(f"coefficient of defect {d2} not yet known") from None
        value = value - c * m
    return value


def _genericity_violation():
    from .errors import GenericityViolation

    return GenericityViolation


# -- tables ---------------------------------------------------------------------------


@dataclass
class CycleTable:
    datum: RootDatum
    p: int
    zeta: ExtAffWeyl
    oracle: str
    policy: Policy
    region: Tuple[Key, ...]
    entries: Dict[Key, GKMClass] = field(default_factory=dict)

    def __getitem__(self, key: Key) -> GKMClass:
        return self.entries[key]

    def get(self, u: ExtAffWeyl, xi: Sequence[int]) -> GKMClass:
        key = entry_key(self.datum, u, xi)
        if key not in self.entries:
            raise TableGap(f"no entry for xi={key[1]}")
        return self.entries[key]

    def to_json(self) -> dict:
        from .gkm import class_to_json

        d = self.datum
        keys = sorted(self.entries, key=lambda k: (aw.sort_key(d, k[0]), k[1]))
        return {
            "datum": d.name,
            "p": self.p,
            "zeta": aw.to_json(self.zeta),
            "oracle": self.oracle,
            "genericity": Policy(self.policy).value,
            "entries": [{"u": aw.to_json(u), "xi": list(xi), "class": class_to_json(d, self.entries[(u, xi)])} for u, xi in keys],
        }


class Reconstructor:
    """Memoized coefficients ``m_z(Z(u, xi))`` for one datum, prime and oracle."""

    def __init__(
        self,
        datum: RootDatum,
        p: int,
        oracle: MultOracle,
        policy: Policy = Policy.STRICT,
        h: int = 0,
        seed: Optional[int] = None,
    ):
        if oracle.datum is not datum:
            raise OracleGap("oracle belongs to a different datum")
        if oracle.p != p:
            raise OracleGap(f"oracle is for p={oracle.p}, not {p}")
        _check_oracle_covers(datum, oracle)
        self.datum, self.p, self.oracle, self.policy, self.h = datum, p, oracle, Policy(policy), h
        self.memo: Dict[Tuple[ExtAffWeyl, ExtAffWeyl, Weight], RootFrac] = {}
        self.rng = random.Random(seed) if seed is not None else None

    def coefficient(self, z: ExtAffWeyl, u: ExtAffWeyl, xi: Sequence[int]) -> RootFrac:
        u, xi = entry_key(self.datum, u, xi)
        key = (z, u, xi)
        if key not in self.memo:
            self.memo[key] = recursion_step(
                self.datum, z, u, xi, self.p, self.oracle, self.coefficient, self.policy, self.h, self.rng
            )
        return self.memo[key]

    def entry(self, u: ExtAffWeyl, xi: Sequence[int], reverse: bool = False) -> GKMClass:
        """All coefficients of ``Z(u, xi)``, visiting fixed points by increasing defect."""
        d = self.datum
        u, xi = entry_key(d, u, xi)
        pts = sorted(support_cone(d, u, xi), key=lambda z: (defect(d, z, u, xi), aw.sort_key(d, z)), reverse=reverse)
        if reverse:
            pts.sort(key=lambda z: defect(d, z, u, xi))
        return GKMClass(d.rank, {z: self.coefficient(z, u, xi) for z in pts})


def default_region(
    datum: RootDatum, p: int, zeta: ExtAffWeyl, policy: Policy = Policy.STRICT, h: int = 0
) -> List[Key]:
    """Box elements ``u`` and ``xi`` in ``C0`` compatible with ``zeta`` and generic enough.

    ``C0`` is ``0 < <xi + rho, a> < p`` for positive roots ``a``.  Requires
    integral fundamental coweights and a rank-one centre.
    """
    fund = datum.fundamental_coweights
    if fund is None or len(datum.central_basis) != 1:
        raise RankUnsupported("default regions need fundamental coweights and a rank-one centre")
    z = datum.central_basis[0]
    form = next(f for f in datum.omega_forms if la.pair(z, f))
    out = []
    for u in aw.restricted_box(datum):
        for coeffs in product(range(1, p), repeat=len(fund)):
            base = datum.zero()
            for c, f in zip(coeffs, fund):
                base = la.add(base, la.scale(c, f))
            if not all(0 < la.pair(base, a) < p for a in datum.positive_roots):
                continue
            if not satisfies("region", datum, base, p, policy, h=h):
                continue
            target = la.pair(zeta.trans, form) - la.pair(u.trans, form) - la.pair(la.sub(base, datum.rho), form)
            q, r = divmod(target, la.pair(z, form))
            if r:
                continue
            xi = la.add(la.sub(base, datum.rho), la.scale(q, z))
            if compatible_pair(datum, zeta, u, xi):
                out.append((u, xi))
    return sorted(out, key=lambda k: (aw.sort_key(datum, k[0]), k[1]))


def reconstruct(
    datum: RootDatum,
    p: int,
    oracle: MultOracle,
    zeta: ExtAffWeyl,
    region: Optional[Iterable[Key]] = None,
    policy: Policy = Policy.STRICT,
    h: int = 0,
    reverse: bool = False,
    seed: Optional[int] = None,
) -> CycleTable:
    """Compute every ``Z(u, xi)`` in the region.

    With ``region=None`` the default region is used and an empty result is
    an error (``RegionNotGeneric``); an explicitly empty region gives an
    empty table.  ``reverse`` and ``seed`` select alternative schedules.
    """
    policy = Policy(policy)
    if region is None:
        keys = default_region(datum, p, zeta, policy, h)
        if not keys:
            raise RegionNotGeneric(
                f"no (u, xi) with xi + rho generic for p={p}; threshold max(h, h_rho) + 3 h_rho"
            )
    else:
        keys = [entry_key(datum, u, xi) for u, xi in region]
        for u, xi in keys:
            if not compatible_pair(datum, zeta, u, xi):
                raise ZetaMismatch(f"(u, xi={xi}) is not compatible with zeta")
            require("region", datum, la.add(xi, datum.rho), p, policy, h=h, error=RegionNotGeneric)
    rec = Reconstructor(datum, p, oracle, policy, h, seed)
    order = sorted(set(keys), key=lambda k: (aw.sort_key(datum, k[0]), k[1]), reverse=reverse)
    entries = {k: rec.entry(k[0], k[1], reverse=reverse) for k in order}
    ordered = {k: entries[k] for k in sorted(entries, key=lambda k: (aw.sort_key(datum, k[0]), k[1]))}
    return CycleTable(datum, p, zeta, oracle.source, policy, tuple(sorted(set(keys), key=lambda k: (aw.sort_key(datum, k[0]), k[1]))), ordered)


# -- verification ------------------------------------------------------------------------


def _compare(datum: RootDatum, lhs: GKMClass, rhs: GKMClass) -> list:
    from .symalg import frac_to_json

    report = []
    for z in sorted(lhs.support | rhs.support, key=lambda x: aw.sort_key(datum, x)):
        if lhs[z] != rhs[z]:
            report.append(
                {"fixed_point": aw.to_json(z), "lhs": frac_to_json(datum, lhs[z]), "rhs": frac_to_json(datum, rhs[z])}
            )
    return report


def relation_rhs(datum: RootDatum, table: CycleTable, contributions: Mapping[Key, int]) -> GKMClass:
    missing = [k for k in contributions if k not in table.entries]
    if missing:
        raise TableGap(f"{len(missing)} cycles needed by the relation are not in the table")
    return total(datum.rank, (table.entries[k].scale(m) for k, m in contributions.items() if m))


def _check_table(datum: RootDatum, p: int, zeta: ExtAffWeyl, table: CycleTable) -> None:
    if table.p != p:
        raise ZetaMismatch(f"table is for p={table.p}, not {p}")
    if table.zeta != zeta:
        raise ZetaMismatch("table was computed for a different central character")


def verify_bm_relations(
    datum: RootDatum,
    p: int,
    oracle: MultOracle,
    zeta: ExtAffWeyl,
    pres: Presentation,
    table: CycleTable,
    policy: Policy = Policy.STRICT,
) -> Tuple[bool, list]:
    """Check ``t^mu w . V == sum m(u, nu) Z(pi u, mu - rho + w pi nu)`` exactly."""
    _check_table(datum, p, zeta, table)
    if not compatible_presentation(datum, zeta, pres):
        raise ZetaMismatch("presentation is not compatible with zeta")
    require("bm_relation", datum, pres.mu, p, policy)
    contrib: Dict[Key, int] = {}
    for k, m, _ in relation_terms(datum, oracle, pres.w, pres.mu):
        contrib[k] = contrib.get(k, 0) + m
    lhs = verma_class_shifted(datum, pres.w, pres.mu)
    rhs = relation_rhs(datum, table, contrib)
    report = _compare(datum, lhs, rhs)
    return not report, report


def ht_contributions(datum: RootDatum, oracle: MultOracle, w: FinWeyl, mu: Sequence[int], lam: Sequence[int]) -> Dict[Key, int]:
    """Aggregated ``sum_kappa m_kappa(lam) m(u, nu)`` by cycle label ``(pi u, mu + kappa - rho + w pi nu)``."""
    ch = weight_multiplicities(datum, lam)
    contrib: Dict[Key, int] = {}
    for kappa, mk in sorted(ch.terms.items()):
        for k, m, _ in relation_terms(datum, oracle, w, la.add(tuple(mu), kappa)):
            contrib[k] = contrib.get(k, 0) + mk * m
    return contrib


def ht_zeta(datum: RootDatum, zeta: ExtAffWeyl, lam: Sequence[int]) -> ExtAffWeyl:
    """The central character a presentation must have for weight ``lam``: ``zeta t^{-lam}``."""
    return aw.omega_part(datum, zeta * aw.translation(datum, la.neg(tuple(lam))))


def verify_bm_ht(
    datum: RootDatum,
    p: int,
    oracle: MultOracle,
    zeta: ExtAffWeyl,
    pres: Presentation,
    lam: Sequence[int],
    table: CycleTable,
    policy: Policy = Policy.STRICT,
) -> Tuple[bool, list]:
    """Check ``sum_kappa m_kappa(lam) t^{mu + kappa} w . V`` against the aggregated cycles."""
    lam = tuple(lam)
    _check_table(datum, p, zeta, table)
    if not compatible_presentation(datum, ht_zeta(datum, zeta, lam), pres):
        raise ZetaMismatch("presentation is not compatible with zeta shifted by lam")
    require("bm_ht", datum, pres.mu, p, policy, h_lam=height(datum, lam))
    ch = weight_multiplicities(datum, lam)
    lhs = total(
        datum.rank,
        (verma_class_shifted(datum, pres.w, la.add(pres.mu, kappa)).scale(mk) for kappa, mk in sorted(ch.terms.items())),
    )
    rhs = relation_rhs(datum, table, ht_contributions(datum, oracle, pres.w, pres.mu, lam))
    report = _compare(datum, lhs, rhs)
    return not report, report


def sweep_presentations(
    datum: RootDatum,
    p: int,
    oracle: MultOracle,
    zeta: ExtAffWeyl,
    table: CycleTable,
    lam: Optional[Sequence[int]] = None,
    policy: Policy = Policy.STRICT,
) -> List[Presentation]:
    """Lowest-alcove presentations ``(w, mu)`` with ``mu`` in ``rho + C0`` whose relation uses only table entries.

    ``rho + C0`` is ``0 < <mu, a> < p``.  With ``lam`` the relation with that
    Hodge-Tate weight is used and genericity is ``h_lam + 2 h_rho``.
    """
    keys = set(table.entries)
    region_keys = set(table.region)
    out = []
    if not table.entries:
        return out
    target = zeta if lam is None else ht_zeta(datum, zeta, lam)
    fund = datum.fundamental_coweights
    z = datum.central_basis[0]
    form = next(f for f in datum.omega_forms if la.pair(z, f))
    for coeffs in product(range(1, p), repeat=len(fund)):
        base = datum.zero()
        for c, f in zip(coeffs, fund):
            base = la.add(base, la.scale(c, f))
        if not all(0 < la.pair(base, a) < p for a in datum.positive_roots):
            continue
        for w in datum.weyl:
            # Solve the central coordinate from compatibility, then verify it.
            q, r = divmod(la.pair(target.trans, form) - la.pair(base, form), la.pair(z, form))
            if r:
                continue
            mu = la.add(base, la.scale(q, z))
            pres = Presentation(w, mu, p)
            if not compatible_presentation(datum, target, pres):
                continue
            if lam is None:
                if not satisfies("bm_relation", datum, mu, p, policy):
                    continue
            elif not satisfies("bm_ht", datum, mu, p, policy, h_lam=height(datum, lam)):
                continue
            if not is_lowest_alcove(datum, pres):
                continue
            if lam is None:
                needed = {k for k, m, _ in relation_terms(datum, oracle, w, mu)}
            else:
                needed = set(ht_contributions(datum, oracle, w, mu, lam))
            if needed <= keys and needed & region_keys:
                out.append(pres)
    return out


def check_support_bounds(datum: RootDatum, table: CycleTable) -> list:
    """Entries whose support leaves ``t^{xi + rho} W̃_{<= w0 u}``."""
    bad = []
    for (u, xi), c in table.entries.items():
        if not c.support <= support_cone(datum, u, xi):
            bad.append((u, xi))
    return bad


def check_w_action(datum: RootDatum, table: CycleTable, bound: int = 3) -> Tuple[int, list]:
    """``w t^{-mu} . Z'(u, mu + nu) == t^{-mu} . Z'(u, mu + w nu)`` with ``Z'(u, x) = Z(u, x - rho)``.

    Checks every pair of entries with the same ``u`` and every ``w``, ``nu``
    (entries in ``[-bound, bound]``) that relate them.  Returns the number of
    instances checked and the failures.
    """
    by_u: Dict[ExtAffWeyl, List[Weight]] = {}
    for u, xi in table.entries:
        by_u.setdefault(u, []).append(xi)
    checked, failures = 0, []
    for u, xis in by_u.items():
        for xi1, xi2 in product(xis, repeat=2):
            for w in datum.weyl:
                for nu in product(range(-bound, bound + 1), repeat=datum.rank):
                    if la.sub(nu, w.act(nu)) != la.sub(xi1, xi2):
                        continue
                    mu = la.sub(la.add(xi1, datum.rho), nu)
                    left = act_dot(datum, aw.finite(datum, w) * aw.translation(datum, la.neg(mu)), table.entries[(u, xi1)])
                    right = act_dot(datum, aw.translation(datum, la.neg(mu)), table.entries[(u, xi2)])
                    checked += 1
                    if left != right:
                        failures.append((u, xi1, xi2, w, nu))
    return checked, failures


def alternate_coefficients(rec: Reconstructor, z: ExtAffWeyl, u: ExtAffWeyl, xi: Sequence[int]) -> List[RootFrac]:
    """Re-derive ``m_z(Z(u, xi))`` from every relation ``(w', mu')`` whose boundary term is ``Z(u, xi)``.

    ``mu' = xi + rho - w' pi(nu_b)`` with ``nu_b`` the boundary ``nu`` of
    ``pi^{-1} u``.  Other terms are evaluated with the primary recursion.
    """
    d = rec.datum
    u, xi = entry_key(d, u, xi)
    u0 = aw.pi_inv_act(d, u)
    c0, zc = aw.box_canonical(d, u0)
    nb = la.sub(boundary_nu(d, c0), zc)
    out = []
    for w in d.weyl:
        mu = la.sub(la.add(xi, d.rho), w.act(d.pi_act(nb)))
        value = lhs_coefficient(d, w, mu, z)
        hit = False
        for k, m, _ in relation_terms(d, rec.oracle, w, mu):
            if k == (u, xi):
                hit = hit or m == 1
                continue
            if z in support_cone(d, *k):
                value = value - rec.coefficient(z, *k) * m
        if hit:
            out.append(value)
    return out


def eigen_inheritance(datum: RootDatum, table: CycleTable, oracle: MultOracle) -> bool:
    """``sum m(u, nu) t^nu . M_u == V`` with ``M_u = t^{-(xi + rho)} . Z(u, xi)`` from any entry."""
    base: Dict[ExtAffWeyl, GKMClass] = {}
    for (u, xi), c in table.entries.items():
        if u not in base:
            base[u] = act_dot(datum, aw.translation(datum, la.neg(la.add(xi, datum.rho))), c)
    parts = []
    for u in oracle.region:
        if u not in base:
            return False
        for nu, m in oracle.nonzero(u):
            parts.append(act_dot(datum, aw.translation(datum, nu), base[u]).scale(m))
    return total(datum.rank, parts) == rho_limit_class(datum)


def closed_form_check(datum: RootDatum, table: CycleTable) -> list:
    """Entries failing: coefficients integral multiples of ``1/beta`` and shifted residue conditions."""
    bad = []
    b = beta(datum)
    triples = gen_rho_orbit_triples(datum)
    for (u, xi), c in table.entries.items():
        ok = all((f * b).constant_value() is not None and (f * b).constant_value().denominator == 1 for _, f in c.items())
        shifted = shift_triples(datum, triples, aw.translation(datum, la.add(xi, datum.rho)))
        ok = ok and check_residues(datum, c, shifted)[0]
        if not ok:
            bad.append((u, xi))
    return bad


def table_bytes(table: CycleTable) -> bytes:
    from .serialize import dumps

    return dumps(table.to_json()).encode()


def table_from_json(obj: dict, datum: Optional[RootDatum] = None) -> CycleTable:
    from .errors import SchemaError
    from .gkm import class_from_json
    from .root_data import build_root_datum

    try:
        d = datum if datum is not None else build_root_datum(obj["datum"])
        entries = {}
        for e in obj["entries"]:
            key = entry_key(d, aw.from_json(d, e["u"]), tuple(int(c) for c in e["xi"]))
            entries[key] = class_from_json(d, e["class"])
        order = sorted(entries, key=lambda k: (aw.sort_key(d, k[0]), k[1]))
        return CycleTable(
            d,
            int(obj["p"]),
            aw.from_json(d, obj["zeta"]),
            str(obj.get("oracle", "")),
            Policy(obj.get("genericity", "strict")),
            tuple(order),
            {k: entries[k] for k in order},
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"bad cycle table: {exc}") from None
