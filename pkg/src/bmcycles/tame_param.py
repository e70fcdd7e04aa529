"""Presentations of tame inertial types, Serre weight labels and compatibility.

A presentation is ``t^mu w`` together with ``p``.  Its point
``x = (phi - w)^{-1}(mu)`` (with ``phi = p pi^{-1}``) satisfies
``phi(x) = mu + w(x)``; the presentation is lowest alcove when ``x`` lies in
the base alcove.

Compatibility with a central character ``zeta`` (an element of
``Omega = W̃ / W_aff``) compares images in ``Omega``.  A Serre weight label
``(u, xi)`` maps to the image of ``u t^xi``; a presentation maps to the image
of ``t^mu w``.  The Serre weight with label ``(u, xi)`` has highest weight
``pi^{-1}(u) •_p xi``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from . import _lattice as la
from . import affine_weyl as aw
from .affine_weyl import ExtAffWeyl
from .errors import SchemaError, SingularSolve
from .root_data import FinWeyl, RootDatum, Weight


@dataclass(frozen=True)
class Presentation:
    """``t^mu w`` at the prime ``p``."""

    w: FinWeyl
    mu: Weight
    p: int

    def element(self, datum: RootDatum) -> ExtAffWeyl:
        return aw.t_w(datum, self.mu, self.w)

    @staticmethod
    def of(datum: RootDatum, x: ExtAffWeyl, p: int) -> "Presentation":
        return Presentation(x.fin, x.shift, p)


@dataclass(frozen=True)
class SerreWeight:
    """A Serre weight by its normalized highest weight, with an optional label."""

    hw: Weight
    label: Optional[Tuple[ExtAffWeyl, Weight]] = None


# -- presentations -------------------------------------------------------------------


def presentation_point(datum: RootDatum, pres: Presentation) -> Tuple[Fraction, ...]:
    """The exact solution of ``(p pi^{-1} - w) x = mu``."""
    n = datum.rank
    A = [[pres.p * datum.pi_inv[i][j] - pres.w.matrix[i][j] for j in range(n)] for i in range(n)]
    if la.det(A) == 0:
        raise SingularSolve("p pi^{-1} - w is singular")
    return la.solve(A, pres.mu)


def is_lowest_alcove(datum: RootDatum, pres: Presentation) -> bool:
    x = presentation_point(datum, pres)
    return all(0 < la.pair(x, a) < 1 for a in datum.positive_roots)


def point_height(datum: RootDatum, x: Sequence) -> Fraction:
    return max((abs(Fraction(la.pair(x, a))) for a in datum.positive_roots), default=Fraction(0))


def phi_conjugates(datum: RootDatum, pres: Presentation, bound: int) -> List[Presentation]:
    """``phi(z) w̃ z^{-1}`` for length-zero ``z`` with translation entries in ``[-bound, bound]``."""
    wt = pres.element(datum)
    out = []
    for z in aw.omega_elements(datum, bound):
        y = aw.phi(datum, z, pres.p) * wt * z.inv()
        out.append(Presentation.of(datum, y, pres.p))
    return out


def omega_image(datum: RootDatum, x: ExtAffWeyl) -> ExtAffWeyl:
    return aw.omega_part(datum, x)


def compatible_presentation(datum: RootDatum, zeta: ExtAffWeyl, pres: Presentation) -> bool:
    return aw.same_omega_coset(datum, zeta, pres.element(datum))


def compatible_pair(datum: RootDatum, zeta: ExtAffWeyl, u: ExtAffWeyl, xi: Sequence[int]) -> bool:
    """Whether the label ``(u, xi)`` maps to ``zeta``: compares ``u t^xi`` with ``zeta``."""
    return aw.same_omega_coset(datum, zeta, u * aw.translation(datum, xi))


def compatible_with(datum: RootDatum, zeta: ExtAffWeyl, item) -> bool:
    """Dispatch on a ``Presentation`` or a ``(u, xi)`` pair."""
    if isinstance(item, Presentation):
        return compatible_presentation(datum, zeta, item)
    u, xi = item
    return compatible_pair(datum, zeta, u, xi)


def zeta_from_index(datum: RootDatum, k: int) -> ExtAffWeyl:
    """The image of ``t^{k e}`` in ``Omega`` for a fixed cocharacter ``e``.

    ``e`` is the first fundamental coweight when one exists, otherwise the
    first standard basis vector.  Used by the command line to name central
    characters by an integer.
    """
    fund = datum.fundamental_coweights
    base = fund[0] if fund else tuple(1 if i == 0 else 0 for i in range(datum.rank))
    return aw.omega_part(datum, aw.translation(datum, la.scale(k, base)))


# -- Serre weights -------------------------------------------------------------------


def serre_normal_form(datum: RootDatum, hw: Sequence[int], p: int) -> Weight:
    """Reduce a highest weight modulo ``(p - pi) X^0``.

    With a rank-one centre the class is pinned by reducing one central
    coordinate into ``[0, |period|)``; for other centres the weight is
    returned unchanged.
    """
    hw = tuple(hw)
    if len(datum.central_basis) != 1:
        return hw
    z = datum.central_basis[0]
    d = la.sub(la.scale(p, z), datum.pi_act(z))
    form = next(f for f in datum.omega_forms if la.pair(z, f))
    period = la.pair(d, form)
    k = la.pair(hw, form) // period
    return la.sub(hw, la.scale(k, d))


def serre_weight(datum: RootDatum, u: ExtAffWeyl, xi: Sequence[int], p: int) -> SerreWeight:
    """The Serre weight with label ``(u, xi)``: highest weight ``pi^{-1}(u) •_p xi``."""
    hw = aw.dot_actions(datum, aw.pi_inv_act(datum, u), xi, p, "dot_p")
    return SerreWeight(serre_normal_form(datum, hw, p), (u, tuple(xi)))


def is_p_restricted(datum: RootDatum, hw: Sequence[int], p: int) -> bool:
    return all(0 <= la.pair(hw, a) < p for a in datum.simple_roots)


# -- admissibility -----------------------------------------------------------------


def admissible_tuple(datum: RootDatum, u: ExtAffWeyl, w: FinWeyl, nu: Sequence[int], lam: Sequence[int]) -> bool:
    """``(t^{-w^{-1} nu})_dom <= w0 t^{-lam-rho} u``."""
    left = aw.dominant_rep(datum, aw.translation(datum, la.neg(w.act_inv(tuple(nu)))))
    right = aw.finite(datum, datum.w0) * aw.translation(datum, la.neg(la.add(lam, datum.rho))) * u
    return aw.bruhat_leq(datum, left, right)


def constellation(datum: RootDatum, w: FinWeyl, lam: Sequence[int], bound: int) -> List[Tuple[ExtAffWeyl, Weight]]:
    """Admissible ``(u, nu)`` with ``u`` a canonical box element and ``|nu_i| <= bound``."""
    from itertools import product

    out = []
    for u in aw.restricted_box(datum):
        for nu in product(range(-bound, bound + 1), repeat=datum.rank):
            if admissible_tuple(datum, u, w, nu, lam):
                out.append((u, tuple(nu)))
    return out


def jh_constellation(
    datum: RootDatum,
    u: ExtAffWeyl,
    zeta: ExtAffWeyl,
    mu: Sequence[int],
    p: int,
    nu: Optional[Sequence[int]] = None,
    w: Optional[FinWeyl] = None,
) -> Optional[Tuple[Weight, Weight]]:
    """The label ``xi = mu - rho + w pi(nu)`` attached to ``(u, nu)``, or ``None`` if incompatible with ``zeta``."""
    nu = datum.zero() if nu is None else tuple(nu)
    w = datum.identity if w is None else w
    xi = la.add(la.sub(tuple(mu), datum.rho), w.act(datum.pi_act(nu)))
    if not compatible_pair(datum, zeta, u, xi):
        return None
    return xi, nu


# -- serialization -----------------------------------------------------------------


def presentation_to_json(pres: Presentation) -> dict:
    return {"w": aw.fin_to_json(pres.w), "mu": list(pres.mu), "p": pres.p}


def presentation_from_json(datum: RootDatum, obj: dict) -> Presentation:
    try:
        return Presentation(aw.fin_from_json(datum, obj["w"]), tuple(int(c) for c in obj["mu"]), int(obj["p"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"bad presentation: {exc}") from None


def serre_weight_to_json(datum: RootDatum, sw: SerreWeight, zeta: Optional[ExtAffWeyl] = None) -> dict:
    """``omega`` is the rho-shifted label ``xi + rho``."""
    out = {"hw": list(sw.hw)}
    if sw.label is not None:
        out["w1"] = aw.to_json(sw.label[0])
        out["omega"] = list(la.add(sw.label[1], datum.rho))
    if zeta is not None:
        out["zeta"] = aw.to_json(zeta)
    return out
