"""Genericity thresholds used as hard preconditions, in one place.

Each threshold ``m`` is a function of ``h_rho`` (the height of rho), ``h_lam``
(height of a Hodge-Tate weight) and ``h`` (the oracle's height parameter).
A weight ``x`` satisfies the check when ``is_m_generic(x, p, m)`` holds.

Two policies exist.  ``STRICT`` applies the thresholds below.  ``FORMAL``
disables every check, which lets the identities be exercised at small
primes where no weight is generic enough; results obtained this way are
verified by exact class equality, not guaranteed by the thresholds.
"""

from __future__ import annotations

from enum import Enum
from typing import Optional, Sequence

from .affine_weyl import is_m_generic
from .errors import GenericityViolation, NotGeneric
from .root_data import RootDatum, height


class Policy(str, Enum):
    STRICT = "strict"
    FORMAL = "formal"


THRESHOLDS = {
    "bm_relation": lambda h_rho, h_lam, h: 2 * h_rho,
    "bm_ht": lambda h_rho, h_lam, h: h_lam + 2 * h_rho,
    "recursion": lambda h_rho, h_lam, h: max(h, h_rho) + 2 * h_rho,
    "region": lambda h_rho, h_lam, h: max(h, h_rho) + 3 * h_rho,
    "uniqueness": lambda h_rho, h_lam, h: 6 * h_rho,
}

DESCRIPTIONS = {
    "bm_relation": "2 h_rho (relation against a shifted baby Verma class)",
    "bm_ht": "h_lam + 2 h_rho (relation with a Hodge-Tate weight)",
    "recursion": "max(h, h_rho) + 2 h_rho (key recursion at a fixed point)",
    "region": "max(h, h_rho) + 3 h_rho (reconstruction region)",
    "uniqueness": "6 h_rho (uniqueness from the support bound)",
}


def threshold(name: str, datum: RootDatum, h_lam: int = 0, h: int = 0) -> int:
    return THRESHOLDS[name](height(datum, datum.rho), h_lam, h)


def satisfies(
    name: str,
    datum: RootDatum,
    x: Sequence[int],
    p: int,
    policy: Policy = Policy.STRICT,
    h_lam: int = 0,
    h: int = 0,
) -> bool:
    if Policy(policy) is Policy.FORMAL:
        return True
    return is_m_generic(datum, x, p, threshold(name, datum, h_lam, h))


def require(
    name: str,
    datum: RootDatum,
    x: Sequence[int],
    p: int,
    policy: Policy = Policy.STRICT,
    h_lam: int = 0,
    h: int = 0,
    error: type = NotGeneric,
) -> None:
    """Raise ``error`` naming the threshold when ``x`` is not generic enough."""
    if not satisfies(name, datum, x, p, policy, h_lam, h):
        m = threshold(name, datum, h_lam, h)
        raise error(f"{tuple(x)} is not {m}-generic for p={p}; threshold {DESCRIPTIONS[name]}")


def require_recursion(datum: RootDatum, x: Sequence[int], p: int, policy: Policy, h: int = 0) -> Optional[None]:
    require("recursion", datum, x, p, policy, h=h, error=GenericityViolation)
