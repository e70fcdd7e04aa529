"""Root data of the dual group with a pinned Borel, the finite Weyl group, ρ and π.

Conventions
-----------
The working lattice ``L`` is the cocharacter lattice of the dual torus, which
is identified with the character lattice of the original torus.  Elements of
``L`` are integer tuples (weights).

* ``simple_roots`` are linear forms on ``L`` (integer row vectors).  The
  pairing ``<x, a>`` of a weight ``x`` with a form ``a`` is the dot product.
* ``simple_coroots`` are elements of ``L``.
* The simple reflection attached to index ``i`` is
  ``x -> x - <x, a_i> a_i^v``.
* A root ``a`` is positive when ``<rho, a> > 0``; dominance means nonnegative
  pairing with every simple root.

Weyl group elements act on ``L`` by integer matrices (column vectors) and on
forms contragrediently, ``(w.a)(x) = a(w^{-1} x)``.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from . import _lattice as la
from .errors import (
    CartanMismatch,
    DatumError,
    InfiniteWeyl,
    NoFundamentalCoweights,
    PiInvalid,
    RhoInvalid,
)

Weight = Tuple[int, ...]
Form = Tuple[int, ...]

DEFAULT_WEYL_CAP = 100_000


@dataclass(frozen=True)
class FinWeyl:
    """An element of the finite Weyl group, stored as its lattice matrix.

    Equality and hashing use the matrix only.  The reduced word lives on the
    datum (``RootDatum.word``) because it depends on the choice of simple
    reflections.
    """

    matrix: la.Mat
    inverse: la.Mat = field(compare=False, repr=False)
    sign: int = field(compare=False, repr=False, default=1)

    @staticmethod
    def identity(n: int) -> "FinWeyl":
        e = la.identity(n)
        return FinWeyl(e, e, 1)

    def __mul__(self, other: "FinWeyl") -> "FinWeyl":
        return FinWeyl(
            la.matmul(self.matrix, other.matrix),
            la.matmul(other.inverse, self.inverse),
            self.sign * other.sign,
        )

    def inv(self) -> "FinWeyl":
        return FinWeyl(self.inverse, self.matrix, self.sign)

    def act(self, v: Sequence) -> tuple:
        return la.matvec(self.matrix, v)

    def act_inv(self, v: Sequence) -> tuple:
        return la.matvec(self.inverse, v)

    def act_form(self, a: Sequence) -> tuple:
        return la.vecmat(a, self.inverse)

    @property
    def is_identity(self) -> bool:
        return self.matrix == la.identity(len(self.matrix))


class RootDatum:
    """A validated root datum together with its finite Weyl group.

    Instances are treated as immutable; all derived data is computed once in
    the constructor.  Hashing is by identity so that per-datum caches can key
    on the object.
    """

    def __init__(
        self,
        rank: int,
        simple_roots: Sequence[Sequence[int]],
        simple_coroots: Sequence[Sequence[int]],
        rho: Sequence[int],
        pi: Optional[Sequence[Sequence[int]]] = None,
        name: str = "explicit",
        fundamental_coweights: Optional[Sequence[Sequence[int]]] = None,
        weyl_cap: int = DEFAULT_WEYL_CAP,
    ) -> None:
        self.name = name
        self.rank = int(rank)
        if self.rank < 1:
            raise DatumError("lattice rank must be positive")
        self.simple_roots: Tuple[Form, ...] = tuple(tuple(int(c) for c in a) for a in simple_roots)
        self.simple_coroots: Tuple[Weight, ...] = tuple(tuple(int(c) for c in a) for a in simple_coroots)
        if len(self.simple_roots) != len(self.simple_coroots):
            raise CartanMismatch("different numbers of simple roots and coroots")
        for v in self.simple_roots + self.simple_coroots:
            if len(v) != self.rank:
                raise CartanMismatch("root or coroot of the wrong length")
        self.ss_rank = len(self.simple_roots)
        self.rho: Weight = tuple(int(c) for c in rho)
        if len(self.rho) != self.rank:
            raise RhoInvalid("rho has the wrong length")
        self.pi: la.Mat = la.identity(self.rank) if pi is None else tuple(tuple(int(c) for c in r) for r in pi)

        self._check_cartan()
        self._check_finite_type()
        self._build_weyl(weyl_cap)
        self._check_rho()
        self._build_roots()
        self._check_pi()
        self.central_basis: Tuple[Weight, ...] = tuple(la.integer_kernel(self.simple_roots, self.rank))
        self.omega_forms: Tuple[Form, ...] = tuple(la.integer_kernel(self.simple_coroots, self.rank))
        self.fundamental_coweights = self._fundamental_coweights(fundamental_coweights)

    # -- validation and construction -------------------------------------

    def _check_cartan(self) -> None:
        r = self.ss_rank
        self.cartan = tuple(
            tuple(la.pair(self.simple_coroots[i], self.simple_roots[j]) for j in range(r)) for i in range(r)
        )
        for i in range(r):
            if self.cartan[i][i] != 2:
                raise CartanMismatch(f"<a_{i}^v, a_{i}> = {self.cartan[i][i]}, expected 2")
            for j in range(r):
                if i == j:
                    continue
                if self.cartan[i][j] > 0:
                    raise CartanMismatch(f"positive off-diagonal Cartan entry at ({i},{j})")
                if (self.cartan[i][j] == 0) != (self.cartan[j][i] == 0):
                    raise CartanMismatch(f"asymmetric zero pattern at ({i},{j})")

    def _check_finite_type(self) -> None:
        """A generalized Cartan matrix has finite Weyl group iff every principal minor is positive."""
        r = self.ss_rank
        for mask in range(1, 1 << r):
            idx = [i for i in range(r) if mask >> i & 1]
            if la.det([[self.cartan[i][j] for j in idx] for i in idx]) <= 0:
                raise InfiniteWeyl("Cartan matrix is not of finite type")

    def _build_weyl(self, cap: int) -> None:
        n = self.rank
        gens = []
        for a, c in zip(self.simple_roots, self.simple_coroots):
            m = tuple(tuple((1 if i == j else 0) - c[i] * a[j] for j in range(n)) for i in range(n))
            gens.append(FinWeyl(m, m, -1))
        self.simple_reflections: Tuple[FinWeyl, ...] = tuple(gens)
        e = FinWeyl.identity(n)
        words: Dict[FinWeyl, Tuple[int, ...]] = {e: ()}
        order = [e]
        queue = deque([e])
        while queue:
            x = queue.popleft()
            for i, s in enumerate(gens):
                y = s * x
                if y not in words:
                    words[y] = (i,) + words[x]
                    order.append(y)
                    queue.append(y)
                    if len(order) > cap:
                        raise InfiniteWeyl(f"Weyl group enumeration exceeded {cap} elements")
        self._words = words
        self.weyl: Tuple[FinWeyl, ...] = tuple(order)
        self.identity = e
        self.w0 = max(order, key=lambda w: len(words[w]))

    def _check_rho(self) -> None:
        for i, a in enumerate(self.simple_roots):
            if la.pair(self.rho, a) != 1:
                raise RhoInvalid(f"<rho, a_{i}> = {la.pair(self.rho, a)}, expected 1")

    def _build_roots(self) -> None:
        coroot_of: Dict[Form, Weight] = {}
        for w in self.weyl:
            for a, c in zip(self.simple_roots, self.simple_coroots):
                coroot_of[w.act_form(a)] = w.act(c)
        pos = [a for a in coroot_of if la.pair(self.rho, a) > 0]
        pos.sort(key=lambda a: (la.pair(self.rho, a), tuple(-x for x in a)))
        self.positive_roots: Tuple[Form, ...] = tuple(pos)
        self.positive_coroots: Tuple[Weight, ...] = tuple(coroot_of[a] for a in pos)
        self.roots: Tuple[Form, ...] = self.positive_roots + tuple(la.neg(a) for a in pos)
        self.coroot_of = coroot_of
        self.root_index: Dict[Form, int] = {a: i for i, a in enumerate(pos)}
        # Dynkin components and their highest roots.
        comps: List[List[int]] = []
        seen: set = set()
        for i in range(self.ss_rank):
            if i in seen:
                continue
            comp, stack = [], [i]
            seen.add(i)
            while stack:
                k = stack.pop()
                comp.append(k)
                for j in range(self.ss_rank):
                    if j not in seen and self.cartan[k][j] != 0:
                        seen.add(j)
                        stack.append(j)
            comps.append(sorted(comp))
        self.components: Tuple[Tuple[int, ...], ...] = tuple(tuple(c) for c in comps)
        highest = []
        for comp in self.components:
            sub = {self.simple_roots[i] for i in comp}
            frontier = list(sub)
            while frontier:
                a = frontier.pop()
                for i in comp:
                    b = self.simple_reflections[i].act_form(a)
                    if b not in sub:
                        sub.add(b)
                        frontier.append(b)
            top = max(sub, key=lambda a: la.pair(self.rho, a))
            highest.append(top)
        self.highest_roots: Tuple[Form, ...] = tuple(highest)

    def _check_pi(self) -> None:
        P = self.pi
        if len(P) != self.rank or any(len(r) != self.rank for r in P):
            raise PiInvalid("pi has the wrong shape")
        if abs(la.det(P)) != 1:
            raise PiInvalid("pi is not invertible over Z")
        self.pi_inv: la.Mat = tuple(tuple(la.int_vec(r)) for r in la.inverse(P))
        perm = []
        for a, c in zip(self.simple_roots, self.simple_coroots):
            pa = la.vecmat(a, self.pi_inv)
            pc = la.matvec(P, c)
            try:
                j = self.simple_roots.index(pa)
            except ValueError:
                raise PiInvalid("pi does not permute the simple roots") from None
            if self.simple_coroots[j] != pc:
                raise PiInvalid("pi moves roots and coroots inconsistently")
            perm.append(j)
        self.pi_perm = tuple(perm)
        M = P
        for _ in range(2 * len(self.weyl) + 24):
            if M == la.identity(self.rank):
                break
            M = la.matmul(M, P)
        else:
            raise PiInvalid("pi does not have finite order")
        if la.matvec(P, self.rho) != self.rho:
            raise RhoInvalid("rho is not fixed by pi")

    def _fundamental_coweights(self, given) -> Optional[Tuple[Weight, ...]]:
        r = self.ss_rank
        target = [tuple(1 if i == j else 0 for j in range(r)) for i in range(r)]
        if given is not None:
            out = tuple(tuple(int(c) for c in v) for v in given)
            for v, t in zip(out, target):
                if tuple(la.pair(v, a) for a in self.simple_roots) != t:
                    raise NoFundamentalCoweights("supplied fundamental coweights have wrong pairings")
            return out
        # Explicit data: small exhaustive search for an integral lift.
        out = []
        box = range(-2, 3)
        for t in target:
            found = None
            for v in product(box, repeat=self.rank):
                if tuple(la.pair(v, a) for a in self.simple_roots) == t:
                    found = v
                    break
            if found is None:
                return None
            out.append(tuple(found))
        return tuple(out)

    # -- accessors ---------------------------------------------------------

    def __repr__(self) -> str:
        return f"RootDatum({self.name!r})"

    def word(self, w: FinWeyl) -> Tuple[int, ...]:
        return self._words[w]

    def length(self, w: FinWeyl) -> int:
        return len(self._words[w])

    def canon(self, w: FinWeyl) -> FinWeyl:
        """The stored instance equal to ``w`` (validates membership in W)."""
        for x in (w,):
            if x in self._words:
                return x
        raise DatumError("matrix is not an element of the Weyl group")

    def fin_from_word(self, word: Iterable[int]) -> FinWeyl:
        x = self.identity
        for i in word:
            x = x * self.simple_reflections[i]
        return x

    def fin_from_matrix(self, m: Sequence[Sequence[int]]) -> FinWeyl:
        key = FinWeyl(tuple(tuple(int(c) for c in r) for r in m), la.identity(self.rank))
        for w in self.weyl:
            if w == key:
                return w
        raise DatumError("matrix is not an element of the Weyl group")

    def pair(self, x: Sequence, a: Sequence):
        return la.pair(x, a)

    def is_dominant(self, lam: Sequence) -> bool:
        return all(la.pair(lam, a) >= 0 for a in self.simple_roots)

    def is_regular_weight(self, lam: Sequence) -> bool:
        return all(la.pair(lam, a) != 0 for a in self.positive_roots)

    def dominant_conjugate(self, lam: Sequence) -> Tuple[tuple, FinWeyl]:
        """Return ``(lam_dom, w)`` with ``w.lam = lam_dom`` dominant."""
        x = tuple(lam)
        w = self.identity
        while True:
            for i, a in enumerate(self.simple_roots):
                if la.pair(x, a) < 0:
                    s = self.simple_reflections[i]
                    x = s.act(x)
                    w = s * w
                    break
            else:
                return x, w

    def is_positive(self, a: Sequence) -> bool:
        return la.pair(self.rho, a) > 0

    def pi_act(self, v: Sequence) -> tuple:
        return la.matvec(self.pi, v)

    def pi_inv_act(self, v: Sequence) -> tuple:
        return la.matvec(self.pi_inv, v)

    def pi_fin(self, w: FinWeyl) -> FinWeyl:
        """``pi w pi^{-1}``."""
        return FinWeyl(
            la.matmul(la.matmul(self.pi, w.matrix), self.pi_inv),
            la.matmul(la.matmul(self.pi, w.inverse), self.pi_inv),
            w.sign,
        )

    def pi_inv_fin(self, w: FinWeyl) -> FinWeyl:
        """``pi^{-1} w pi``."""
        return FinWeyl(
            la.matmul(la.matmul(self.pi_inv, w.matrix), self.pi),
            la.matmul(la.matmul(self.pi_inv, w.inverse), self.pi),
            w.sign,
        )

    @property
    def is_split(self) -> bool:
        return self.pi == la.identity(self.rank)

    def zero(self) -> Weight:
        return (0,) * self.rank

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "rank": self.rank,
            "simple_roots": [list(a) for a in self.simple_roots],
            "simple_coroots": [list(a) for a in self.simple_coroots],
            "rho": list(self.rho),
            "pi": [list(r) for r in self.pi],
        }


# -- presets ----------------------------------------------------------------


def _gl(n: int) -> RootDatum:
    roots = [tuple(1 if k == i else -1 if k == i + 1 else 0 for k in range(n)) for i in range(n - 1)]
    rho = tuple(range(n - 1, -1, -1))
    fund = [tuple(1 if k <= i else 0 for k in range(n)) for i in range(n - 1)]
    return RootDatum(n, roots, roots, rho, name=f"GL_{n}", fundamental_coweights=fund)


def _gsp(n: int) -> RootDatum:
    """Similitude group of a 2n-dimensional symplectic space.

    Coordinates ``(a_1, ..., a_n, a_0)`` on the character lattice
    ``sum a_i e_i + a_0 e_0``.  The simple roots of the dual group are the
    forms ``f_i - f_{i+1}`` and ``f_n``; the simple coroots are
    ``e_i - e_{i+1}`` and ``2 e_n - e_0``.
    """
    r = n + 1
    roots, coroots = [], []
    for i in range(n - 1):
        roots.append(tuple(1 if k == i else -1 if k == i + 1 else 0 for k in range(r)))
        coroots.append(tuple(1 if k == i else -1 if k == i + 1 else 0 for k in range(r)))
    roots.append(tuple(1 if k == n - 1 else 0 for k in range(r)))
    coroots.append(tuple(2 if k == n - 1 else -1 if k == n else 0 for k in range(r)))
    rho = tuple(list(range(n, 0, -1)) + [0])
    fund = [tuple(1 if k <= i else 0 for k in range(r)) for i in range(n)]
    return RootDatum(r, roots, coroots, rho, name=f"GSp_{2 * n}", fundamental_coweights=fund)


def cartan_matrix(kind: str, n: int) -> List[List[int]]:
    """Cartan matrix ``A_ij = <a_i^v, a_j>`` of a finite type (Bourbaki labels)."""
    A = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(i, j, a=-1, b=-1):
        A[i][j], A[j][i] = a, b

    if kind == "A" and n >= 1:
        for i in range(n - 1):
            link(i, i + 1)
    elif kind == "B" and n >= 2:
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 2, n - 1, -1, -2)
    elif kind == "C" and n >= 2:
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 2, n - 1, -2, -1)
    elif kind == "D" and n >= 4:
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 3, n - 1)
    elif kind == "E" and n in (6, 7, 8):
        link(0, 2)
        link(1, 3)
        for i in range(2, n - 1):
            link(i, i + 1)
    elif kind == "F" and n == 4:
        link(0, 1)
        link(1, 2, -2, -1)
        link(2, 3)
    elif kind == "G" and n == 2:
        link(0, 1, -3, -1)
    else:
        raise DatumError(f"unknown Cartan type {kind}{n}")
    return A


def _sc(kind: str, n: int, torus: int) -> RootDatum:
    """Simply connected group of the given type times a split central torus.

    The lattice is the weight lattice of the simply connected group (in the
    basis of fundamental weights) plus ``torus`` central coordinates.
    """
    A = cartan_matrix(kind, n)
    r = n + torus
    roots = [tuple(1 if k == i else 0 for k in range(r)) for i in range(n)]
    coroots = [tuple([A[j][i] for j in range(n)] + [0] * torus) for i in range(n)]
    rho = tuple([1] * n + [0] * torus)
    fund = [tuple(1 if k == i else 0 for k in range(r)) for i in range(n)]
    return RootDatum(r, roots, coroots, rho, name=f"sc:{kind}{n}+T{torus}", fundamental_coweights=fund)


_PRESETS = [
    (re.compile(r"^GL_?(\d+)$"), lambda m: _gl(int(m.group(1)))),
    (re.compile(r"^GSp_?(\d+)$"), lambda m: _gsp_even(int(m.group(1)))),
    (re.compile(r"^Sp_?(\d+)-similitude$"), lambda m: _gsp_even(int(m.group(1)))),
    (
        re.compile(r"^sc:?([A-G])_?(\d+)(?:\+T(\d+))?$"),
        lambda m: _sc(m.group(1), int(m.group(2)), int(m.group(3) or 1)),
    ),
]


def _gsp_even(m: int) -> RootDatum:
    if m < 2 or m % 2:
        raise DatumError("symplectic similitude presets need an even dimension >= 2")
    return _gsp(m // 2)


def _gl1() -> RootDatum:
    return RootDatum(1, [], [], (0,), name="GL_1")


_INSTANCES: Dict[str, RootDatum] = {}


@lru_cache(maxsize=None)
def _preset(name: str) -> RootDatum:
    """Resolve a preset name; aliases of one preset return the same instance."""
    key = name.strip()
    if key in ("GL_1", "GL1"):
        d = _gl1()
    else:
        for pat, make in _PRESETS:
            m = pat.match(key)
            if m:
                d = make(m)
                break
        else:
            raise DatumError(f"unknown preset {name!r}")
    return _INSTANCES.setdefault(d.name, d)


def build_root_datum(source) -> RootDatum:
    """Build a datum from a preset name or explicit data.

    Presets: ``GL_n`` (also ``GLn``), ``GSp_2n`` (also ``Sp_2n-similitude``),
    and ``sc:Xn+Tk`` (simply connected type ``Xn`` times a rank ``k`` central
    torus, ``k`` defaulting to 1).  Explicit data is a mapping with keys
    ``rank``, ``simple_roots``, ``simple_coroots``, ``rho`` and optionally
    ``pi`` and ``name``.  Preset instances are shared.
    """
    if isinstance(source, RootDatum):
        return source
    if isinstance(source, str):
        return _preset(source)
    if isinstance(source, Mapping):
        try:
            return RootDatum(
                source["rank"],
                source.get("simple_roots", []),
                source.get("simple_coroots", []),
                source["rho"],
                source.get("pi"),
                name=source.get("name", "explicit"),
                fundamental_coweights=source.get("fundamental_coweights"),
            )
        except KeyError as exc:
            raise DatumError(f"explicit datum is missing {exc}") from None
    raise DatumError(f"cannot build a root datum from {type(source).__name__}")


def height(datum: RootDatum, lam: Sequence[int]) -> int:
    """``max |<lam, a>|`` over all roots (0 for a torus)."""
    return max((abs(la.pair(lam, a)) for a in datum.positive_roots), default=0)


def weyl_orbit(datum: RootDatum, lam: Sequence[int]) -> set:
    return {w.act(lam) for w in datum.weyl}
