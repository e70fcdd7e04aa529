"""Hypothesis strategies shared by the tests."""

from __future__ import annotations

from hypothesis import strategies as st

from bmcycles import affine_weyl as aw
from bmcycles.gkm import GKMClass
from bmcycles.symalg import RootFrac


def elements(datum, bound=2):
    vec = st.lists(st.integers(-bound, bound), min_size=datum.rank, max_size=datum.rank).map(tuple)
    return st.builds(aw.ExtAffWeyl, st.sampled_from(datum.weyl), vec)


def coefficients(datum):
    n = datum.rank
    const = st.integers(-3, 3).map(lambda c: RootFrac.const(n, c))
    forms = datum.roots or (tuple(1 for _ in range(n)),)
    pole = st.tuples(st.integers(-3, 3), st.sampled_from(forms)).map(lambda t: RootFrac.inv_form(t[1]) * t[0])
    lin = st.tuples(st.integers(-3, 3), st.sampled_from(forms)).map(lambda t: RootFrac.form(t[1]) * t[0])
    return st.one_of(const, pole, lin)


def classes(datum, max_size=3):
    return st.dictionaries(elements(datum), coefficients(datum), max_size=max_size).map(lambda d: GKMClass(datum.rank, d))
