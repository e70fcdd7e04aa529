from __future__ import annotations

from fractions import Fraction
from itertools import product

import pytest

from bmcycles import _lattice as la
from bmcycles import affine_weyl as aw
from bmcycles.errors import SchemaError, SingularSolve
from bmcycles.tame_param import (
    Presentation,
    admissible_tuple,
    compatible_pair,
    compatible_presentation,
    compatible_with,
    constellation,
    is_lowest_alcove,
    is_p_restricted,
    jh_constellation,
    phi_conjugates,
    presentation_from_json,
    presentation_point,
    presentation_to_json,
    serre_normal_form,
    serre_weight,
    serre_weight_to_json,
    zeta_from_index,
)


def test_presentation_points(gl2):
    s = gl2.simple_reflections[0]
    x = presentation_point(gl2, Presentation(s, (3, 1), 5))
    assert x == (Fraction(2, 3), Fraction(1, 3))
    assert is_lowest_alcove(gl2, Presentation(s, (3, 1), 5))
    assert presentation_point(gl2, Presentation(gl2.identity, (0, 0), 5)) == (0, 0)
    assert not is_lowest_alcove(gl2, Presentation(gl2.identity, (0, 0), 5))
    assert presentation_point(gl2, Presentation(gl2.identity, (1, 0), 5)) == (Fraction(1, 4), 0)


def test_presentation_point_solves_equation(gl3):
    for w in gl3.weyl:
        pres = Presentation(w, (4, 1, -2), 7)
        x = presentation_point(gl3, pres)
        assert la.sub(la.scale(7, x), w.act(x)) == (4, 1, -2)


def test_singular_presentation(gl2):
    with pytest.raises(SingularSolve):
        presentation_point(gl2, Presentation(gl2.identity, (1, 0), 1))


def test_phi_conjugates_fix_identity(gl2):
    pres = Presentation(gl2.simple_reflections[0], (3, 1), 5)
    conj = phi_conjugates(gl2, pres, 1)
    assert pres in conj
    for c in conj:
        assert compatible_presentation(gl2, aw.omega_part(gl2, pres.element(gl2)), c) == (
            aw.same_omega_coset(gl2, pres.element(gl2), c.element(gl2))
        )


def test_compatibility(gl2):
    u = aw.identity(gl2)
    zeta = aw.omega_part(gl2, aw.translation(gl2, (2, -1)))
    assert compatible_pair(gl2, zeta, u, (2, -1))
    # shifting by the centre changes the image
    assert not compatible_pair(gl2, zeta, u, (3, 0))
    hits = [k for k in range(-3, 4) if compatible_pair(gl2, zeta_from_index(gl2, k), u, (2, -1))]
    assert hits == [1]
    pres = Presentation(gl2.identity, (2, -1), 5)
    assert compatible_with(gl2, zeta, pres)
    assert compatible_with(gl2, zeta, (u, (2, -1)))


def test_zeta_from_index(gl2):
    omega = aw.restricted_box(gl2)[1]
    assert zeta_from_index(gl2, 0) == aw.identity(gl2)
    assert zeta_from_index(gl2, 1) == omega


def test_serre_weights(gl2):
    p = 7
    omega = aw.restricted_box(gl2)[1]
    for u, xi in product(aw.restricted_box(gl2), [(2, 0), (3, -1), (1, 1)]):
        sw = serre_weight(gl2, u, xi, p)
        assert is_p_restricted(gl2, sw.hw, p)
    sw = serre_weight(gl2, aw.identity(gl2), (2, 0), p)
    assert sw.hw == serre_normal_form(gl2, (2, 0), p)
    # the label (omega, xi) gives s(xi + rho + p(0,1)) - rho = s(3, 7) - (1, 0)
    assert serre_weight(gl2, omega, (2, 0), p).hw == serre_normal_form(gl2, (6, 3), p)
    doc = serre_weight_to_json(gl2, sw, aw.identity(gl2))
    assert doc["omega"] == [3, 0]


def test_serre_normal_form_is_periodic(gl2):
    p = 5
    period = la.sub(la.scale(p, (1, 1)), (1, 1))
    for hw in [(3, 1), (0, 0), (4, -2)]:
        assert serre_normal_form(gl2, hw, p) == serre_normal_form(gl2, la.add(hw, period), p)


def test_admissible_tuples(preset):
    # nu = 0, lam = 0 reduces to e <= w0 t^{-rho} u, which holds exactly when
    # w0 t^{-rho} u has trivial length-zero part
    w0 = aw.finite(preset, preset.w0)
    for u in aw.restricted_box(preset):
        top = w0 * aw.translation(preset, la.neg(preset.rho)) * u
        expected = aw.omega_part(preset, top) == aw.identity(preset)
        assert admissible_tuple(preset, u, preset.identity, preset.zero(), preset.zero()) == expected


def test_constellation(gl2):
    cons = constellation(gl2, gl2.identity, (0, 0), 2)
    assert (aw.identity(gl2), (1, 0)) in cons


def test_jh_constellation(gl2):
    u = aw.identity(gl2)
    zeta = zeta_from_index(gl2, 0)
    hit = jh_constellation(gl2, u, zeta, (2, -1), 7)
    assert hit == ((1, -1), (0, 0))
    assert jh_constellation(gl2, u, zeta_from_index(gl2, 1), (2, -1), 7) is None


def test_presentation_json(gl3):
    pres = Presentation(gl3.w0, (1, 2, 3), 7)
    assert presentation_from_json(gl3, presentation_to_json(pres)) == pres
    with pytest.raises(SchemaError):
        presentation_from_json(gl3, {"w": [1, 2, 3]})
