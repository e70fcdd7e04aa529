from __future__ import annotations

from itertools import product

import pytest

from bmcycles import _lattice as la
from bmcycles.errors import CartanMismatch, DatumError, InfiniteWeyl, RhoInvalid
from bmcycles.root_data import build_root_datum, cartan_matrix, height, weyl_orbit


def test_gl2_preset(gl2):
    assert gl2.rank == 2
    assert gl2.simple_roots == ((1, -1),)
    assert gl2.simple_coroots == ((1, -1),)
    assert gl2.rho == (1, 0)


def test_gl1_is_a_torus():
    d = build_root_datum("GL_1")
    assert d.rank == 1
    assert d.positive_roots == ()
    assert len(d.weyl) == 1


def test_gl3_roots_by_reflection_closure(gl3):
    assert len(gl3.weyl) == 6
    assert set(gl3.positive_roots) == {(1, -1, 0), (0, 1, -1), (1, 0, -1)}
    # independent closure: apply simple reflections to simple roots until stable
    roots = set(gl3.simple_roots)
    while True:
        new = {s.act_form(a) for s in gl3.simple_reflections for a in roots} | roots
        if new == roots:
            break
        roots = new
    assert roots == set(gl3.roots)


def test_name_aliases_share_instances():
    assert build_root_datum("GL2") is build_root_datum("GL_2")
    assert build_root_datum("Sp_4-similitude") is build_root_datum("GSp_4")


def test_gsp4_weyl_group(gsp4):
    assert len(gsp4.weyl) == 8
    assert len(gsp4.positive_roots) == 4


@pytest.mark.parametrize("kind,n,order", [("A", 2, 6), ("B", 2, 8), ("G", 2, 12), ("D", 4, 192)])
def test_simply_connected_presets(kind, n, order):
    d = build_root_datum(f"sc:{kind}{n}")
    assert len(d.weyl) == order


def test_cartan_mismatch_rejected():
    with pytest.raises(CartanMismatch):
        build_root_datum({"rank": 2, "simple_roots": [[1, -1]], "simple_coroots": [[1, 0]], "rho": [1, 0]})


def test_infinite_weyl_rejected():
    with pytest.raises(InfiniteWeyl):
        build_root_datum(
            {
                "rank": 3,
                "simple_roots": [[2, -3, 1], [-2, 2, 1]],
                "simple_coroots": [[1, 0, 0], [0, 1, 0]],
                "rho": [0, 0, 1],
            }
        )


def test_bad_rho_rejected():
    with pytest.raises(RhoInvalid):
        build_root_datum({"rank": 2, "simple_roots": [[1, -1]], "simple_coroots": [[1, -1]], "rho": [0, 0]})


def test_unknown_preset():
    with pytest.raises(DatumError):
        build_root_datum("E_9")


def test_height_examples(gl2, gl3):
    assert height(gl2, (1, 0)) == 1
    assert height(gl2, (0, 0)) == 0
    assert height(gl3, (2, 0, -1)) == 3


def test_weyl_orbit_examples(gl2, gl3):
    assert weyl_orbit(gl2, (1, 0)) == {(1, 0), (0, 1)}
    assert weyl_orbit(gl2, (1, 1)) == {(1, 1)}
    assert len(weyl_orbit(gl3, (1, 0, 0))) == 3


def test_weyl_group_is_closed_and_signed(preset):
    W = set(preset.weyl)
    for a, b in product(preset.weyl, repeat=2):
        assert a * b in W
        assert (a * b).sign == a.sign * b.sign
    assert preset.length(preset.w0) == len(preset.positive_roots)


def test_w0_sends_positive_to_negative(preset):
    for a in preset.positive_roots:
        assert not preset.is_positive(preset.w0.act_form(a))


def test_pairing_invariance(preset):
    x = tuple(range(1, preset.rank + 1))
    for w in preset.weyl:
        for a in preset.roots:
            assert la.pair(w.act(x), w.act_form(a)) == la.pair(x, a)


def test_dominant_conjugate(preset):
    for lam in product(range(-2, 3), repeat=preset.rank):
        dom, w = preset.dominant_conjugate(lam)
        assert preset.is_dominant(dom)
        assert w.act(lam) == dom


def test_kac_cartan_g2():
    assert cartan_matrix("G", 2) in ([[2, -1], [-3, 2]], [[2, -3], [-1, 2]])
