from __future__ import annotations

import pytest

from bmcycles.errors import GenericityViolation, NotGeneric
from bmcycles.genericity import Policy, require, satisfies, threshold


def test_thresholds(gl2, gl3):
    assert threshold("bm_relation", gl2) == 2
    assert threshold("bm_ht", gl2, h_lam=2) == 4
    assert threshold("recursion", gl2, h=0) == 3
    assert threshold("region", gl2, h=0) == 4
    assert threshold("uniqueness", gl3) == 12


def test_formal_policy_disables_checks(gl2):
    assert not satisfies("bm_relation", gl2, (0, 0), 5)
    assert satisfies("bm_relation", gl2, (0, 0), 5, Policy.FORMAL)


def test_require_names_threshold(gl2):
    with pytest.raises(NotGeneric, match="2 h_rho"):
        require("bm_relation", gl2, (1, 0), 7)
    with pytest.raises(GenericityViolation):
        require("recursion", gl2, (1, 0), 7, error=GenericityViolation)
    require("bm_relation", gl2, (3, 0), 7)
