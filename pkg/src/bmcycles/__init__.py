"""Exact extended affine Weyl group, GKM class and Breuil-Mézard cycle computations."""

from __future__ import annotations

from .affine_weyl import ExtAffWeyl, adm, adm_reg, bruhat_leq, factor_regular, length
from .bm_recon import CycleTable, reconstruct, verify_bm_ht, verify_bm_relations
from .errors import BMError
from .genericity import Policy
from .gkm import GKMClass, act_bullet, act_dot, flag_class, lambda_class, recognition_check, rho_limit_class
from .rep_mult import MultOracle, rank1_oracle, table_oracle, weight_multiplicities, weyl_identity_check
from .root_data import FinWeyl, RootDatum, build_root_datum
from .symalg import RootFrac, beta, residue

__version__ = "0.1.0"
