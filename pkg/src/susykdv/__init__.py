"""Exact solutions of the N=2 supersymmetric KdV equation at a = -2.

Construction of N-super-soliton tau pairs and rational similarity solutions
through the super Hirota bilinear form, with two independent verification
layers: exact (rational / cubic-field arithmetic) vanishing of the bilinear
residuals, and finite-difference residuals of the component PDE system.
"""

__version__ = "0.1.0"

from .errors import (DomainError, ExactDivisionError, ExponentOverflowError,
                     PoleError, SusyKdvError)
from .grassmann import (MAX_GENERATORS, GrassmannNumber, OddGenerator, body,
                        gmul, parity, soul)
from .scalars import CBRT3, CBRT3_INV, Cubic3, QQi
from .superexpr import (ExpSum, LaurentXS, Phase, Superfield, d1, dt, dx,
                        evaluate, log_ratio_dx, real_cbrt, to_jsonable)
from .hirota import (BilinearResidual, hirota_dx_dt, super_hirota_sdx,
                     verify_bilinear)
from .fields import FieldBundle, from_tau_pair
from .soliton import (PRESET_TIMES, PRESETS, SolitonSpec, build_broken_tau_pair,
                      build_tau_pair, dispersion, interaction_coefficient,
                      preset_spec, reconstruct_fields)
from .yablonskii import (YVPoly, f1_n, similarity_fields, similarity_tau, u_n,
                         yv_poly)
from .residual import (Grid, ResidualReport, residual_fermion, residual_mkdv,
                       residual_phi, residual_v, verify_solution)

__all__ = [
    "__version__",
    "SusyKdvError", "PoleError", "DomainError", "ExactDivisionError",
    "ExponentOverflowError",
    "QQi", "Cubic3", "CBRT3", "CBRT3_INV",
    "MAX_GENERATORS", "OddGenerator", "GrassmannNumber", "gmul", "body",
    "soul", "parity",
    "Phase", "ExpSum", "LaurentXS", "Superfield", "dx", "dt", "d1",
    "evaluate", "log_ratio_dx", "real_cbrt", "to_jsonable",
    "BilinearResidual", "hirota_dx_dt", "super_hirota_sdx", "verify_bilinear",
    "FieldBundle", "from_tau_pair",
    "SolitonSpec", "dispersion", "interaction_coefficient", "build_tau_pair",
    "build_broken_tau_pair", "reconstruct_fields", "PRESETS", "PRESET_TIMES",
    "preset_spec",
    "YVPoly", "yv_poly", "similarity_tau", "similarity_fields", "u_n", "f1_n",
    "Grid", "ResidualReport", "residual_mkdv", "residual_v",
    "residual_fermion", "residual_phi", "verify_solution",
]
