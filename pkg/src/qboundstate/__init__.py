"""Bound-state S-matrices of the q-deformed centrally extended su(2|2) algebra.

Representations are built from q-oscillators, the S-matrix is assembled from
closed-form blocks and every piece can be checked against a brute-force
intertwiner solve (:mod:`qboundstate.oracle`) and the checks in
:mod:`qboundstate.verify`.
"""

from .kinematics import Kinematics, ModelParams, build_kinematics, random_kinematics, solve_mass_shell
from .oracle import intertwiner_nullspace
from .report import VerificationReport
from .smatrix import assemble_S, block_X, coeff_D, fundamental_S

__all__ = [
    "Kinematics",
    "ModelParams",
    "VerificationReport",
    "assemble_S",
    "block_X",
    "build_kinematics",
    "coeff_D",
    "fundamental_S",
    "intertwiner_nullspace",
    "random_kinematics",
    "solve_mass_shell",
]
