"""Two-particle bound-state S-matrix: blocks, assembly and the special closed forms."""

from .assemble import assemble_S
from .blocks import BlockSolver
from .fundamental import fundamental_S
from .sq1 import SQ1Blocks, sq1_blocks
from .subspace_i import X_matrix, block_X, coeff_D, z_ratio

__all__ = [
    "BlockSolver",
    "SQ1Blocks",
    "X_matrix",
    "assemble_S",
    "block_X",
    "coeff_D",
    "fundamental_S",
    "sq1_blocks",
    "z_ratio",
]
