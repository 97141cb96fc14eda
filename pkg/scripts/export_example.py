#!/usr/bin/env python3
"""Compute an S-matrix from a config file, export it and read it back.

    python3 scripts/export_example.py configs/bound_states.cfg out.json
"""

import sys

import numpy as np

from qboundstate.cli import main, read_export


def run(cfg: str, out: str) -> int:
    code = main(["export", "--config", cfg, "--out", out])
    if code:
        return code
    S, meta = read_export(out)
    print(f"{S.shape[0]}x{S.shape[1]} matrix, bases of size {len(meta['basis1'])} and {len(meta['basis2'])}")
    print(f"invariance residual {meta['residuals']['invariance_max']:.2e}")
    nz = np.count_nonzero(np.abs(S) > 1e-14)
    print(f"{nz} nonzero entries ({nz / S.size:.1%})")
    return 0


if __name__ == "__main__":
    if len(sys.argv) != 3:
        sys.exit(__doc__)
    sys.exit(run(sys.argv[1], sys.argv[2]))
