"""Full S-matrix on the tensor product of two bound-state representations."""

from __future__ import annotations

import numpy as np

from ..kinematics import Kinematics, PoleError
from .blocks import BlockSolver
from .states import state_I, states_II, states_III, swap_species, tensor_index
from .subspace_i import check_X_poles

SUBSPACES = ("I", "Ib", "II", "IIb", "III")


def _place(S, M1, M2, outs, ins, block):
    for j, so in enumerate(outs):
        if so is None:
            continue
        r = tensor_index(M1, M2, so)
        for i, si in enumerate(ins):
            if si is not None:
                S[r, tensor_index(M1, M2, si)] = block[j, i]


def max_labels(M1: int, M2: int) -> dict[str, int]:
    """Largest sector label ``K`` carrying states in each subspace."""
    return {"I": M1 + M2 - 2, "Ib": M1 + M2 - 2, "II": M1 + M2 - 1, "IIb": M1 + M2 - 1, "III": M1 + M2}


def subspace_states(M1: int, M2: int, tag: str, k1: int, k2: int):
    if tag in ("I", "Ib"):
        st = [state_I(M1, M2, k1, k2)] if k1 <= M1 - 1 and k2 <= M2 - 1 else [None]
    elif tag in ("II", "IIb"):
        st = states_II(M1, M2, k1, k2)
    else:
        st = states_III(M1, M2, k1, k2)
    if tag.endswith("b"):
        st = [swap_species(s) for s in st]
    return st


def fill_blocks(solver: BlockSolver, S: np.ndarray, tags=SUBSPACES) -> None:
    M1, M2 = solver.M1, solver.M2
    top = max_labels(M1, M2)
    for tag in tags:
        base = tag.rstrip("b")
        for K in range(top[tag] + 1):
            for k1 in range(K + 1):
                ins = subspace_states(M1, M2, tag, k1, K - k1)
                if all(s is None for s in ins):
                    continue
                for n in range(K + 1):
                    outs = subspace_states(M1, M2, tag, n, K - n)
                    if all(s is None for s in outs):
                        continue
                    try:
                        if base == "I":
                            blk = np.array([[solver.x_full(k1, K - k1, n)]])
                        elif base == "II":
                            blk = solver.Y(k1, K - k1, n)
                        else:
                            blk = solver.Z(k1, K - k1, n)
                    except PoleError as exc:
                        raise PoleError(f"subspace {tag}, (k1,k2,n)=({k1},{K - k1},{n}): {exc}") from exc
                    _place(S, M1, M2, outs, ins, blk)


def assemble_S(kin1: Kinematics, kin2: Kinematics, rtol: float = 1e-8) -> np.ndarray:
    """The ``(4 M1 4 M2)^2`` matrix ``S[out, in]``, normalised to 1 on the vacuum.

    Ib and IIb are filled from the I and II blocks through the species swap
    ``m <-> n`` applied to both factors.
    """
    M1, M2 = kin1.M, kin2.M
    if kin1.params != kin2.params:
        raise ValueError("both particles must share the model parameters")
    z12 = kin1.z / kin2.z
    check_X_poles(M1, M2, M1 + M2 - 2, z12, kin1.q)
    solver = BlockSolver(kin1, kin2, rtol=rtol)
    d = 4 * M1 * 4 * M2
    S = np.zeros((d, d), dtype=complex)
    try:
        fill_blocks(solver, S)
    except ZeroDivisionError as exc:
        raise PoleError(f"singular block coefficient ({exc}): kinematics on a pole locus") from exc
    if not np.all(np.isfinite(S)):
        raise PoleError("non-finite S-matrix entries: kinematics too close to a pole")
    return S
