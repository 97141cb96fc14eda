"""Brute-force intertwiner: solve ``S Δ(J) = Δop(J) S`` as one linear system.

The Cartan equations are diagonal, so their solution space is exactly the
set of entries ``S[i, j]`` whose joint ``ΔK`` eigenvalues agree.  When the
Cartans are part of the generator set, the unknowns are restricted to that
support (an exact elimination, not an approximation) before the remaining
equations are stacked and handed to an SVD.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .kinematics import Kinematics
from .repspace import CARTANS, CHEVALLEY, basis_index, coproduct_action, enumerate_basis

FULL_SET = CHEVALLEY + CARTANS
NON_AFFINE_SET = ("E1", "E2", "E3", "F1", "F2", "F3", "K1", "K2", "K3")


class DegeneracyError(RuntimeError):
    """Kernel of the intertwining system is not one-dimensional."""

    def __init__(self, msg: str, singular_values):
        super().__init__(msg)
        self.singular_values = list(singular_values)


@dataclass
class OracleResult:
    S: np.ndarray
    singular_values: np.ndarray  # ascending, smallest few
    gap: float
    kernel_dim: int
    n_unknowns: int


def vacuum_index(M1: int, M2: int) -> int:
    from .repspace import BasisState

    d2 = 4 * M2
    return basis_index(M1)[BasisState(0, 0, 0, M1)] * d2 + basis_index(M2)[BasisState(0, 0, 0, M2)]


def _support(kin1: Kinematics, kin2: Kinematics, generator_set, rtol: float = 1e-10) -> np.ndarray:
    """Boolean mask of entries surviving the Cartan equations (all entries if none given)."""
    d = 4 * kin1.M * 4 * kin2.M
    mask = np.ones((d, d), dtype=bool)
    for name in generator_set:
        if name.startswith("K"):
            k = np.diag(coproduct_action(name, kin1, kin2))
            diff = np.abs(k[:, None] - k[None, :])
            mask &= diff <= rtol * np.maximum(np.abs(k[:, None]), np.abs(k[None, :]))
    return mask


def _system(kin1: Kinematics, kin2: Kinematics, generator_set) -> tuple[np.ndarray, np.ndarray]:
    """Stacked coefficient matrix of the intertwining equations on the supported entries of ``S``."""
    mask = _support(kin1, kin2, generator_set)
    flat = np.flatnonzero(mask.ravel())
    ii, jj = np.divmod(flat, mask.shape[0])
    blocks = []
    for name in generator_set:
        if name.startswith("K"):
            continue
        Dl = coproduct_action(name, kin1, kin2)
        Dop = coproduct_action(name, kin1, kin2, opposite=True)
        for rhs_rows in _equation_rows(Dl, Dop, ii, jj):
            blocks.append(rhs_rows)
    return np.vstack(blocks), mask


def _equation_rows(Dl, Dop, ii, jj):
    """Yield dense row blocks of the system restricted to unknowns ``(ii, jj)``.

    The equation index ``(a, b)`` only couples to unknowns with ``i = a`` (through
    ``Δ[j, b]``) or ``j = b`` (through ``Δop[a, i]``), so rows are grouped by ``a``.
    """
    d = Dl.shape[0]
    n = ii.size
    for a in range(d):
        blk = np.zeros((d, n), dtype=complex)
        sel = ii == a
        # term S[a, j] Δ[j, b]: row b, unknown (a, j)
        blk[:, sel] += Dl[jj[sel], :].T
        # -Δop[a, i] S[i, b]: row b = jj, unknown (i, b)
        blk[jj, np.arange(n)] -= Dop[a, ii]
        keep = np.any(blk != 0, axis=1)
        if keep.any():
            yield blk[keep]


def _svd(A, **kw):
    # gesvd is slower than the default gesdd but keeps the smallest singular values reliable
    return scipy.linalg.svd(A, lapack_driver="gesvd", check_finite=False, **kw)


def kernel_spectrum(kin1: Kinematics, kin2: Kinematics, generator_set=FULL_SET, count: int = 5) -> np.ndarray:
    """The ``count`` smallest singular values of the stacked system, ascending, relative to ``σ_max``."""
    A, _ = _system(kin1, kin2, generator_set)
    s = _svd(A, compute_uv=False)
    return (s[::-1] / s[0])[:count]


def intertwiner_nullspace(
    kin1: Kinematics,
    kin2: Kinematics,
    generator_set=FULL_SET,
    threshold: float = 1e-8,
    return_details: bool = False,
):
    """The unique (up to scale) intertwiner, normalised to 1 on the vacuum."""
    A, mask = _system(kin1, kin2, generator_set)
    _, s, vh = _svd(A, full_matrices=False)
    s_rel = s / s[0]
    small = np.flatnonzero(s_rel < threshold)
    asc = s_rel[::-1]
    gap = float(asc[1] / asc[0]) if asc.size > 1 and asc[0] > 0 else np.inf
    if A.shape[0] < A.shape[1]:
        # under-determined: extra kernel directions never show up as singular values
        raise DegeneracyError("system has fewer equations than unknowns", asc[:5])
    if small.size != 1:
        raise DegeneracyError(f"kernel dimension {small.size} (expected 1)", asc[:5])
    v = vh[-1].conj()
    d = mask.shape[0]
    S = np.zeros((d, d), dtype=complex)
    S[mask] = v
    vac = vacuum_index(kin1.M, kin2.M)
    if abs(S[vac, vac]) < 1e-12 * np.max(np.abs(S)):
        raise DegeneracyError("vacuum entry vanishes; cannot normalise", asc[:5])
    S = S / S[vac, vac]
    if return_details:
        return OracleResult(S=S, singular_values=asc[:5], gap=gap, kernel_dim=1, n_unknowns=int(mask.sum()))
    return S


def kernel_dimension(kin1: Kinematics, kin2: Kinematics, generator_set=FULL_SET, threshold: float = 1e-8) -> int:
    A, mask = _system(kin1, kin2, generator_set)
    s = _svd(A, compute_uv=False)
    deficit = max(0, A.shape[1] - s.size)
    return int(np.sum(s / s[0] < threshold)) + deficit


def sector_labels(M1: int, M2: int) -> np.ndarray:
    """``(N_f, N_f3)`` for every tensor basis vector."""
    out = []
    for s1 in enumerate_basis(M1):
        for s2 in enumerate_basis(M2):
            nf = s1.m + s2.m + s1.n + s2.n + 2 * s1.l + 2 * s2.l
            nf3 = s1.m + s2.m + s1.l + s2.l
            out.append((nf, nf3))
    return np.array(out)
