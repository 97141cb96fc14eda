"""Sector-by-sector evaluation of the subspace-II and subspace-III blocks.

For each sector ``K = k1 + k2`` the closed-form systems ``A Y = rhs`` (one per
output label ``n``) are stacked together with the lowering relation

    <b| Δop(E1) S |in> = <b| S Δ(E1) |in>,   b in sector K-1,

which links the sector to the previous, already solved one.  The stacked
system is solved once per sector; wherever the closed-form inverse exists its
result is compared with the stacked solution and used as the returned value.
The lowering rows are what fixes the amplitudes into states annihilated by
all raising charges of the closed-form system (these occur only at the edges
of the label range, where ``A`` has an all-zero column).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..kinematics import Kinematics
from ..repspace import coproduct_action
from . import subspace_ii as s2
from .states import matrix_elements, states_II, states_III
from .subspace_i import block_X, coeff_D


@dataclass
class Sector:
    outs: list  # [(n, j)]
    ins: list  # [(k1, i)]
    matrix: np.ndarray  # amplitudes [out, in]
    blocks: dict = field(default_factory=dict)  # (k1, n) -> s x s block


class BlockSolver:
    """Lazily computes ``X``, ``Y``, ``Z`` for one ordered pair of particles."""

    def __init__(self, kin1: Kinematics, kin2: Kinematics, rtol: float = 1e-8):
        self.kin1, self.kin2 = kin1, kin2
        self.M1, self.M2 = kin1.M, kin2.M
        self.q = kin1.q
        self.rtol = rtol
        self.D = coeff_D(kin1, kin2)
        self.z12 = kin1.z / kin2.z
        self._E1 = coproduct_action("E1", kin1, kin2)
        self._E1op = coproduct_action("E1", kin1, kin2, opposite=True)
        self._sectors: dict[tuple[str, int], Sector] = {}
        self.closed_form_checks = 0

    # -- subspace I ----------------------------------------------------------

    def x_full(self, k1: int, k2: int, n: int) -> complex:
        """``D * X``; zero outside the subspace-I label range."""
        if not (0 <= k1 <= self.M1 - 1 and 0 <= k2 <= self.M2 - 1 and 0 <= n <= k1 + k2):
            return 0.0
        return self.D * complex(block_X(self.M1, self.M2, k1, k2, n, self.z12, self.q))

    # -- generic sector machinery ---------------------------------------------

    def _states(self, kind: str, k1: int, k2: int):
        fn = states_II if kind == "II" else states_III
        return fn(self.M1, self.M2, k1, k2)

    def _labelled(self, kind: str, K: int):
        out = []
        for k1 in range(K + 1):
            for j, st in enumerate(self._states(kind, k1, K - k1)):
                if st is not None:
                    out.append(((k1, j), st))
        return out

    def _system(self, kind: str, K: int, n: int, k1: int):
        """``(L, R, L_inv)`` of the closed-form equations ``L block = R`` at output label ``n``."""
        if kind == "II":
            L = s2.matrix_A(self.kin1, self.kin2, n, K)
            R = s2.rhs_Y(self.kin1, self.kin2, k1, K - k1, n, self.x_full)
            L_inv = s2.inverse_A_cvd(self.kin1, self.kin2, n, K) if s2.is_regular(self.M1, self.M2, n, K) else None
            return L, R, L_inv
        from . import subspace_iii as s3

        return s3.system_Z(self, K, n, k1)

    def sector(self, kind: str, K: int) -> Sector:
        key = (kind, K)
        if key in self._sectors:
            return self._sectors[key]
        size = 4 if kind == "II" else 6
        outs = self._labelled(kind, K)
        ins = outs
        if not outs:
            sec = Sector([], [], np.zeros((0, 0), dtype=complex))
            self._sectors[key] = sec
            return sec
        pos = {lab: p for p, (lab, _) in enumerate(outs)}
        rows_L, rows_R = [], []
        closed = {}
        for n in range(K + 1):
            blockL = blockR = None
            for k1 in range(K + 1):
                in_cols = [pos.get((k1, i)) for i in range(size)]
                if all(c is None for c in in_cols):
                    continue
                L, R, L_inv = self._system(kind, K, n, k1)
                if L_inv is not None:
                    closed[(k1, n)] = s2.solve_block(L, R, L_inv, rtol=self.rtol, what=f"{kind}({k1},{K - k1},{n})")
                if blockL is None:
                    # L depends on n only; its rows are shared by every in-label
                    blockL = np.zeros((L.shape[0], len(outs)), dtype=complex)
                    blockR = np.zeros((L.shape[0], len(ins)), dtype=complex)
                    for j in range(size):
                        p = pos.get((n, j))
                        if p is not None:
                            blockL[:, p] = L[:, j]
                    rows_L.append(blockL)
                    rows_R.append(blockR)
                for i, c in enumerate(in_cols):
                    if c is not None:
                        blockR[:, c] = R[:, i]
        if K > 0:
            prev = self.sector(kind, K - 1)
            if prev.outs:
                prev_states = [st for _, st in self._labelled(kind, K - 1)]
                cur_states = [st for _, st in outs]
                Eop = matrix_elements(self._E1op, self.M1, self.M2, prev_states, cur_states)
                E = matrix_elements(self._E1, self.M1, self.M2, prev_states, cur_states)
                rows_L.append(Eop)
                rows_R.append(prev.matrix @ E)
        L_big = np.vstack(rows_L)
        R_big = np.vstack(rows_R)
        sol, *_ = np.linalg.lstsq(L_big, R_big, rcond=None)
        sv = np.linalg.svd(L_big, compute_uv=False)
        if sv[-1] < 1e-11 * sv[0]:
            raise s2.DegenerateKinematicsError(f"{kind} sector K={K}: stacked system is rank deficient")
        scale = max(np.abs(R_big).max(), 1e-300)
        resid = np.abs(L_big @ sol - R_big).max() / scale
        if resid > self.rtol:
            raise s2.DegenerateKinematicsError(f"{kind} sector K={K}: stacked system inconsistent ({resid:.2e})")
        sec = Sector(outs=[lab for lab, _ in outs], ins=[lab for lab, _ in ins], matrix=sol)
        for k1 in range(K + 1):
            for n in range(K + 1):
                blk = np.zeros((size, size), dtype=complex)
                mask = np.zeros((size, size), dtype=bool)
                for j in range(size):
                    pj = pos.get((n, j))
                    for i in range(size):
                        pi = pos.get((k1, i))
                        if pj is not None and pi is not None:
                            blk[j, i] = sol[pj, pi]
                            mask[j, i] = True
                if not mask.any():
                    continue
                if (k1, n) in closed:
                    cf = closed[(k1, n)]
                    err = np.abs((cf - blk)[mask]).max() / max(np.abs(blk[mask]).max(), 1e-300)
                    if err > self.rtol:
                        raise ArithmeticError(
                            f"{kind}({k1},{K - k1},{n}): closed form disagrees with stacked solve ({err:.2e})"
                        )
                    self.closed_form_checks += 1
                    blk = np.where(mask, cf, 0)
                sec.blocks[(k1, n)] = blk
        # keep the sector matrix consistent with the returned (closed-form) blocks
        for (k1, n), blk in sec.blocks.items():
            for j in range(size):
                pj = pos.get((n, j))
                for i in range(size):
                    pi = pos.get((k1, i))
                    if pj is not None and pi is not None:
                        sec.matrix[pj, pi] = blk[j, i]
        self._sectors[key] = sec
        return sec

    def _block(self, kind: str, k1: int, k2: int, n: int) -> np.ndarray:
        size = 4 if kind == "II" else 6
        K = k1 + k2
        if k1 < 0 or k2 < 0 or n < 0 or n > K:
            return np.zeros((size, size), dtype=complex)
        return self.sector(kind, K).blocks.get((k1, n), np.zeros((size, size), dtype=complex)).copy()

    def Y(self, k1: int, k2: int, n: int) -> np.ndarray:
        return self._block("II", k1, k2, n)

    def Z(self, k1: int, k2: int, n: int) -> np.ndarray:
        return self._block("III", k1, k2, n)
