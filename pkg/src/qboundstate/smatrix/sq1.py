"""Closed-form blocks for a bound state ``Q = M1`` scattering with a fundamental particle (``M2 = 1``)."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..kinematics import Kinematics
from ..qnum import qnumber, qpow
from .states import states_II, states_III
from .subspace_i import coeff_D


@dataclass
class SQ1Blocks:
    """Closed-form blocks keyed ``(k1, k2, n)``; ``Y`` blocks are 4 x 4, ``Z`` blocks 6 x 6 ``[out, in]``.

    Entries on states that do not exist for the given ``Q`` are zero.
    """

    Q: int
    D: complex
    Y: dict = field(default_factory=dict)
    Z: dict = field(default_factory=dict)


class _Vars:
    def __init__(self, kin1: Kinematics, kin2: Kinematics):
        self.q = complex(kin1.q)
        self.Q = kin1.M
        self.x1p, self.x1m, self.x2p, self.x2m = kin1.xplus, kin1.xminus, kin2.xplus, kin2.xminus
        self.g1, self.g2 = kin1.gamma, kin2.gamma
        self.al = complex(kin1.params.alpha)
        self.xi = kin1.xi
        self.uv1, self.uv2 = kin1.U * kin1.V, kin2.U * kin2.V
        self.V1, self.V2 = kin1.V, kin2.V
        self.z12 = kin1.z / kin2.z

    def qn(self, k):
        return qnumber(k, self.q)

    def qp(self, x):
        return qpow(self.q, x)


def y_entries(kin1: Kinematics, kin2: Kinematics, k: int) -> dict:
    """The fourteen nonzero subspace-II amplitudes of the sector ``K = k``."""
    v = _Vars(kin1, kin2)
    q, Q, z = v.q, v.Q, v.z12
    x1p, x1m, x2p, x2m = v.x1p, v.x1m, v.x2p, v.x2m
    sQ = np.sqrt(v.qn(Q))
    den = x1m - x2p
    r12 = v.uv2 / v.uv1
    out = {}
    y14 = (
        v.qp((1 - Q) / 2) * v.al / sQ * r12
        * (x1m - x1p) * (x2m - x2p) * (x2m - x1p) / (den * (x1m * x2m - 1) * v.g1 * v.g2)
    )
    out[(k, 0, k)] = {
        (1, 1): v.qp(0.5 + k) * v.uv2 * (x1m - x2m) / den * (z - v.qp(Q - 2 * k - 1)) / (z - v.qp(Q - 1)),
        (2, 2): (x1p - x2p) / (v.qp(Q / 2) * v.uv1 * den),
        (1, 2): v.qp((1 - Q) / 2) * v.qn(Q - k) / sQ * (x2m - x2p) / den * r12 * v.g1 / v.g2,
        (2, 1): (x1m - x1p) / (sQ * den) * v.g2 / v.g1,
        (1, 4): y14,
        (4, 2): 0.0,
        (2, 4): 0.0,
        (4, 1): v.qp(-Q) * v.qn(k) / sQ * (x1p - x2m) / (den * (1 - x1m * x2m)) * x1m / x1p * v.g1 * v.g2 / v.al,
        (4, 4): v.qp(-Q / 2) / v.uv1 * (x1p - x2m) / den * (1 - x1m * x2p) / (1 - x1m * x2m),
    }
    if k >= 1:
        # in |k-1,1>, out |k,0>; these closed forms are written in the in-label k1 = k-1
        j = k - 1
        out[(j, 1, k)] = {
            (1, 1): v.qp(0.5 - Q) * v.uv2 * (x1m - x2m) / den * (v.qp(2 * (j + 1)) - v.qp(2 * Q)) * z / (z - v.qp(Q - 1)),
            (2, 1): v.qp(1 + j - Q) / sQ * (x1m - x1p) / den * v.g2 / v.g1,
            (4, 1): v.qn(Q - j - 1) / (v.qp(Q - j - 1) * sQ)
            * (x2m - x1p) / (den * (1 - x1m * x2m)) * x1m / x1p * v.g1 * v.g2 / v.al,
        }
        # in |k,0>, out |k-1,1>
        out[(k, 0, k - 1)] = {
            (1, 1): v.qp(0.5 + Q) * v.uv2 * (x1m - x2m) / den * (1 - v.qp(-2 * k)) / (v.qp(Q) - q * z),
            (1, 2): v.qp((1 + Q - 2 * k) / 2) * v.qn(k) / sQ * (x2m - x2p) / den * r12 * v.g1 / v.g2,
            (1, 4): -v.qp(-k) * y14,
        }
        # in |k-1,1>, out |k-1,1>
        out[(k - 1, 1, k - 1)] = {
            (1, 1): v.qp(0.5 - k) * v.uv2 * (x1m - x2m) / den * (v.qp(2 * k) - v.qp(1 + Q) * z) / (v.qp(Q) - q * z),
        }
    return out


def z_entries(kin1: Kinematics, kin2: Kinematics, k: int) -> dict:
    """Subspace-III amplitudes out of ``|k,0>_{1,3,5}``, keyed by the out-sector label ``n``.

    ``n = k`` lands on ``|k,0>_{1,3,5}`` and ``n = k - 1`` on ``|k-1,1>_{1,3,6}``.
    Entries whose states do not exist for the given ``Q`` and ``k`` are still
    returned; callers mask them.
    """
    v = _Vars(kin1, kin2)
    q, Q, al = v.q, v.Q, v.al
    x1p, x1m, x2p, x2m = v.x1p, v.x1m, v.x2p, v.x2m
    g1, g2, uv1, uv2 = v.g1, v.g2, v.uv1, v.uv2
    qn, qp = v.qn, v.qp
    nQ = qn(Q)
    sQ = np.sqrt(nQ)
    w = 1.0 / ((x1m - x2p) * (1 - x1m * x2m))
    d1, d2 = x1p - x1m, x2p - x2m
    r1 = x1m / x1p
    s13 = d1**2 * d2 / g1**2 * w
    s31 = r1 * g1**2 * d2 * w
    s15 = d1 * d2 * (x1p - x2p) / (uv1 * g1 * g2) * w
    s35 = g1 / g2 * d2 * (1 - x1m * x2p) / uv1 * w
    s51 = r1 * g1 * g2 * (x1p - x2p) / uv2 * w
    s53 = g2 / g1 * d1 * (1 - x1m * x2p) / uv2 * w

    def same(a, b):
        # in and out both in the k-sector; a, b = x2 components swapped between rows 1 and 3
        return w * (
            qp(-k) * x1m * (x2p * x2m + 1)
            - qn(Q - k) / nQ * (x1m**2 * a + b)
            - qp(-Q) * qn(k) / nQ * r1 * (x1p**2 * a + b)
        )

    diag = {
        (1, 1): same(x2m, x2p),
        (3, 3): same(x2p, x2m),
        (1, 3): al / nQ * s13,
        (3, 1): qp(-Q) * qn(k) * qn(Q - k) / (al * nQ) * s31,
        (1, 5): -al * qp(-Q / 2) / sQ * s15,
        (3, 5): -qp(-Q / 2) * qn(Q - k) / sQ * s35,
        (5, 1): -qp(-Q - 0.5) * qn(k) / (al * sQ) * s51,
        (5, 3): -qp(-0.5) / sQ * s53,
        (5, 5): qp(-(Q + 1) / 2) * (x1p - x2p) * (1 - x1m * x2p) / (uv1 * uv2) * w,
    }
    low = {
        (1, 1): qn(k) * d2 * w * (
            qp(1 - k) * x1m * x2m - qp(-k - 1) * x1m / x2p - qp(Q - k) / nQ + qp(-Q - k) / nQ * r1
        ),
        (3, 3): qn(k - 1) * d2 * w * (
            qp(-k - 1) * x1m * x2p - qp(1 - k) * x1m / x2m + qp(Q - k) / nQ - qp(-Q - k) / nQ * r1
        ),
        (1, 3): -al * qp(-k) / nQ * s13,
        (3, 1): qp(-k) * qn(k) * qn(k - 1) / (al * nQ) * s31,
        (1, 5): al * qp(-Q / 2 - k) / sQ * s15,
        (3, 5): -qp(Q / 2 - k) * qn(k - 1) / sQ * s35,
        (6, 1): qp(-Q - 1.5) * qn(k) / (al * sQ) * s51,
        (6, 3): qp(-1.5) / sQ * s53,
        (6, 5): uv2 / uv1 * d1 * w * (
            -qp((Q - 1) / 2) / nQ * x1m * x2m
            + qp((1 - Q) / 2)
            - qp(-(Q + 3) / 2) * x2m / x2p
            + qp(-(3 * Q + 1) / 2) / nQ * x2m / x1p
        ),
    }
    return {k: diag, k - 1: low}


def fe_op_block(Q: int, k: int, j: int, q) -> np.ndarray:
    """Opposite-coproduct ``F1 E1`` on the out states ``(|k,0>_j, |k-1,1>_j)``, ``[row, col]``.

    Types 1 and 3 mix the two labels; types 5 and 6 are eigenvectors (the 2 x 2
    result is then diagonal with the same eigenvalue on both).
    """
    qn = lambda n: qnumber(n, q)
    qp = lambda x: qpow(q, x)
    if j in (5, 6):
        lam = qn(k - 1) * qn(Q - k + 1)
        return np.diag([lam, lam])
    if j == 3:
        Q, k = Q - 2, k - 1
    elif j != 1:
        raise ValueError(f"state type {j} does not occur for M2 = 1")
    return np.array(
        [
            [qn(k) * qn(Q - k + 1) / q, qn(Q - k + 1)],
            [qp(Q + 1 - 2 * k) * qn(k), q * qn(k - 1) * qn(Q - k + 2) + qp(Q + 2 - 2 * k)],
        ]
    )


def lowering_constants(Q: int, k: int, i: int, q) -> tuple[complex, complex]:
    """``(c, d)`` with ``|k-1,1>_i = (ΔF1 ΔE1 - c) |k,0>_i / d`` for ``i`` in 1, 3."""
    qn = lambda n: qnumber(n, q)
    if i == 1:
        return q * qn(k) * qn(Q - k + 1), qn(k)
    if i == 3:
        return q * qn(k - 1) * qn(Q - k), qn(k - 1)
    raise ValueError("only types 1 and 3 are reached by ΔF1 ΔE1")


def shifted_columns(diag: dict, low: dict, Q: int, k: int, q, D) -> tuple[dict, dict]:
    """Amplitudes out of ``|k-1,1>_{1,3,6}`` from those out of ``|k,0>_{1,3,5}``.

    ``diag``/``low`` map ``(out, in)`` to the amplitudes landing in the sectors
    ``n = k`` (out types 1, 3, 5) and ``n = k - 1`` (out types 1, 3, 6). Columns 1
    and 3 follow from intertwining ``ΔF1 ΔE1``; column 6 from the ``ΔE3`` image of
    the subspace-I state, ``S|k-1,1>_6 = D(|k,0>_5 + q|k-1,1>_6) - q S|k,0>_5``.
    """
    dnew, lnew = {}, {}
    for i in (1, 3):
        if (i == 3 and not 2 <= k <= Q - 1) or not 1 <= k <= Q:
            continue
        c, d = lowering_constants(Q, k, i, q)
        for j in (1, 3):
            m = fe_op_block(Q, k, j, q)
            a, b = diag.get((j, i), 0), low.get((j, i), 0)
            dnew[(j, i)] = ((m[0, 0] - c) * a + m[0, 1] * b) / d
            lnew[(j, i)] = (m[1, 0] * a + (m[1, 1] - c) * b) / d
        lam = fe_op_block(Q, k, 5, q)[0, 0]
        dnew[(5, i)] = (lam - c) / d * diag.get((5, i), 0)
        lnew[(6, i)] = (lam - c) / d * low.get((6, i), 0)
    for j in (1, 3, 5):
        dnew[(j, 6)] = D * (j == 5) - q * diag.get((j, 5), 0)
    for j in (1, 3, 6):
        lnew[(j, 6)] = q * D * (j == 6) - q * low.get((j, 5), 0)
    return dnew, lnew


def top_sector_columns(prev_diag: dict, prev_low: dict, diag: dict, low: dict, Q: int, q):
    """The amplitudes ``F1`` reaches from below but ``F1 E1`` cannot: out of ``|Q-1,1>_3`` and ``|Q,1>_1``.

    Both states are single ``ΔF1`` images, ``|Q-1,1>_3 = ΔF1 |Q-1,0>_3`` and
    ``|Q,1>_1 = ΔF1 |Q,0>_1``; the out states are raised with the opposite
    coproduct. ``prev_*`` are the ``K = Q - 1`` amplitudes, ``diag``/``low``
    those of ``K = Q``.
    """
    qp = lambda x: qpow(q, x)
    col3_top, col3_low = {}, {}
    if Q >= 2:
        col3_top[(1, 3)] = prev_diag.get((1, 3), 0)
        col3_top[(5, 3)] = prev_diag.get((5, 3), 0)
        col3_low[(1, 3)] = qp(2 - Q) * prev_diag.get((1, 3), 0) + qnumber(2, q) * prev_low.get((1, 3), 0)
        col3_low[(3, 3)] = qp(2 - Q) * prev_diag.get((3, 3), 0) + prev_low.get((3, 3), 0)
        col3_low[(6, 3)] = prev_low.get((6, 3), 0)
    corner = qp(-Q) * diag.get((1, 1), 0) + low.get((1, 1), 0)
    return col3_top, col3_low, corner


def _dense(entries: dict, outs, ins, size: int) -> np.ndarray:
    m = np.zeros((size, size), dtype=complex)
    for (j, i), val in entries.items():
        if outs[j - 1] is not None and ins[i - 1] is not None:
            m[j - 1, i - 1] = val
    return m


def sq1_blocks(kin1: Kinematics, kin2: Kinematics) -> SQ1Blocks:
    """Every nonzero II and III block for ``M2 = 1`` from closed forms and the shift relations."""
    if kin2.M != 1:
        raise ValueError("sq1_blocks needs a fundamental second particle (M2 = 1)")
    Q, q = kin1.M, complex(kin1.q)
    D = coeff_D(kin1, kin2)
    out = SQ1Blocks(Q=Q, D=D)
    z_all = {}
    for k in range(Q + 1):
        for (k1, k2, n), ent in y_entries(kin1, kin2, k).items():
            if k1 < 0 or n < 0:
                continue
            out.Y[(k1, k2, n)] = _dense(ent, states_II(Q, 1, n, k - n), states_II(Q, 1, k1, k2), 4)
        z = z_entries(kin1, kin2, k)
        diag, low = z[k], z.get(k - 1, {})
        z_all[k] = (diag, low)
        out.Z[(k, 0, k)] = _dense(diag, states_III(Q, 1, k, 0), states_III(Q, 1, k, 0), 6)
        if k >= 1:
            out.Z[(k, 0, k - 1)] = _dense(low, states_III(Q, 1, k - 1, 1), states_III(Q, 1, k, 0), 6)
            dnew, lnew = shifted_columns(diag, low, Q, k, q, D)
            ins = states_III(Q, 1, k - 1, 1)
            if k == Q:
                top, bot, corner = top_sector_columns(*z_all.get(Q - 1, ({}, {})), diag, low, Q, q)
                dnew.update(top)
                lnew.update(bot)
            out.Z[(k - 1, 1, k - 1)] = _dense(lnew, states_III(Q, 1, k - 1, 1), ins, 6)
            out.Z[(k - 1, 1, k)] = _dense(dnew, states_III(Q, 1, k, 0), ins, 6)
    out.Z[(Q, 1, Q)] = _dense({(1, 1): corner}, states_III(Q, 1, Q, 1), states_III(Q, 1, Q, 1), 6)
    return out
