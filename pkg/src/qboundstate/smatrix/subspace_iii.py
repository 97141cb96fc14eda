"""Subspace III: the system ``A Z = Y̌ B`` for the six-state blocks.

``G``/``G^op`` are the matrix elements of ``ΔE2`` (``ΔE4`` for the affine copy)
from the III states onto the II states with the same labels, and ``H``/``H^op``
those of the composite ``Δ(F3 F2)`` (``Δ(F3 F4)``) onto II states one step down.
Eliminating between each charge and its affine copy gives six independent rows
(``A``) and an ``8 x 6`` right-hand matrix (``B``).
"""

from __future__ import annotations

import numpy as np

from ..kinematics import Kinematics, PoleError
from ..qnum import qnumber, qpow
from .subspace_ii import DegenerateKinematicsError, _side

# parity of the 1-based state index, used by the shifted II labels of Ȳ
THETA = (1, 0, 1, 0)


def _both(kin: Kinematics, affine: bool):
    """Labels of the chosen copy followed by the central charges of the other one."""
    a, b, c, d, U, V = _side(kin, affine)
    Uo, Vo = _side(kin, not affine)[4:]
    return a, b, c, d, U, V, Uo, Vo


def matrix_G(kin1: Kinematics, kin2: Kinematics, k1: int, k2: int, affine=False) -> np.ndarray:
    """``ΔE2`` from ``|k1,k2>^III`` onto ``|k1,k2>^II`` (``ΔE4`` if ``affine``)."""
    q, M1, M2 = kin1.q, kin1.M, kin2.M
    a1, b1, _, _, _, _, Uo1, Vo1 = _both(kin1, affine)
    a2, b2, *_ = _both(kin2, affine)
    h = qpow(q, M1 / 2 - k1) / (Uo1 * Vo1)
    A1 = qnumber(M1 - k1, q) * a1
    A2 = h * qnumber(M2 - k2, q) * a2
    return np.array(
        [
            [A1, 0, b1, 0, 0, -h * b2],
            [A2, h * b2, 0, 0, b1, 0],
            [0, A1, 0, b1, 0, A2],
            [0, 0, A2, h * b2, -A1, 0],
        ],
        dtype=complex,
    )


def matrix_G_op(kin1: Kinematics, kin2: Kinematics, n: int, K: int, affine=False) -> np.ndarray:
    """Opposite-coproduct ``ΔE2`` on ``|n,K-n>^III``."""
    q, M1, M2 = kin1.q, kin1.M, kin2.M
    a1, b1, *_ = _both(kin1, affine)
    a2, b2, _, _, _, _, Uo2, Vo2 = _both(kin2, affine)
    f = qpow(q, M2 / 2 - K + n) / (Uo2 * Vo2)
    A1 = f * qnumber(M1 - n, q) * a1
    A2 = qnumber(M2 - K + n, q) * a2
    return np.array(
        [
            [A1, 0, f * b1, 0, 0, -b2],
            [A2, b2, 0, 0, f * b1, 0],
            [0, A1, 0, f * b1, 0, A2],
            [0, 0, A2, b2, -A1, 0],
        ],
        dtype=complex,
    )


def matrix_H(kin1: Kinematics, kin2: Kinematics, k1: int, k2: int, affine=False) -> np.ndarray:
    """``Δ(F3 F2)`` from ``|k1,k2>^III`` onto the shifted II states (``Δ(F3 F4)`` if ``affine``)."""
    q, M2 = kin1.q, kin2.M
    _, _, c1, d1, _, _, Uo1, _ = _both(kin1, affine)
    _, _, c2, d2, _, V2, _, _ = _both(kin2, affine)
    s = qpow(q, k2 - M2 / 2)
    C1 = s * qnumber(k1, q) * c1 / V2
    C2 = qnumber(k2, q) * c2 * Uo1
    D1, D2 = s * d1 / V2, d2 * Uo1
    return np.array(
        [
            [C1, 0, -D1, 0, -D2, 0],
            [C2, -D2, 0, 0, 0, D1],
            [0, C1, 0, -D1, -C2, 0],
            [0, 0, C2, -D2, 0, C1],
        ],
        dtype=complex,
    )


def matrix_H_op(kin1: Kinematics, kin2: Kinematics, n: int, K: int, affine=False) -> np.ndarray:
    q, M1 = kin1.q, kin1.M
    _, _, c1, d1, _, V1, _, _ = _both(kin1, affine)
    _, _, c2, d2, U2, _, _, _ = _both(kin2, affine)
    p = qpow(q, n - M1 / 2)
    C1 = qnumber(n, q) * c1 / U2
    C2 = p * qnumber(K - n, q) * c2 / V1
    D1, D2 = d1 / U2, p * d2 / V1
    return np.array(
        [
            [C1, 0, -D1, 0, -D2, 0],
            [C2, -D2, 0, 0, 0, D1],
            [0, C1, 0, -D1, -C2, 0],
            [0, 0, C2, -D2, 0, C1],
        ],
        dtype=complex,
    )


def _g_combo(kin1, kin2, n, K, Gn, Ga):
    return qpow(kin1.q, K - n - kin2.M / 2) * (kin2.at * Gn - kin2.a * Ga)


def _h_combo(kin1, kin2, Hn, Ha):
    return kin2.ct * kin1.V * Hn - kin2.c / kin1.V * Ha


def matrix_A_combo(kin1: Kinematics, kin2: Kinematics, n: int, K: int) -> np.ndarray:
    """``A`` assembled from the first three rows of ``Ḡ^op`` and ``H̄^op``."""
    Gb = _g_combo(kin1, kin2, n, K, matrix_G_op(kin1, kin2, n, K), matrix_G_op(kin1, kin2, n, K, True))
    Hb = _h_combo(kin1, kin2, matrix_H_op(kin1, kin2, n, K), matrix_H_op(kin1, kin2, n, K, True))
    return np.vstack([Gb[:3], Hb[:3]])


def matrix_B_combo(kin1: Kinematics, kin2: Kinematics, k1: int, k2: int, n: int) -> np.ndarray:
    K = k1 + k2
    Gb = _g_combo(kin1, kin2, n, K, matrix_G(kin1, kin2, k1, k2), matrix_G(kin1, kin2, k1, k2, True))
    Hb = _h_combo(kin1, kin2, matrix_H(kin1, kin2, k1, k2), matrix_H(kin1, kin2, k1, k2, True))
    return np.vstack([Gb, Hb])


# -- compact closed forms -------------------------------------------------------


def _common(kin1: Kinematics, kin2: Kinematics):
    g, gt = kin1.params.g, kin1.g_tilde
    al, alt = complex(kin1.params.alpha), complex(kin1.params.alpha_tilde)
    zt2 = gt * al * alt * kin2.z / g
    return g, gt, zt2


def coeffs_A(kin1: Kinematics, kin2: Kinematics, n: int) -> tuple[complex, ...]:
    """``(A0, A1, A2, A3, A4)``."""
    q, M1 = kin1.q, kin1.M
    U2, V2, V1 = kin2.U, kin2.V, kin1.V
    A1 = kin1.b * kin2.at * U2**2 * V2**2 - kin2.a * kin1.bt
    A2 = kin2.c * kin1.ct * U2**2 - kin1.c * V1**2 * kin2.ct
    A3 = kin2.a * kin1.at - kin1.a * kin2.at * U2**2 * V2**2
    A4 = kin1.d * kin2.ct * V1**2 - kin2.c * kin1.dt * U2**2
    A0 = qnumber(n, q) * A1 * A2 + qnumber(M1 - n, q) * A3 * A4
    return A0, A1, A2, A3, A4


def coeffs_B(kin1: Kinematics, kin2: Kinematics) -> tuple[complex, ...]:
    """``(B1, ..., B8)``."""
    U1, V1, V2 = kin1.U, kin1.V, kin2.V
    a1, b1, c1, d1 = kin1.a, kin1.b, kin1.c, kin1.d
    a2, b2, c2, d2 = kin2.a, kin2.b, kin2.c, kin2.d
    at1, bt1, ct1, dt1 = kin1.at, kin1.bt, kin1.ct, kin1.dt
    at2, bt2, ct2, dt2 = kin2.at, kin2.bt, kin2.ct, kin2.dt
    return (
        b2 * at2 * U1**2 * V1**2 - a2 * bt2,
        b1 * at2 - a2 * bt1,
        a2 * at1 - a1 * at2,
        c2 * ct1 * V2**2 - c1 * ct2 * V1**2,
        d1 * ct2 * V1**2 - c2 * dt1 * V2**2,
        d2 * ct2 * V1**2 - c2 * dt2 * U1**2,
        a2 * at2 * (1 - U1**2 * V1**2),
        c2 * ct2 * (U1**2 - V1**2),
    )


def matrix_A(kin1: Kinematics, kin2: Kinematics, n: int, K: int) -> np.ndarray:
    q, M1, M2 = kin1.q, kin1.M, kin2.M
    g, gt, zt2 = _common(kin1, kin2)
    U2, V2, V1 = kin2.U, kin2.V, kin1.V
    _, A1, A2, A3, A4 = coeffs_A(kin1, kin2, n)
    q1, q2 = qpow(q, n - M1 / 2), qpow(q, K - n - M2 / 2)
    m1n, qn = qnumber(M1 - n, q), qnumber(n, q)
    uv, uv1 = U2 * V2, U2 * V1
    w = gt**2 * q1 / (g**2 * zt2)
    return np.array(
        [
            [-m1n * A3 / uv, 0, A1 / uv, 0, 0, q2 * zt2],
            [0, -q2 * zt2, 0, 0, A1 / uv, 0],
            [0, -m1n * A3 / uv, 0, A1 / uv, 0, 0],
            [-qn * A2 / uv1, 0, -A4 / uv1, 0, w, 0],
            [0, w, 0, 0, 0, A4 / uv1],
            [0, -qn * A2 / uv1, 0, -A4 / uv1, 0, 0],
        ],
        dtype=complex,
    )


def inverse_A(kin1: Kinematics, kin2: Kinematics, n: int, K: int) -> np.ndarray:
    q, M1, M2 = kin1.q, kin1.M, kin2.M
    g, gt, zt2 = _common(kin1, kin2)
    U2, V2, V1 = kin2.U, kin2.V, kin1.V
    A0, A1, A2, A3, A4 = coeffs_A(kin1, kin2, n)
    if A0 == 0 or A1 == 0 or A4 == 0:
        raise DegenerateKinematicsError("subspace-III coefficient matrix is singular")
    q1, q2 = qpow(q, n - M1 / 2), qpow(q, K - n - M2 / 2)
    m1n, qn = qnumber(M1 - n, q), qnumber(n, q)
    r = gt**2 / g**2
    return np.array(
        [
            [-U2 * V2 * A4 / A0, r * q1 * U2**2 * V1 * V2 / (A0 * zt2), 0,
             -U2 * V1 * A1 / A0, q2 * U2**2 * V1 * V2 * zt2 / A0, 0],
            [0, 0, -U2 * V2 * A4 / A0, 0, 0, -U2 * V1 * A1 / A0],
            [qn * U2 * V2 * A2 / A0, r * m1n * q1 * U2**2 * V1 * V2 * A3 / (A0 * A1 * zt2),
             -r * q1 * q2 * U2**3 * V1 * V2**2 / (A0 * A1), -m1n * U2 * V1 * A3 / A0,
             -qn * q2 * U2**2 * V1 * V2 * zt2 * A2 / (A0 * A4), -r * q1 * q2 * U2**3 * V1**2 * V2 / (A0 * A4)],
            [0, 0, qn * U2 * V2 * A2 / A0, 0, 0, -m1n * U2 * V1 * A3 / A0],
            [0, U2 * V2 / A1, -q2 * U2**2 * V2**2 * zt2 * A4 / (A0 * A1), 0, 0, -q2 * U2**2 * V1 * V2 * zt2 / A0],
            [0, 0, r * q1 * U2**2 * V1 * V2 / (A0 * zt2), 0, U2 * V1 / A4,
             r * q1 * U2**2 * V1**2 * A1 / (A0 * A4 * zt2)],
        ],
        dtype=complex,
    )


def matrix_B(kin1: Kinematics, kin2: Kinematics, k1: int, k2: int, n: int) -> np.ndarray:
    q, M1, M2 = kin1.q, kin1.M, kin2.M
    K = k1 + k2
    U1, V1, V2 = kin1.U, kin1.V, kin2.V
    B1, B2, B3, B4, B5, B6, B7, B8 = coeffs_B(kin1, kin2)
    q1, q2, q3 = qpow(q, n - M1 / 2), qpow(q, K - n - M2 / 2), qpow(q, k2 - M2 / 2)
    e1 = qnumber(M1 - k1, q) * q2 * B3
    e2 = q2 * B2
    e3 = q3 * B1 / (q1 * U1 * V1)
    e7 = qnumber(M2 - k2, q) * q3 * B7 / (q1 * U1 * V1)
    f4 = qnumber(k1, q) * q3 * B4 / (V1 * V2)
    f5 = q3 * B5 / (V1 * V2)
    f6 = B6 / (U1 * V1)
    f8 = qnumber(k2, q) * B8 / (U1 * V1)
    return np.array(
        [
            [-e1, 0, e2, 0, 0, -e3],
            [-e7, e3, 0, 0, e2, 0],
            [0, -e1, 0, e2, 0, -e7],
            [0, 0, -e7, e3, e1, 0],
            [-f4, 0, -f5, 0, -f6, 0],
            [-f8, -f6, 0, 0, 0, f5],
            [0, -f4, 0, -f5, f8, 0],
            [0, 0, -f8, -f6, 0, -f4],
        ],
        dtype=complex,
    )


def y_bar(Y, k1: int, k2: int, n: int) -> np.ndarray:
    """``Ȳ``: entry ``(i, j)`` from the II block with labels shifted by the parities of ``i`` and ``j``."""
    out = np.zeros((4, 4), dtype=complex)
    for i in range(4):
        for j in range(4):
            out[i, j] = Y(k1 - THETA[j], k2 + THETA[j] - 1, n - THETA[i])[i, j]
    return out


def y_check(Y, k1: int, k2: int, n: int) -> np.ndarray:
    out = np.zeros((6, 8), dtype=complex)
    out[:3, :4] = Y(k1, k2, n)[:3]
    out[3:, 4:] = y_bar(Y, k1, k2, n)[:3]
    return out


def is_regular(kin1: Kinematics, kin2: Kinematics, n: int, K: int, rtol: float = 1e-10) -> bool:
    A0, A1, _, _, A4 = coeffs_A(kin1, kin2, n)
    scale = max(abs(A1), abs(A4), 1e-300) ** 2
    return abs(A0) > rtol * scale and abs(A1) > 0 and abs(A4) > 0


def system_Z(solver, K: int, n: int, k1: int):
    """``(A, Y̌ B, A^-1)`` at output label ``n`` and input ``(k1, K-k1)``."""
    kin1, kin2 = solver.kin1, solver.kin2
    k2 = K - k1
    A = matrix_A(kin1, kin2, n, K)
    R = y_check(solver.Y, k1, k2, n) @ matrix_B(kin1, kin2, k1, k2, n)
    if not is_regular(kin1, kin2, n, K):
        raise PoleError(f"subspace III, n={n}, K={K}: coefficient A0 vanishes")
    return A, R, inverse_A(kin1, kin2, n, K)


def block_Z(M1: int, M2: int, k1: int, k2: int, n: int, kin1: Kinematics, kin2: Kinematics) -> np.ndarray:
    """``Z[j, i]``: amplitude from ``|k1,k2>_i`` to ``|n,K-n>_j`` in subspace III."""
    from .blocks import BlockSolver

    if kin1.M != M1 or kin2.M != M2:
        raise ValueError("bound-state numbers do not match the kinematics")
    return BlockSolver(kin1, kin2).Z(k1, k2, n)
