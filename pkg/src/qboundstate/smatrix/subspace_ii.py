"""Subspace II: coefficient matrices of the linear system ``A Y = B X + B+ X+ + B- X-``."""

from __future__ import annotations

import numpy as np

from ..kinematics import Kinematics, KinematicsError
from ..qnum import qnumber, qpow


class DegenerateKinematicsError(KinematicsError):
    """A coefficient matrix that must be inverted is singular at this point."""


def _side(kin: Kinematics, affine: bool):
    """``(a, b, c, d, U, V)`` of one particle, optionally the affine copy."""
    if affine:
        return kin.at, kin.bt, kin.ct, kin.dt, kin.Ut, kin.Vt
    return kin.a, kin.b, kin.c, kin.d, kin.U, kin.V


def q_coeffs(kin1: Kinematics, kin2: Kinematics, k1: int, k2: int, affine=False, op=False) -> np.ndarray:
    """Coefficients of ``ΔE2`` (``ΔE4`` if ``affine``) from the II states onto ``|k1,k2>^I``."""
    q, M1, M2 = kin1.q, kin1.M, kin2.M
    a1, b1, _, _, U1, V1 = _side(kin1, affine)
    a2, b2, _, _, U2, V2 = _side(kin2, affine)
    kb1, kb2 = M1 - k1 - 1, M2 - k2 - 1
    if op:
        f = qpow(q, M2 / 2 - k2) * U2 * V2
        return np.array([-a2 * qnumber(kb2 + 1, q), f * a1 * qnumber(kb1 + 1, q), -b2, f * b1])
    f = qpow(q, M1 / 2 - k1) * U1 * V1
    return np.array([-f * a2 * qnumber(kb2 + 1, q), a1 * qnumber(kb1 + 1, q), -f * b2, b1])


def z_coeffs_op(kin1: Kinematics, kin2: Kinematics, n: int, K: int, affine=False) -> np.ndarray:
    """Diagonal coefficients of the composite lowering charge (opposite coproduct) on ``|n, K-n>``."""
    q, M1, M2 = kin1.q, kin1.M, kin2.M
    # labels of the chosen node, central charges of the partner node
    _, _, c1, d1, _, _ = _side(kin1, affine)
    _, _, c2, d2, _, _ = _side(kin2, affine)
    U2, V1 = _side(kin2, not affine)[4], _side(kin1, not affine)[5]
    return np.array(
        [
            c2 * V1 * qnumber(M2 - K + n, q),
            c1 * U2 * qnumber(n - M1, q) * qpow(q, n - K - M1 / 2),
            d2 * V1 * qpow(q, -M2),
            -d1 * U2 * qpow(q, n - K + M1 / 2),
        ]
    )


def z_coeffs(kin1: Kinematics, kin2: Kinematics, k1: int, k2: int, n: int, affine=False) -> np.ndarray:
    """Diagonal coefficients of the composite lowering charge on ``|k1, k2>_i``."""
    q, M1, M2 = kin1.q, kin1.M, kin2.M
    M, dM, K = M1 + M2, M1 - M2, k1 + k2
    kb1, kb2 = M1 - k1 - 1, M2 - k2 - 1
    _, _, c1, d1, _, _ = _side(kin1, affine)
    _, _, c2, d2, _, _ = _side(kin2, affine)
    _, _, _, _, U1, V1 = _side(kin1, not affine)
    _, _, _, _, U2, V2 = _side(kin2, not affine)
    z12 = kin1.z / kin2.z
    z21 = 1 / z12
    den = qpow(q, M) * z12 - qpow(q, 2 * (K + 1))
    t = qpow(q, 2 * k2 + dM)
    q2n = qpow(q, 2 * n)
    return np.array(
        [
            c2 * U1 * qnumber(kb2 + 1, q) / den * qpow(q, M1 / 2 - k1 + M2)
            * (q2n * z12 - qpow(q, dM) * (qpow(q, 2 * (n - kb1)) - 1) - t),
            z12 * c1 * V2 * qnumber(kb1 + 1, q) / den * qpow(q, -dM / 2 + 2)
            * (q2n * z21 - qpow(q, dM) * (qpow(q, 2 * (n + kb2)) - qpow(q, 2 * K)) - t),
            d2 * U1 / den * qpow(q, M1 / 2 - k1)
            * (q2n * z12 - qpow(q, M) * (qpow(q, 2 * (n - kb1)) - 1) - t),
            z12 * d1 * V2 / den * qpow(q, M / 2 + 2)
            * (q2n * z21 - qpow(q, -M) * (qpow(q, 2 * (n + kb2)) - qpow(q, 2 * K)) - t),
        ]
    )


def b_plus(kin1: Kinematics, kin2: Kinematics, k1: int, k2: int, n: int) -> np.ndarray:
    q, M1, M2 = kin1.q, kin1.M, kin2.M
    M, K = M1 + M2, k1 + k2
    z12 = kin1.z / kin2.z
    den = qpow(q, M) * z12 - qpow(q, 2 * (K + 1))
    f = (
        qnumber(M1 - k1 - 1, q) * qpow(q, 1 + k1 - k2 - M1 / 2) * (q - 1 / q)
        * (qpow(q, M1 + 2 * k2) * z12 - qpow(q, M2 + 2 * (n + 1))) / den
    )
    out = np.zeros((4, 4), dtype=complex)
    qk2 = qnumber(k2, q)
    out[2, 0], out[2, 2] = -kin2.c * kin1.Ut * qk2, kin2.d * kin1.Ut
    out[3, 0], out[3, 2] = -kin2.ct * kin1.U * qk2, kin2.dt * kin1.U
    return f * out


def b_minus(kin1: Kinematics, kin2: Kinematics, k1: int, k2: int, n: int) -> np.ndarray:
    q, M1, M2 = kin1.q, kin1.M, kin2.M
    M, dM, K = M1 + M2, M1 - M2, k1 + k2
    z12 = kin1.z / kin2.z
    den = qpow(q, M) * z12 - qpow(q, 2 * (K + 1))
    f = (
        qnumber(M2 - k2 - 1, q) * qpow(q, 1 - k1 + dM / 2) * (q - 1 / q)
        * (qpow(q, M2 + 2 * n) * z12 - qpow(q, M1 + 2 * (k2 + 1))) / den
    )
    out = np.zeros((4, 4), dtype=complex)
    qk1 = qnumber(k1, q)
    out[2, 1], out[2, 3] = -kin1.c * kin2.Vt * qk1, kin1.d * kin2.Vt
    out[3, 1], out[3, 3] = -kin1.ct * kin2.V * qk1, kin1.dt * kin2.V
    return f * out


def matrix_A(kin1: Kinematics, kin2: Kinematics, n: int, K: int) -> np.ndarray:
    return np.array(
        [
            q_coeffs(kin1, kin2, n, K - n, affine=False, op=True),
            q_coeffs(kin1, kin2, n, K - n, affine=True, op=True),
            z_coeffs_op(kin1, kin2, n, K, affine=False),
            z_coeffs_op(kin1, kin2, n, K, affine=True),
        ]
    )


def matrix_B(kin1: Kinematics, kin2: Kinematics, k1: int, k2: int, n: int) -> np.ndarray:
    return np.array(
        [
            q_coeffs(kin1, kin2, k1, k2, affine=False),
            q_coeffs(kin1, kin2, k1, k2, affine=True),
            z_coeffs(kin1, kin2, k1, k2, n, affine=False),
            z_coeffs(kin1, kin2, k1, k2, n, affine=True),
        ]
    )


def inverse_A_cvd(kin1: Kinematics, kin2: Kinematics, n: int, K: int) -> np.ndarray:
    """Closed-form ``A^-1`` as the product ``C V D``."""
    q, M1, M2 = kin1.q, kin1.M, kin2.M
    g, gt, xi = kin1.params.g, kin1.g_tilde, kin1.xi
    al, alt = complex(kin1.params.alpha), complex(kin1.params.alpha_tilde)
    z12 = kin1.z / kin2.z
    U1, V1, Ut1, Vt1 = kin1.U, kin1.V, kin1.Ut, kin1.Vt
    U2, V2, Ut2, Vt2 = kin2.U, kin2.V, kin2.Ut, kin2.Vt
    f = qpow(q, K - M2 / 2 - n)
    qa = qnumber(M2 - K + n, q)
    C = np.array(
        [
            [z12 * kin2.bt / qa, 0, z12 * alt * kin2.b / qa, 0],
            [0, f * alt * kin1.b * U2 * V2 / qnumber(n - M1, q), 0, f * kin1.bt / (qnumber(M1 - n, q) * U2 * V2)],
            [-z12 * kin2.at, 0, -z12 * alt * kin2.a, 0],
            [0, f * alt * kin1.a * U2 * V2, 0, -f * kin1.at / (U2 * V2)],
        ],
        dtype=complex,
    )
    Dm = np.diag(
        [
            -1j * g * xi / (gt * al * alt * kin2.z),
            -1j * g * xi / (gt * al * alt**2 * kin2.z),
            qpow(q, M2 / 2) / (Vt1 * Vt2 * alt),
            qpow(q, M2 / 2) / (V1 * V2),
        ]
    )
    Uz, Utz = z12 - U1**2 * U2**2, z12 - Ut1**2 * Ut2**2
    Vz, Vtz = z12 - V1**2 * V2**2, z12 - Vt1**2 * Vt2**2
    W = Vtz * Vz - Utz * Uz * xi**2
    R = (Vtz * Vz - Utz * Uz * xi**2) / z12
    Vm = np.array(
        [
            [(Uz * xi**2 - Vz + R) / (1j * xi), Vz - Uz, 1j * xi * Uz, -Vz],
            [Utz - Vtz, 1j / xi * (Vtz - Utz * xi**2), Vtz, 1j * Utz * xi],
            [Vtz - Utz, 1j / xi * (Utz * xi**2 - Vtz + R), -Vtz, -1j * Utz * xi],
            [1j / xi * (Vz - Uz * xi**2), Vz - Uz, 1j * Uz * xi, -Vz],
        ]
    ) / W
    return C @ Vm @ Dm


def block_Y(M1: int, M2: int, k1: int, k2: int, n: int, kin1: Kinematics, kin2: Kinematics) -> np.ndarray:
    """``Y[j, i]``: amplitude from ``|k1,k2>_i`` to ``|n,K-n>_j`` in subspace II.

    Entries whose in- or out-state lies outside the basis are zero.
    """
    from .blocks import BlockSolver

    if kin1.M != M1 or kin2.M != M2:
        raise ValueError("bound-state numbers do not match the kinematics")
    return BlockSolver(kin1, kin2).Y(k1, k2, n)


def rhs_Y(kin1: Kinematics, kin2: Kinematics, k1: int, k2: int, n: int, x_full) -> np.ndarray:
    """Right-hand side ``B X + B+ X+ + B- X-`` of the subspace-II system."""
    return (
        matrix_B(kin1, kin2, k1, k2, n) * x_full(k1, k2, n)
        + b_plus(kin1, kin2, k1, k2, n) * x_full(k1 + 1, k2 - 1, n)
        + b_minus(kin1, kin2, k1, k2, n) * x_full(k1 - 1, k2 + 1, n)
    )


def is_regular(M1: int, M2: int, n: int, K: int) -> bool:
    """``A`` is invertible unless ``[M2-K+n]`` or ``[n-M1]`` vanishes."""
    return n != M1 and n != K - M2


def solve_block(A, rhs, A_inv, rtol: float = 1e-8, what: str = "block") -> np.ndarray:
    """``A_inv @ rhs``, cross-checked against a generic solve; a mismatch is a hard error."""
    Y = A_inv @ rhs
    try:
        Y2 = np.linalg.solve(A, rhs)
    except np.linalg.LinAlgError as exc:
        raise DegenerateKinematicsError(f"{what}: coefficient matrix is singular") from exc
    err = np.abs(Y - Y2).max() / max(np.abs(Y2).max(), 1e-300)
    if err > rtol:
        raise ArithmeticError(f"{what}: closed-form inverse disagrees with generic solve (rel {err:.2e})")
    return Y
