"""Subspace I: the highest-weight eigenvalue ``D`` and the reduced coefficients ``X``.

States are ``|k1, k2>^I = |0,1,k1,M1-k1-1> ⊗ |0,1,k2,M2-k2-1>`` and
``S |k1, k2>^I = sum_n D * X(k1, k2, n) |n, K-n>^I``; :func:`block_X` returns the
reduced ``X`` (``D`` stripped).
"""

from __future__ import annotations

import numpy as np

from ..kinematics import Kinematics, PoleError
from ..qnum import qbinomial, qnumber, qpow, scalar

POLE_RTOL = 1e-8


def coeff_D_labels(kin1: Kinematics, kin2: Kinematics) -> complex:
    """``D`` from the representation labels of both particles."""
    q = kin1.q
    num = kin2.a * kin1.at * kin2.Ut * kin2.Vt - kin1.a * kin2.at * kin2.V * kin2.U
    den = kin1.a * kin2.at * kin1.Ut * kin1.Vt - kin2.a * kin1.at * kin1.V * kin1.U
    if abs(den) < 1e-300:
        raise PoleError("label form of D has a vanishing denominator")
    return -qpow(q, (kin2.M - kin1.M) / 2) * num / den


def coeff_D_x(kin1: Kinematics, kin2: Kinematics) -> complex:
    """``D`` in terms of the Zhukovsky variables."""
    q = kin1.q
    den = kin1.xminus - kin2.xplus
    if abs(den) < POLE_RTOL * max(1.0, abs(kin1.xminus)):
        raise PoleError("x1- = x2+: D has a pole")
    return (
        qpow(q, -(kin1.M - kin2.M) / 2)
        * (kin2.U * kin2.V) / (kin1.U * kin1.V)
        * (kin1.xplus - kin2.xminus) / den
    )


def coeff_D(kin1: Kinematics, kin2: Kinematics, check: bool = True, rtol: float = 1e-8) -> complex:
    """``S`` eigenvalue on ``|0,0>^I``; with ``check`` both closed forms must agree."""
    D = coeff_D_x(kin1, kin2)
    if check:
        D2 = coeff_D_labels(kin1, kin2)
        if abs(D - D2) > rtol * max(abs(D), abs(D2)):
            raise ArithmeticError(f"label and x-forms of D disagree: {D} vs {D2}")
    return D


def check_X_poles(M1: int, M2: int, K: int, z12, q, rtol: float = POLE_RTOL) -> None:
    M = M1 + M2
    for l in range(1, K + 1):
        p = qpow(q, M - 2 * l)
        if abs(z12 - p) < rtol * max(1.0, abs(p)):
            raise PoleError(f"z12 = q^(M-2l) at l = {l}: subspace-I block has a pole")


def _prod(it):
    out = scalar(1)
    for v in it:
        out *= v
    return out


def block_X(M1: int, M2: int, k1: int, k2: int, n: int, z12, q, check_poles: bool = True):
    """Reduced subspace-I coefficient (the full one is ``D * block_X``)."""
    if not (0 <= k1 <= M1 - 1 and 0 <= k2 <= M2 - 1):
        raise IndexError(f"(k1, k2) = ({k1}, {k2}) outside subspace I for M = ({M1}, {M2})")
    K = k1 + k2
    if not (0 <= n <= K):
        raise IndexError(f"n = {n} outside 0..{K}")
    if n > M1 - 1 or K - n > M2 - 1:
        return scalar(0)
    z12, q = scalar(z12), scalar(q)
    if check_poles:
        check_X_poles(M1, M2, K, z12, q)
    M = M1 + M2
    pre = (
        _prod(qnumber(M1 - i, q) for i in range(1, n + 1))
        * _prod(qnumber(M2 - j, q) for j in range(1, K - n + 1))
        / _prod(qnumber(M1 - i, q) for i in range(1, k1 + 1))
        / _prod(qnumber(M2 - j, q) for j in range(1, k2 + 1))
        / _prod(z12 - qpow(q, M - 2 * l) for l in range(1, K + 1))
    )
    total = scalar(0)
    for m in range(0, k1 + 1):
        if not 0 <= n - m <= k2:
            continue
        term = (
            z12 ** (n - m)
            * qpow(q, k2 * (n - m) - k1 * m - k2 * k2)
            * qbinomial(k1, m, q)
            * qbinomial(k2, n - m, q)
        )
        term *= _prod(z12 * qpow(q, M2 + 2 * p) - qpow(q, M1) for p in range(0, m))
        term *= _prod(1 - qpow(q, 2 * (M1 - p)) for p in range(1 + m, k1 + 1))
        term *= _prod(1 - qpow(q, 2 * (M2 - K + n - p)) for p in range(1, n - m + 1))
        term *= _prod(z12 * qpow(q, M1 + 2 * p) - qpow(q, M2) for p in range(-m, k2 - n))
        total += term
    return pre * total


def X_matrix(M1: int, M2: int, K: int, z12, q) -> np.ndarray:
    """Reduced ``X`` on the ``K`` sector: entry ``[n1, k1]`` maps ``|k1, K-k1>`` to ``|n1, K-n1>``.

    Rows and columns run over ``n1 = max(0, K-M2+1) .. min(K, M1-1)``.
    """
    ks = list(range(max(0, K - M2 + 1), min(K, M1 - 1) + 1))
    out = np.zeros((len(ks), len(ks)), dtype=complex)
    for c, k1 in enumerate(ks):
        for r, n in enumerate(ks):
            out[r, c] = complex(block_X(M1, M2, k1, K - k1, n, z12, q))
    return out


def z_ratio(kin1: Kinematics, kin2: Kinematics) -> complex:
    return kin1.z / kin2.z
