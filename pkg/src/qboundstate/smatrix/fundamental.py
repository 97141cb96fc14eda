"""Explicit 16 x 16 S-matrix of two fundamental particles from closed forms.

Nothing here goes through the general block machinery: the II entries and one
III block are closed expressions in ``x±``, the other III blocks come from the
2 x 2 ``ΔE2``/``ΔE4`` constraints written with the single-site coefficients.
"""

from __future__ import annotations

import numpy as np

from ..kinematics import Kinematics, PoleError
from ..repspace import BasisState
from .states import tensor_index
from .subspace_i import coeff_D

PHI = (BasisState(0, 0, 1, 0), BasisState(0, 0, 0, 1))
PSI = (BasisState(1, 0, 0, 0), BasisState(0, 1, 0, 0))


def _ix(s1: BasisState, s2: BasisState) -> int:
    return tensor_index(1, 1, (s1, s2))


def y_fundamental(kin1: Kinematics, kin2: Kinematics) -> np.ndarray:
    """``Y[out, in]`` on ``(ψφ, φψ)``; independent of the flavour indices."""
    x1p, x1m, x2p, x2m = kin1.xplus, kin1.xminus, kin2.xplus, kin2.xminus
    den = x2p - x1m
    if abs(den) < 1e-12 * max(abs(x2p), abs(x1m)):
        raise PoleError("x1- = x2+: fundamental S-matrix has a pole")
    sq = np.sqrt(complex(kin1.q))
    uv1, uv2 = kin1.U * kin1.V, kin2.U * kin2.V
    g1, g2 = kin1.gamma, kin2.gamma
    return np.array(
        [
            [sq * uv2 * (x2m - x1m) / den, g1 / g2 * uv2 / uv1 * (x2p - x2m) / den],
            [g2 / g1 * (x1p - x1m) / den, (x2p - x1p) / (sq * uv1 * den)],
        ]
    )


def y_fundamental_labels(kin1: Kinematics, kin2: Kinematics) -> np.ndarray:
    """The same block written through the representation labels, times ``D``."""
    sq = np.sqrt(complex(kin1.q))
    a1, a2, at1, at2 = kin1.a, kin2.a, kin1.at, kin2.at
    uv1, uv2 = kin1.U * kin1.V, kin2.U * kin2.V
    den = a2 * at1 - a1 * at2 * uv2**2
    m = np.array(
        [
            [sq * (a2 * at1 * uv1**2 - a1 * at2 * uv2**2) / (uv1 * den), a1 * at1 * (1 - uv2**2) / (-den)],
            [a2 * at2 * kin2.U * (uv1**2 - 1) * kin2.V / (uv1 * den), (a2 * at1 - a1 * at2) * uv2 / (sq * den)],
        ]
    )
    return coeff_D(kin1, kin2) * m


def z_fundamental(kin1: Kinematics, kin2: Kinematics) -> np.ndarray:
    """``Z[out, in]`` on ``(φ1φ2, ψ1ψ2)`` for the label ``(1,0) -> 1``."""
    x1p, x1m, x2p, x2m = kin1.xplus, kin1.xminus, kin2.xplus, kin2.xminus
    q = complex(kin1.q)
    sq = np.sqrt(q)
    al = complex(kin1.params.alpha)
    uv1, uv2 = kin1.U * kin1.V, kin2.U * kin2.V
    g1, g2 = kin1.gamma, kin2.gamma
    den = (1 - x1m * x2m) * (x1m - x2p)
    return np.array(
        [
            [
                (1 - x2m * x1p) * (x1p - x2p) / den * x1m / (q * x1p),
                al * (x1m - x1p) * (x2m - x2p) * (x1p - x2p) / (sq * uv1 * g1 * g2 * (x1m * x2m - 1) * (x1m - x2p)),
            ],
            [
                g1 * g2 * (x1p - x2p) / (uv2 * al * (1 - x1m * x2m) * (x2p - x1m)) * x1m / (q * sq * x1p),
                (1 - x1m * x2p) * (x1p - x2p) / den * uv2 / uv1 * x2m / (q * x2p),
            ],
        ]
    )


def _e2_pairs(kin1: Kinematics, kin2: Kinematics, affine: bool):
    """Single-site ``ΔE2`` (or ``ΔE4``) coefficients from the III states onto one II state."""
    sq = np.sqrt(complex(kin1.q))
    if affine:
        a1, b1, a2, b2 = kin1.at, kin1.bt, kin2.at, kin2.bt
        uv1, uv2 = kin1.Ut * kin1.Vt, kin2.Ut * kin2.Vt
    else:
        a1, b1, a2, b2 = kin1.a, kin1.b, kin2.a, kin2.b
        uv1, uv2 = kin1.U * kin1.V, kin2.U * kin2.V
    return {
        "10": np.array([uv1 / sq * a2, b1]),
        "01": np.array([a1, -uv1 * sq * b2]),
        "10op": np.array([a2, b1 * uv2 * sq]),
        "01op": np.array([a1 * uv2 / sq, -b2]),
    }


def _constraint(kin1, kin2, out_label: str, in_label: str) -> tuple[np.ndarray, np.ndarray]:
    n, a = _e2_pairs(kin1, kin2, False), _e2_pairs(kin1, kin2, True)
    lhs = np.array([n[out_label + "op"], a[out_label + "op"]])
    rhs = np.array([n[in_label], a[in_label]])
    return lhs, rhs


def z_from_constraint(kin1: Kinematics, kin2: Kinematics, out_label: str, in_label: str, y: complex) -> np.ndarray:
    lhs, rhs = _constraint(kin1, kin2, out_label, in_label)
    return np.linalg.solve(lhs, y * rhs)


def fundamental_S(kin1: Kinematics, kin2: Kinematics) -> np.ndarray:
    if kin1.M != 1 or kin2.M != 1:
        raise ValueError("fundamental_S needs M1 = M2 = 1")
    S = np.zeros((16, 16), dtype=complex)
    D = coeff_D(kin1, kin2)
    for p in PSI:
        S[_ix(p, p), _ix(p, p)] = D
    for f in PHI:
        S[_ix(f, f), _ix(f, f)] = 1.0
    y = y_fundamental(kin1, kin2)
    for p in PSI:
        for f in PHI:
            pf, fp = _ix(p, f), _ix(f, p)
            S[pf, pf], S[fp, pf] = y[0, 0], y[1, 0]
            S[pf, fp], S[fp, fp] = y[0, 1], y[1, 1]
    # III: labels (1,0) ~ (φ1φ2, ψ1ψ2), (0,1) ~ (φ2φ1, ψ2ψ1)
    sector = {"10": (_ix(PHI[0], PHI[1]), _ix(PSI[0], PSI[1])), "01": (_ix(PHI[1], PHI[0]), _ix(PSI[1], PSI[0]))}
    blocks = {
        ("10", "10"): z_fundamental(kin1, kin2),
        ("10", "01"): z_from_constraint(kin1, kin2, "10", "01", y[1, 0]),
        ("01", "10"): z_from_constraint(kin1, kin2, "01", "10", y[0, 1]),
        ("01", "01"): z_from_constraint(kin1, kin2, "01", "01", y[0, 0]),
    }
    for (lo, li), blk in blocks.items():
        for r, io in enumerate(sector[lo]):
            for c, ii in enumerate(sector[li]):
                S[io, ii] = blk[r, c]
    if not np.all(np.isfinite(S)):
        raise PoleError("non-finite fundamental S-matrix entries")
    return S
