"""Verification suites: invariance, oracle agreement, Yang-Baxter, 6j identity, limits and SQ1 relations."""

from __future__ import annotations

import cmath
import math
from dataclasses import asdict, dataclass
from typing import Callable

import numpy as np

from .kinematics import Kinematics, KinematicsError, ModelParams, build_kinematics, random_kinematics, solve_mass_shell
from .qnum import extended_precision, qpow, scalar
from .report import VerificationReport, merge, relative_residual
from .repspace import ALL_GENERATORS, coproduct_action, graded_permutation
from .oracle import intertwiner_nullspace
from .sixj import x_via_6j
from .smatrix.assemble import assemble_S, max_labels, subspace_states
from .smatrix.blocks import BlockSolver
from .smatrix.fundamental import fundamental_S
from .smatrix.sq1 import shifted_columns, sq1_blocks, top_sector_columns
from .smatrix.states import tensor_index
from .smatrix.subspace_i import block_X


def point_of(*kins: Kinematics, seed: int | None = None) -> dict:
    out = {f"particle{i + 1}": k.as_dict() for i, k in enumerate(kins)}
    if seed is not None:
        out["seed"] = seed
    return out


def is_generic_pair(kin1: Kinematics, kin2: Kinematics, margin: float = 0.02) -> bool:
    """Away from coincident particles and from every ``z12 = q^j`` locus, where blocks have poles."""
    M = kin1.M + kin2.M
    z12, q = kin1.z / kin2.z, complex(kin1.q)
    if any(abs(z12 - q**j) < margin * abs(q**j) for j in range(-2 * M, 2 * M + 1)):
        return False
    pts = ((kin1.xplus, kin2.xplus), (kin1.xminus, kin2.xminus), (kin1.xminus, kin2.xplus), (kin2.xminus, kin1.xplus))
    return all(abs(a - b) > 0.05 for a, b in pts)


def random_model(rng: np.random.Generator) -> ModelParams:
    """Generic deformation: ``|q|`` in ``[0.6, 0.95]``, moderate phase, ``g`` in ``[0.5, 2]``."""
    q = rng.uniform(0.6, 0.95) * cmath.exp(1j * rng.uniform(-0.7, 0.7))
    return ModelParams(q=q, g=float(rng.uniform(0.5, 2.0)))


def random_generic(rng: np.random.Generator, params: ModelParams, *Ms: int, tries: int = 200) -> list[Kinematics]:
    """On-shell particles, pairwise generic in the sense of :func:`is_generic_pair`."""
    for _ in range(tries):
        kins = [random_kinematics(rng, params, M) for M in Ms]
        if all(is_generic_pair(a, b) for i, a in enumerate(kins) for b in kins[i + 1 :]):
            return kins
    raise KinematicsError("could not draw generic particles at these model parameters")


# -- invariance ----------------------------------------------------------------


def check_invariance(S: np.ndarray, kin1: Kinematics, kin2: Kinematics, tolerance: float = 1e-8, seed=None) -> VerificationReport:
    """``S Δ(J) = Δop(J) S`` for the eight Chevalley generators and four Cartans."""
    parts = {}
    for name in ALL_GENERATORS:
        d = coproduct_action(name, kin1, kin2)
        dop = coproduct_action(name, kin1, kin2, opposite=True)
        lhs, rhs = S @ d, dop @ S
        parts[name] = relative_residual(lhs - rhs, lhs, rhs)
    return merge("invariance", parts, tolerance, point_of(kin1, kin2, seed=seed))


# -- Yang-Baxter -----------------------------------------------------------------


def _x(M1, M2, k1, k2, n, z12, q):
    if not (0 <= k1 <= M1 - 1 and 0 <= k2 <= M2 - 1 and 0 <= n <= k1 + k2):
        return 0.0
    return complex(block_X(M1, M2, k1, k2, n, z12, q))


def ybe_subspaceI_residuals(M1, M2, M3, z1, z2, z3, q) -> tuple[np.ndarray, np.ndarray]:
    """Both sides of the subspace-I Yang-Baxter identity on every index tuple.

    The products use the reduced ``X``; the ``D`` prefactors are the same
    ``D12 D13 D23`` on both sides and drop out.
    """
    lhs_all, rhs_all = [], []
    z12, z13, z23 = z1 / z2, z1 / z3, z2 / z3
    for k1 in range(M1):
        for k2 in range(M2):
            for k3 in range(M3):
                K = k1 + k2 + k3
                for m1 in range(K + 1):
                    for m2 in range(m1 + 1):
                        lhs = sum(
                            _x(M1, M2, k1, k2, n, z12, q)
                            * _x(M1, M3, n, k3, m2, z13, q)
                            * _x(M2, M3, k1 + k2 - n, k3 + n - m2, m1 - m2, z23, q)
                            for n in range(k1 + k2 + 1)
                        )
                        rhs = sum(
                            _x(M1, M2, m1 - n, n, m2, z12, q)
                            * _x(M1, M3, k1, k2 + k3 - n, m1 - n, z13, q)
                            * _x(M2, M3, k2, k3, n, z23, q)
                            for n in range(k2 + k3 + 1)
                        )
                        lhs_all.append(lhs)
                        rhs_all.append(rhs)
    return np.array(lhs_all), np.array(rhs_all)


def check_ybe_subspaceI(M1, M2, M3, z1, z2, z3, q, tolerance: float = 1e-8, seed=None) -> VerificationReport:
    lhs, rhs = ybe_subspaceI_residuals(M1, M2, M3, z1, z2, z3, q)
    rmax, rfro = relative_residual(lhs - rhs, lhs, rhs)
    point = {"M": [M1, M2, M3], "z": [str(complex(z)) for z in (z1, z2, z3)], "q": str(complex(q))}
    if seed is not None:
        point["seed"] = seed
    return VerificationReport(
        name=f"ybe-I{(M1, M2, M3)}",
        residual_max=rmax,
        residual_fro=rfro,
        tolerance=tolerance,
        point=point,
        details={"entries": int(lhs.size)},
    )


def triple_operators(kin1, kin2, kin3, builder: Callable = assemble_S):
    """``S12, S13, S23`` on ``V1 ⊗ V2 ⊗ V3``; ``S13`` is conjugated by the graded swap of slots 2, 3."""
    d1, d2, d3 = (4 * k.M for k in (kin1, kin2, kin3))
    S12 = np.kron(builder(kin1, kin2), np.eye(d3))
    S23 = np.kron(np.eye(d1), builder(kin2, kin3))
    P = np.kron(np.eye(d1), graded_permutation(kin3.M, kin2.M))  # V1 V3 V2 -> V1 V2 V3
    S13 = P @ np.kron(builder(kin1, kin3), np.eye(d2)) @ P.T
    return S12, S13, S23


def check_ybe_full(kin1, kin2, kin3, tolerance: float = 1e-8, builder: Callable = assemble_S, seed=None) -> VerificationReport:
    """``S12 S13 S23 = S23 S13 S12`` on the full triple product."""
    S12, S13, S23 = triple_operators(kin1, kin2, kin3, builder)
    lhs = S12 @ S13 @ S23
    rhs = S23 @ S13 @ S12
    rmax, rfro = relative_residual(lhs - rhs, lhs, rhs)
    Ms = (kin1.M, kin2.M, kin3.M)
    return VerificationReport(
        name=f"ybe-full{Ms}",
        residual_max=rfro,
        residual_fro=rfro,
        tolerance=tolerance,
        point=point_of(kin1, kin2, kin3, seed=seed),
        details={"entrywise_max": rmax, "dimension": int(lhs.shape[0])},
    )


# -- rational limit --------------------------------------------------------------


def rational_u(xplus, xminus, g: float) -> complex:
    """Rational spectral parameter with ``z = 1 - 2 h u + O(h^2)``."""
    return 0.5j * g * (xplus + xminus) * (1 + 1 / (xplus * xminus))


def rational_X(M1: int, M2: int, k1: int, k2: int, n: int, du) -> complex:
    """The ``q -> 1`` subspace-I coefficient (``D`` stripped) at rational shift ``du``.

    Evaluated in the active scalar type, so it is exact to working precision
    inside :func:`extended_precision`.
    """
    K, M, dM = k1 + k2, M1 + M2, M1 - M2
    if n > M1 - 1 or K - n > M2 - 1:
        return scalar(0)
    du = scalar(du)
    prod = math.prod
    pre = (
        prod(M1 - i for i in range(1, n + 1))
        * prod(M2 - j for j in range(1, K - n + 1))
        / prod(M1 - i for i in range(1, k1 + 1))
        / prod(M2 - j for j in range(1, k2 + 1))
    )
    pre = pre / prod(du + M / 2 - l for l in range(1, K + 1))
    total = 0
    for m in range(k1 + 1):
        if not 0 <= n - m <= k2:
            continue
        term = math.comb(k1, m) * math.comb(k2, n - m)
        term *= prod(du + dM / 2 - p for p in range(m))
        term *= prod(du - dM / 2 - p for p in range(-m, k2 - n))
        term *= prod(M1 - p for p in range(1 + m, k1 + 1))
        term *= prod(M2 - K + n - p for p in range(1, n - m + 1))
        total += term
    return pre * total


def rational_xminus(xplus: complex, g: float, M: int) -> complex:
    """Smaller root of the rational shell ``x+ + 1/x+ - x- - 1/x- = i M / g``."""
    w = xplus + 1 / xplus - 1j * M / g
    r = cmath.sqrt(w * w - 4)
    return min(((w + r) / 2, (w - r) / 2), key=abs)


def deformed_pair(x1p, x2p, g: float, M1: int, M2: int, h: float) -> tuple[Kinematics, Kinematics]:
    """On-shell particles at ``q = 1 + h`` continuously connected to the rational roots."""
    params = ModelParams(q=1 + h, g=g)
    out = []
    for xp, M in ((x1p, M1), (x2p, M2)):
        x0 = rational_xminus(xp, g, M)
        xm = min(solve_mass_shell(xp, params, M), key=lambda r: abs(r - x0))
        out.append(build_kinematics(xp, xm, params, M))
    return out[0], out[1]


def rational_du(x1p, x2p, g: float, M1: int, M2: int) -> complex:
    u1 = rational_u(x1p, rational_xminus(x1p, g, M1), g)
    u2 = rational_u(x2p, rational_xminus(x2p, g, M2), g)
    return u1 - u2


def rational_errors(M1, M2, x1p, x2p, g, hs, indices) -> dict:
    """``|X(q = 1 + h) - X_rat|`` per index for each ``h``; the rational side in extended precision."""
    with extended_precision(40):
        du = scalar(rational_du(x1p, x2p, g, M1, M2))
        targets = {idx: rational_X(M1, M2, *idx, du) for idx in indices}
    errs = {idx: [] for idx in indices}
    for h in hs:
        kin1, kin2 = deformed_pair(x1p, x2p, g, M1, M2, h)
        z12 = kin1.z / kin2.z
        for idx in indices:
            errs[idx].append(abs(_x(M1, M2, *idx, z12, kin1.q) - complex(targets[idx])))
    return {"targets": targets, "errors": errs}


def check_rational_limit(
    M1, M2, x1p, x2p, g: float, hs=(2e-4, 1e-4, 5e-5), tolerance: float = 0.2, indices=None, seed=None
) -> VerificationReport:
    """First-order convergence in ``h`` of ``X`` at ``q = 1 + h`` to its rational form.

    The particles are fixed by ``x+`` and the coupling; ``x-`` follows the
    deformed shell.  Residual per entry is ``|slope - 1|`` of ``log err`` against
    ``log h``; entries equal to within the ``eps / h`` rounding floor contribute 0.
    """
    if indices is None:
        indices = [(k1, k2, n) for k1 in range(M1) for k2 in range(M2) for n in range(k1 + k2 + 1)]
    data = rational_errors(M1, M2, x1p, x2p, g, hs, indices)
    parts, slopes = {}, {}
    for idx in indices:
        errs = data["errors"][idx]
        scale = max(abs(complex(data["targets"][idx])), 1.0)
        # block denominators are O(h), so double rounding grows like eps / h
        if max(errs) < 100 * np.finfo(float).eps * scale / min(hs):
            slopes[str(idx)] = None
            parts[str(idx)] = (0.0, 0.0)
            continue
        slope = float(np.polyfit(np.log(hs), np.log(errs), 1)[0])
        slopes[str(idx)] = slope
        parts[str(idx)] = (abs(slope - 1), abs(slope - 1))
    point = {"M": [M1, M2], "xplus": [str(complex(x1p)), str(complex(x2p))], "g": g, "h": list(hs)}
    if seed is not None:
        point["seed"] = seed
    rep = merge(f"rational{(M1, M2)}", parts, tolerance, point)
    rep.details["slopes"] = slopes
    return rep


# -- classical limit ---------------------------------------------------------------


@dataclass(frozen=True)
class ClassicalLimitPoint:
    h: float
    g: float
    x: complex
    M: int
    h_tilde: complex
    q_tilde: complex
    z_cl: complex
    C_cl: complex
    D_cl_charge: complex

    def as_dict(self) -> dict:
        return {k: (str(v) if isinstance(v, complex) else v) for k, v in asdict(self).items()}


def classical_point(h: float, g: float, x: complex, M: int) -> ClassicalLimitPoint:
    ht = -1j * h / cmath.sqrt(1 - h * h)
    z = -(x + ht) * (1 + 1 / (x * ht)) / (ht - 1 / ht)
    qt = -M * (ht - 1 / ht) / (x - 1 / x)
    return ClassicalLimitPoint(h, g, complex(x), M, ht, qt, z, 0.5 * (z - 1) * qt, 0.5 * (z + 1) * qt)


def deformed_kinematics(pt: ClassicalLimitPoint) -> Kinematics:
    """On-shell particle at ``q = 1 + h / 2g`` whose ``x+-`` follow the large-``g`` expansion."""
    params = ModelParams(q=1 + pt.h / (2 * pt.g), g=pt.g)
    shift = pt.h * pt.M / (2 * pt.g) * (pt.x + pt.h_tilde) * (1 + 1 / (pt.x * pt.h_tilde)) / (pt.x - 1 / pt.x)
    xp, xm_guess = pt.x * (1 + shift), pt.x * (1 - shift)
    xm = min(solve_mass_shell(xp, params, pt.M), key=lambda r: abs(r - xm_guess))
    return build_kinematics(xp, xm, params, pt.M)


def classical_coefficients(M1, M2, k1, k2, z1, z2, h) -> dict[int, complex]:
    """Predicted ``1/g`` coefficients of the reduced ``X^{k1,k2}_n`` for ``n = k1, k1 +- 1``."""
    M = M1 + M2
    out = {k1 + 1: -h * z1 / (z1 - z2) * k2 * (M1 - k1 - 1)}
    if k1 >= 1:
        out[k1 - 1] = -h * z2 / (z1 - z2) * k1 * (M2 - k2 - 1)
    s = sum(z2 * (M / 2 - l) for l in range(1, k1 + k2 + 1))
    s += sum((z1 * M2 - z2 * M1) / 2 + z1 * p for p in range(0, k1))
    s += sum((z1 * M1 - z2 * M2) / 2 + z1 * p for p in range(-k1, k2 - k1))
    out[k1] = h * (-(k1 * k1 + k2 * k2) / 2 + s / (z1 - z2))
    return out


def full_rational_coefficients(M1, M2, k1, k2, u1, u2) -> dict[int, complex]:
    """``h -> 0`` limit of :func:`classical_coefficients` with ``z = 1 - h u``."""
    du = u1 - u2
    dM, M = M1 - M2, M1 + M2
    out = {k1 + 1: k2 * (M1 - k1 - 1) / du}
    if k1 >= 1:
        out[k1 - 1] = k1 * (M2 - k2 - 1) / du
    br = sum(M / 2 - l for l in range(1, k1 + k2 + 1))
    br += sum(-dM / 2 + p for p in range(0, k1))
    br += sum(dM / 2 + p for p in range(-k1, k2 - k1))
    out[k1] = -br / du
    return out


def full_rational_u(x: complex) -> complex:
    """Spectral parameter with ``z_cl = 1 - h u + O(h^2)``."""
    return 1j * (x + 1 / x)


def measured_coefficients(M1, M2, k1, k2, h, x1, x2, gs) -> dict[int, list[complex]]:
    """``g (X - delta)`` from the exact block at each coupling in ``gs``."""
    out: dict[int, list[complex]] = {}
    for g in gs:
        kin1 = deformed_kinematics(classical_point(h, g, x1, M1))
        kin2 = deformed_kinematics(classical_point(h, g, x2, M2))
        z12 = kin1.z / kin2.z
        for n in (k1 - 1, k1, k1 + 1):
            if 0 <= n <= k1 + k2:
                X = _x(M1, M2, k1, k2, n, z12, kin1.q)
                out.setdefault(n, []).append(g * (X - (n == k1)))
    return out


def extrapolate_in_g(vals, gs):
    """Two-point elimination of the ``1/g`` correction."""
    (a, b), (g1, g2) = vals, gs
    return (g2 * b - g1 * a) / (g2 - g1)


def check_classical_limit(
    M1, M2, k1, k2, h, x1, x2, gs=(1e3, 1e4), tolerance: float = 1e-5, seed=None
) -> VerificationReport:
    """Large-``g`` coefficients of ``X^{k1,k2}_{k1, k1 +- 1}`` against their classical forms.

    Per entry: the ``1/g`` coefficient extrapolated from the two couplings must
    match the prediction to ``tolerance``, and the raw deviation must fall off
    like ``1/g`` (order within 0.3 of 1), else the entry fails outright.
    """
    p1, p2 = classical_point(h, gs[0], x1, M1), classical_point(h, gs[0], x2, M2)
    pred = classical_coefficients(M1, M2, k1, k2, p1.z_cl, p2.z_cl, h)
    meas = measured_coefficients(M1, M2, k1, k2, h, x1, x2, gs)
    parts, orders = {}, {}
    for n, vals in meas.items():
        c = pred.get(n, 0.0)
        # r = g (X - delta) carries rounding of size g * eps
        floor = 100 * np.finfo(float).eps * max(gs)
        scale = abs(c) if abs(c) > floor else 1.0
        errs = [abs(v - c) for v in vals]
        dev = abs(extrapolate_in_g(vals, gs) - c) / scale
        if max(errs) < floor * max(abs(c), 1.0):
            orders[n] = None
            parts[f"n={n}"] = (dev, dev)
            continue
        order = math.log(errs[0] / errs[1]) / math.log(gs[1] / gs[0]) if errs[1] > 0 else float("inf")
        orders[n] = order
        if abs(order - 1) > 0.3:
            dev = max(dev, 1.0)
        parts[f"n={n}"] = (dev, dev)
    point = {"M": [M1, M2], "k": [k1, k2], "h": h, "x": [str(x1), str(x2)], "g": list(gs)}
    if seed is not None:
        point["seed"] = seed
    rep = merge(f"classical{(M1, M2, k1, k2)}", parts, tolerance, point)
    rep.details["orders"] = {str(k): v for k, v in orders.items()}
    return rep


def check_full_rational_limit(
    M1, M2, k1, k2, x1, x2, hs=(1e-2, 1e-3), gs=(1e3, 1e4), tolerance: float = 1e-4, seed=None
) -> VerificationReport:
    """``h -> 0`` of the measured classical coefficients against the fully rational forms.

    The coefficients are extrapolated in ``1/g`` at each ``h`` and then
    linearly in ``h`` to ``h = 0``.
    """
    u1, u2 = full_rational_u(x1), full_rational_u(x2)
    pred = full_rational_coefficients(M1, M2, k1, k2, u1, u2)
    per_h = []
    for h in hs:
        meas = measured_coefficients(M1, M2, k1, k2, h, x1, x2, gs)
        per_h.append({n: extrapolate_in_g(v, gs) for n, v in meas.items()})
    parts = {}
    (h1, h2) = hs
    for n in per_h[0]:
        a, b = per_h[0][n], per_h[1][n]
        at0 = (h1 * b - h2 * a) / (h1 - h2)
        c = pred.get(n, 0.0)
        dev = abs(at0 - c) / max(abs(c), 1.0)
        parts[f"n={n}"] = (dev, dev)
    point = {"M": [M1, M2], "k": [k1, k2], "h": list(hs), "x": [str(x1), str(x2)], "g": list(gs)}
    if seed is not None:
        point["seed"] = seed
    return merge(f"full-rational{(M1, M2, k1, k2)}", parts, tolerance, point)


# -- SQ1 ----------------------------------------------------------------------


def _entries(block: np.ndarray) -> dict:
    return {(r + 1, c + 1): block[r, c] for r in range(block.shape[0]) for c in range(block.shape[1])}


def check_sq1_closed_forms(kin1: Kinematics, kin2: Kinematics, tolerance: float = 1e-8, seed=None) -> VerificationReport:
    """Every closed-form ``Y``/``Z`` block of :func:`sq1_blocks` against the general blocks."""
    solver = BlockSolver(kin1, kin2)
    blocks = sq1_blocks(kin1, kin2)
    parts = {}
    for tag, table, general in (("Y", blocks.Y, solver.Y), ("Z", blocks.Z, solver.Z)):
        for key, m in table.items():
            g = general(*key)
            parts[f"{tag}{key}"] = relative_residual(m - g, g)
    return merge(f"sq1-closed-forms(Q={kin1.M})", parts, tolerance, point_of(kin1, kin2, seed=seed))


def check_sq1_relations(kin1: Kinematics, kin2: Kinematics, tolerance: float = 1e-9, seed=None) -> VerificationReport:
    """Shift relations between ``Z`` blocks, evaluated on the general blocks.

    ``XtoZ``: the column out of ``|k-1,1>_6`` from the ``|k,0>_5`` column and ``D``.
    ``ZtoZ``: columns out of ``|k-1,1>_{1,3}`` from those out of ``|k,0>_{1,3}``.
    ``top``: the ``ΔF1`` raised columns of the last sector.  For ``Q = 1`` only
    the ``XtoZ`` and ``top`` relations have support.
    """
    if kin2.M != 1:
        raise ValueError("SQ1 relations need M2 = 1")
    Q, q = kin1.M, complex(kin1.q)
    solver = BlockSolver(kin1, kin2)
    D = solver.D
    parts: dict[str, tuple[float, float]] = {}

    def compare(tag, predicted: dict, actual: np.ndarray, cols):
        keys = [key for key in predicted if key[1] in cols]
        if not keys:
            return
        p = np.array([predicted[key] for key in keys])
        a = np.array([actual[key[0] - 1, key[1] - 1] for key in keys])
        parts[tag] = relative_residual(p - a, actual)

    for k in range(1, Q + 1):
        diag, low = _entries(solver.Z(k, 0, k)), _entries(solver.Z(k, 0, k - 1))
        dnew, lnew = shifted_columns(diag, low, Q, k, q, D)
        if k == Q:
            prev = (_entries(solver.Z(Q - 1, 0, Q - 1)), _entries(solver.Z(Q - 1, 0, Q - 2))) if Q >= 2 else ({}, {})
            top, bot, corner = top_sector_columns(*prev, diag, low, Q, q)
            c_act = solver.Z(Q, 1, Q)[0, 0]
            parts["top corner"] = relative_residual(np.array([corner - c_act]), np.array([c_act]))
            compare(f"top k={k} n=k", top, solver.Z(Q - 1, 1, Q), (3,))
            compare(f"top k={k} n=k-1", bot, solver.Z(Q - 1, 1, Q - 1), (3,))
        for rel, cols in (("XtoZ", (6,)), ("ZtoZ", (1, 3))):
            compare(f"{rel} k={k} n=k", dnew, solver.Z(k - 1, 1, k), cols)
            compare(f"{rel} k={k} n=k-1", lnew, solver.Z(k - 1, 1, k - 1), cols)
    return merge(f"sq1-relations(Q={Q})", parts, tolerance, point_of(kin1, kin2, seed=seed))


# -- oracle agreement ------------------------------------------------------------


def subspace_indices(M1: int, M2: int, tag: str) -> np.ndarray:
    """Tensor indices of every state in one subspace (``I``, ``Ib``, ``II``, ``IIb`` or ``III``)."""
    idx = set()
    for K in range(max_labels(M1, M2)[tag] + 1):
        for k1 in range(K + 1):
            for s in subspace_states(M1, M2, tag, k1, K - k1):
                if s is not None:
                    idx.add(tensor_index(M1, M2, s))
    return np.array(sorted(idx), dtype=int)


def check_uniqueness(kin1: Kinematics, kin2: Kinematics, min_gap: float = 1e6, seed=None) -> VerificationReport:
    """One-dimensional intertwiner kernel; the residual is ``1 / gap``."""
    res = intertwiner_nullspace(kin1, kin2, return_details=True)
    return VerificationReport(
        name=f"uniqueness{(kin1.M, kin2.M)}",
        residual_max=1 / res.gap,
        residual_fro=1 / res.gap,
        tolerance=1 / min_gap,
        point=point_of(kin1, kin2, seed=seed),
        details={"gap": res.gap, "kernel_dim": res.kernel_dim, "singular_values": [float(s) for s in res.singular_values]},
    )


def check_oracle_agreement(
    kin1: Kinematics, kin2: Kinematics, tolerance: float = 1e-8, S=None, oracle=None, seed=None
) -> VerificationReport:
    """Entrywise agreement of the assembled ``S`` with the brute-force intertwiner.

    Besides the whole matrix, the swapped-species subspaces Ib and IIb are
    reported separately, each relative to its own largest entry.
    """
    S = assemble_S(kin1, kin2) if S is None else S
    T = intertwiner_nullspace(kin1, kin2) if oracle is None else oracle
    parts = {"full": relative_residual(S - T, T)}
    for tag in ("Ib", "IIb"):
        ix = subspace_indices(kin1.M, kin2.M, tag)
        if ix.size:
            blk = np.ix_(ix, ix)
            parts[tag] = relative_residual(S[blk] - T[blk], T[blk])
    return merge(f"oracle{(kin1.M, kin2.M)}", parts, tolerance, point_of(kin1, kin2, seed=seed))


def check_fundamental(kin1: Kinematics, kin2: Kinematics, tolerance: float = 1e-10, seed=None) -> VerificationReport:
    """Explicit fundamental S-matrix against the general assembly at ``M1 = M2 = 1``."""
    F, S = fundamental_S(kin1, kin2), assemble_S(kin1, kin2)
    return merge("fundamental", {"S": relative_residual(F - S, S)}, tolerance, point_of(kin1, kin2, seed=seed))


# -- 6j identity -----------------------------------------------------------------


def check_sixj_identity(M1: int, M2: int, du_values, q, tolerance: float = 1e-8, seed=None) -> VerificationReport:
    """``x_via_6j`` against ``block_X`` (``D`` stripped) at ``z12 = q^(-2 du)``, all admissible indices."""
    parts = {}
    for i, du in enumerate(du_values):
        z12 = qpow(complex(q), -2 * complex(du))
        for k1 in range(M1):
            for k2 in range(M2):
                for n in range(k1 + k2 + 1):
                    ref = complex(block_X(M1, M2, k1, k2, n, z12, q))
                    val = complex(x_via_6j(M1, M2, k1, k2, n, du, q))
                    parts[f"du{i}{(k1, k2, n)}"] = relative_residual(np.array([val - ref]), np.array([ref]), np.array([1e-300]))
    point = {"M": [M1, M2], "q": str(complex(q)), "du": [str(complex(d)) for d in du_values]}
    if seed is not None:
        point["seed"] = seed
    return merge(f"sixj{(M1, M2)}", parts, tolerance, point)
