"""Fock basis and generator matrices of the bound-state representation.

States ``|m, n, k, l>`` carry ``m, n`` fermionic and ``k, l`` bosonic
excitations with ``m + n + k + l = M``.  Kets are the unnormalised Fock
vectors ``(a3+)^m (a4+)^n (a1+)^k (a2+)^l |0>``; all matrices are written in
this basis, so S-matrix coefficients expanded on kets are matrix entries
directly.

Graded tensor products follow ``(A ⊗ B)(u ⊗ v) = (-1)^{|B||u|} Au ⊗ Bv``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .kinematics import Kinematics
from .qnum import qfactorial, qnumber, qpow
from .report import VerificationReport, merge, relative_residual


@dataclass(frozen=True, order=True)
class BasisState:
    m: int
    n: int
    k: int
    l: int

    @property
    def grading(self) -> int:
        return (self.m + self.n) % 2

    def as_list(self) -> list[int]:
        return [self.m, self.n, self.k, self.l]


@lru_cache(maxsize=None)
def enumerate_basis(M: int) -> tuple[BasisState, ...]:
    """Canonical order: ``(m, n)`` blocks ``(0,0), (0,1), (1,0), (1,1)``, then ``k`` ascending."""
    if M < 1:
        raise ValueError("M must be >= 1")
    out = []
    for m, n in ((0, 0), (0, 1), (1, 0), (1, 1)):
        for k in range(M - m - n + 1):
            out.append(BasisState(m, n, k, M - m - n - k))
    return tuple(out)


@lru_cache(maxsize=None)
def basis_index(M: int) -> dict[BasisState, int]:
    return {s: i for i, s in enumerate(enumerate_basis(M))}


def parity_vector(M: int) -> np.ndarray:
    return np.array([s.grading for s in enumerate_basis(M)])


def grading_operator(M: int) -> np.ndarray:
    """``(-1)^F`` on one module."""
    return np.diag((-1.0) ** parity_vector(M)).astype(complex)


ODD = frozenset({"E2", "F2", "E4", "F4"})
CHEVALLEY = ("E1", "E2", "E3", "E4", "F1", "F2", "F3", "F4")
CARTANS = ("K1", "K2", "K3", "K4")
ALL_GENERATORS = CHEVALLEY + CARTANS


def parity(name: str) -> int:
    return 1 if name in ODD else 0


def metric(M: int, q) -> np.ndarray:
    """Diagonal ``<s|s> = 1 / ([k]! [l]!)`` of the unnormalised kets."""
    return np.diag([1 / (qfactorial(s.k, q) * qfactorial(s.l, q)) for s in enumerate_basis(M)])


def _cartan_eigs(kin: Kinematics, node: int) -> np.ndarray:
    """Exponents ``h`` with ``K_node = q^h`` (``V = q^C`` absorbed separately)."""
    out = []
    for s in enumerate_basis(kin.M):
        if node == 1:
            out.append(s.l - s.k)
        elif node == 3:
            out.append(s.n - s.m)
        else:
            out.append((s.k - s.l + s.m - s.n) / 2)
    return np.array(out, dtype=float)


def cartan_H(kin: Kinematics, node: int) -> np.ndarray:
    """Eigenvalue list of ``H_node``; for nodes 2, 4 the central ``-C`` part is omitted."""
    return _cartan_eigs(kin, node)


@lru_cache(maxsize=4096)
def _generators_cached(kin: Kinematics) -> dict[str, np.ndarray]:
    M, q = kin.M, kin.q
    basis = enumerate_basis(M)
    idx = basis_index(M)
    dim = len(basis)

    def empty():
        return np.zeros((dim, dim), dtype=complex)

    mats = {name: empty() for name in CHEVALLEY}

    def put(name, src, m, n, k, l, coeff):
        tgt = BasisState(m, n, k, l)
        if tgt in idx and coeff != 0:
            mats[name][idx[tgt], idx[src]] += coeff

    for s in basis:
        m, n, k, l = s.m, s.n, s.k, s.l
        if k > 0:
            put("E1", s, m, n, k - 1, l + 1, qnumber(k, q))
        if l > 0:
            put("F1", s, m, n, k + 1, l - 1, qnumber(l, q))
        if n > 0 and m == 0:
            put("E3", s, m + 1, n - 1, k, l, 1.0)
        if m > 0 and n == 0:
            put("F3", s, m - 1, n + 1, k, l, 1.0)
        sign = (-1.0) ** m
        for E, F, (a, b, c, d) in (
            ("E2", "F2", kin.labels.as_tuple()),
            ("E4", "F4", kin.affine_labels.as_tuple()),
        ):
            if l > 0 and n == 0:
                put(E, s, m, n + 1, k, l - 1, a * sign * qnumber(l, q))
            if m > 0:
                put(E, s, m - 1, n, k + 1, l, b)
            if k > 0 and m == 0:
                put(F, s, m + 1, n, k - 1, l, c * qnumber(k, q))
            if n > 0:
                put(F, s, m, n - 1, k, l + 1, d * sign)

    mats["K1"] = np.diag([qpow(q, h) for h in _cartan_eigs(kin, 1)])
    mats["K3"] = np.diag([qpow(q, h) for h in _cartan_eigs(kin, 3)])
    h2 = _cartan_eigs(kin, 2)
    mats["K2"] = np.diag([qpow(q, h) / kin.V for h in h2])
    mats["K4"] = np.diag([qpow(q, h) / kin.V_tilde for h in h2])
    for j in (1, 2, 3, 4):
        mats[f"K{j}inv"] = np.diag(1 / np.diag(mats[f"K{j}"]))
    mats["H1"] = np.diag(_cartan_eigs(kin, 1)).astype(complex)
    mats["H3"] = np.diag(_cartan_eigs(kin, 3)).astype(complex)
    for v in mats.values():
        v.setflags(write=False)
    return mats


def generators(kin: Kinematics) -> dict[str, np.ndarray]:
    """All generator matrices on one module, keyed ``E1..F4, K1..K4, K1inv.., H1, H3``."""
    return _generators_cached(kin)


def generator_action(name: str, kin: Kinematics) -> np.ndarray:
    return generators(kin)[name]


def central_values(kin: Kinematics) -> dict[str, complex]:
    """Scalar values of the central group-likes on one module."""
    return {"U2": kin.U, "U4": kin.U_tilde, "V2": kin.V, "V4": kin.V_tilde}


# -- tensor products ---------------------------------------------------------


def graded_kron(A: np.ndarray, B: np.ndarray, parity_B: int, M1: int) -> np.ndarray:
    """Matrix of ``A ⊗ B`` on the graded tensor product."""
    if parity_B:
        A = A @ grading_operator(M1)
    return np.kron(A, B)


@lru_cache(maxsize=512)
def graded_permutation(M1: int, M2: int) -> np.ndarray:
    """``P: V1 ⊗ V2 -> V2 ⊗ V1``, ``u ⊗ v -> (-1)^{|u||v|} v ⊗ u``."""
    p1, p2 = parity_vector(M1), parity_vector(M2)
    d1, d2 = len(p1), len(p2)
    P = np.zeros((d1 * d2, d1 * d2))
    for i in range(d1):
        for j in range(d2):
            P[j * d1 + i, i * d2 + j] = (-1.0) ** (p1[i] * p2[j])
    P.setflags(write=False)
    return P


def _u_factor(name: str, kin: Kinematics, power: int) -> complex:
    node = int(name[1])
    if node == 2:
        return kin.U**power
    if node == 4:
        return kin.U_tilde**power
    return 1.0


def coproduct(name: str, kin1: Kinematics, kin2: Kinematics) -> np.ndarray:
    """``Δ(J)`` on ``V1 ⊗ V2``."""
    g1, g2 = generators(kin1), generators(kin2)
    M1 = kin1.M
    d1, d2 = len(enumerate_basis(kin1.M)), len(enumerate_basis(kin2.M))
    if name.startswith("K") or name.startswith("H"):
        if name.startswith("H"):
            return np.kron(g1[name], np.eye(d2)) + np.kron(np.eye(d1), g2[name])
        return np.kron(g1[name], g2[name])
    j = name[1:]
    p = parity(name)
    if name.startswith("E"):
        left = g1[name]
        right_coef = g1[f"K{j}inv"] * _u_factor(name, kin1, +1)
        return np.kron(left, np.eye(d2)) + graded_kron(right_coef, g2[name], p, M1)
    left = np.kron(g1[name], g2[f"K{j}"])
    return left + graded_kron(np.eye(d1) * _u_factor(name, kin1, -1), g2[name], p, M1)


def coproduct_action(name: str, kin1: Kinematics, kin2: Kinematics, opposite: bool = False) -> np.ndarray:
    """``Δ(J)`` or ``Δ^op(J) = P Δ P`` on ``V1 ⊗ V2``."""
    if not opposite:
        return coproduct(name, kin1, kin2)
    P12 = graded_permutation(kin1.M, kin2.M)
    return P12.T @ coproduct(name, kin2, kin1) @ P12


def tensor_central_values(kin1: Kinematics, kin2: Kinematics) -> dict[str, complex]:
    c1, c2 = central_values(kin1), central_values(kin2)
    return {k: c1[k] * c2[k] for k in c1}


# -- defining relations ------------------------------------------------------

# symmetrised Cartan matrix DA of the affine diagram and normalisation D
DA = np.array([[2, -1, 0, -1], [-1, 0, 1, 0], [0, 1, -2, 1], [-1, 0, 1, 0]])
D_NORM = (1, -1, -1, -1)


def _sc(X, Y, px, py):
    """Supercommutator ``[X, Y}``."""
    return X @ Y - (-1) ** (px * py) * Y @ X


def algebra_residuals(gens: dict[str, np.ndarray], central: dict[str, complex], kin: Kinematics) -> dict:
    """Residuals of every defining relation of the affine algebra on ``gens``.

    ``central`` carries the values of ``U2, U4, V2, V4`` on the module (for a
    tensor product these are the products of the single-particle values).
    """
    q = kin.q
    g = kin.params.g
    gt = kin.g_tilde
    alpha = complex(kin.params.alpha)
    alt = complex(kin.params.alpha_tilde)
    alphas = {2: alpha, 4: alpha * alt**2}
    dim = gens["E1"].shape[0]
    I = np.eye(dim)
    res: dict[str, tuple[float, float]] = {}

    def rel(name, lhs, rhs, *extra):
        res[name] = relative_residual(lhs - rhs, lhs, rhs, *extra)

    E = {j: gens[f"E{j}"] for j in (1, 2, 3, 4)}
    F = {j: gens[f"F{j}"] for j in (1, 2, 3, 4)}
    K = {j: gens[f"K{j}"] for j in (1, 2, 3, 4)}
    Ki = {j: gens[f"K{j}inv"] for j in (1, 2, 3, 4)}
    par = {1: 0, 2: 1, 3: 0, 4: 1}
    qq = q - 1 / q
    for i in (1, 2, 3, 4):
        for j in (1, 2, 3, 4):
            f = q ** DA[i - 1, j - 1]
            rel(f"K{i}E{j}", K[i] @ E[j], f * E[j] @ K[i])
            rel(f"K{i}F{j}", K[i] @ F[j], F[j] @ K[i] / f)
            if i == j:
                rhs = D_NORM[j - 1] * (K[j] - Ki[j]) / qq
            elif {i, j} == {2, 4}:
                U2, U4 = central["U2"], central["U4"]
                if i == 2:
                    rhs = -gt / alt * (K[4] - U2 / U4 * Ki[2])
                else:
                    rhs = gt * alt * (K[2] - U4 / U2 * Ki[4])
            else:
                rhs = 0 * I
            rel(f"[E{i},F{j}}}", _sc(E[i], F[j], par[i], par[j]), rhs, E[i] @ F[j])
    for X in (E, F):
        tag = "E" if X is E else "F"
        rel(f"[{tag}1,{tag}3]", X[1] @ X[3] - X[3] @ X[1], 0 * I, X[1] @ X[3])
        for k in (2, 4):
            rel(f"{tag}{k}^2", X[k] @ X[k], 0 * I, X[k] @ X[1])
        rel(f"{{{tag}2,{tag}4}}", X[2] @ X[4] + X[4] @ X[2], 0 * I, X[2] @ X[4])
        for j in (1, 3):
            for k in (2, 4):
                c = X[j] @ X[k] - X[k] @ X[j]
                lhs = X[j] @ c - c @ X[j] - (q - 2 + 1 / q) * X[j] @ X[k] @ X[j]
                rel(f"serre3 {tag}{j}{tag}{k}", lhs, 0 * I, X[j] @ X[j] @ X[k])
        for k in (2, 4):
            A1 = X[k] @ X[1] - X[1] @ X[k]
            A3 = X[k] @ X[3] - X[3] @ X[k]
            lhs = A1 @ A3 + A3 @ A1 - (q - 2 + 1 / q) * X[k] @ X[1] @ X[3] @ X[k]
            Uk, Vk = central[f"U{k}"], central[f"V{k}"]
            if tag == "E":
                rhs = g * alphas[k] * (1 - Uk**2 * Vk**2) * I
            else:
                rhs = g / alphas[k] * (Vk**-2 - Uk**-2) * I
            rel(f"serre4 {tag}{k}", lhs, rhs, A1 @ A3)
    for k in (2, 4):
        rel(f"V{k}^-2", central[f"V{k}"] ** -2 * I, K[1] @ K[k] @ K[k] @ K[3])
    return res


def check_algebra_relations(kin: Kinematics, tolerance: float = 1e-9) -> VerificationReport:
    """All defining relations on one module."""
    parts = algebra_residuals(generators(kin), central_values(kin), kin)
    return merge(f"algebra relations M={kin.M}", parts, tolerance, kin.as_dict())


def tensor_generators(kin1: Kinematics, kin2: Kinematics, opposite: bool = False) -> dict[str, np.ndarray]:
    gens = {name: coproduct_action(name, kin1, kin2, opposite) for name in ALL_GENERATORS}
    for j in (1, 2, 3, 4):
        gens[f"K{j}inv"] = np.diag(1 / np.diag(gens[f"K{j}"]))
    return gens


def check_coproduct_relations(
    kin1: Kinematics, kin2: Kinematics, opposite: bool = False, tolerance: float = 1e-9
) -> VerificationReport:
    """Defining relations on ``Δ`` (or ``Δ^op``) images: tests the braiding factors and signs."""
    parts = algebra_residuals(tensor_generators(kin1, kin2, opposite), tensor_central_values(kin1, kin2), kin1)
    tag = "op-coproduct" if opposite else "coproduct"
    return merge(f"{tag} relations M=({kin1.M},{kin2.M})", parts, tolerance, {"1": kin1.as_dict(), "2": kin2.as_dict()})
