"""Single-particle kinematics of the bound-state representation.

A :class:`Kinematics` record bundles everything the representation matrices
and the S-matrix formulas need: Zhukovsky variables ``x±``, the gauge factor
``gamma``, central charges ``U, V`` (and their affine partners
``U~ = 1/U``, ``V~ = 1/V``), the multiplicative evaluation parameter ``z``
and the labels ``a, b, c, d`` / ``a~, b~, c~, d~``.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field, replace

import numpy as np

from .qnum import DEFAULT_TOL, Tolerance, qnumber, qpow


class KinematicsError(ValueError):
    """Invalid or singular kinematic input."""


class OffShellError(KinematicsError):
    pass


class PoleError(KinematicsError):
    pass


@dataclass(frozen=True)
class ModelParams:
    q: complex
    g: float
    alpha: complex = 1.0
    alpha_tilde: complex = 1.0

    def __post_init__(self):
        if not self.g > 0:
            raise KinematicsError("g must be positive")
        if self.q == 0:
            raise KinematicsError("q must be nonzero")
        s2 = (self.g * (self.q - 1 / self.q)) ** 2
        if abs(1 - s2) < 1e-14:
            raise KinematicsError("g^2 (q - 1/q)^2 = 1: g~ undefined")


def xi_of(params: ModelParams) -> tuple[complex, complex]:
    """Return ``(xi, g_tilde)`` with ``g~^2 = g^2 / (1 - g^2 (q-1/q)^2)``."""
    q, g = complex(params.q), params.g
    s = q - 1 / q
    den = 1 - g**2 * s**2
    if abs(den) < 1e-14:
        raise KinematicsError("g^2 (q - 1/q)^2 = 1: g~ undefined")
    g_tilde = cmath.sqrt(g**2 / den)
    return -1j * g_tilde * s, g_tilde


def zeta_of(x: complex, xi: complex) -> complex:
    if x == 0:
        raise KinematicsError("zeta(x) undefined at x = 0")
    if abs(xi * xi - 1) < 1e-300:
        raise KinematicsError("zeta(x) undefined at xi^2 = 1")
    return -(x + 1 / x + xi + 1 / xi) / (xi - 1 / xi)


def mass_shell_residual(xplus: complex, xminus: complex, params: ModelParams, M: int) -> complex:
    """``q^-M zeta(x+) - q^M zeta(x-)``; zero on shell."""
    xi, _ = xi_of(params)
    q = complex(params.q)
    return qpow(q, -M) * zeta_of(xplus, xi) - qpow(q, M) * zeta_of(xminus, xi)


def solve_mass_shell(xplus: complex, params: ModelParams, M: int) -> list[complex]:
    """Both solutions ``x-`` of the mass shell for given ``x+``, by ascending modulus.

    The shell is a quadratic ``x^2 - w x + 1 = 0`` in ``x-``, so the roots are
    reciprocal to each other.
    """
    if xplus == 0:
        raise KinematicsError("x+ must be nonzero")
    xi, _ = xi_of(params)
    q = complex(params.q)
    qM = qpow(q, M)
    w = (qpow(q, -M) * (xplus + 1 / xplus) - (qM - 1 / qM) * (xi + 1 / xi)) / qM
    disc = w * w - 4
    if abs(disc) < 1e-14 * max(1.0, abs(w) ** 2):
        raise KinematicsError("degenerate mass-shell quadratic (double root)")
    r = cmath.sqrt(disc)
    roots = [(w + r) / 2, (w - r) / 2]
    return sorted(roots, key=abs)


@dataclass(frozen=True)
class Labels:
    a: complex
    b: complex
    c: complex
    d: complex

    def as_tuple(self):
        return (self.a, self.b, self.c, self.d)


@dataclass(frozen=True)
class Kinematics:
    params: ModelParams
    M: int
    xplus: complex
    xminus: complex
    gamma: complex
    xi: complex
    g_tilde: complex
    z: complex
    U: complex
    V: complex
    labels: Labels
    affine_labels: Labels
    U_tilde: complex
    V_tilde: complex
    meta: dict = field(default_factory=dict, compare=False)

    @property
    def q(self) -> complex:
        return complex(self.params.q)

    # short aliases used throughout the formula code
    @property
    def a(self):
        return self.labels.a

    @property
    def b(self):
        return self.labels.b

    @property
    def c(self):
        return self.labels.c

    @property
    def d(self):
        return self.labels.d

    @property
    def at(self):
        return self.affine_labels.a

    @property
    def bt(self):
        return self.affine_labels.b

    @property
    def ct(self):
        return self.affine_labels.c

    @property
    def dt(self):
        return self.affine_labels.d

    @property
    def Ut(self):
        return self.U_tilde

    @property
    def Vt(self):
        return self.V_tilde

    def residuals(self) -> dict[str, float]:
        """Magnitudes of all consistency relations (see :func:`consistency_residuals`)."""
        return consistency_residuals(self)

    def as_dict(self) -> dict:
        def c2(x):
            x = complex(x)
            return [x.real, x.imag]

        return {
            "M": self.M,
            "q": c2(self.params.q),
            "g": self.params.g,
            "alpha": c2(self.params.alpha),
            "alpha_tilde": c2(self.params.alpha_tilde),
            "xplus": c2(self.xplus),
            "xminus": c2(self.xminus),
            "gamma": c2(self.gamma),
        }


def _labels(M, xp, xm, gamma, alpha, V, xi, g, g_tilde, q) -> Labels:
    pre = cmath.sqrt(g / qnumber(M, q))
    qh = qpow(q, M / 2)
    a = pre * gamma
    b = pre * alpha / gamma * (xm - xp) / xm
    c = pre * gamma / (alpha * V) * 1j * qh * g_tilde / (g * (xp + xi))
    d = pre * g_tilde * qh * V / (1j * g * gamma) * (xp - xm) / (xi * xp + 1)
    return Labels(complex(a), complex(b), complex(c), complex(d))


def build_kinematics(
    xplus: complex,
    xminus: complex,
    params: ModelParams,
    M: int,
    gamma: complex = 1.0,
    tol: Tolerance = DEFAULT_TOL,
) -> Kinematics:
    """Assemble the full kinematic record of one bound state with ``M`` constituents."""
    if M < 1:
        raise KinematicsError("bound-state number M must be >= 1")
    if gamma == 0:
        raise KinematicsError("gamma must be nonzero")
    xplus, xminus, gamma = complex(xplus), complex(xminus), complex(gamma)
    q, g = complex(params.q), params.g
    xi, g_tilde = xi_of(params)
    zp = qpow(q, -M) * zeta_of(xplus, xi)
    zm = qpow(q, M) * zeta_of(xminus, xi)
    if abs(zp - zm) > 1e-8 * max(1.0, abs(zp)):
        raise OffShellError(f"mass shell violated: |q^-M zeta(x+) - q^M zeta(x-)| = {abs(zp - zm):.3e}")
    if abs(xplus + xi) < 1e-12 or abs(xi * xplus + 1) < 1e-12:
        raise PoleError("x+ = -xi or xi x+ = -1: labels c or d have a pole")
    if abs(xminus + xi) < 1e-12 or abs(xi * xminus + 1) < 1e-12:
        raise PoleError("x- = -xi or xi x- = -1: central charges have a pole")
    qM = qpow(q, M)
    U = cmath.sqrt((xplus + xi) / (xminus + xi) / qM)
    V = cmath.sqrt((xi * xplus + 1) / (xi * xminus + 1) / qM)
    alpha, at = complex(params.alpha), complex(params.alpha_tilde)
    labels = _labels(M, xplus, xminus, gamma, alpha, V, xi, g, g_tilde, q)
    affine = _labels(
        M, 1 / xplus, 1 / xminus, 1j * at * gamma / xplus, alpha * at**2, 1 / V, xi, g, g_tilde, q
    )
    return Kinematics(
        params=params,
        M=M,
        xplus=xplus,
        xminus=xminus,
        gamma=gamma,
        xi=xi,
        g_tilde=g_tilde,
        z=zp,
        U=U,
        V=V,
        labels=labels,
        affine_labels=affine,
        U_tilde=1 / U,
        V_tilde=1 / V,
    )


def kinematics_from_xplus(
    xplus: complex, params: ModelParams, M: int, gamma: complex = 1.0, root: int = 0
) -> Kinematics:
    """Solve the mass shell for ``x-`` (``root`` indexes the modulus-sorted roots)."""
    xm = solve_mass_shell(xplus, params, M)[root]
    return build_kinematics(xplus, xm, params, M, gamma)


def check_shortening(kin: Kinematics, affine: bool = False) -> float:
    """``|[C]^2 - P K - [M/2]^2|`` with ``q^C = V``, ``P = ab[M]``, ``K = cd[M]``."""
    q, M = kin.q, kin.M
    lab = kin.affine_labels if affine else kin.labels
    V = kin.V_tilde if affine else kin.V
    qm = qnumber(M, q)
    Cq = (V - 1 / V) / (q - 1 / q) if abs(q - 1 / q) > 0 else cmath.log(V) / cmath.log(q)
    P = lab.a * lab.b * qm
    K = lab.c * lab.d * qm
    return abs(Cq**2 - P * K - qnumber(M / 2, q) ** 2)


def consistency_residuals(kin: Kinematics) -> dict[str, float]:
    """Relative residuals of every relation the labels must satisfy.

    Covers the label/central-charge relations of both fermionic nodes, the
    mixed node relations linking ``a, b, c, d`` with their affine partners,
    the two expressions of ``z`` and the shortening condition.
    """
    q, M, g = kin.q, kin.M, kin.params.g
    gt, alpha, alt = kin.g_tilde, complex(kin.params.alpha), complex(kin.params.alpha_tilde)
    qm = qnumber(M, q)
    qh = qpow(q, M / 2)
    qmM = qpow(q, M)
    out: dict[str, float] = {}

    def rel(name, lhs, rhs):
        out[name] = abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1e-300)

    for tag, lab, U, V, al in (
        ("", kin.labels, kin.U, kin.V, alpha),
        ("~", kin.affine_labels, kin.U_tilde, kin.V_tilde, alpha * alt**2),
    ):
        a, b, c, d = lab.as_tuple()
        rel(f"ad{tag}", a * d, (qh * V - 1 / (qh * V)) / (qmM - 1 / qmM))
        rel(f"bc{tag}", b * c, (V / qh - qh / V) / (qmM - 1 / qmM))
        rel(f"ab{tag}", a * b, g * al / qm * (1 - U**2 * V**2))
        rel(f"cd{tag}", c * d, g / (al * qm) * (V**-2 - U**-2))
        rel(f"shell{tag}", (a * d - qmM * b * c) * (a * d - b * c / qmM), 1.0)
    a, b, c, d = kin.labels.as_tuple()
    at_, bt, ct, dt = kin.affine_labels.as_tuple()
    U, V, Ut, Vt = kin.U, kin.V, kin.U_tilde, kin.V_tilde
    rel("a d~", a * dt, gt / (alt * qm) * (qh * U / Ut * V - 1 / (qh * Vt)))
    rel("b c~", b * ct, gt / (alt * qm) * (U / Ut * V / qh - qh / Vt))
    rel("c b~", c * bt, gt * alt / qm * (qh / V - Ut / (U * qh) * Vt))
    rel("d a~", d * at_, gt * alt / qm * (1 / (qh * V) - qh * Ut / U * Vt))
    z = kin.z
    rel("z(U,V)", z, (1 - U**2 * V**2) / (V**2 - U**2))
    rel("z(U~,V~)", z, (1 - Ut**2 * Vt**2) / (Vt**2 - Ut**2))
    rel("z(labels)", z, g / (gt * alpha * alt) * (a * bt - b * at_))
    rel("1/z(labels)", 1 / z, g * alpha * alt / gt * (c * dt - d * ct))
    rel(
        "z(x)",
        z * (q - 1 / q) * (kin.xi - 1 / kin.xi),
        -(kin.xplus - kin.xminus + 1 / kin.xplus - 1 / kin.xminus) / qm,
    )
    out["shortening"] = check_shortening(kin)
    out["shortening~"] = check_shortening(kin, affine=True)
    return out


def random_kinematics(
    rng: np.random.Generator, params: ModelParams, M: int, gamma: complex | None = None
) -> Kinematics:
    """Draw a generic on-shell point: ``x+`` uniform-ish in an annulus, random phase."""
    for _ in range(100):
        r = rng.uniform(1.3, 3.0)
        phi = rng.uniform(0, 2 * np.pi)
        xp = r * cmath.exp(1j * phi)
        gam = gamma if gamma is not None else complex(rng.uniform(0.6, 1.6), rng.uniform(-0.5, 0.5))
        try:
            kin = kinematics_from_xplus(xp, params, M, gam, root=int(rng.integers(0, 2)))
        except KinematicsError:
            continue
        U2, V2 = kin.U**2, kin.V**2
        if abs(U2 * V2 - 1) < 1e-3 or abs(U2 - V2) < 1e-3:
            continue
        return kin
    raise KinematicsError("could not draw a generic kinematic point")


def with_gamma(kin: Kinematics, gamma: complex) -> Kinematics:
    return build_kinematics(kin.xplus, kin.xminus, kin.params, kin.M, gamma)


__all__ = [
    "Kinematics",
    "KinematicsError",
    "Labels",
    "ModelParams",
    "OffShellError",
    "PoleError",
    "build_kinematics",
    "check_shortening",
    "consistency_residuals",
    "kinematics_from_xplus",
    "mass_shell_residual",
    "random_kinematics",
    "replace",
    "solve_mass_shell",
    "with_gamma",
    "xi_of",
    "zeta_of",
]
