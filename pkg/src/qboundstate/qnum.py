"""Complex q-number kernel.

All q-dependent quantities in the package go through :func:`qpow`, which uses
the principal branch ``q**x = exp(x * log q)``.  Half-integer powers such as
``q**(M/2)`` are therefore mutually consistent: ``qpow(q, a) * qpow(q, b)``
equals ``qpow(q, a + b)`` for every real ``a, b``.

The functions accept Python numbers and, inside :func:`extended_precision`,
``mpmath`` numbers; everything else in the package is plain ``complex``.
"""

from __future__ import annotations

import cmath
import contextvars
import math
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Iterator, Union

import mpmath

Scalar = Union[complex, "mpmath.mpc"]

_EXTENDED: contextvars.ContextVar[int | None] = contextvars.ContextVar("_EXTENDED", default=None)


class QDomainError(ValueError):
    """Raised when a q-function is evaluated outside its domain."""


@contextmanager
def extended_precision(dps: int = 40) -> Iterator[None]:
    """Evaluate q-functions with ``mpmath`` at ``dps`` decimal digits.

    Only the scalar kernels in this module and the subspace-I block honour the
    context; matrix code stays in double precision.
    """
    token = _EXTENDED.set(dps)
    try:
        with mpmath.workdps(dps):
            yield
    finally:
        _EXTENDED.reset(token)


def is_extended() -> bool:
    return _EXTENDED.get() is not None


def scalar(x) -> Scalar:
    """Coerce ``x`` to the active scalar type."""
    if is_extended():
        return mpmath.mpc(x)
    return complex(x)


def _log(q):
    if isinstance(q, (mpmath.mpc, mpmath.mpf)) or is_extended():
        return mpmath.log(mpmath.mpc(q))
    return cmath.log(q)


def _exp(x):
    if isinstance(x, (mpmath.mpc, mpmath.mpf)):
        return mpmath.exp(x)
    return cmath.exp(x)


def _sinh(x):
    if isinstance(x, (mpmath.mpc, mpmath.mpf)):
        return mpmath.sinh(x)
    return cmath.sinh(x)


def _check_finite(value, what: str):
    v = complex(value)
    if not (math.isfinite(v.real) and math.isfinite(v.imag)):
        raise QDomainError(f"{what} is not finite")
    return value


def qpow(q, x) -> Scalar:
    """Principal-branch power ``exp(x log q)``; ``q`` must be nonzero."""
    q = scalar(q)
    if q == 0:
        raise QDomainError("q must be nonzero")
    if isinstance(x, int) and not is_extended():
        return q**x
    return _exp(scalar(x) * _log(q))


def qnumber(k, q) -> Scalar:
    """``[k]_q = (q^k - q^-k) / (q - q^-1)``.

    ``k`` may be any complex number.  The removable singularity at
    ``q = +-1`` is resolved analytically: ``[k]_{+-1} = k (+-1)^(k-1)``.
    """
    q = scalar(q)
    if q == 0:
        raise QDomainError("q-number undefined at q = 0")
    t = _log(q)
    den = _sinh(t)
    if abs(den) == 0:
        return scalar(k) * qpow(q, scalar(k) - 1)
    return _check_finite(_sinh(scalar(k) * t) / den, f"[{k}]_q")


def qfactorial(n: int, q) -> Scalar:
    """``[n]! = [n][n-1]...[1]`` with ``[0]! = 1``."""
    if int(n) != n or n < 0:
        raise QDomainError(f"q-factorial needs a non-negative integer, got {n}")
    out = scalar(1)
    for i in range(1, int(n) + 1):
        out *= qnumber(i, q)
    return out


def qbinomial(a: int, b: int, q) -> Scalar:
    """``[a]! / ([b]! [a-b]!)``; zero when ``b`` lies outside ``0..a``."""
    if b < 0 or b > a or a < 0:
        return scalar(0)
    return qfactorial(a, q) / (qfactorial(b, q) * qfactorial(a - b, q))


def qfactorial_ratio(x, p: int, q) -> Scalar:
    """``[x + p]! / [x]!`` for complex ``x`` and integer offset ``p``.

    Only the ratio is defined: ``prod_{i=1..p} [x+i]`` for ``p >= 0`` and
    ``1 / prod_{i=0..-p-1} [x-i]`` for ``p < 0``.
    """
    out = scalar(1)
    if p >= 0:
        for i in range(1, p + 1):
            out *= qnumber(scalar(x) + i, q)
        return out
    den = scalar(1)
    for i in range(0, -p):
        den *= qnumber(scalar(x) - i, q)
    if den == 0:
        raise QDomainError(f"pole in q-factorial ratio at x = {x}")
    return out / den


@dataclass(frozen=True)
class Tolerance:
    rel: float = 1e-9
    abs: float = 1e-12

    def __post_init__(self):
        if not self.rel > 0 or self.abs < 0:
            raise ValueError("need rel > 0 and abs >= 0")


DEFAULT_TOL = Tolerance()


def approx_eq(x, y, tol: Tolerance = DEFAULT_TOL) -> bool:
    """True iff ``|x - y| <= abs + rel * max(|x|, |y|)``."""
    return abs(x - y) <= tol.abs + tol.rel * max(abs(x), abs(y))
