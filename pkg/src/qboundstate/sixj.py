"""Quantum 6j symbols and the 6j route to the subspace-I coefficients.

Spins are passed as doubled integers (``2j``).  The subspace-I rewrite needs
q-factorials whose arguments carry the free complex shift ``du``; these only
occur in ratios with integer offsets, so :class:`FactorialProduct` pairs them
up and evaluates each ratio as a finite product of q-numbers.
"""

from __future__ import annotations

import cmath
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction

from .qnum import QDomainError, qfactorial, qfactorial_ratio, qpow, scalar


@dataclass(frozen=True)
class Affine:
    """The number ``s * du + c`` with rational ``s`` and ``c``."""

    s: Fraction = Fraction(0)
    c: Fraction = Fraction(0)

    def __add__(self, other) -> "Affine":
        if not isinstance(other, Affine):
            other = Affine(c=Fraction(other))
        return Affine(self.s + other.s, self.c + other.c)

    __radd__ = __add__

    def __neg__(self) -> "Affine":
        return Affine(-self.s, -self.c)

    def __sub__(self, other) -> "Affine":
        return self + (-other if isinstance(other, Affine) else Affine(c=-Fraction(other)))

    def __rsub__(self, other) -> "Affine":
        return (-self) + other

    def scale(self, f) -> "Affine":
        f = Fraction(f)
        return Affine(self.s * f, self.c * f)

    def value(self, du):
        return scalar(self.s) * du + scalar(self.c)


def _const(x) -> Affine:
    return Affine(c=Fraction(x))


class FactorialProduct:
    """A product of q-factorials ``[arg]!^(+-1)`` with affine arguments.

    Factorials at negative integers are poles: in a denominator they zero the
    product, in a numerator they raise.  ``du``-dependent factorials are paired
    within equal ``du`` coefficients and evaluated as finite ratios.
    """

    def __init__(self):
        self.terms: list[tuple[Affine, int]] = []

    def num(self, *args: Affine) -> "FactorialProduct":
        self.terms.extend((a, 1) for a in args)
        return self

    def den(self, *args: Affine) -> "FactorialProduct":
        self.terms.extend((a, -1) for a in args)
        return self

    def evaluate(self, du, q):
        out = scalar(1)
        groups: dict[Fraction, list[list[Fraction]]] = defaultdict(lambda: [[], []])
        for arg, p in self.terms:
            if arg.s != 0:
                groups[arg.s][0 if p > 0 else 1].append(arg.c)
                continue
            if arg.c.denominator != 1:
                raise QDomainError(f"q-factorial of the half-integer {arg.c}")
            n = int(arg.c)
            if n < 0:
                if p < 0:
                    return scalar(0)
                raise QDomainError(f"q-factorial of the negative integer {n}")
            f = qfactorial(n, q)
            out = out * f if p > 0 else out / f
        for s, (nums, dens) in groups.items():
            if len(nums) != len(dens):
                raise QDomainError("unbalanced shifted q-factorials: ratio form undefined")
            for cn, cd in zip(sorted(nums), sorted(dens)):
                off = cn - cd
                if off.denominator != 1:
                    raise QDomainError("shifted q-factorials differ by a non-integer offset")
                out *= qfactorial_ratio(scalar(s) * du + scalar(cd), int(off), q)
        return out


def _half(two_j: int) -> Fraction:
    return Fraction(two_j, 2)


def triangle_delta(a2: int, b2: int, c2: int, q):
    """Triangle coefficient for spins ``a2/2, b2/2, c2/2`` (principal square root)."""
    a, b, c = _half(a2), _half(b2), _half(c2)
    args = (a + b - c, b + c - a, c + a - b, 1 + a + b + c)
    for x in args:
        if x.denominator != 1 or x < 0:
            raise QDomainError(f"inadmissible triangle ({a}, {b}, {c})")
    num = qfactorial(int(args[0]), q) * qfactorial(int(args[1]), q) * qfactorial(int(args[2]), q)
    val = complex(num / qfactorial(int(args[3]), q))
    return cmath.sqrt(val)


def _sixj_term(j: tuple[Affine, ...], m: int) -> FactorialProduct:
    j1, j2, j3, j4, j5, j6 = j
    fp = FactorialProduct()
    fp.den(
        j1 + j2 + j4 + j5 - m,
        j1 + j3 + j4 + j6 - m,
        j2 + j3 + j5 + j6 - m,
        _const(m) - (j1 + j2 + j3),
        _const(m) - (j3 + j4 + j5),
        _const(m) - (j2 + j4 + j6),
        _const(m) - (j1 + j5 + j6),
    )
    fp.num(_const(m + 1))
    return fp


def _m_range(j: tuple[Affine, ...]) -> range:
    """Summation window fixed by the factorials that do not involve ``du``.

    The lower end is ``m = -1`` (the first value with a finite ``[m+1]!``);
    for genuine spins the ``m - j_abc`` factorials cut it to ``m >= 0`` anyway,
    but the subspace-I rewrite needs the ``m = -1`` term when ``k1 = n = M1 - 1``.
    """
    j1, j2, j3, j4, j5, j6 = j
    lows = [Fraction(-1)]
    highs = []
    for comb in (j1 + j2 + j4 + j5, j1 + j3 + j4 + j6, j2 + j3 + j5 + j6):
        if comb.s == 0:
            highs.append(comb.c)
    for comb in (j1 + j2 + j3, j3 + j4 + j5, j2 + j4 + j6, j1 + j5 + j6):
        if comb.s == 0:
            lows.append(comb.c)
    for x in lows + highs:
        if x.denominator != 1:
            raise QDomainError("q-factorial argument in the 6j sum is not an integer")
    return range(int(max(lows)), int(min(highs)) + 1)


def rescaled_6j(args2: tuple[int, ...], q):
    """The alternating sum with ``[m+1]!`` over seven factorials; ``args2`` are doubled spins.

    An empty summation window gives 0.
    """
    j = tuple(_const(_half(a)) for a in args2)
    total = scalar(0)
    for m in _m_range(j):
        total += (-1) ** m * _sixj_term(j, m).evaluate(0.0, q)
    return total


def racah_6j(args2: tuple[int, ...], q):
    """Rescaled symbol times the four triangle coefficients; the Racah 6j symbol at ``q = 1``."""
    a1, a2, a3, a4, a5, a6 = args2
    tri = (
        triangle_delta(a1, a2, a3, q)
        * triangle_delta(a1, a5, a6, q)
        * triangle_delta(a2, a4, a6, q)
        * triangle_delta(a3, a4, a5, q)
    )
    return tri * complex(rescaled_6j(args2, q))


def kr_6j(args2: tuple[int, ...], q):
    """Quantum 6j symbol with the extra ``sqrt(2 j3 - 1) sqrt(2 j6 - 1)`` and sign prefactor."""
    j1, j2, j3, j4, j5, j6 = (_half(a) for a in args2)
    sign = -j1 - j2 + 2 * j3 + j4 + j5
    if sign.denominator != 1:
        raise QDomainError("inadmissible spins: non-integer sign exponent")
    pre = cmath.sqrt(float(2 * j3 - 1)) * cmath.sqrt(float(2 * j6 - 1)) * (-1) ** int(sign)
    return pre * racah_6j(args2, q)


def spins_for_X(M1: int, M2: int, k1: int, k2: int, n: int) -> tuple[Affine, ...]:
    """The six spins of the subspace-I coefficient, affine in ``du``."""
    M, dM, K = M1 + M2, M1 - M2, k1 + k2
    half = Fraction(1, 2)
    u = Affine(s=Fraction(1))
    j1 = (u + (K - n + Fraction(dM, 2))).scale(half)
    j2 = (_const(Fraction(M, 2) - 2 - k2) - u).scale(half)
    j3 = _const(Fraction(M1 - 2 - k1 - n, 2))
    j4 = (_const(Fraction(dM, 2) - 1 + k2) - u).scale(half)
    j5 = (u + (Fraction(M, 2) - 1 - K + n)).scale(half)
    j6 = _const(Fraction(M2 - 1, 2))
    return j1, j2, j3, j4, j5, j6


def du_from_z12(z12, q):
    """Principal solution of ``z12 = q^(-2 du)``."""
    return -cmath.log(complex(z12)) / (2 * cmath.log(complex(q)))


def x_via_6j(M1: int, M2: int, k1: int, k2: int, n: int, du, q):
    """Reduced subspace-I coefficient through the rescaled 6j symbol (``D`` stripped).

    ``du`` is the spectral shift with ``z12 = q^(-2 du)``.  The overall sign is
    ``(-1)^(M1 + k2 + n)``; no ``du``-dependent phase survives, so the result
    is periodic under ``du -> du + 2 pi i / log q``.
    """
    if not (0 <= k1 <= M1 - 1 and 0 <= k2 <= M2 - 1 and 0 <= n <= k1 + k2):
        raise IndexError("indices outside subspace I")
    if n > M1 - 1 or k1 + k2 - n > M2 - 1:
        return scalar(0)
    du, q = scalar(du), scalar(q)
    j = spins_for_X(M1, M2, k1, k2, n)
    j1, j2, j3, j4, j5, j6 = j
    qexp = (j1 - j2 + j3).value(du) * (j1 + j2 - j4 - j5).value(du)
    pre = FactorialProduct()
    pre.num(j1 + j2 - j3, j1 + j5 - j6, j3 - j4 + j5, j3 + j4 - j5, j2 - j4 + j6, j4 + j6 - j2)
    pre.den(j1 + j2 + j3 + 1, j1 + j5 + j6)
    total = scalar(0)
    for m in _m_range(j):
        fp = _sixj_term(j, m)
        fp.terms.extend(pre.terms)
        total += (-1) ** m * fp.evaluate(du, q)
    return (-1) ** (M1 + k2 + n) * qpow(q, qexp) * total
