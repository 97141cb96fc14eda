import cmath

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qboundstate.qnum import (
    QDomainError,
    Tolerance,
    approx_eq,
    extended_precision,
    qbinomial,
    qfactorial,
    qfactorial_ratio,
    qnumber,
    qpow,
)

from conftest import q_values

ks = st.integers(-8, 12)
complex_k = st.builds(complex, st.floats(-4, 4), st.floats(-2, 2))


@given(complex_k, q_values)
def test_qnumber_invariant_under_q_inversion(k, q):
    assert approx_eq(qnumber(k, q), qnumber(k, 1 / q))


@given(complex_k, q_values)
def test_qnumber_odd_in_k(k, q):
    assert approx_eq(qnumber(-k, q), -qnumber(k, q))


@given(ks, q_values)
def test_qnumber_recursion(k, q):
    # [k+1] = (q + 1/q) [k] - [k-1]
    lhs = qnumber(k + 1, q)
    rhs = (q + 1 / q) * qnumber(k, q) - qnumber(k - 1, q)
    assert approx_eq(lhs, rhs, Tolerance(rel=1e-9, abs=1e-11))


@given(complex_k)
def test_qnumber_at_q_one_is_k(k):
    assert approx_eq(qnumber(k, 1.0), k)
    assert approx_eq(qnumber(k, 1 + 1e-7), k, Tolerance(rel=1e-6, abs=1e-9))


@given(st.integers(0, 9), st.integers(0, 9), q_values)
def test_qbinomial_symmetry(a, b, q):
    assert approx_eq(qbinomial(a, b, q), qbinomial(a, a - b, q))


@given(st.integers(1, 8), st.integers(1, 7), q_values)
def test_qbinomial_pascal(a, b, q):
    # symmetric q-Pascal rule
    lhs = qbinomial(a, b, q)
    rhs = q**b * qbinomial(a - 1, b, q) + q ** (b - a) * qbinomial(a - 1, b - 1, q)
    assert approx_eq(lhs, rhs, Tolerance(rel=1e-9, abs=1e-11))


@given(st.integers(0, 8), st.integers(-6, 6), q_values)
def test_factorial_ratio_matches_integer_factorials(n, p, q):
    if n + p < 0:
        return
    assert approx_eq(qfactorial_ratio(n, p, q), qfactorial(n + p, q) / qfactorial(n, q))


@given(complex_k, st.integers(0, 5), st.integers(0, 5), q_values)
def test_factorial_ratio_composes(x, p1, p2, q):
    lhs = qfactorial_ratio(x, p1 + p2, q)
    rhs = qfactorial_ratio(x, p1, q) * qfactorial_ratio(x + p1, p2, q)
    assert approx_eq(lhs, rhs, Tolerance(rel=1e-8, abs=1e-10))


def test_factorial_domain():
    with pytest.raises(QDomainError):
        qfactorial(-1, 0.9)
    with pytest.raises(QDomainError):
        qfactorial_ratio(0, -1, 0.9)  # 1 / [0]
    with pytest.raises(QDomainError):
        qnumber(1, 0)


def test_qpow_principal_branch():
    q = -0.5 + 0.1j
    assert approx_eq(qpow(q, 0.5), cmath.exp(0.5 * cmath.log(q)))
    assert qpow(q, 3) == q**3


def test_extended_precision_agrees_and_is_finer():
    q = 0.9 + 0.2j
    with extended_precision(50):
        val = qnumber(2.5, q)
        assert isinstance(val, mpmath.mpc)
        h = mpmath.mpf("1e-30")
        near = qnumber(3, 1 + h)
    assert approx_eq(complex(val), qnumber(2.5, q))
    assert abs(complex(near) - 3) < 1e-25


def test_tolerance_validation():
    with pytest.raises(ValueError):
        Tolerance(rel=0)
