import cmath
import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from qboundstate.qnum import QDomainError, qpow
from qboundstate.sixj import (
    Affine,
    FactorialProduct,
    du_from_z12,
    racah_6j,
    rescaled_6j,
    spins_for_X,
    triangle_delta,
    x_via_6j,
)
from qboundstate.smatrix import block_X

from conftest import q_values

complex_du = st.builds(complex, st.floats(-2, 2), st.floats(-2, 2))


def _admissible(j):
    j1, j2, j3, j4, j5, j6 = j
    for a, b, c in ((j1, j2, j3), (j1, j5, j6), (j2, j4, j6), (j3, j4, j5)):
        if (a + b + c) % 2 or a + b < c or b + c < a or c + a < b:
            return False
    return True


ADMISSIBLE = [j for j in itertools.product(range(5), repeat=6) if _admissible(j)]
doubled_spins = st.sampled_from(ADMISSIBLE)


@pytest.mark.parametrize(
    "args2, value",
    [
        ((2, 2, 2, 2, 2, 2), 1 / 6),
        ((4, 4, 4, 4, 4, 4), -3 / 70),
        ((1, 1, 2, 1, 1, 2), 1 / 6),
        ((1, 1, 0, 1, 1, 0), -1 / 2),
    ],
)
def test_classical_racah_values(args2, value):
    assert racah_6j(args2, 1.0) == pytest.approx(value)
    assert racah_6j(args2, 1 + 1e-7) == pytest.approx(value, rel=1e-6)


@given(doubled_spins, q_values)
def test_tetrahedral_symmetry(j, q):
    j1, j2, j3, j4, j5, j6 = j
    ref = racah_6j(j, q)
    for perm in ((j2, j1, j3, j5, j4, j6), (j1, j5, j6, j4, j2, j3), (j4, j5, j3, j1, j2, j6)):
        assert abs(racah_6j(perm, q) - ref) < 1e-10 * max(1, abs(ref))


@given(doubled_spins, q_values)
def test_6j_invariant_under_q_inversion(j, q):
    assert abs(rescaled_6j(j, q) - rescaled_6j(j, 1 / q)) < 1e-10 * max(1, abs(rescaled_6j(j, q)))


def test_triangle_rejects_inadmissible():
    with pytest.raises(QDomainError):
        triangle_delta(1, 1, 1, 0.9)
    assert triangle_delta(2, 2, 0, 1.0) == pytest.approx(cmath.sqrt(2 / 6))


def test_factorial_product_pairs_shifted_arguments():
    q = 0.8 + 0.2j
    u = Affine(s=Fraction(1))
    fp = FactorialProduct().num(u + 3).den(u)
    du = 0.37 - 0.4j
    from qboundstate.qnum import qnumber

    expect = qnumber(du + 1, q) * qnumber(du + 2, q) * qnumber(du + 3, q)
    assert abs(fp.evaluate(du, q) - expect) < 1e-12
    with pytest.raises(QDomainError):
        FactorialProduct().num(u).evaluate(du, q)  # unpaired


def test_negative_factorial_in_denominator_vanishes():
    fp = FactorialProduct().den(Affine(c=Fraction(-2)))
    assert fp.evaluate(0.0, 0.9) == 0


@given(st.integers(1, 3), st.integers(1, 3), complex_du, q_values, st.data())
def test_6j_route_matches_block(M1, M2, du, q, data):
    k1 = data.draw(st.integers(0, M1 - 1))
    k2 = data.draw(st.integers(0, M2 - 1))
    n = data.draw(st.integers(0, k1 + k2))
    z12 = qpow(q, -2 * du)
    M = M1 + M2
    assume(all(abs(z12 - q ** (M - 2 * l)) > 1e-3 for l in range(1, k1 + k2 + 1)))
    ref = complex(block_X(M1, M2, k1, k2, n, z12, q))
    val = complex(x_via_6j(M1, M2, k1, k2, n, du, q))
    assert abs(val - ref) < 1e-8 * max(1, abs(ref))


@given(complex_du, q_values)
def test_6j_route_periodic_in_du(du, q):
    period = 2j * np.pi / cmath.log(q)
    a = x_via_6j(3, 2, 1, 1, 1, du, q)
    b = x_via_6j(3, 2, 1, 1, 1, du + period, q)
    assert abs(a - b) < 1e-8 * max(1, abs(a))


@given(complex_du, q_values)
def test_du_from_z12_inverts(du, q):
    z = qpow(q, -2 * du)
    back = du_from_z12(z, q)
    assert abs(qpow(q, -2 * back) - z) < 1e-10 * abs(z)


def test_spins_are_affine_in_du():
    j = spins_for_X(3, 2, 1, 1, 1)
    assert j[2].s == 0 and j[5].s == 0
    assert j[0].s == Fraction(1, 2) and j[1].s == Fraction(-1, 2)


def test_out_of_range_indices():
    with pytest.raises(IndexError):
        x_via_6j(2, 2, 2, 0, 0, 0.3, 0.9)
