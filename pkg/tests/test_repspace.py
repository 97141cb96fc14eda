import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qboundstate.repspace import (
    ALL_GENERATORS,
    basis_index,
    check_algebra_relations,
    check_coproduct_relations,
    coproduct_action,
    enumerate_basis,
    generators,
    graded_kron,
    graded_permutation,
    grading_operator,
    parity_vector,
)

from conftest import particle, particle_pair

Ms = st.integers(1, 4)


@given(Ms)
def test_basis_dimension_and_content(M):
    basis = enumerate_basis(M)
    assert len(basis) == 4 * M
    assert len(set(basis)) == 4 * M
    assert all(s.m + s.n + s.k + s.l == M and s.m in (0, 1) and s.n in (0, 1) for s in basis)
    assert [basis_index(M)[s] for s in basis] == list(range(4 * M))
    # 2M bosonic and 2M fermionic states
    assert parity_vector(M).sum() == 2 * M


@given(st.data(), Ms)
def test_odd_generators_square_to_zero(data, M):
    gens = generators(data.draw(particle(M)))
    for name in ("E2", "F2", "E4", "F4", "E3", "F3"):
        assert np.max(np.abs(gens[name] @ gens[name])) < 1e-12 * max(1, np.max(np.abs(gens[name])) ** 2)


@given(st.data(), Ms)
def test_bosonic_ladder_nilpotent(data, M):
    gens = generators(data.draw(particle(M)))
    for name in ("E1", "F1"):
        assert np.max(np.abs(np.linalg.matrix_power(gens[name], M + 1))) == 0


@given(st.data(), Ms)
def test_generators_respect_grading(data, M):
    gens = generators(data.draw(particle(M)))
    G = grading_operator(M)
    for name in ALL_GENERATORS:
        sign = -1 if name[1] in "24" and name[0] in "EF" else 1
        assert np.allclose(G @ gens[name] @ G, sign * gens[name], atol=1e-14)


@given(st.data(), Ms)
def test_algebra_relations(data, M):
    rep = check_algebra_relations(data.draw(particle(M)))
    assert rep.passed, rep.line()


@given(st.data(), st.sampled_from([(1, 1), (2, 1), (1, 2), (2, 2)]), st.booleans())
def test_coproduct_is_homomorphism(data, Ms, opposite):
    kin1, kin2 = data.draw(particle_pair(*Ms))
    rep = check_coproduct_relations(kin1, kin2, opposite=opposite)
    assert rep.passed, rep.line()


@given(st.integers(1, 3), st.integers(1, 3))
def test_graded_permutation_involution(M1, M2):
    P12, P21 = graded_permutation(M1, M2), graded_permutation(M2, M1)
    assert np.array_equal(P21 @ P12, np.eye(16 * M1 * M2))


@given(st.integers(1, 3), st.integers(1, 3), st.integers(0, 2**16))
def test_graded_kron_multiplication_sign(M1, M2, seed):
    rng = np.random.default_rng(seed)
    p1, p2 = parity_vector(M1), parity_vector(M2)
    d1, d2 = len(p1), len(p2)
    # random homogeneous operators: B odd, C odd
    mask1 = p1[:, None] != p1[None, :]
    mask2 = p2[:, None] != p2[None, :]
    A = rng.normal(size=(d1, d1)) * ~mask1
    C = rng.normal(size=(d1, d1)) * mask1
    B = rng.normal(size=(d2, d2)) * mask2
    D = rng.normal(size=(d2, d2)) * ~mask2
    lhs = graded_kron(A, B, 1, M1) @ graded_kron(C, D, 0, M1)
    rhs = -graded_kron(A @ C, B @ D, 1, M1)
    assert np.allclose(lhs, rhs)


def test_permutation_intertwines_coproducts(params, rng):
    from conftest import draw_particles

    kin1, kin2 = draw_particles(rng, params, 2, 1)
    P = graded_permutation(2, 1)
    for name in ALL_GENERATORS:
        d21 = coproduct_action(name, kin2, kin1)
        dop12 = coproduct_action(name, kin1, kin2, opposite=True)
        assert np.allclose(P.T @ d21 @ P, dop12, atol=1e-12), name


def test_invalid_M():
    with pytest.raises(ValueError):
        enumerate_basis(0)
