import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from qboundstate.kinematics import PoleError, build_kinematics, solve_mass_shell
from qboundstate.oracle import vacuum_index
from qboundstate.repspace import graded_permutation
from qboundstate.smatrix import X_matrix, assemble_S, block_X, coeff_D, fundamental_S
from qboundstate.smatrix.fundamental import y_fundamental, y_fundamental_labels
from qboundstate.smatrix.states import state_I, tensor_index
from qboundstate.smatrix.subspace_i import coeff_D_labels, coeff_D_x
from qboundstate.verify import check_invariance

from conftest import draw_particles, particle_pair, q_values

small_pairs = st.sampled_from([(1, 1), (2, 1), (1, 2), (2, 2)])


@settings(max_examples=10)
@given(st.data(), small_pairs)
def test_assembled_S_intertwines(data, Ms):
    kin1, kin2 = data.draw(particle_pair(*Ms))
    rep = check_invariance(assemble_S(kin1, kin2), kin1, kin2)
    assert rep.passed, rep.line()


@settings(max_examples=10)
@given(st.data(), small_pairs)
def test_braiding_unitarity(data, Ms):
    kin1, kin2 = data.draw(particle_pair(*Ms))
    P = graded_permutation(*Ms)
    U = P.T @ assemble_S(kin2, kin1) @ P @ assemble_S(kin1, kin2)
    assert np.max(np.abs(U - np.eye(len(U)))) < 1e-9


@given(st.data(), small_pairs)
def test_two_forms_of_D_agree(data, Ms):
    kin1, kin2 = data.draw(particle_pair(*Ms))
    assert abs(coeff_D_x(kin1, kin2) - coeff_D_labels(kin1, kin2)) < 1e-9 * abs(coeff_D_x(kin1, kin2))


@pytest.mark.parametrize("Ms", [(1, 1), (2, 1), (3, 2)])
def test_normalisation(params, rng, Ms):
    kin1, kin2 = draw_particles(rng, params, *Ms)
    S = assemble_S(kin1, kin2)
    v = vacuum_index(*Ms)
    assert S[v, v] == pytest.approx(1)
    i = tensor_index(*Ms, state_I(*Ms, 0, 0))
    assert S[i, i] == pytest.approx(coeff_D(kin1, kin2))


@given(st.integers(1, 4), st.integers(1, 4), st.builds(complex, st.floats(-2, 2), st.floats(-2, 2)), q_values)
def test_X_lowest_sector_is_one(M1, M2, z, q):
    assert abs(block_X(M1, M2, 0, 0, 0, z, q) - 1) < 1e-14


@given(st.integers(1, 4), st.integers(1, 4), st.floats(0.3, 3.0), st.floats(0, 2 * np.pi), q_values)
def test_X_sector_unitarity(M1, M2, r, phi, q):
    # swapping the particles reverses both the ratio and the label order
    z = r * np.exp(1j * phi)
    M = M1 + M2
    assume(all(abs(z - q**j) > 0.02 * abs(q**j) for j in range(-M, M + 1)))
    for K in range(M - 1):
        A = X_matrix(M1, M2, K, z, q)
        B = X_matrix(M2, M1, K, 1 / z, q)[::-1, ::-1]
        assert np.allclose(B @ A, np.eye(len(A)), atol=1e-8 * max(1, np.max(np.abs(A)) * np.max(np.abs(B))))


def test_X_pole_and_range(params):
    q = 0.8 + 0.3j
    with pytest.raises(PoleError):
        block_X(2, 2, 1, 1, 1, q**2, q)  # z12 = q^(M - 2l), l = 1
    with pytest.raises(IndexError):
        block_X(2, 2, 2, 0, 0, 0.3, q)


@pytest.mark.parametrize("seed", range(3))
def test_fundamental_matches_general(params, seed):
    kin1, kin2 = draw_particles(np.random.default_rng(seed), params, 1, 1)
    F, S = fundamental_S(kin1, kin2), assemble_S(kin1, kin2)
    assert np.max(np.abs(F - S)) < 1e-10 * np.max(np.abs(S))
    assert np.allclose(y_fundamental(kin1, kin2), y_fundamental_labels(kin1, kin2), atol=1e-12)


def test_fundamental_needs_M1(params, rng):
    kin1, kin2 = draw_particles(rng, params, 2, 1)
    with pytest.raises(ValueError):
        fundamental_S(kin1, kin2)


def test_pole_at_x1minus_equals_x2plus(params, rng):
    (kin1,) = draw_particles(rng, params, 1)
    xp2 = kin1.xminus
    kin2 = build_kinematics(xp2, solve_mass_shell(xp2, params, 1)[0], params, 1)
    with pytest.raises(PoleError):
        assemble_S(kin1, kin2)


@pytest.mark.parametrize("M", [1, 2])
def test_identical_particles_are_singular(params, rng, M):
    (kin,) = draw_particles(rng, params, M)
    with pytest.raises(PoleError):
        assemble_S(kin, kin)
