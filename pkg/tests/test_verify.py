import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qboundstate import verify as V
from qboundstate.smatrix import assemble_S

from conftest import draw_particles, particle_pair


@settings(max_examples=15)
@given(
    st.tuples(st.integers(1, 3), st.integers(1, 2), st.integers(1, 2)),
    st.lists(st.builds(complex, st.floats(-3, 3), st.floats(-3, 3)), min_size=3, max_size=3),
    st.floats(0.6, 0.95),
    st.floats(-0.6, 0.6),
)
def test_ybe_subspace_I(Ms, zs, r, t):
    q = r * np.exp(1j * t)
    zs = [z if abs(z) > 0.2 else z + 1.0 for z in zs]
    ratios = (zs[0] / zs[1], zs[0] / zs[2], zs[1] / zs[2])
    M = sum(Ms)
    if any(abs(z - q**j) < 1e-2 for z in ratios for j in range(-M, M + 1)):
        return
    rep = V.check_ybe_subspaceI(*Ms, *zs, q)
    assert rep.passed, rep.line()


def test_ybe_subspace_I_rejects_wrong_ordering(params):
    # with the spectral parameters of particles 2 and 3 exchanged on one side the identity fails
    q = params.q
    lhs, rhs = V.ybe_subspaceI_residuals(2, 2, 1, 0.7 + 0.2j, -1.1 + 0.5j, 0.4 - 0.9j, q)
    lhs2, _ = V.ybe_subspaceI_residuals(2, 2, 1, 0.7 + 0.2j, 0.4 - 0.9j, -1.1 + 0.5j, q)
    assert np.max(np.abs(lhs - rhs)) < 1e-10 * np.max(np.abs(lhs))
    assert np.max(np.abs(lhs2 - rhs)) > 1e-3 * np.max(np.abs(lhs))


@pytest.mark.parametrize("Ms", [(1, 1, 1), (2, 1, 1)])
def test_ybe_full(params, rng, Ms):
    kins = draw_particles(rng, params, *Ms)
    assert V.check_ybe_full(*kins).passed


def test_ybe_full_negative_control(params, rng):
    kins = draw_particles(rng, params, 2, 1, 1)

    def corrupted(a, b):
        S = assemble_S(a, b).copy()
        S[1, 1] *= 1 + 1e-3
        return S

    rep = V.check_ybe_full(*kins, builder=corrupted)
    assert not rep.passed and rep.residual_max > 1e-7


@settings(max_examples=5)
@given(st.data(), st.sampled_from([(1, 1), (2, 1)]))
def test_oracle_agreement(data, Ms):
    kin1, kin2 = data.draw(particle_pair(*Ms))
    assert V.check_uniqueness(kin1, kin2).passed
    rep = V.check_oracle_agreement(kin1, kin2)
    assert rep.passed, rep.line()
    assert {"full", "Ib", "IIb"} <= set(rep.details["parts"])


def test_oracle_agreement_detects_swap_sector_error(params, rng):
    kin1, kin2 = draw_particles(rng, params, 2, 1)
    S = assemble_S(kin1, kin2)
    ix = V.subspace_indices(2, 1, "IIb")
    S[ix[0], ix[0]] *= 1.01
    rep = V.check_oracle_agreement(kin1, kin2, S=S)
    assert not rep.passed and rep.details["worst"] in ("IIb", "full")


def test_subspaces_partition_the_basis():
    for M1, M2 in ((1, 1), (2, 1), (3, 2)):
        parts = [V.subspace_indices(M1, M2, t) for t in ("I", "Ib", "II", "IIb", "III")]
        allix = np.concatenate(parts)
        assert sorted(allix) == list(range(16 * M1 * M2))


def test_invariance_rejects_non_intertwiner(params, rng):
    kin1, kin2 = draw_particles(rng, params, 1, 1)
    assert not V.check_invariance(np.eye(16), kin1, kin2).passed


def test_rational_limit_first_order():
    rep = V.check_rational_limit(3, 2, 1.7 + 0.5j, -0.4 + 1.6j, 1.3)
    assert rep.passed, rep.line()
    slopes = [s for s in rep.details["slopes"].values() if s is not None]
    assert slopes and all(abs(s - 1) < 0.05 for s in slopes)


def test_rational_target_is_exact_at_lowest_sector():
    assert V.rational_X(3, 2, 0, 0, 0, 0.3 + 0.1j) == 1


@pytest.mark.parametrize("k1, k2", [(0, 0), (1, 1), (2, 0)])
def test_classical_limit(k1, k2):
    rep = V.check_classical_limit(3, 2, k1, k2, 0.3, 1.4 + 0.6j, -0.7 + 1.5j)
    assert rep.passed, rep.line()
    rep = V.check_full_rational_limit(3, 2, k1, k2, 1.4 + 0.6j, -0.7 + 1.5j)
    assert rep.passed, rep.line()


def test_classical_limit_rejects_wrong_prediction(monkeypatch):
    orig = V.classical_coefficients

    def off(*args):
        return {n: 1.01 * c for n, c in orig(*args).items()}

    monkeypatch.setattr(V, "classical_coefficients", off)
    assert not V.check_classical_limit(2, 2, 1, 0, 0.3, 1.4 + 0.6j, -0.7 + 1.5j).passed


def test_sixj_check(params):
    assert V.check_sixj_identity(3, 2, [0.2 + 0.4j, -1.0 + 0.1j], params.q).passed


def test_report_json_roundtrip(params, rng):
    import json

    kin1, kin2 = draw_particles(rng, params, 1, 1)
    rep = V.check_invariance(assemble_S(kin1, kin2), kin1, kin2, seed=5)
    d = json.loads(rep.to_json())
    assert d["passed"] and d["point"]["seed"] == 5
