import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qboundstate.smatrix import sq1_blocks
from qboundstate.smatrix.blocks import BlockSolver
from qboundstate.verify import check_sq1_closed_forms, check_sq1_relations

from conftest import draw_particles, particle_pair


@settings(max_examples=8)
@given(st.data(), st.integers(1, 4))
def test_closed_forms_equal_general_blocks(data, Q):
    kin1, kin2 = data.draw(particle_pair(Q, 1))
    rep = check_sq1_closed_forms(kin1, kin2)
    assert rep.passed, rep.line()


@settings(max_examples=8)
@given(st.data(), st.integers(1, 4))
def test_shift_relations(data, Q):
    kin1, kin2 = data.draw(particle_pair(Q, 1))
    rep = check_sq1_relations(kin1, kin2)
    assert rep.passed, rep.line()


@pytest.mark.parametrize("Q", [2, 3])
def test_block_coverage(params, rng, Q):
    kin1, kin2 = draw_particles(rng, params, Q, 1)
    blocks = sq1_blocks(kin1, kin2)
    solver = BlockSolver(kin1, kin2)
    # every nonzero general block has a closed-form counterpart
    for K in range(Q + 2):
        for k1 in range(K + 1):
            for n in range(K + 1):
                for table, general in ((blocks.Y, solver.Y), (blocks.Z, solver.Z)):
                    g = general(k1, K - k1, n)
                    if np.max(np.abs(g)) > 1e-12:
                        assert (k1, K - k1, n) in table


def test_relations_catch_a_wrong_block(params, rng, monkeypatch):
    import qboundstate.verify as V

    class Tampered(BlockSolver):
        def Z(self, k1, k2, n):
            blk = super().Z(k1, k2, n)
            return blk * 1.001 if (k1, k2, n) == (1, 1, 2) else blk

    kin1, kin2 = draw_particles(rng, params, 3, 1)
    monkeypatch.setattr(V, "BlockSolver", Tampered)
    assert not V.check_sq1_relations(kin1, kin2).passed
    assert not V.check_sq1_closed_forms(kin1, kin2).passed


def test_needs_fundamental_second_particle(params, rng):
    kin1, kin2 = draw_particles(rng, params, 2, 2)
    with pytest.raises(ValueError):
        sq1_blocks(kin1, kin2)
    with pytest.raises(ValueError):
        check_sq1_relations(kin1, kin2)
