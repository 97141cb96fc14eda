import numpy as np
import pytest

from qboundstate.oracle import (
    FULL_SET,
    DegeneracyError,
    intertwiner_nullspace,
    kernel_dimension,
    kernel_spectrum,
    vacuum_index,
)
from qboundstate.repspace import coproduct_action

from conftest import draw_particles


@pytest.mark.parametrize("Ms", [(1, 1), (2, 1), (1, 2)])
def test_oracle_is_an_intertwiner(params, rng, Ms):
    kin1, kin2 = draw_particles(rng, params, *Ms)
    res = intertwiner_nullspace(kin1, kin2, return_details=True)
    S = res.S
    assert res.kernel_dim == 1 and res.gap > 1e6
    assert S[vacuum_index(*Ms), vacuum_index(*Ms)] == pytest.approx(1)
    for name in FULL_SET:
        lhs = S @ coproduct_action(name, kin1, kin2)
        rhs = coproduct_action(name, kin1, kin2, opposite=True) @ S
        assert np.max(np.abs(lhs - rhs)) < 1e-10 * np.max(np.abs(lhs))


def test_spectrum_ascending(params, rng):
    kin1, kin2 = draw_particles(rng, params, 1, 1)
    s = kernel_spectrum(kin1, kin2)
    assert np.all(np.diff(s) >= 0) and s[0] < 1e-12 < s[1]


def test_too_few_generators_is_degenerate(params, rng):
    # without the fermionic generators the flavour sectors decouple
    kin1, kin2 = draw_particles(rng, params, 1, 1)
    small = ("E1", "F1", "K1", "K2", "K3", "K4")
    assert kernel_dimension(kin1, kin2, small) > 1
    with pytest.raises(DegeneracyError):
        intertwiner_nullspace(kin1, kin2, small)
