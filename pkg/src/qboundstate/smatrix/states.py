"""Two-particle states of the invariant subspaces and their tensor indices."""

from __future__ import annotations

from ..repspace import BasisState, basis_index

Pair = tuple[BasisState, BasisState]


def _state(m, n, k, l) -> BasisState | None:
    if k < 0 or l < 0:
        return None
    return BasisState(m, n, k, l)


def _pair(s1, s2) -> Pair | None:
    if s1 is None or s2 is None:
        return None
    return (s1, s2)


def state_I(M1: int, M2: int, k1: int, k2: int) -> Pair | None:
    return _pair(_state(0, 1, k1, M1 - k1 - 1), _state(0, 1, k2, M2 - k2 - 1))


def states_II(M1: int, M2: int, k1: int, k2: int) -> list[Pair | None]:
    """The four subspace-II states with labels ``(k1, k2)``; ``None`` where a label is out of range."""
    return [
        _pair(_state(0, 1, k1, M1 - k1 - 1), _state(0, 0, k2, M2 - k2)),
        _pair(_state(0, 0, k1, M1 - k1), _state(0, 1, k2, M2 - k2 - 1)),
        _pair(_state(0, 1, k1, M1 - k1 - 1), _state(1, 1, k2 - 1, M2 - k2 - 1)),
        _pair(_state(1, 1, k1 - 1, M1 - k1 - 1), _state(0, 1, k2, M2 - k2 - 1)),
    ]


def states_III(M1: int, M2: int, k1: int, k2: int) -> list[Pair | None]:
    """The six subspace-III states with labels ``(k1, k2)``."""
    return [
        _pair(_state(0, 0, k1, M1 - k1), _state(0, 0, k2, M2 - k2)),
        _pair(_state(0, 0, k1, M1 - k1), _state(1, 1, k2 - 1, M2 - k2 - 1)),
        _pair(_state(1, 1, k1 - 1, M1 - k1 - 1), _state(0, 0, k2, M2 - k2)),
        _pair(_state(1, 1, k1 - 1, M1 - k1 - 1), _state(1, 1, k2 - 1, M2 - k2 - 1)),
        _pair(_state(1, 0, k1 - 1, M1 - k1), _state(0, 1, k2, M2 - k2 - 1)),
        _pair(_state(0, 1, k1, M1 - k1 - 1), _state(1, 0, k2 - 1, M2 - k2)),
    ]


def swap_species(p: Pair | None) -> Pair | None:
    """Exchange the two fermion species (``m <-> n``) in both factors."""
    if p is None:
        return None
    return tuple(BasisState(s.n, s.m, s.k, s.l) for s in p)  # type: ignore[return-value]


def tensor_index(M1: int, M2: int, p: Pair) -> int:
    return basis_index(M1)[p[0]] * 4 * M2 + basis_index(M2)[p[1]]


def labels_range(M1: int, M2: int, kind: str, K: int) -> list[tuple[int, int]]:
    """All ``(k1, k2)`` with ``k1 + k2 = K`` for which at least one state of ``kind`` exists."""
    fn = {"I": lambda a, b: [state_I(M1, M2, a, b)], "II": lambda a, b: states_II(M1, M2, a, b),
          "III": lambda a, b: states_III(M1, M2, a, b)}[kind]
    return [(k1, K - k1) for k1 in range(0, K + 1) if any(s is not None for s in fn(k1, K - k1))]


def matrix_elements(op, M1: int, M2: int, outs: list[Pair | None], ins: list[Pair | None]):
    """``op[out, in]`` restricted to the given state lists (zero for missing states)."""
    import numpy as np

    out = np.zeros((len(outs), len(ins)), dtype=complex)
    for r, so in enumerate(outs):
        if so is None:
            continue
        io = tensor_index(M1, M2, so)
        for c, si in enumerate(ins):
            if si is not None:
                out[r, c] = op[io, tensor_index(M1, M2, si)]
    return out
