import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from photon_subsets.errors import DimensionCap, EmptyTensor, NotFixedN, NotSymmetric
from photon_subsets.first_quantized import (
    FirstQuantizedState,
    from_first_quantized,
    oracle_remove_one,
    project_slot,
    symmetric_ket,
    to_first_quantized,
    trace_out_slot,
)
from photon_subsets.fock import BeamState
from photon_subsets.random_states import random_fixed_n_state
from photon_subsets.removal import remove_one_fixed_N


def test_symmetric_kets():
    v = symmetric_ket((1, 1))
    assert v[0, 1] == v[1, 0] == pytest.approx(1 / math.sqrt(2))
    assert v[0, 0] == v[1, 1] == 0
    assert symmetric_ket((2, 0))[0, 0] == 1
    w = symmetric_ket((2, 1))
    for seq in [(0, 0, 1), (0, 1, 0), (1, 0, 0)]:
        assert w[seq] == pytest.approx(1 / math.sqrt(3))
    assert abs(np.sum(np.abs(w) ** 2) - 1) < 1e-15


def test_trace_out_examples():
    bell = to_first_quantized(BeamState.basis((1, 1)), 2)
    reduced = trace_out_slot(bell)
    assert np.allclose(reduced.matrix(), np.eye(2) / 2)
    single = trace_out_slot(to_first_quantized(BeamState.basis((2, 0)), 2))
    assert np.allclose(single.matrix(), [[1, 0], [0, 0]])
    with pytest.raises(EmptyTensor):
        trace_out_slot(to_first_quantized(BeamState.basis((0, 0)), 0))


def test_slot_projection_identity():
    occ = (2, 1, 1)
    n = sum(occ)
    ket = symmetric_ket(occ)
    for i in range(3):
        if occ[i] == 0:
            continue
        lowered = list(occ)
        lowered[i] -= 1
        expected = math.sqrt(occ[i] / n) * symmetric_ket(tuple(lowered))
        assert np.abs(project_slot(ket, i) - expected).max() < 1e-15


def test_round_trip_and_oracle_example():
    rho = random_fixed_n_state(3, 3, "mixed", 0)
    assert from_first_quantized(to_first_quantized(rho, 3)).max_abs_diff(rho) < 1e-13
    out = oracle_remove_one(BeamState.basis((1, 1)), 2)
    assert out.allclose(BeamState(2, [((1, 0), (1, 0), 0.5), ((0, 1), (0, 1), 0.5)]), atol=1e-15)


def test_errors():
    with pytest.raises(NotFixedN):
        to_first_quantized(BeamState.from_ket({(1, 0): 1, (2, 0): 1}), 2)
    with pytest.raises(DimensionCap):
        to_first_quantized(BeamState.basis((7, 0, 0, 0, 0)), 7)
    lopsided = np.zeros((2, 2, 2, 2), dtype=complex)
    lopsided[0, 1, 0, 1] = 1.0  # |01><01| is not exchange symmetric
    with pytest.raises(NotSymmetric):
        from_first_quantized(FirstQuantizedState(2, 2, lopsided))
    # an antisymmetric two-slot state has no bosonic counterpart
    singlet = np.zeros((2, 2), dtype=complex)
    singlet[0, 1], singlet[1, 0] = 1, -1
    proj = np.einsum("ab,cd->abcd", singlet, singlet.conj()) / 2
    with pytest.raises(NotSymmetric):
        from_first_quantized(FirstQuantizedState(2, 2, proj))


@given(st.integers(1, 3), st.integers(1, 5), st.integers(0, 10**6), st.data())
def test_oracle_and_slot_choice(d, n, seed, data):
    if d == 3:
        n = min(n, 4)
    rho = random_fixed_n_state(d, n, "pure", seed)
    fast = remove_one_fixed_N(rho, n)
    assert fast.max_abs_diff(oracle_remove_one(rho, n)) < 1e-10
    slot = data.draw(st.integers(0, n - 1))
    assert oracle_remove_one(rho, n, slot).max_abs_diff(oracle_remove_one(rho, n, 0)) < 1e-12
