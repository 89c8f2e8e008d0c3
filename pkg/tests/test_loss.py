import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from photon_subsets.errors import BadEta, NotFixedN
from photon_subsets.fock import BeamState
from photon_subsets.linear_optics import ModeUnitary, apply_unitary
from photon_subsets.loss import (
    kraus_element,
    loss,
    loss_commutes_with_network,
    loss_fixed_N_decomposition,
    loss_general_decomposition,
    loss_kraus,
)
from photon_subsets.random_states import random_fixed_n_state, random_state
from photon_subsets.removal import remove_one_fixed_N

kinds = st.sampled_from(["pure", "mixed", "cross-coherent"])
seeds = st.integers(0, 10**6)
etas = st.sampled_from([0.3, 0.5, 0.9])


def dilation_loss(rho, eta):
    """Mix every mode with a vacuum environment mode on a splitter, then discard the environment."""
    d = rho.modes
    t, r = math.sqrt(eta), math.sqrt(1 - eta)
    u = np.zeros((2 * d, 2 * d))
    for i in range(d):
        u[i, i], u[i, d + i] = t, r
        u[d + i, i], u[d + i, d + i] = r, -t
    vac = (0,) * d
    joint = BeamState(2 * d, [(k + vac, b + vac, v) for (k, b), v in rho.amplitudes.items()])
    out = apply_unitary(joint, ModeUnitary(u))
    acc = {}
    for (k, b), v in out.amplitudes.items():
        if k[d:] == b[d:]:
            key = (k[:d], b[:d])
            acc[key] = acc.get(key, 0j) + v
    return BeamState(d, acc)


def test_kraus_examples():
    one = BeamState.basis((1,))
    expected = BeamState(1, [((1,), (1,), 0.5), ((0,), (0,), 0.5)])
    assert loss_kraus(one, 0.5).allclose(expected, atol=1e-15)
    eta = 0.3
    two = loss_kraus(BeamState.basis((2,)), eta)
    assert two[((2,), (2,))] == pytest.approx(eta**2)
    assert two[((1,), (1,))] == pytest.approx(2 * eta * (1 - eta))
    assert two[((0,), (0,))] == pytest.approx((1 - eta) ** 2)
    rho = random_state(2, 3, "cross-coherent", 0)
    assert loss_kraus(rho, 1.0) == rho


def test_total_loss_gives_vacuum():
    rho = random_state(2, 3, "mixed", 1)
    assert loss_kraus(rho, 0.0).allclose(BeamState.basis((0, 0)), atol=1e-12)
    assert kraus_element(3, 3, 0.0) == 1.0
    assert kraus_element(3, 2, 0.0) == 0.0


def test_bad_eta():
    rho = BeamState.basis((1,))
    for eta in (-0.1, 1.5, float("nan")):
        with pytest.raises(BadEta):
            loss_kraus(rho, eta)
    with pytest.raises(BadEta):
        loss_general_decomposition(rho, 1e-8)


def test_fixed_n_examples():
    one = BeamState.basis((1,))
    assert loss_fixed_N_decomposition(one, 1, 0.5).max_abs_diff(loss_kraus(one, 0.5)) < 1e-15
    rho = random_fixed_n_state(2, 3, "mixed", 2)
    assert loss_fixed_N_decomposition(rho, 3, 1.0) == rho
    noon = BeamState.from_ket({(2, 0): 1, (0, 2): 1})
    expected = 0.64 * noon + 0.32 * remove_one_fixed_N(noon, 2) + 0.04 * BeamState.basis((0, 0))
    assert loss_fixed_N_decomposition(noon, 2, 0.8).max_abs_diff(expected) < 1e-15
    assert loss_kraus(noon, 0.8).max_abs_diff(expected) < 1e-15
    with pytest.raises(NotFixedN):
        loss_fixed_N_decomposition(random_state(1, 2, "pure", 0), 2, 0.5)


def test_general_examples():
    eta = 0.4
    coherence = BeamState.basis((1,), (0,))
    assert loss_general_decomposition(coherence, eta).allclose(
        BeamState.basis((1,), (0,), amplitude=math.sqrt(eta)), atol=1e-15
    )
    rho = random_state(2, 3, "cross-coherent", 3)
    assert loss_general_decomposition(rho, 1.0).max_abs_diff(rho) < 1e-15


def test_general_on_block_diagonal_is_sectorwise():
    rho = random_state(2, 3, "mixed", 4)
    expected = BeamState.zero(2)
    for n in range(4):
        block = rho.project_sector(n)
        expected = expected + loss_fixed_N_decomposition(block, n, 0.6)
    assert loss_general_decomposition(rho, 0.6).max_abs_diff(expected) < 1e-14


@given(st.integers(1, 3), st.integers(1, 6), etas, seeds)
def test_fixed_n_matches_kraus(d, n, eta, seed):
    if d == 3:
        n = min(n, 4)
    rho = random_fixed_n_state(d, n, "mixed", seed)
    assert loss_fixed_N_decomposition(rho, n, eta).max_abs_diff(loss_kraus(rho, eta)) < 1e-10


@given(st.integers(1, 3), st.integers(0, 4), kinds, etas, seeds)
def test_general_matches_kraus_and_preserves_trace(d, n_max, kind, eta, seed):
    if d == 3:
        n_max = min(n_max, 3)
    rho = random_state(d, n_max, kind, seed)
    kraus = loss_kraus(rho, eta)
    general = loss_general_decomposition(rho, eta)
    assert general.max_abs_diff(kraus) < 1e-10
    assert abs(kraus.trace() - rho.trace()) < 1e-12
    assert abs(general.trace() - rho.trace()) < 1e-12


@given(st.integers(1, 2), st.integers(0, 3), kinds, st.floats(0.05, 1.0), seeds)
def test_kraus_matches_beam_splitter_dilation(d, n_max, kind, eta, seed):
    rho = random_state(d, n_max, kind, seed)
    assert loss_kraus(rho, eta).max_abs_diff(dilation_loss(rho, eta)) < 1e-12


@given(st.integers(1, 3), st.integers(0, 3), st.floats(0, 1), st.floats(0, 1), seeds)
def test_semigroup(d, n_max, eta1, eta2, seed):
    rho = random_state(d, n_max, "cross-coherent", seed)
    composed = loss_kraus(loss_kraus(rho, eta1), eta2)
    assert composed.max_abs_diff(loss_kraus(rho, eta1 * eta2)) < 1e-10


def test_dispatch():
    rho = random_fixed_n_state(2, 2, "pure", 0)
    outs = [loss(rho, 0.5, m) for m in ("kraus", "general", "fixedN")]
    assert outs[0].max_abs_diff(outs[1]) < 1e-14 and outs[0].max_abs_diff(outs[2]) < 1e-14
    with pytest.raises(ValueError):
        loss(rho, 0.5, "thermal")
    with pytest.raises(NotFixedN):
        loss(random_state(2, 2, "pure", 0), 0.5, "fixedN")


def test_commutation_examples():
    bs = ModeUnitary.beam_splitter()
    rho = random_state(2, 2, "mixed", 5)
    a, b = loss_commutes_with_network(rho, 1.0, bs)
    assert a.max_abs_diff(apply_unitary(rho, bs)) < 1e-14 and b.max_abs_diff(a) < 1e-14
    a, b = loss_commutes_with_network(BeamState.basis((1, 0)), 0.5, bs)
    assert a.max_abs_diff(b) < 1e-14
    assert a[((1, 0), (0, 1))] == pytest.approx(0.25)
    assert a[((0, 0), (0, 0))] == pytest.approx(0.5)


@given(st.integers(2, 3), st.integers(0, 4), seeds)
def test_commutes_with_random_networks(d, n_max, seed):
    if d == 3:
        n_max = min(n_max, 3)
    u = ModeUnitary.random(d, seed)
    a, b = loss_commutes_with_network(random_state(d, n_max, "cross-coherent", seed), 0.7, u)
    assert a.max_abs_diff(b) < 1e-9
