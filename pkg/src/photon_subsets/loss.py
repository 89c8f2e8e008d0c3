"""Uniform beam-splitter loss and its photon-removal decompositions.

Each mode sees ``a -> sqrt(eta) a + sqrt(1 - eta) b`` with ``b`` an
environment mode in vacuum. Three routes to the output state are provided:

* :func:`loss_kraus` applies the per-mode Kraus family
  ``K_j = (1/sqrt(j!)) ((1-eta)/eta)^{j/2} a^j sqrt(eta)^{a^dag a}``;
* :func:`loss_fixed_N_decomposition` mixes ``Tr_k(rho_N)`` with binomial
  weights ``C(N, k) (1-eta)^k eta^(N-k)``;
* :func:`loss_general_decomposition` sums
  ``((1-eta)/eta)^k / k!`` times k-fold ``Tr_1(sqrt(N) . sqrt(N))`` applied to
  ``sqrt(eta)^N rho sqrt(eta)^N``.
"""

from __future__ import annotations

import math

from .combinatorics import binomial
from .errors import BadEta, NotFixedN
from .fock import BeamState, KetBra
from .linear_optics import ModeUnitary, apply_unitary
from .removal import _check_fixed_n, remove_one_general

MIN_DECOMPOSITION_ETA = 1e-6


def _check_eta(eta: float, minimum: float = 0.0) -> float:
    eta = float(eta)
    if not (minimum <= eta <= 1.0) or math.isnan(eta):
        raise BadEta(f"transmission eta={eta!r} must lie in [{minimum}, 1]")
    return eta


def kraus_element(occupation: int, lost: int, eta: float) -> float:
    """``<occupation - lost| K_lost |occupation>`` for a single mode.

    Written as ``sqrt(C(n, j)) eta^{(n-j)/2} (1-eta)^{j/2}``, which is the same
    number as the Kraus formula but stays finite at ``eta = 0``.
    """
    if lost > occupation:
        return 0.0
    return math.sqrt(binomial(occupation, lost)) * eta ** ((occupation - lost) / 2) * (1.0 - eta) ** (lost / 2)


def _lose_mode(state: BeamState, mode: int, eta: float) -> BeamState:
    acc: dict[KetBra, complex] = {}
    for (k, b), v in state.amplitudes.items():
        for j in range(min(k[mode], b[mode]) + 1):
            factor = kraus_element(k[mode], j, eta) * kraus_element(b[mode], j, eta)
            if factor == 0.0:
                continue
            key = (k[:mode] + (k[mode] - j,) + k[mode + 1:], b[:mode] + (b[mode] - j,) + b[mode + 1:])
            acc[key] = acc.get(key, 0j) + v * factor
    return BeamState._from_dict(state.modes, acc)


def loss_kraus(rho: BeamState, eta: float) -> BeamState:
    """Apply identical loss to every mode, one mode after another."""
    eta = _check_eta(eta)
    out = rho
    for mode in range(rho.modes):
        out = _lose_mode(out, mode, eta)
    return out


def loss_fixed_N_decomposition(rho_n: BeamState, n: int, eta: float) -> BeamState:
    """Binomial mixture of states with k of the n photons removed."""
    eta = _check_eta(eta)
    _check_fixed_n(rho_n, n)
    acc: dict[KetBra, complex] = {}
    state = rho_n
    for k in range(n + 1):
        if k > 0:
            state = remove_one_general(state).state
        weight = binomial(n, k) * (1.0 - eta) ** k * eta ** (n - k)
        if weight == 0.0:
            continue
        for key, v in state.amplitudes.items():
            acc[key] = acc.get(key, 0j) + weight * v
    return BeamState._from_dict(rho_n.modes, acc)


def loss_general_decomposition(rho: BeamState, eta: float) -> BeamState:
    """Loss on an arbitrary state as a series of dressed single-photon removals.

    After k removals a surviving term ``|m><n|`` came from a parent with
    ``|m|+k`` and ``|n|+k`` photons, so its overall weight
    ``eta^{(|m|+|n|)/2 + k} ((1-eta)/eta)^k / k!`` collapses to
    ``eta^{(|m|+|n|)/2} (1-eta)^k / k!``. Folding the factors this way avoids
    dividing by a small ``eta``.
    """
    eta = _check_eta(eta, MIN_DECOMPOSITION_ETA)
    half_eta = math.sqrt(eta)
    acc: dict[KetBra, complex] = {}
    state = rho
    for k in range(rho.n_max + 1):
        if k > 0:
            state = remove_one_general(state.dress(math.sqrt, math.sqrt)).state
        coeff = (1.0 - eta) ** k / math.factorial(k)
        if coeff == 0.0:
            break
        dressed = state.dress(lambda n: half_eta ** n, lambda n: half_eta ** n)
        for key, v in dressed.amplitudes.items():
            acc[key] = acc.get(key, 0j) + coeff * v
    return BeamState._from_dict(rho.modes, acc)


def loss(rho: BeamState, eta: float, method: str = "kraus") -> BeamState:
    if method == "kraus":
        return loss_kraus(rho, eta)
    if method == "general":
        return loss_general_decomposition(rho, eta)
    if method in ("fixedN", "fixed_n"):
        if not rho.is_fixed_n():
            raise NotFixedN("the fixed-N decomposition needs a state with a single photon number")
        return loss_fixed_N_decomposition(rho, rho.n_max, eta)
    raise ValueError(f"unknown loss method {method!r}")


def loss_commutes_with_network(rho: BeamState, eta: float, unitary: ModeUnitary) -> tuple[BeamState, BeamState]:
    """(loss after the network, network after the loss)."""
    after = loss_kraus(apply_unitary(rho, unitary), eta)
    before = apply_unitary(loss_kraus(rho, eta), unitary)
    return after, before
