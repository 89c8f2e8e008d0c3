"""Worked applications: reduced-state purity, Stokes parameters, number projectors."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .combinatorics import factorial_product, multinomial
from .correlations import CorrelationIndex, expectation, number_index
from .errors import NotFixedN, NotPure, WrongModeCount
from .fock import BeamState, Occupation, purity, sorted_compositions
from .removal import subset_of_fixed_N
from .subsets import random_subset_state_direct

PURE_TOL = 1e-10


def _check_pure(psi: BeamState) -> None:
    t = psi.trace()
    if t <= 0 or abs(purity(psi) / t**2 - 1.0) > PURE_TOL:
        raise NotPure("state is not rank one")


def reduced_purity_formula(psi_n: BeamState, n: int, q: int) -> float:
    """Purity of Tr_{N-q}(|psi><psi|) from the order-(N-q) moments of ``psi``.

    ``(q!/N!)^2 sum_{|k|=|l|=N-q} C(N-q; k) C(N-q; l) |<O_kl>|^2``
    """
    if not psi_n.is_fixed_n(n):
        raise NotFixedN(f"state is not confined to the {n}-photon sector")
    if not 0 <= q <= n:
        raise ValueError(f"q={q} must lie in 0..{n}")
    _check_pure(psi_n)
    r = n - q
    prefactor = float(Fraction(math.factorial(q), math.factorial(n)) ** 2)
    patterns = sorted_compositions(psi_n.modes, r)
    total = 0.0
    for k in patterns:
        for l in patterns:
            value = expectation(psi_n, CorrelationIndex(k, l))
            total += multinomial(k) * multinomial(l) * abs(value) ** 2
    return prefactor * total


def reduced_purity_direct(psi_n: BeamState, n: int, q: int) -> float:
    """Tr(sigma^2) for sigma = Tr_{N-q}(psi_n)."""
    return purity(subset_of_fixed_N(psi_n, n, q))


@dataclass(frozen=True)
class StokesVector:
    s0: float
    s1: float
    s2: float
    s3: float

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.s0, self.s1, self.s2, self.s3)

    def normalized(self) -> tuple[float, float, float]:
        return (self.s1 / self.s0, self.s2 / self.s0, self.s3 / self.s0)

    def squared_sum(self) -> float:
        return self.s0**2 + self.s1**2 + self.s2**2 + self.s3**2


def stokes(rho: BeamState) -> StokesVector:
    """Stokes parameters of a two-mode state.

    s0 = <n1 + n2>, s1 = <n1 - n2>, s2 = <a1^dag a2 + a2^dag a1>,
    s3 = <-i a1^dag a2 + i a2^dag a1>.
    """
    if rho.modes != 2:
        raise WrongModeCount(f"Stokes parameters need two modes, got {rho.modes}")
    n1 = expectation(rho, number_index(2, 0)).real
    n2 = expectation(rho, number_index(2, 1)).real
    c12 = expectation(rho, number_index(2, 0, 1))
    c21 = expectation(rho, number_index(2, 1, 0))
    s2 = (c12 + c21).real
    s3 = (-1j * c12 + 1j * c21).real
    return StokesVector(n1 + n2, n1 - n2, s2, s3)


_PAULI = {
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def bloch_of_random_photon(rho: BeamState) -> tuple[float, float, float]:
    """Bloch vector of one photon picked at random, in the basis (|1,0>, |0,1>).

    Components are ordered (<sigma_z>, <sigma_x>, <sigma_y>) so that they line
    up with (s1, s2, s3): population imbalance first, circular last.
    """
    if rho.modes != 2:
        raise WrongModeCount(f"a polarization qubit needs two modes, got {rho.modes}")
    single = random_subset_state_direct(rho, 1)
    basis = [(1, 0), (0, 1)]
    mat = np.array([[single[(a, b)] for b in basis] for a in basis])
    return tuple(float(np.trace(_PAULI[ax] @ mat).real) for ax in "zxy")


def projector_expectation_series(rho: BeamState, m: int) -> tuple[float, float]:
    """(sum_{n>=m} (-1)^(n-m)/(m!(n-m)!) <O_nn>, <m|rho|m>) for a single mode.

    The series stops at the largest photon number in ``rho``, beyond which
    every ``<O_nn>`` vanishes.
    """
    if rho.modes != 1:
        raise WrongModeCount(f"the single-mode series needs one mode, got {rho.modes}")
    series = 0.0
    for n in range(m, rho.n_max + 1):
        coeff = (-1) ** (n - m) / (math.factorial(m) * math.factorial(n - m))
        series += coeff * expectation(rho, CorrelationIndex((n,), (n,))).real
    return series, rho[((m,), (m,))].real


def multimode_projector_series(rho: BeamState, pattern: Occupation) -> tuple[float, float]:
    """Diagonal projector ``|m><m|`` on several modes as a product of single-mode series.

    Each mode contributes ``sum_{n_i >= m_i} (-1)^(n_i-m_i)/(m_i!(n_i-m_i)!)``,
    and the product over modes is normally ordered because different modes
    commute. Returns (series, direct).
    """
    pattern = tuple(pattern)
    if len(pattern) != rho.modes:
        raise WrongModeCount(f"pattern has {len(pattern)} modes, state has {rho.modes}")
    series = 0.0
    top = rho.n_max
    for extra in range(0, top - sum(pattern) + 1):
        for shift in sorted_compositions(rho.modes, extra):
            n = tuple(a + b for a, b in zip(pattern, shift))
            coeff = (-1) ** extra / (factorial_product(pattern) * factorial_product(shift))
            series += coeff * expectation(rho, CorrelationIndex(n, n)).real
    return series, rho[(pattern, pattern)].real
