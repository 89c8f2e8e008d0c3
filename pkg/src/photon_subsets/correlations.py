"""Normally ordered correlations and how they scale under photon removal.

``O_kl = prod_i (a_i^dag)^{k_i} prod_i a_i^{l_i}``. On a term ``|m><n|`` the
trace ``<n|O_kl|m>`` is non-zero only when ``m - l = n - k >= 0``, and then
equals ``sqrt(prod m_i!/(m_i-l_i)! * prod n_i!/(n_i-k_i)!)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from .combinatorics import falling_product, int_sqrt_ratio
from .errors import ModeMismatch, UnbalancedIndex, ZeroIntensity
from .fock import BeamState, Occupation, as_occupation, sorted_compositions, sub_occupations, unit
from .removal import _check_fixed_n, remove_one_fixed_N, remove_one_general


@dataclass(frozen=True)
class CorrelationIndex:
    creators: Occupation
    annihilators: Occupation

    def __post_init__(self):
        k = as_occupation(self.creators)
        l = as_occupation(self.annihilators)
        if len(k) != len(l):
            raise ModeMismatch(f"creator pattern {k} and annihilator pattern {l} differ in length")
        object.__setattr__(self, "creators", k)
        object.__setattr__(self, "annihilators", l)

    @property
    def modes(self) -> int:
        return len(self.creators)

    @property
    def order_k(self) -> int:
        return sum(self.creators)

    @property
    def order_l(self) -> int:
        return sum(self.annihilators)

    @property
    def balanced(self) -> bool:
        return self.order_k == self.order_l

    def adjoint(self) -> "CorrelationIndex":
        return CorrelationIndex(self.annihilators, self.creators)

    def __str__(self) -> str:
        return f"O[k={self.creators}, l={self.annihilators}]"


def ladder_element(ket: Occupation, bra: Occupation, idx: CorrelationIndex) -> float:
    """``<bra| O_kl |ket>`` for basis vectors (zero unless ket - l = bra - k >= 0)."""
    k, l = idx.creators, idx.annihilators
    for mi, ni, ki, li in zip(ket, bra, k, l):
        if mi < li or mi - li != ni - ki:
            return 0.0
    return int_sqrt_ratio(falling_product(ket, l) * falling_product(bra, k))


def expectation(rho: BeamState, idx: CorrelationIndex) -> complex:
    """Tr(O_kl rho), iterating over the stored terms of ``rho``."""
    if idx.modes != rho.modes:
        raise ModeMismatch(f"index has {idx.modes} modes, state has {rho.modes}")
    if len(rho) == 0:
        return 0j
    kets, bras, amps = rho.arrays()
    k = np.asarray(idx.creators)
    l = np.asarray(idx.annihilators)
    mask = np.all((kets - l == bras - k) & (kets >= l), axis=1)
    total = 0j
    for row in np.flatnonzero(mask):
        ket = tuple(int(x) for x in kets[row])
        bra = tuple(int(x) for x in bras[row])
        total += amps[row] * int_sqrt_ratio(falling_product(ket, idx.annihilators) * falling_product(bra, idx.creators))
    return complex(total)


def balanced_indices(modes: int, order: int) -> Iterator[CorrelationIndex]:
    patterns = sorted_compositions(modes, order)
    for k in patterns:
        for l in patterns:
            yield CorrelationIndex(k, l)


def indices_up_to(modes: int, max_k: int, max_l: int) -> Iterator[CorrelationIndex]:
    for ok in range(max_k + 1):
        for ol in range(max_l + 1):
            for k in sorted_compositions(modes, ok):
                for l in sorted_compositions(modes, ol):
                    yield CorrelationIndex(k, l)


def correlation_table(rho: BeamState, order: int) -> dict[tuple[Occupation, Occupation], complex]:
    """All balanced correlations ``<O_kl>`` with ``|k| = |l| = order`` in one pass.

    Keys are ``(creators, annihilators)``; absent keys are zero. For each term
    ``|m><n|`` every annihilator pattern ``l <= m`` with ``|l| = order`` is
    paired with the unique ``k = n - (m - l)`` that makes it contribute.
    """
    table: dict[tuple[Occupation, Occupation], complex] = {}
    for (m, n), v in rho.amplitudes.items():
        if sum(m) != sum(n) or sum(m) < order:
            continue
        for l in sub_occupations(m, order):
            k = tuple(ni - mi + li for mi, ni, li in zip(m, n, l))
            if min(k) < 0:
                continue
            key = (k, l)
            table[key] = table.get(key, 0j) + v * int_sqrt_ratio(falling_product(m, l) * falling_product(n, k))
    return table


def scaling_check_fixed_N(rho_n: BeamState, n: int, idx: CorrelationIndex) -> tuple[complex, complex]:
    """(<O>_{Tr_1 rho_N}, (N - |l|)/N <O>_{rho_N}) for a balanced index."""
    if not idx.balanced:
        raise UnbalancedIndex(f"{idx} creates {idx.order_k} but annihilates {idx.order_l} photons")
    _check_fixed_n(rho_n, n)
    lhs = expectation(remove_one_fixed_N(rho_n, n), idx)
    rhs = (n - idx.order_l) / n * expectation(rho_n, idx)
    return lhs, rhs


def removal_factor(ket_total: int, bra_total: int, order_l: int) -> float:
    """Per-term factor (|m| - |l|)/sqrt(|m||n|); zero when either side is vacuum."""
    if ket_total == 0 or bra_total == 0:
        return 0.0
    return (ket_total - order_l) / math.sqrt(ket_total * bra_total)


def scaling_general(rho: BeamState, idx: CorrelationIndex, removed: BeamState | None = None) -> tuple[complex, complex]:
    """(<O>_{Tr_1 rho}, sum of contributing terms scaled by the per-term factor).

    ``removed`` may carry a precomputed ``Tr_1 rho`` when many indices are checked.
    """
    removed = remove_one_general(rho).state if removed is None else removed
    lhs = expectation(removed, idx)
    rhs = 0j
    for (m, n), v in rho.amplitudes.items():
        element = ladder_element(m, n, idx)
        if element:
            rhs += v * element * removal_factor(sum(m), sum(n), idx.order_l)
    return lhs, rhs


def _sqrt_ratio(shift: int):
    def f(n: int) -> float:
        return math.sqrt(max(n - shift, 0) / n) if n > 0 else 0.0
    return f


def _inv_sqrt(n: int) -> float:
    return 1.0 / math.sqrt(n) if n > 0 else 0.0


def removal_dressings(rho: BeamState, order_k: int, order_l: int) -> tuple[BeamState, BeamState, BeamState]:
    """The three dressings of ``rho`` whose O_kl expectation equals that after Tr_1.

    1. ``(N - |l|)/sqrt(N) rho 1/sqrt(N)``
    2. ``1/sqrt(N) rho (N - |k|)/sqrt(N)``
    3. ``sqrt((N - |l|)/N) rho sqrt((N - |k|)/N)``

    ``1/sqrt(N)`` is zero on the vacuum. In the third form a negative
    ``N - |l|`` only occurs on terms that cannot contribute, so it is clamped.
    """
    first = rho.dress(lambda n: (n - order_l) * _inv_sqrt(n), _inv_sqrt)
    second = rho.dress(_inv_sqrt, lambda n: (n - order_k) * _inv_sqrt(n))
    third = rho.dress(_sqrt_ratio(order_l), _sqrt_ratio(order_k))
    return first, second, third


def removal_forms(rho: BeamState, idx: CorrelationIndex) -> tuple[complex, complex, complex]:
    """``<O_kl>`` in each of the three dressings from :func:`removal_dressings`."""
    return tuple(expectation(s, idx) for s in removal_dressings(rho, idx.order_k, idx.order_l))


def number_index(modes: int, i: int, j: int | None = None) -> CorrelationIndex:
    """``a_i^dag a_j`` (``j`` defaults to ``i``)."""
    j = i if j is None else j
    return CorrelationIndex(unit(modes, i), unit(modes, j))


def total_photon_number(rho: BeamState) -> float:
    return sum(expectation(rho, number_index(rho.modes, i)).real for i in range(rho.modes))


def g2(rho: BeamState, mode_i: int, mode_j: int, tol: float = 1e-14) -> float:
    """<a_i^dag a_j^dag a_j a_i> / (<a_i^dag a_i><a_j^dag a_j>); modes are 0-based."""
    d = rho.modes
    ni = expectation(rho, number_index(d, mode_i)).real
    nj = expectation(rho, number_index(d, mode_j)).real
    if abs(ni) <= tol or abs(nj) <= tol:
        raise ZeroIntensity(f"mode intensities are {ni:.3e} and {nj:.3e}")
    pattern = tuple(a + b for a, b in zip(unit(d, mode_i), unit(d, mode_j)))
    return expectation(rho, CorrelationIndex(pattern, pattern)).real / (ni * nj)


def parse_pattern(text: str | Iterable[int]) -> Occupation:
    """Parse ``"2,0,1"`` into an occupation tuple."""
    if isinstance(text, str):
        parts = [p for p in text.replace(" ", "").split(",") if p != ""]
        return as_occupation(int(p) for p in parts)
    return as_occupation(text)
