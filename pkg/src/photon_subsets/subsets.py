"""States of q photons selected at random from a beam.

Writing ``rho = sum_N p_N rho_N + (cross-sector terms)``, a q-photon subset
comes from sector N with probability

    P(q from N) = p_N C(N, q) / Norm(q),     Norm(q) = sum_N p_N C(N, q),

and the subset state is the mixture of ``Tr_{N-q}(rho_N)`` with those weights.
Equivalently its Fock coefficients are the order-q correlations of ``rho``:

    <x| varrho(q|rho) |y> = <O_{y x}>_rho / (Norm(q) sqrt(x! y!)),

i.e. the ket pattern is the annihilated pattern and the bra pattern the
created one. This orientation is the one that keeps the result Hermitian
and reproduces ``rho`` itself for a single-photon state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .combinatorics import binomial, factorial_product, int_sqrt_ratio
from .config import hermitian_tolerance
from .correlations import CorrelationIndex, correlation_table, expectation
from .errors import ConsistencyError, DegenerateNormalization, NonHermitianState, UnbalancedIndex
from .fock import (
    BeamState,
    KetBra,
    SectorDecomposition,
    sector_decompose,
    sorted_compositions,
    sub_occupations,
)
from .removal import remove_k, subset_of_fixed_N

NORMALIZATION_TOL = 1e-10


@dataclass(frozen=True)
class SubsetWeights:
    q: int
    weights: dict[int, float]
    normalization: float


def _normalization_from_correlations(state: BeamState, q: int) -> float:
    total = 0.0
    for m in sorted_compositions(state.modes, q):
        total += expectation(state, CorrelationIndex(m, m)).real / factorial_product(m)
    return total


def subset_weights(decomp: SectorDecomposition, q: int) -> SubsetWeights:
    """P(q from N) for every sector and the expected number of q-photon events."""
    if q < 0:
        raise ValueError(f"q must be non-negative, got {q}")
    raw = {n: s.probability * binomial(n, q) for n, s in decomp.sectors.items()}
    normalization = math.fsum(raw.values())
    if normalization <= 0.0:
        raise DegenerateNormalization(f"no {q}-photon events are possible (Norm({q}) = {normalization:.3e})")
    check = _normalization_from_correlations(decomp.reassemble(), q)
    if abs(check - normalization) > NORMALIZATION_TOL * max(1.0, abs(normalization)):
        raise ConsistencyError(f"Norm({q}) is {normalization!r} from sectors but {check!r} from correlations")
    weights = {n: w / normalization for n, w in raw.items() if n >= q}
    return SubsetWeights(q, weights, normalization)


def random_subset_state(rho: BeamState, q: int) -> BeamState:
    """varrho(q|rho) as the mixture of per-sector reductions."""
    decomp = sector_decompose(rho)
    sw = subset_weights(decomp, q)
    acc: dict[KetBra, complex] = {}
    for n in sorted(sw.weights):
        w = sw.weights[n]
        if w == 0.0:
            continue
        reduced = subset_of_fixed_N(decomp.sectors[n].state, n, q)
        for key, v in reduced.amplitudes.items():
            acc[key] = acc.get(key, 0j) + w * v
    return BeamState._from_dict(rho.modes, acc)


def _assemble(modes: int, acc: dict[KetBra, complex], q: int) -> BeamState:
    normalization = math.fsum(v.real for (k, b), v in acc.items() if k == b)
    if normalization <= 0.0:
        raise DegenerateNormalization(f"no {q}-photon events are possible (Norm({q}) = {normalization:.3e})")
    return BeamState._from_dict(modes, {key: v / normalization for key, v in acc.items()})


def random_subset_state_direct(rho: BeamState, q: int) -> BeamState:
    """varrho(q|rho) assembled entrywise from the order-q correlations of ``rho``."""
    _require_hermitian(rho)
    acc: dict[KetBra, complex] = {}
    for (k, l), value in correlation_table(rho, q).items():
        acc[(l, k)] = value / int_sqrt_ratio(factorial_product(k) * factorial_product(l))
    return _assemble(rho.modes, acc, q)


def random_subset_state_binomial(rho: BeamState, q: int) -> BeamState:
    """varrho(q|rho) from per-mode binomial weights of the parent terms.

    Each parent term ``|k><j|`` with ``|k| = |j| >= q`` feeds
    ``sqrt(prod C(k_i, m_i) C(j_i, n_i)) |m><n|`` whenever ``k - m = j - n``.
    """
    _require_hermitian(rho)
    acc: dict[KetBra, complex] = {}
    for (k, j), v in rho.amplitudes.items():
        if sum(k) != sum(j) or sum(k) < q:
            continue
        for m in sub_occupations(k, q):
            n = tuple(ji - ki + mi for ki, ji, mi in zip(k, j, m))
            if min(n) < 0:
                continue
            weight = 1
            for ki, mi, ji, ni in zip(k, m, j, n):
                weight *= binomial(ki, mi) * binomial(ji, ni)
            key = (m, n)
            acc[key] = acc.get(key, 0j) + v * math.sqrt(weight)
    return _assemble(rho.modes, acc, q)


def subset_state(rho: BeamState, q: int, method: str = "direct") -> BeamState:
    """varrho(q|rho) by the chosen construction ("direct", "convex" or "binomial")."""
    builders = {
        "direct": random_subset_state_direct,
        "convex": random_subset_state,
        "binomial": random_subset_state_binomial,
    }
    if method not in builders:
        raise ValueError(f"unknown method {method!r}; choose from {sorted(builders)}")
    return builders[method](rho, q)


def _require_hermitian(rho: BeamState) -> None:
    # the convex path enforces this through sector_decompose; keep both paths alike
    err = rho.hermitian_error()
    if err > hermitian_tolerance():
        raise NonHermitianState(f"Hermiticity error {err:.3e} exceeds tolerance")


def reconstruct_expectation(rho: BeamState, idx: CorrelationIndex) -> tuple[complex, complex]:
    """(<O_kl>_rho, Norm(|l|) <O_kl>_{varrho(|l| | rho)})."""
    if not idx.balanced:
        raise UnbalancedIndex(f"{idx} is not balanced")
    q = idx.order_l
    sw = subset_weights(sector_decompose(rho), q)
    direct = expectation(rho, idx)
    via_subset = sw.normalization * expectation(random_subset_state(rho, q), idx)
    return direct, via_subset


def uniqueness_counterexample(rho: BeamState, idx: CorrelationIndex, q: int) -> tuple[complex, complex]:
    """(Norm(q) sum_N P(q from N) <O>_{Tr_{N-q} rho_N}, <O>_rho).

    The two agree for every state only when ``q = |l|``.
    """
    if not idx.balanced:
        raise UnbalancedIndex(f"{idx} is not balanced")
    if q < idx.order_l:
        raise ValueError(f"q={q} is smaller than the correlation order {idx.order_l}")
    decomp = sector_decompose(rho)
    sw = subset_weights(decomp, q)
    claimed = 0j
    for n in sorted(sw.weights):
        reduced = subset_of_fixed_N(decomp.sectors[n].state, n, q)
        claimed += sw.weights[n] * expectation(reduced, idx)
    return sw.normalization * claimed, expectation(rho, idx)


def uniqueness_closed_form(rho: BeamState, idx: CorrelationIndex, q: int) -> complex:
    """sum_N p_N C(N - |l|, q - |l|) <O>_{rho_N}, the closed form of the claimed value."""
    decomp = sector_decompose(rho)
    ol = idx.order_l
    total = 0j
    for n, sector in decomp.sectors.items():
        if n < q:
            continue
        total += sector.probability * binomial(n - ol, q - ol) * expectation(sector.state, idx)
    return total


def mixed_sector_equivalence(rho: BeamState, idx: CorrelationIndex) -> tuple[complex, complex]:
    """(<O_kl>_rho, sum_mn rho_mn sqrt(C(|m|,|l|) C(|n|,|k|)) <O_kl>_{Tr_{|m|-|l|}(|m><n|)}).

    Valid for unbalanced indices too; only terms with ``|m| - |l| = |n| - |k| >= 0``
    enter the sum.
    """
    ok, ol = idx.order_k, idx.order_l
    rhs = 0j
    for term in rho.terms():
        m, n, v = term
        removed = sum(m) - ol
        if removed < 0 or removed != sum(n) - ok:
            continue
        reduced = remove_k(BeamState._from_dict(rho.modes, {(m, n): 1.0 + 0j}), removed).state
        weight = math.sqrt(binomial(sum(m), ol) * binomial(sum(n), ok))
        rhs += v * weight * expectation(reduced, idx)
    return expectation(rho, idx), rhs

