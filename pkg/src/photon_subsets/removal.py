"""Mode-agnostic removal of photons from a beam.

For a state with exactly N photons, removing one photon is

    Tr_1(rho_N) = (1/N) sum_i a_i rho_N a_i^dag

and for an arbitrary state the photon-number weighting moves inside:

    Tr_1(rho) = sum_i a_i N^{-1/2} rho N^{-1/2} a_i^dag
              = sum_i (N+1)^{-1/2} a_i rho a_i^dag (N+1)^{-1/2}

with ``N^{-1/2}`` taken as zero on the vacuum. The result is therefore
subnormalized by the vacuum weight of the input.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .config import debug_checks
from .errors import BadSubsetSize, ConsistencyError, EmptyState, NotFixedN
from .fock import BeamState, KetBra, apply_annihilation


@dataclass(frozen=True)
class RemovalResult:
    state: BeamState
    removed: int
    trace_retained: float


def _inv_sqrt(n: int) -> float:
    return 1.0 / math.sqrt(n) if n > 0 else 0.0


def _lower_all_modes(state: BeamState) -> BeamState:
    """sum_i a_i rho a_i^dag, accumulated in a fixed order."""
    acc: dict[KetBra, complex] = {}
    for i in range(state.modes):
        for key, v in apply_annihilation(state, i, "both").amplitudes.items():
            acc[key] = acc.get(key, 0j) + v
    return BeamState._from_dict(state.modes, acc)


def _check_fixed_n(state: BeamState, n: int) -> None:
    for ket, bra in state.amplitudes:
        if sum(ket) != n or sum(bra) != n:
            raise NotFixedN(f"term |{ket}><{bra}| is not in the {n}-photon sector")


def remove_one_fixed_N(rho_n: BeamState, n: int) -> BeamState:
    """Remove one photon from a state with exactly ``n`` photons (trace preserving)."""
    if n == 0:
        raise EmptyState("cannot remove a photon from the vacuum")
    _check_fixed_n(rho_n, n)
    return _lower_all_modes(rho_n) / n


def _remove_one_inside(rho: BeamState) -> BeamState:
    return _lower_all_modes(rho.dress(_inv_sqrt, _inv_sqrt))


def _remove_one_outside(rho: BeamState) -> BeamState:
    return _lower_all_modes(rho).dress(lambda n: _inv_sqrt(n + 1), lambda n: _inv_sqrt(n + 1))


def remove_one_forms(rho: BeamState) -> tuple[BeamState, BeamState]:
    """Both operator orderings of the general single-photon removal, for cross-checking."""
    return _remove_one_inside(rho), _remove_one_outside(rho)


def remove_one_general(rho: BeamState) -> RemovalResult:
    out = _remove_one_inside(rho)
    if debug_checks():
        other = _remove_one_outside(rho)
        diff = out.max_abs_diff(other)
        if diff > 1e-13:
            raise ConsistencyError(f"the two removal orderings differ by {diff:.3e}")
    return RemovalResult(out, 1, out.trace())


def remove_k(rho: BeamState, k: int) -> RemovalResult:
    """Remove ``k`` photons by iterating single-photon removal."""
    if k < 0:
        raise BadSubsetSize(f"cannot remove a negative number of photons ({k})")
    state = rho
    for _ in range(k):
        state = remove_one_general(state).state
    return RemovalResult(state, k, state.trace())


def subset_of_fixed_N(rho_n: BeamState, n: int, q: int) -> BeamState:
    """The state of ``q`` photons picked from an ``n``-photon state, i.e. Tr_{n-q}(rho_n)."""
    if q < 0 or q > n:
        raise BadSubsetSize(f"subset size q={q} must lie in 0..{n}")
    _check_fixed_n(rho_n, n)
    state = rho_n
    for remaining in range(n, q, -1):
        state = remove_one_fixed_N(state, remaining)
    return state
