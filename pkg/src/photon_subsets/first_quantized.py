"""Brute-force first-quantized picture of fixed-N states.

An N-photon Fock ket becomes the normalized symmetric sum of N-slot product
states, each slot a d-level system:

    |n> = C(N; n)^{-1/2} sum over distinct orderings of |1>^{n_1} ... |d>^{n_d}

Operators are stored as dense ``d^N x d^N`` tensors of shape
``(d,)*N + (d,)*N`` (ket slots first). Nothing here calls the Fock-space
ladder kernels; the point is to check them from first principles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

import numpy as np

from .errors import DimensionCap, EmptyTensor, NotFixedN, NotSymmetric
from .fock import BeamState, KetBra, Occupation, sorted_compositions

DIMENSION_CAP = 4096
SYMMETRY_TOL = 1e-12
RESIDUAL_TOL = 1e-10


@dataclass(frozen=True)
class FirstQuantizedState:
    modes: int
    photons: int
    tensor: np.ndarray  # shape (d,)*N for a ket, (d,)*2N for an operator

    def matrix(self) -> np.ndarray:
        dim = self.modes ** self.photons
        return self.tensor.reshape(dim, dim)


def _check_cap(modes: int, photons: int, cap: int) -> None:
    if modes ** photons > cap:
        raise DimensionCap(f"d^N = {modes}^{photons} exceeds the cap {cap}")


def symmetric_ket(occupation: Occupation, cap: int = DIMENSION_CAP) -> np.ndarray:
    """Dense slot-basis amplitudes of the Fock ket ``|occupation>`` (modes 0-based)."""
    d, n = len(occupation), sum(occupation)
    _check_cap(d, n, cap)
    counts = tuple(occupation)
    orderings = [seq for seq in product(range(d), repeat=n) if tuple(seq.count(i) for i in range(d)) == counts]
    vec = np.zeros((d,) * n, dtype=complex)
    amp = 1.0 / math.sqrt(len(orderings))
    for seq in orderings:
        vec[seq] = amp
    return vec


@lru_cache(maxsize=64)
def _basis_matrix(modes: int, photons: int, cap: int) -> tuple[list[Occupation], np.ndarray]:
    basis = sorted_compositions(modes, photons)
    iso = np.column_stack([symmetric_ket(occ, cap).reshape(-1) for occ in basis])
    iso.setflags(write=False)
    return basis, iso


def to_first_quantized(rho_n: BeamState, n: int, cap: int = DIMENSION_CAP) -> FirstQuantizedState:
    for ket, bra in rho_n.amplitudes:
        if sum(ket) != n or sum(bra) != n:
            raise NotFixedN(f"term |{ket}><{bra}| is not in the {n}-photon sector")
    d = rho_n.modes
    _check_cap(d, n, cap)
    basis, iso = _basis_matrix(d, n, cap)
    index = {occ: i for i, occ in enumerate(basis)}
    coeffs = np.zeros((len(basis), len(basis)), dtype=complex)
    for (ket, bra), v in rho_n.amplitudes.items():
        coeffs[index[ket], index[bra]] = v
    dense = iso @ coeffs @ iso.conj().T
    state = FirstQuantizedState(d, n, dense.reshape((d,) * (2 * n)))
    assert_symmetric(state)
    return state


def _swap(tensor: np.ndarray, i: int, j: int) -> np.ndarray:
    return np.swapaxes(tensor, i, j)


def symmetry_error(state: FirstQuantizedState) -> float:
    """Largest change under swapping adjacent ket slots or adjacent bra slots."""
    t, n = state.tensor, state.photons
    worst = 0.0
    for s in range(n - 1):
        worst = max(worst, float(np.abs(_swap(t, s, s + 1) - t).max()))
        worst = max(worst, float(np.abs(_swap(t, n + s, n + s + 1) - t).max()))
    return worst


def assert_symmetric(state: FirstQuantizedState, tol: float = SYMMETRY_TOL) -> None:
    err = symmetry_error(state)
    if err > tol:
        raise NotSymmetric(f"tensor changes by {err:.3e} under a slot exchange")


def trace_out_slot(state: FirstQuantizedState, slot: int = 0) -> FirstQuantizedState:
    """Contract ket slot ``slot`` against bra slot ``slot``."""
    n = state.photons
    if n < 1:
        raise EmptyTensor("no slot left to trace out")
    if not 0 <= slot < n:
        raise IndexError(f"slot {slot} outside 0..{n - 1}")
    reduced = np.trace(state.tensor, axis1=slot, axis2=n + slot)
    out = FirstQuantizedState(state.modes, n - 1, np.ascontiguousarray(reduced))
    assert_symmetric(out)
    return out


def from_first_quantized(state: FirstQuantizedState, cap: int = DIMENSION_CAP) -> BeamState:
    """Read Fock coefficients back off a symmetric operator.

    Raises :class:`NotSymmetric` if the operator is not permutation
    symmetric or has weight outside the symmetric subspace.
    """
    assert_symmetric(state)
    d, n = state.modes, state.photons
    basis, iso = _basis_matrix(d, n, cap)
    dense = state.matrix()
    coeffs = iso.conj().T @ dense @ iso
    residual = float(np.abs(iso @ coeffs @ iso.conj().T - dense).max()) if dense.size else 0.0
    if residual > RESIDUAL_TOL:
        raise NotSymmetric(f"operator has weight {residual:.3e} outside the symmetric subspace")
    acc: dict[KetBra, complex] = {}
    for i, ket in enumerate(basis):
        for j, bra in enumerate(basis):
            acc[(ket, bra)] = complex(coeffs[i, j])
    return BeamState._from_dict(d, acc)


def project_slot(ket_tensor: np.ndarray, mode: int) -> np.ndarray:
    """(<mode| on slot 0, identity elsewhere) applied to a slot-basis ket."""
    return ket_tensor[mode]


def oracle_remove_one(rho_n: BeamState, n: int, slot: int = 0) -> BeamState:
    return from_first_quantized(trace_out_slot(to_first_quantized(rho_n, n), slot))
