"""Passive linear optical networks acting on Fock-space states.

Convention: the network maps ``a_i^dag -> sum_j U[i, j] a_j^dag``, so

    <m| U |n> = perm(U[n, m]) / sqrt(prod n_i! prod m_j!)

where ``U[n, m]`` repeats row ``i`` ``n_i`` times and column ``j`` ``m_j``
times. With the balanced splitter ``[[1, 1], [1, -1]] / sqrt(2)`` this
sends ``|1,1>`` to ``(|2,0> - |0,2>)/sqrt(2)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .combinatorics import factorial_product
from .errors import ModeMismatch, NonUnitary, TooLarge, TooManyPhotons
from .fock import BeamState, KetBra, Occupation, sorted_compositions

MAX_PERMANENT_SIZE = 12
MAX_NETWORK_PHOTONS = 8


def permanent(matrix) -> complex:
    """Ryser's formula, visiting column subsets in Gray-code order.

    ``O(2^n n)`` operations; sizes above 12 are refused.
    """
    a = np.asarray(matrix, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"permanent needs a square matrix, got shape {a.shape}")
    n = a.shape[0]
    if n > MAX_PERMANENT_SIZE:
        raise TooLarge(f"{n}x{n} permanent exceeds the {MAX_PERMANENT_SIZE}x{MAX_PERMANENT_SIZE} limit")
    if n == 0:
        return 1.0 + 0j
    if n == 1:
        return complex(a[0, 0])
    row_sums = np.zeros(n, dtype=complex)
    total = 0j
    gray = 0
    for step in range(1, 1 << n):
        col = (step & -step).bit_length() - 1
        gray ^= 1 << col
        if gray >> col & 1:
            row_sums += a[:, col]
        else:
            row_sums -= a[:, col]
        term = np.prod(row_sums)
        total += -term if bin(gray).count("1") & 1 else term
    return complex(total if n % 2 == 0 else -total)


@dataclass(frozen=True)
class ModeUnitary:
    entries: np.ndarray

    def __post_init__(self):
        u = np.array(self.entries, dtype=complex)
        if u.ndim != 2 or u.shape[0] != u.shape[1]:
            raise NonUnitary(f"a mode unitary must be square, got shape {u.shape}")
        err = np.abs(u @ u.conj().T - np.eye(u.shape[0])).max()
        if err > 1e-12:
            raise NonUnitary(f"U U^dag deviates from the identity by {err:.3e}")
        u.setflags(write=False)
        object.__setattr__(self, "entries", u)

    @property
    def modes(self) -> int:
        return self.entries.shape[0]

    @classmethod
    def beam_splitter(cls, theta: float = math.pi / 4, phi: float = 0.0) -> "ModeUnitary":
        c, s = math.cos(theta), math.sin(theta)
        e = complex(math.cos(phi), math.sin(phi))
        return cls(np.array([[c, s * e], [s * e.conjugate(), -c]]))

    @classmethod
    def random(cls, modes: int, seed=None) -> "ModeUnitary":
        from scipy.stats import unitary_group

        rng = np.random.default_rng(seed)
        if modes == 1:
            return cls(np.array([[np.exp(2j * np.pi * rng.random())]]))
        return cls(unitary_group.rvs(modes, random_state=rng))


def _expand(occupation: Occupation) -> list[int]:
    return [i for i, count in enumerate(occupation) for _ in range(count)]


def transition_amplitude(u: np.ndarray, out: Occupation, inp: Occupation) -> complex:
    """<out| U |inp> for Fock basis vectors with equal photon totals."""
    if sum(out) != sum(inp):
        return 0j
    rows = _expand(inp)
    cols = _expand(out)
    sub = u[np.ix_(rows, cols)]
    return permanent(sub) / math.sqrt(factorial_product(inp) * factorial_product(out))


def sector_matrix(u: ModeUnitary, n: int) -> tuple[list[Occupation], np.ndarray]:
    """Matrix of the network on the n-photon sector, rows/columns in sorted basis order."""
    return _sector_matrix(u.entries.tobytes(), u.modes, n)


@lru_cache(maxsize=256)
def _sector_matrix(raw: bytes, modes: int, n: int) -> tuple[list[Occupation], np.ndarray]:
    entries = np.frombuffer(raw, dtype=complex).reshape(modes, modes)
    basis = sorted_compositions(modes, n)
    mat = np.empty((len(basis), len(basis)), dtype=complex)
    for j, inp in enumerate(basis):
        for i, out in enumerate(basis):
            mat[i, j] = transition_amplitude(entries, out, inp)
    mat.setflags(write=False)
    return basis, mat


def apply_unitary(rho: BeamState, u: ModeUnitary) -> BeamState:
    """U rho U^dag, computed block by block over (ket sector, bra sector) pairs."""
    if u.modes != rho.modes:
        raise ModeMismatch(f"network acts on {u.modes} modes, state has {rho.modes}")
    if rho.n_max > MAX_NETWORK_PHOTONS:
        raise TooManyPhotons(f"state carries up to {rho.n_max} photons; the network limit is {MAX_NETWORK_PHOTONS}")
    sectors: dict[int, tuple[list[Occupation], dict[Occupation, int], np.ndarray]] = {}

    def sector(n: int):
        if n not in sectors:
            basis, mat = sector_matrix(u, n)
            sectors[n] = (basis, {occ: i for i, occ in enumerate(basis)}, mat)
        return sectors[n]

    blocks: dict[tuple[int, int], np.ndarray] = {}
    for (k, b), v in rho.amplitudes.items():
        nk, nb = sum(k), sum(b)
        kb, kidx, _ = sector(nk)
        bb, bidx, _ = sector(nb)
        if (nk, nb) not in blocks:
            blocks[(nk, nb)] = np.zeros((len(kb), len(bb)), dtype=complex)
        blocks[(nk, nb)][kidx[k], bidx[b]] += v
    acc: dict[KetBra, complex] = {}
    for (nk, nb), coeffs in sorted(blocks.items()):
        kb, _, uk = sector(nk)
        bb, _, ub = sector(nb)
        out = uk @ coeffs @ ub.conj().T
        for i, ket in enumerate(kb):
            for j, bra in enumerate(bb):
                acc[(ket, bra)] = complex(out[i, j])
    return BeamState._from_dict(rho.modes, acc)


def mode_permutation(perm) -> ModeUnitary:
    """Network sending mode ``i`` to mode ``perm[i]``."""
    m = np.zeros((len(perm), len(perm)))
    for i, j in enumerate(perm):
        m[i, j] = 1.0
    return ModeUnitary(m)
