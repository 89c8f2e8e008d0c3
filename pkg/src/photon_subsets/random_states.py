"""Seeded families of random states for property checks.

All randomness comes from numpy's PCG64 bit generator
(``numpy.random.default_rng(seed)``), so a given integer seed reproduces the
same state on any platform. Positivity is guaranteed by building every
density matrix as a Gram product ``G G^dag``.
"""

from __future__ import annotations

import numpy as np

from .fock import BeamState, Occupation, basis_up_to, sorted_compositions

KINDS = ("pure", "mixed", "cross-coherent")


def _rng(seed) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def _complex_normal(rng: np.random.Generator, shape) -> np.ndarray:
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def _from_dense(modes: int, basis: list[Occupation], mat: np.ndarray) -> BeamState:
    mat = 0.5 * (mat + mat.conj().T)
    mat = mat / np.trace(mat).real
    acc = {}
    for i, ket in enumerate(basis):
        for j, bra in enumerate(basis):
            acc[(ket, bra)] = complex(mat[i, j])
    return BeamState._from_dict(modes, acc)


def _gram(rng: np.random.Generator, dim: int, rank: int) -> np.ndarray:
    g = _complex_normal(rng, (dim, rank))
    return g @ g.conj().T


def random_state(modes: int, n_max: int, kind: str = "mixed", seed=0) -> BeamState:
    """A normalized PSD state on all Fock vectors with at most ``n_max`` photons.

    ``pure``: one random superposition across every sector (so it carries
    cross-sector coherences). ``mixed``: block diagonal in photon number,
    each block a Gram matrix plus a positive diagonal. ``cross-coherent``:
    a rank-3 Gram matrix over the whole truncated space.
    """
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}, got {kind!r}")
    rng = _rng(seed)
    basis = basis_up_to(modes, n_max)
    dim = len(basis)
    if kind == "pure":
        vec = _complex_normal(rng, dim)
        return _from_dense(modes, basis, np.outer(vec, vec.conj()))
    if kind == "cross-coherent":
        return _from_dense(modes, basis, _gram(rng, dim, min(3, dim)))
    mat = np.zeros((dim, dim), dtype=complex)
    start = 0
    for n in range(n_max + 1):
        size = len(sorted_compositions(modes, n))
        block = _gram(rng, size, min(2, size)) + np.diag(rng.random(size))
        mat[start:start + size, start:start + size] = block * rng.random()
        start += size
    return _from_dense(modes, basis, mat)


def random_fixed_n_state(modes: int, n: int, kind: str = "mixed", seed=0) -> BeamState:
    """A normalized PSD state confined to the ``n``-photon sector."""
    rng = _rng(seed)
    basis = sorted_compositions(modes, n)
    dim = len(basis)
    if kind == "pure":
        vec = _complex_normal(rng, dim)
        return _from_dense(modes, basis, np.outer(vec, vec.conj()))
    if kind == "mixed":
        return _from_dense(modes, basis, _gram(rng, dim, dim))
    raise ValueError(f"fixed-N states are 'pure' or 'mixed', got {kind!r}")


def random_two_sector_state(modes: int, low: int, high: int, seed=0) -> BeamState:
    """``p rho_low + (1 - p) rho_high`` with random fixed-N parts and ``p`` in [0.2, 0.8]."""
    rng = _rng(seed)
    p = 0.2 + 0.6 * rng.random()
    a = random_fixed_n_state(modes, low, "mixed", rng)
    b = random_fixed_n_state(modes, high, "mixed", rng)
    return p * a + (1.0 - p) * b
