"""Sparse operators on multimode bosonic Fock space.

A :class:`BeamState` stores ``rho = sum rho[m, n] |m><n|`` as a map from
``(ket, bra)`` occupation tuples to complex amplitudes. States are immutable;
every operation returns a new one.

Basis kets follow the usual convention
``|n> = prod_i (a_i^dag)^{n_i} / sqrt(n_i!) |vac>``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Callable, Iterable, Iterator, Mapping, NamedTuple

import numpy as np

from .config import MAX_PHOTONS, PRUNE_EPS, hermitian_tolerance
from .errors import (
    InvalidOccupation,
    ModeMismatch,
    ModeOutOfRange,
    NonHermitianState,
    TooManyPhotons,
    ZeroTrace,
)

Occupation = tuple[int, ...]
KetBra = tuple[Occupation, Occupation]


class KetBraTerm(NamedTuple):
    ket: Occupation
    bra: Occupation
    amplitude: complex


def as_occupation(values: Iterable[int], modes: int | None = None) -> Occupation:
    """Validate and freeze an occupation vector."""
    occ = []
    for v in values:
        if isinstance(v, bool) or not isinstance(v, (int, np.integer, float)):
            raise InvalidOccupation(f"occupations must be integers, got {v!r}")
        if isinstance(v, float) and not v.is_integer():
            raise InvalidOccupation(f"occupations must be integers, got {v!r}")
        if v < 0:
            raise InvalidOccupation(f"occupations must be non-negative, got {v!r}")
        occ.append(int(v))
    if modes is not None and len(occ) != modes:
        raise ModeMismatch(f"occupation {tuple(occ)} has {len(occ)} modes, expected {modes}")
    if sum(occ) > MAX_PHOTONS:
        raise TooManyPhotons(f"{tuple(occ)} carries {sum(occ)} photons; the cap is {MAX_PHOTONS}")
    return tuple(occ)


def compositions(modes: int, total: int) -> Iterator[Occupation]:
    """All occupation vectors of ``modes`` modes holding ``total`` photons.

    Yielded in lexicographic order.
    """
    if modes == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in compositions(modes - 1, total - first):
            yield (first,) + rest


def sorted_compositions(modes: int, total: int) -> list[Occupation]:
    return sorted(compositions(modes, total))


def basis_up_to(modes: int, n_max: int) -> list[Occupation]:
    out: list[Occupation] = []
    for n in range(n_max + 1):
        out.extend(sorted_compositions(modes, n))
    return out


def sub_occupations(top: Occupation, total: int) -> Iterator[Occupation]:
    """Occupation vectors ``s`` with ``s <= top`` componentwise and ``|s| = total``."""
    if total < 0 or total > sum(top):
        return
    if len(top) == 1:
        yield (total,)
        return
    rest_capacity = sum(top[1:])
    for first in range(max(0, total - rest_capacity), min(top[0], total) + 1):
        for rest in sub_occupations(top[1:], total - first):
            yield (first,) + rest


def unit(modes: int, i: int) -> Occupation:
    return tuple(1 if j == i else 0 for j in range(modes))


class BeamState:
    """Sparse (intended Hermitian) operator on ``modes``-mode Fock space."""

    __slots__ = ("_modes", "_terms", "_trace", "_arrays")

    def __init__(self, modes: int, terms: Mapping[KetBra, complex] | Iterable = (), *, prune: float = PRUNE_EPS):
        if int(modes) != modes or modes < 1:
            raise ModeMismatch(f"mode count must be a positive integer, got {modes!r}")
        modes = int(modes)
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[KetBra, complex] = {}
        for entry in items:
            if len(entry) == 3:
                ket, bra, amp = entry
            else:
                (ket, bra), amp = entry
            key = (as_occupation(ket, modes), as_occupation(bra, modes))
            acc[key] = acc.get(key, 0j) + complex(amp)
        self._init(modes, acc, prune)

    def _init(self, modes: int, acc: dict[KetBra, complex], prune: float) -> None:
        self._modes = modes
        self._terms = {k: v for k, v in acc.items() if abs(v) > prune}
        self._trace = math.fsum(v.real for (ket, bra), v in self._terms.items() if ket == bra)
        self._arrays = None

    @classmethod
    def _from_dict(cls, modes: int, acc: dict[KetBra, complex], prune: float = PRUNE_EPS) -> "BeamState":
        # trusted constructor for kernels: keys are already valid occupation tuples
        obj = cls.__new__(cls)
        obj._init(modes, acc, prune)
        return obj

    @classmethod
    def zero(cls, modes: int) -> "BeamState":
        return cls._from_dict(modes, {})

    @classmethod
    def basis(cls, ket: Iterable[int], bra: Iterable[int] | None = None, amplitude: complex = 1.0) -> "BeamState":
        """The single ket-bra ``amplitude |ket><bra|`` (``bra`` defaults to ``ket``)."""
        ket = tuple(ket)
        bra = ket if bra is None else tuple(bra)
        return cls(len(ket), [(ket, bra, amplitude)])

    @classmethod
    def from_ket(cls, amplitudes: Mapping[Iterable[int], complex], modes: int | None = None, normalize: bool = True) -> "BeamState":
        """Pure state ``|psi><psi|`` from Fock amplitudes of ``|psi>``."""
        vec = {as_occupation(k): complex(v) for k, v in amplitudes.items()}
        if not vec:
            raise ModeMismatch("a pure state needs at least one amplitude")
        if modes is None:
            modes = len(next(iter(vec)))
        for k in vec:
            as_occupation(k, modes)
        if normalize:
            norm = math.sqrt(math.fsum(abs(v) ** 2 for v in vec.values()))
            if norm == 0:
                raise ZeroTrace("cannot normalize a zero vector")
            vec = {k: v / norm for k, v in vec.items()}
        acc = {(m, n): a * b.conjugate() for m, a in vec.items() for n, b in vec.items()}
        return cls._from_dict(modes, acc)

    # --- container protocol -------------------------------------------------

    @property
    def modes(self) -> int:
        return self._modes

    @property
    def amplitudes(self) -> Mapping[KetBra, complex]:
        return MappingProxyType(self._terms)

    def terms(self) -> list[KetBraTerm]:
        """Stored terms in canonical order (lexicographic on bra, then ket)."""
        keys = sorted(self._terms, key=lambda kb: (kb[1], kb[0]))
        return [KetBraTerm(k, b, self._terms[(k, b)]) for k, b in keys]

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[KetBraTerm]:
        return iter(self.terms())

    def __getitem__(self, key: KetBra) -> complex:
        ket, bra = key
        return self._terms.get((tuple(ket), tuple(bra)), 0j)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BeamState):
            return NotImplemented
        return self._modes == other._modes and self._terms == other._terms

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"BeamState(modes={self._modes}, terms={len(self._terms)}, trace={self._trace:.6g})"

    # --- arithmetic ---------------------------------------------------------

    def _check_modes(self, other: "BeamState") -> None:
        if other._modes != self._modes:
            raise ModeMismatch(f"mode counts differ: {self._modes} vs {other._modes}")

    def __add__(self, other: "BeamState") -> "BeamState":
        self._check_modes(other)
        acc = dict(self._terms)
        for k, v in other._terms.items():
            acc[k] = acc.get(k, 0j) + v
        return BeamState._from_dict(self._modes, acc)

    def __sub__(self, other: "BeamState") -> "BeamState":
        return self + (-1.0) * other

    def __mul__(self, scalar: complex) -> "BeamState":
        return BeamState._from_dict(self._modes, {k: v * scalar for k, v in self._terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, scalar: complex) -> "BeamState":
        return BeamState._from_dict(self._modes, {k: v / scalar for k, v in self._terms.items()})

    def dagger(self) -> "BeamState":
        return BeamState._from_dict(self._modes, {(b, k): v.conjugate() for (k, b), v in self._terms.items()})

    # --- scalar summaries ---------------------------------------------------

    def trace(self) -> float:
        return self._trace

    def hermitian_error(self) -> float:
        worst = 0.0
        for (k, b), v in self._terms.items():
            worst = max(worst, abs(v - self._terms.get((b, k), 0j).conjugate()))
        return worst

    def is_hermitian(self, tol: float | None = None) -> bool:
        return self.hermitian_error() <= (hermitian_tolerance() if tol is None else tol)

    def is_normalized(self, tol: float = 1e-12) -> bool:
        return abs(self._trace - 1.0) <= tol

    @property
    def n_max(self) -> int:
        """Largest photon total appearing on either side of any term (0 if empty)."""
        return max((max(sum(k), sum(b)) for k, b in self._terms), default=0)

    def photon_totals(self) -> set[int]:
        return {sum(k) for k, _ in self._terms} | {sum(b) for _, b in self._terms}

    def is_fixed_n(self, n: int | None = None) -> bool:
        totals = {(sum(k), sum(b)) for k, b in self._terms}
        if n is None:
            return len(totals) <= 1 and all(a == b for a, b in totals)
        return all(a == n and b == n for a, b in totals)

    def max_abs_diff(self, other: "BeamState") -> float:
        self._check_modes(other)
        keys = self._terms.keys() | other._terms.keys()
        return max((abs(self._terms.get(k, 0j) - other._terms.get(k, 0j)) for k in keys), default=0.0)

    def allclose(self, other: "BeamState", atol: float = 1e-10) -> bool:
        return self.max_abs_diff(other) <= atol

    # --- structural transforms ---------------------------------------------

    def normalize(self) -> "BeamState":
        if self._trace == 0.0:
            raise ZeroTrace("cannot normalize an operator with zero trace")
        return self / self._trace

    def dress(self, left: Callable[[int], float], right: Callable[[int], float]) -> "BeamState":
        """``f(N) rho g(N)`` for functions of the total photon number.

        A term ``|m><n|`` is multiplied by ``left(|m|) * right(|n|)``.
        """
        acc = {(k, b): v * left(sum(k)) * right(sum(b)) for (k, b), v in self._terms.items()}
        return BeamState._from_dict(self._modes, acc)

    def project_sector(self, n: int) -> "BeamState":
        """``P_N rho P_N``: keep only terms with ``|m| = |n| = N``."""
        acc = {(k, b): v for (k, b), v in self._terms.items() if sum(k) == n and sum(b) == n}
        return BeamState._from_dict(self._modes, acc)

    def sector_block(self, n: int) -> tuple[list[Occupation], np.ndarray]:
        """Dense matrix of ``P_N rho P_N`` in the sorted N-photon basis."""
        basis = sorted_compositions(self._modes, n)
        index = {occ: i for i, occ in enumerate(basis)}
        mat = np.zeros((len(basis), len(basis)), dtype=complex)
        for (k, b), v in self._terms.items():
            if sum(k) == n and sum(b) == n:
                mat[index[k], index[b]] = v
        return basis, mat

    def arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(kets, bras, amplitudes) as arrays, cached; row order is insertion order."""
        if self._arrays is None:
            keys = list(self._terms)
            kets = np.array([k for k, _ in keys], dtype=np.int64).reshape(len(keys), self._modes)
            bras = np.array([b for _, b in keys], dtype=np.int64).reshape(len(keys), self._modes)
            amps = np.array([self._terms[k] for k in keys], dtype=complex)
            self._arrays = (kets, bras, amps)
        return self._arrays


def trace(state: BeamState) -> float:
    return state.trace()


def hermitian_error(state: BeamState) -> float:
    return state.hermitian_error()


def normalize(state: BeamState) -> BeamState:
    return state.normalize()


def purity(state: BeamState) -> float:
    """Tr(rho^2) for a Hermitian operator (sum of squared moduli)."""
    return math.fsum(abs(v) ** 2 for v in state.amplitudes.values())


def min_eigenvalue(state: BeamState, n: int) -> float:
    """Smallest eigenvalue of the N-photon block."""
    _, mat = state.sector_block(n)
    if mat.size == 0:
        return 0.0
    return float(np.linalg.eigvalsh(0.5 * (mat + mat.conj().T)).min())


@dataclass(frozen=True)
class Sector:
    probability: float
    state: BeamState
    block: BeamState = field(repr=False)


@dataclass(frozen=True)
class SectorDecomposition:
    """``rho = sum_N p_N rho_N + (terms with |m| != |n|)``."""

    modes: int
    sectors: dict[int, Sector]
    cross_terms: BeamState

    @property
    def probabilities(self) -> dict[int, float]:
        return {n: s.probability for n, s in self.sectors.items()}

    def reassemble(self) -> BeamState:
        acc = dict(self.cross_terms.amplitudes)
        for sector in self.sectors.values():
            for k, v in sector.block.amplitudes.items():
                acc[k] = acc.get(k, 0j) + v
        return BeamState._from_dict(self.modes, acc, prune=0.0)


def sector_decompose(state: BeamState, tol: float | None = None) -> SectorDecomposition:
    """Split a Hermitian state into normalized fixed-N sectors plus cross terms.

    Sectors whose block vanishes are omitted. A sector block with zero trace
    but non-zero entries cannot be normalized and raises :class:`ZeroTrace`.
    """
    tol = hermitian_tolerance() if tol is None else tol
    err = state.hermitian_error()
    if err > tol:
        raise NonHermitianState(f"Hermiticity error {err:.3e} exceeds tolerance {tol:.1e}")
    blocks: dict[int, dict[KetBra, complex]] = {}
    cross: dict[KetBra, complex] = {}
    for (k, b), v in state.amplitudes.items():
        nk, nb = sum(k), sum(b)
        if nk == nb:
            blocks.setdefault(nk, {})[(k, b)] = v
        else:
            cross[(k, b)] = v
    sectors: dict[int, Sector] = {}
    for n in sorted(blocks):
        block = BeamState._from_dict(state.modes, blocks[n], prune=0.0)
        p = block.trace()
        if p == 0.0:
            raise ZeroTrace(f"the {n}-photon block has zero trace but non-zero entries")
        sectors[n] = Sector(p, block / p, block)
    return SectorDecomposition(state.modes, sectors, BeamState._from_dict(state.modes, cross, prune=0.0))


def apply_annihilation(state: BeamState, mode: int, side: str = "both") -> BeamState:
    """Act with ``a_mode`` on the ket side, the bra side, or both.

    ``side="ket"`` gives ``a rho``, ``side="bra"`` gives ``rho a^dag`` and
    ``side="both"`` gives ``a rho a^dag``. Modes are 0-based. Terms whose acted
    side has no photon in ``mode`` drop out.
    """
    if not 0 <= mode < state.modes:
        raise ModeOutOfRange(f"mode {mode} outside 0..{state.modes - 1}")
    if side not in ("ket", "bra", "both"):
        raise ValueError(f"side must be 'ket', 'bra' or 'both', got {side!r}")
    acc: dict[KetBra, complex] = {}
    lower_ket = side in ("ket", "both")
    lower_bra = side in ("bra", "both")
    for (k, b), v in state.amplitudes.items():
        factor = 1
        if lower_ket:
            if k[mode] == 0:
                continue
            factor *= k[mode]
            k = k[:mode] + (k[mode] - 1,) + k[mode + 1:]
        if lower_bra:
            if b[mode] == 0:
                continue
            factor *= b[mode]
            b = b[:mode] + (b[mode] - 1,) + b[mode + 1:]
        key = (k, b)
        acc[key] = acc.get(key, 0j) + v * math.sqrt(factor)
    return BeamState._from_dict(state.modes, acc)

