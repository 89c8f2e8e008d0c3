"""Dense truncated-Fock-space helpers used as independent oracles in tests."""

import itertools
import math

import numpy as np


def product_basis(modes, cutoff):
    """All occupations with every mode in 0..cutoff, in itertools.product order."""
    return list(itertools.product(range(cutoff + 1), repeat=modes))


def to_dense(state, cutoff):
    basis = product_basis(state.modes, cutoff)
    index = {occ: i for i, occ in enumerate(basis)}
    mat = np.zeros((len(basis), len(basis)), dtype=complex)
    for (ket, bra), v in state.amplitudes.items():
        mat[index[ket], index[bra]] = v
    return basis, mat


def single_mode_annihilator(cutoff):
    return np.diag(np.sqrt(np.arange(1, cutoff + 1)), k=1).astype(complex)


def annihilator(modes, cutoff, mode):
    """a_mode on the product space, built from Kronecker products."""
    eye = np.eye(cutoff + 1)
    ops = [single_mode_annihilator(cutoff) if i == mode else eye for i in range(modes)]
    out = ops[0]
    for op in ops[1:]:
        out = np.kron(out, op)
    return out


def monomial(modes, cutoff, creators, annihilators):
    """prod a_i^dag^k_i  prod a_i^l_i as a dense matrix."""
    dim = (cutoff + 1) ** modes
    out = np.eye(dim, dtype=complex)
    for i, k in enumerate(creators):
        a = annihilator(modes, cutoff, i)
        out = out @ np.linalg.matrix_power(a.conj().T, k)
    for i, l in enumerate(annihilators):
        a = annihilator(modes, cutoff, i)
        out = out @ np.linalg.matrix_power(a, l)
    return out


def dense_expectation(state, creators, annihilators, cutoff=None):
    # pad the cutoff so truncation never touches the operator's action on the support
    cutoff = (state.n_max + max(sum(creators), sum(annihilators))) if cutoff is None else cutoff
    _, mat = to_dense(state, cutoff)
    return complex(np.trace(monomial(state.modes, cutoff, creators, annihilators) @ mat))


def partial_trace_last(mat, keep_dim, drop_dim):
    t = mat.reshape(keep_dim, drop_dim, keep_dim, drop_dim)
    return np.einsum("ajbj->ab", t)


def coherent_truncated(alpha, n_max):
    amps = np.array([alpha**n / math.sqrt(math.factorial(n)) for n in range(n_max + 1)], dtype=complex)
    return amps / np.linalg.norm(amps)
