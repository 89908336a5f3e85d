"""Pure-Python (numpy) reference implementations of the hot kernels.

Selected automatically when the compiled extension is unavailable, and used
in tests as an independent algorithmic cross-check: eigendecomposition here
goes through LAPACK while the compiled backend runs cyclic Jacobi.
"""
from __future__ import annotations

import numpy as np


def eigh_descending(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (descending) and matching eigenvector columns of Hermitian a."""
    w, v = np.linalg.eigh(a)
    order = np.argsort(-w, kind="stable")
    return w[order], np.ascontiguousarray(v[:, order])


def partial_trace_ket(amps: np.ndarray, dims: tuple[int, ...], keep: tuple[int, ...]) -> np.ndarray:
    """Reduced density matrix of a pure state over the kept axes (sorted order)."""
    rest = tuple(i for i in range(len(dims)) if i not in keep)
    kept_dim = int(np.prod([dims[i] for i in keep], dtype=np.int64))
    m = np.transpose(amps.reshape(dims), keep + rest).reshape(kept_dim, -1)
    return m @ m.conj().T


def kron_vec(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Tensor product of two state vectors, first factor slow index."""
    return np.kron(a, b)
