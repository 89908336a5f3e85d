"""Small dense tensor algebra for multi-register pure states.

Kets and operators are thin immutable wrappers around complex128 arrays;
the numerically hot paths (eigendecomposition, partial trace, kron) dispatch
to the selected kernel backend in `_kernels`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .errors import LayoutError, LinearDependenceError, NonHermitianError
from .tolerances import DEFAULT, Tolerances

ALICE = "alice"
BOB = "bob"


def _as_complex_vector(values) -> np.ndarray:
    arr = np.asarray(values, dtype=np.complex128)
    if arr.ndim != 1 or arr.size == 0:
        raise LayoutError("ket amplitudes must form a nonempty 1-d array")
    if not np.all(np.isfinite(arr)):
        raise LayoutError("ket amplitudes must be finite")
    arr = arr.copy()
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class Ket:
    """State vector. `normalized=True` asserts unit norm at construction."""

    amps: np.ndarray
    normalized: bool = True

    def __post_init__(self):
        object.__setattr__(self, "amps", _as_complex_vector(self.amps))
        if self.normalized and abs(self.norm() - 1.0) > DEFAULT.norm:
            raise LayoutError(f"ket marked normalized has norm {self.norm()!r}")

    @classmethod
    def basis(cls, dim: int, k: int) -> "Ket":
        amps = np.zeros(dim, dtype=np.complex128)
        amps[k] = 1.0
        return cls(amps)

    @property
    def dim(self) -> int:
        return self.amps.shape[0]

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def normalize(self) -> "Ket":
        n = self.norm()
        if n == 0.0:
            raise LinearDependenceError("cannot normalize the zero vector")
        return Ket(self.amps / n)

    def overlap(self, other: "Ket") -> complex:
        """<self|other>."""
        if other.dim != self.dim:
            raise LayoutError("overlap requires equal dimensions")
        return complex(np.vdot(self.amps, other.amps))

    def projector(self) -> "Operator":
        return Operator(np.outer(self.amps, self.amps.conj()), hermitian=True)


@dataclass(frozen=True, eq=False)
class Operator:
    """Dense square operator; `hermitian` is validated at construction."""

    mat: np.ndarray
    hermitian: bool = False

    def __post_init__(self):
        arr = np.asarray(self.mat, dtype=np.complex128)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise LayoutError("operator must be a square matrix")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "mat", arr)
        if self.hermitian and self.herm_residual() > DEFAULT.herm:
            raise NonHermitianError(
                f"operator marked Hermitian has residual {self.herm_residual():.3e}")

    @classmethod
    def identity(cls, dim: int) -> "Operator":
        return cls(np.eye(dim, dtype=np.complex128), hermitian=True)

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    def herm_residual(self) -> float:
        return float(np.abs(self.mat - self.mat.conj().T).max())

    def dagger(self) -> "Operator":
        return Operator(self.mat.conj().T, hermitian=self.hermitian)

    def apply(self, ket: Ket) -> Ket:
        if ket.dim != self.dim:
            raise LayoutError("operator/ket dimension mismatch")
        return Ket(self.mat @ ket.amps, normalized=False)

    def trace(self) -> complex:
        return complex(np.trace(self.mat))

    def unitary_residual(self) -> float:
        return float(np.abs(self.mat.conj().T @ self.mat - np.eye(self.dim)).max())


@dataclass(frozen=True)
class EigenResult:
    """Descending eigenvalues with matching orthonormal eigenvectors."""

    eigenvalues: np.ndarray
    eigenvectors: tuple[Ket, ...]

    def __post_init__(self):
        vals = np.asarray(self.eigenvalues, dtype=np.float64).copy()
        vals.setflags(write=False)
        object.__setattr__(self, "eigenvalues", vals)


@dataclass(frozen=True)
class Subsystem:
    label: str
    dim: int
    owner: str

    def __post_init__(self):
        if self.owner not in (ALICE, BOB):
            raise LayoutError(f"owner must be {ALICE!r} or {BOB!r}, got {self.owner!r}")
        if self.dim < 1:
            raise LayoutError("subsystem dimension must be positive")


@dataclass(frozen=True)
class SystemLayout:
    """Ordered registers (label, dim, owner); index order = tensor order."""

    subsystems: tuple[Subsystem, ...]

    def __post_init__(self):
        subs = tuple(
            s if isinstance(s, Subsystem) else Subsystem(*s) for s in self.subsystems
        )
        object.__setattr__(self, "subsystems", subs)
        labels = [s.label for s in subs]
        if len(set(labels)) != len(labels):
            raise LayoutError(f"duplicate subsystem labels in {labels}")
        if not subs:
            raise LayoutError("layout needs at least one subsystem")

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(s.label for s in self.subsystems)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(s.dim for s in self.subsystems)

    @property
    def total_dim(self) -> int:
        return math.prod(self.dims)

    def axis(self, label: str) -> int:
        for i, s in enumerate(self.subsystems):
            if s.label == label:
                return i
        raise LayoutError(f"unknown subsystem label {label!r}")

    def owner(self, label: str) -> str:
        return self.subsystems[self.axis(label)].owner

    def dim_of(self, labels: Iterable[str]) -> int:
        return math.prod(self.subsystems[self.axis(lb)].dim for lb in labels)

    def owner_labels(self, owner: str) -> tuple[str, ...]:
        return tuple(s.label for s in self.subsystems if s.owner == owner)

    def check_state(self, state: Ket) -> None:
        if state.dim != self.total_dim:
            raise LayoutError(
                f"state dimension {state.dim} != layout total {self.total_dim}")

    def check_bipartition(self, alice_labels: Sequence[str], bob_labels: Sequence[str]) -> None:
        """Both groups nonempty, disjoint, owner-consistent, covering all labels."""
        a, b = list(alice_labels), list(bob_labels)
        if not a or not b:
            raise LayoutError("bipartition groups must be nonempty")
        seen = a + b
        if len(set(seen)) != len(seen) or set(seen) != set(self.labels):
            raise LayoutError("bipartition must split the layout labels exactly")
        for lb in a:
            if self.owner(lb) != ALICE:
                raise LayoutError(f"label {lb!r} in the Alice group is owned by {self.owner(lb)}")
        for lb in b:
            if self.owner(lb) != BOB:
                raise LayoutError(f"label {lb!r} in the Bob group is owned by {self.owner(lb)}")


def tensor(*kets: Ket) -> Ket:
    """Tensor product, first factor slowest index."""
    if not kets:
        raise LayoutError("tensor needs at least one factor")
    amps = kets[0].amps
    for k in kets[1:]:
        amps = _kernels.kron_vec(amps, k.amps)
    return Ket(amps, normalized=all(k.normalized for k in kets))


def partial_trace(state: Ket, layout: SystemLayout, keep: Sequence[str]) -> Operator:
    """Reduced density operator on the kept registers (layout order)."""
    layout.check_state(state)
    keep = list(keep)
    if not keep:
        raise LayoutError("keep set must be nonempty")
    if len(set(keep)) != len(keep):
        raise LayoutError("keep labels must be distinct")
    axes = tuple(sorted(layout.axis(lb) for lb in keep))
    if len(axes) == len(layout.subsystems):
        raise LayoutError("keep must be a proper subset of the layout")
    rho = _kernels.partial_trace_ket(state.amps, layout.dims, axes)
    rho = (rho + rho.conj().T) / 2.0
    return Operator(rho, hermitian=True)


def eig_hermitian(op: Operator, tol: Tolerances = DEFAULT) -> EigenResult:
    """Full eigendecomposition of a Hermitian operator, descending order."""
    if op.herm_residual() > tol.herm:
        raise NonHermitianError(
            f"Hermiticity residual {op.herm_residual():.3e} exceeds {tol.herm:g}")
    a = (op.mat + op.mat.conj().T) / 2.0
    w, v = _kernels.eigh_descending(a)
    kets = tuple(Ket(v[:, i]) for i in range(v.shape[1]))
    return EigenResult(eigenvalues=w, eigenvectors=kets)


def _fix_leading_phase(vec: np.ndarray) -> np.ndarray:
    """Rotate a unit vector so its first non-negligible entry is real positive."""
    idx = np.flatnonzero(np.abs(vec) > 1e-12)
    k = idx[0] if idx.size else int(np.argmax(np.abs(vec)))
    piv = vec[k]
    if piv == 0:
        return vec
    return vec * (piv.conjugate() / abs(piv))


def _orthogonalize_rows(rows: list[np.ndarray], vec: np.ndarray) -> np.ndarray:
    """Project vec off the orthonormal rows, twice (reorthogonalization)."""
    w = vec.astype(np.complex128, copy=True)
    for _ in range(2):
        for u in rows:
            w -= u * np.vdot(u, w)
    return w


def gram_schmidt(vectors: Sequence[Ket], tol: float | None = None) -> list[Ket]:
    """Modified Gram-Schmidt with reorthogonalization; dependence is an error."""
    if tol is None:
        tol = DEFAULT.gs
    if not vectors:
        return []
    dim = vectors[0].dim
    rows: list[np.ndarray] = []
    for i, ket in enumerate(vectors):
        if ket.dim != dim:
            raise LayoutError("gram_schmidt inputs must share a dimension")
        w = _orthogonalize_rows(rows, ket.amps)
        n = np.linalg.norm(w)
        if n < tol:
            raise LinearDependenceError(
                f"input {i} is linearly dependent (residual norm {n:.3e} < {tol:g})")
        rows.append(_fix_leading_phase(w / n))
    return [Ket(r) for r in rows]


def complete_basis(vectors: Sequence[Ket], dim: int, tol: float | None = None) -> list[Ket]:
    """Extend orthonormal vectors to a full basis via the standard basis in index order."""
    if tol is None:
        tol = DEFAULT.gs
    rows = [k.amps.astype(np.complex128) for k in vectors]
    for k in range(dim):
        if len(rows) == dim:
            break
        e = np.zeros(dim, dtype=np.complex128)
        e[k] = 1.0
        w = _orthogonalize_rows(rows, e)
        n = np.linalg.norm(w)
        if n < tol:
            continue
        rows.append(_fix_leading_phase(w / n))
    if len(rows) != dim:
        raise LinearDependenceError("could not complete the basis; inputs ill-conditioned")
    return [Ket(r) for r in rows]
