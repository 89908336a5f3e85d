"""Classification of finite pure-state sets and chain extraction.

A set is reducible when its nonorthogonality graph is disconnected (cloning
then splits into independent subproblems) and pair-wise nonorthogonal (PNO)
when every overlap is nonzero. Irreducible non-PNO sets admit a length-3
chain with orthogonal endpoints, which `canonicalize` rotates into the frame

    psi_1 = |0>,  psi_2 = |1>,  psi_3 = a0|0> + a1|1> + a2|2>.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ChainError, LayoutError
from .linalg import Ket, Operator, complete_basis
from .tolerances import DEFAULT, Tolerances


@dataclass(frozen=True, eq=False)
class StateSet:
    """Labeled normalized kets sharing one register of dimension `dim`."""

    dim: int
    states: tuple[tuple[str, Ket], ...]

    def __post_init__(self):
        states = tuple((str(lb), k) for lb, k in self.states)
        object.__setattr__(self, "states", states)
        if len(states) < 2:
            raise LayoutError("a state set needs at least two states")
        labels = [lb for lb, _ in states]
        if len(set(labels)) != len(labels):
            raise LayoutError(f"duplicate state labels in {labels}")
        for lb, k in states:
            if k.dim != self.dim:
                raise LayoutError(f"state {lb!r} has dimension {k.dim}, expected {self.dim}")
            if abs(k.norm() - 1.0) > DEFAULT.norm:
                raise LayoutError(f"state {lb!r} is not normalized")

    @classmethod
    def from_kets(cls, kets: Sequence[Ket], labels: Sequence[str] | None = None) -> "StateSet":
        if labels is None:
            labels = [f"psi{i + 1}" for i in range(len(kets))]
        return cls(dim=kets[0].dim, states=tuple(zip(labels, kets)))

    def __len__(self) -> int:
        return len(self.states)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(lb for lb, _ in self.states)

    @property
    def kets(self) -> tuple[Ket, ...]:
        return tuple(k for _, k in self.states)


@dataclass(frozen=True)
class GramAnalysis:
    """Overlap matrix plus the PNO/reducibility classification."""

    gram: np.ndarray
    is_pno: bool
    is_reducible: bool
    components: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        g = np.asarray(self.gram, dtype=np.complex128).copy()
        g.setflags(write=False)
        object.__setattr__(self, "gram", g)


@dataclass(frozen=True)
class Chain:
    """Indices (i0, i1, i2): nonzero links i0-i1 and i1-i2, orthogonal endpoints i0, i2."""

    indices: tuple[int, int, int]

    def __post_init__(self):
        idx = tuple(int(i) for i in self.indices)
        if len(set(idx)) != 3:
            raise ChainError(f"chain indices must be three distinct values, got {idx}")
        object.__setattr__(self, "indices", idx)


def analyze(sset: StateSet, tol: Tolerances = DEFAULT) -> GramAnalysis:
    """Gram matrix, PNO flag, and connected components of the nonorthogonality graph."""
    n = len(sset)
    kets = sset.kets
    gram = np.empty((n, n), dtype=np.complex128)
    for i in range(n):
        for j in range(n):
            gram[i, j] = kets[i].overlap(kets[j])
    edges = np.abs(gram) > tol.orth
    np.fill_diagonal(edges, False)

    seen = [False] * n
    components: list[tuple[int, ...]] = []
    for start in range(n):
        if seen[start]:
            continue
        comp = []
        queue = deque([start])
        seen[start] = True
        while queue:
            u = queue.popleft()
            comp.append(u)
            for v in range(n):
                if edges[u, v] and not seen[v]:
                    seen[v] = True
                    queue.append(v)
        components.append(tuple(sorted(comp)))

    off = np.abs(gram[~np.eye(n, dtype=bool)])
    is_pno = bool(np.all(off > tol.orth))
    return GramAnalysis(
        gram=gram,
        is_pno=is_pno,
        is_reducible=len(components) >= 2,
        components=tuple(components),
    )


def _bfs_path(edges: np.ndarray, start: int, goal: int) -> list[int]:
    """Shortest path by BFS; neighbors visited in index order for determinism."""
    n = edges.shape[0]
    parent = {start: None}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        if u == goal:
            path = [u]
            while parent[path[-1]] is not None:
                path.append(parent[path[-1]])
            return path[::-1]
        for v in range(n):
            if edges[u, v] and v not in parent:
                parent[v] = u
                queue.append(v)
    raise ChainError("no connecting path; set is reducible")  # pragma: no cover


def find_orthogonal_chain(sset: StateSet, tol: Tolerances = DEFAULT) -> Chain:
    """Length-3 chain with orthogonal endpoints in an irreducible non-PNO set.

    Deterministic rule: take the lexicographically first orthogonal pair
    (xi, zeta), BFS the nonorthogonality graph from xi to zeta, then apply the
    elimination step (drop the node after xi while xi stays nonorthogonal to
    the node after it) until three nodes remain.
    """
    g = analyze(sset, tol)
    if g.is_pno:
        raise ChainError("set is pair-wise nonorthogonal: no orthogonal endpoints exist")
    if g.is_reducible:
        raise ChainError("set is reducible: split it before certification")

    n = len(sset)
    gram = g.gram
    edges = np.abs(gram) > tol.orth
    np.fill_diagonal(edges, False)

    pair = None
    for i in range(n):
        for j in range(i + 1, n):
            if abs(gram[i, j]) <= tol.orth:
                pair = (i, j)
                break
        if pair:
            break
    assert pair is not None  # guaranteed: not PNO

    path = _bfs_path(edges, pair[0], pair[1])
    while len(path) > 3:
        xi, eta2 = path[0], path[2]
        if abs(gram[xi, eta2]) <= tol.orth:
            path = path[:3]
        else:
            path = [path[0]] + path[2:]
    chain = Chain(indices=(path[0], path[1], path[2]))
    _validate_chain(gram, chain, tol)
    return chain


def _validate_chain(gram: np.ndarray, chain: Chain, tol: Tolerances) -> None:
    i0, i1, i2 = chain.indices
    if abs(gram[i0, i1]) <= tol.orth or abs(gram[i1, i2]) <= tol.orth:
        raise ChainError("chain links must be nonorthogonal")
    if abs(gram[i0, i2]) > tol.orth:
        raise ChainError("chain endpoints must be orthogonal")


@dataclass(frozen=True)
class CanonicalForm:
    """Result of rotating a chain into the canonical frame.

    `relabeling[k]` is the original index of the state at new position k; the
    chain occupies new positions (0, 2, 1) so that it reads psi_1, psi_3,
    psi_2 in 1-based labels. `basis_change` is the frame unitary V; chain
    states additionally receive the recorded global phases.
    """

    alpha: tuple[float, float, float]
    basis_change: Operator
    relabeling: tuple[int, ...]
    phases: tuple[complex, ...]

    def transform(self, sset: StateSet) -> StateSet:
        """Relabeled state set mapped through basis_change and the phases."""
        v = self.basis_change.mat
        states = []
        for pos, orig in enumerate(self.relabeling):
            label, ket = sset.states[orig]
            states.append((label, Ket(self.phases[pos] * (v @ ket.amps))))
        return StateSet(dim=sset.dim, states=tuple(states))


def canonicalize(sset: StateSet, chain: Chain, tol: Tolerances = DEFAULT) -> CanonicalForm:
    """Alpha parameters, frame unitary, and relabeling for a valid chain."""
    n = len(sset)
    i0, i1, i2 = chain.indices
    if not all(0 <= i < n for i in chain.indices):
        raise ChainError(f"chain indices {chain.indices} out of range for n={n}")
    g = analyze(sset, tol)
    _validate_chain(g.gram, chain, tol)

    kets = sset.kets
    xi, eta, zeta = kets[i0].amps, kets[i1].amps, kets[i2].amps

    ov0 = np.vdot(xi, eta)   # <xi|eta>
    ov1 = np.vdot(zeta, eta)
    alpha0 = abs(ov0)
    alpha1 = abs(ov1)
    # frame vectors carrying the phases that make the eta components real positive
    e0 = xi * (ov0 / alpha0)
    e1 = zeta * (ov1 / alpha1)
    residual = eta - alpha0 * e0 - alpha1 * e1

    frame = [Ket(e0), Ket(e1)]
    rnorm = float(np.linalg.norm(residual))
    if rnorm > tol.orth:
        frame.append(Ket(residual / rnorm))
        alpha2 = float(np.sqrt(max(0.0, 1.0 - alpha0 * alpha0 - alpha1 * alpha1)))
    else:
        # eta lies in span{xi, zeta} (always the case for dim=2): exactly zero
        alpha2 = 0.0
    basis = complete_basis(frame, sset.dim)
    v = np.array([b.amps.conj() for b in basis])  # rows e_k^dagger -> maps e_k to |k>
    basis_change = Operator(v)

    # phases making the mapped chain states exactly |0>, |1>; eta needs none.
    phase0 = complex(ov0 / alpha0)
    phase1 = complex(ov1 / alpha1)
    relabeling = (i0, i2, i1) + tuple(k for k in range(n) if k not in chain.indices)
    phases = [1.0 + 0.0j] * n
    phases[0] = phase0
    phases[1] = phase1
    return CanonicalForm(
        alpha=(float(alpha0), float(alpha1), alpha2),
        basis_change=basis_change,
        relabeling=relabeling,
        phases=tuple(phases),
    )
