"""Entanglement monotones E^(l) and the analytic witnesses of the LOCC proof.

E^(l) is 1 minus the sum of the l-1 largest reduced-density eigenvalues
across a bipartition. For an ensemble transformation with outcome
probabilities gamma_k, LOCC feasibility requires

    E^(l)(input) >= sum_k gamma_k E^(l)(output_k)   for every level l,

which for deterministic transforms is Nielsen's majorization criterion. The
three witnesses (kappa form, Perron positivity, determinant sign) certify the
two strict monotone inequalities without scanning eigenvalues.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import LayoutError, NonHermitianError, ParameterError, WitnessError, WitnessFormError
from .linalg import Ket, Operator, SystemLayout, eig_hermitian, partial_trace
from .tolerances import DEFAULT, Tolerances

Partition = tuple[Sequence[str], Sequence[str]]


@dataclass(frozen=True)
class MonotoneVector:
    """E^(l) for l = 2..d across a fixed bipartition."""

    values: tuple[tuple[int, float], ...]
    alice_labels: tuple[str, ...]
    bob_labels: tuple[str, ...]

    def level(self, l: int) -> float:
        for lev, val in self.values:
            if lev == l:
                return val
        raise ParameterError(f"level {l} not computed")

    @property
    def levels(self) -> tuple[int, ...]:
        return tuple(lev for lev, _ in self.values)


def _reduced_spectrum(state: Ket, layout: SystemLayout, partition: Partition,
                      tol: Tolerances) -> np.ndarray:
    alice, bob = partition
    layout.check_bipartition(alice, bob)
    layout.check_state(state)
    rho = partial_trace(state, layout, keep=list(alice))
    return eig_hermitian(rho, tol=tol).eigenvalues


def monotone(state: Ket, layout: SystemLayout, partition: Partition, l: int,
             tol: Tolerances = DEFAULT) -> float:
    """E^(l) of a pure state across the partition (Alice labels, Bob labels)."""
    alice, bob = partition
    min_side = min(layout.dim_of(alice), layout.dim_of(bob))
    if not 2 <= l <= min_side + 1:
        raise ParameterError(f"level must satisfy 2 <= l <= {min_side + 1}, got {l}")
    lam = _reduced_spectrum(state, layout, partition, tol)
    return float(1.0 - np.sum(lam[: l - 1]))


def monotone_vector(state: Ket, layout: SystemLayout, partition: Partition,
                    tol: Tolerances = DEFAULT) -> MonotoneVector:
    """All levels l = 2..min-side dimension at once."""
    alice, bob = partition
    min_side = min(layout.dim_of(alice), layout.dim_of(bob))
    lam = _reduced_spectrum(state, layout, partition, tol)
    vals = tuple(
        (l, float(1.0 - np.sum(lam[: l - 1]))) for l in range(2, min_side + 1)
    ) or ((2, float(1.0 - lam[0])),)  # min_side == 1: single trivial level
    return MonotoneVector(values=vals, alice_labels=tuple(alice), bob_labels=tuple(bob))


@dataclass(frozen=True)
class Outcome:
    probability: float
    state: Ket
    layout: SystemLayout


@dataclass(frozen=True)
class EnsembleTransform:
    """Input state plus probabilistic outcomes of a bipartite protocol."""

    input_state: Ket
    input_layout: SystemLayout
    outcomes: tuple[Outcome, ...]

    def __post_init__(self):
        outs = tuple(
            o if isinstance(o, Outcome) else Outcome(*o) for o in self.outcomes
        )
        object.__setattr__(self, "outcomes", outs)
        if not outs:
            raise ParameterError("transform needs at least one outcome")
        total = 0.0
        for o in outs:
            if o.probability < 0:
                raise ParameterError("outcome probabilities must be nonnegative")
            total += o.probability
        if abs(total - 1.0) > 1e-9:
            raise ParameterError(f"outcome probabilities sum to {total!r}, expected 1")


def _owner_partition(layout: SystemLayout) -> Partition:
    alice = layout.owner_labels("alice")
    bob = layout.owner_labels("bob")
    if not alice or not bob:
        raise LayoutError("layout must have registers on both sides")
    return alice, bob


def _level_value(state: Ket, layout: SystemLayout, l: int, tol: Tolerances) -> float:
    """E^(l) across the owner split; exact 0 for levels past the minimum side."""
    alice, bob = _owner_partition(layout)
    min_side = min(layout.dim_of(alice), layout.dim_of(bob))
    if l > min_side + 1:
        return 0.0
    return monotone(state, layout, (alice, bob), l, tol=tol)


def locc_feasible(transform: EnsembleTransform, tol: Tolerances = DEFAULT) -> tuple[bool, tuple[int, ...]]:
    """Whether every monotone level survives on average; also the violated levels.

    Levels run over 2..d with d the largest min-side dimension among the
    input and output layouts, so no state's spectrum is left unchecked.
    """
    alice, bob = _owner_partition(transform.input_layout)
    d = min(transform.input_layout.dim_of(alice), transform.input_layout.dim_of(bob))
    for o in transform.outcomes:
        oa, ob = _owner_partition(o.layout)
        d = max(d, min(o.layout.dim_of(oa), o.layout.dim_of(ob)))

    violated = []
    for l in range(2, d + 1):
        lhs = _level_value(transform.input_state, transform.input_layout, l, tol)
        rhs = sum(
            o.probability * _level_value(o.state, o.layout, l, tol)
            for o in transform.outcomes
        )
        if lhs < rhs - tol.eig:
            violated.append(l)
    return (not violated), tuple(violated)


def _check_density(rho: Operator, tol: Tolerances, name: str) -> np.ndarray:
    if rho.dim != 3:
        raise ParameterError(f"{name} must be 3x3, got {rho.dim}x{rho.dim}")
    if rho.herm_residual() > tol.herm:
        raise NonHermitianError(f"{name} is not Hermitian within {tol.herm:g}")
    if abs(rho.trace().real - 1.0) > 1e-9 or abs(rho.trace().imag) > 1e-9:
        raise ParameterError(f"{name} must have unit trace, got {rho.trace()!r}")
    m = rho.mat
    return (m + m.conj().T) / 2.0


def kappa_witness(rho_in: Operator, rho_out: Operator, tol: Tolerances = DEFAULT) -> float:
    """Coefficient kappa in rho_in - rho_out = kappa(|0><1| + |1><0|).

    Raises WitnessFormError when the difference is not of that form, and
    WitnessError when kappa fails to be strictly positive.
    """
    a = _check_density(rho_in, tol, "rho_in")
    b = _check_density(rho_out, tol, "rho_out")
    diff = a - b
    kappa = diff[0, 1].real
    residual = diff.copy()
    residual[0, 1] -= kappa
    residual[1, 0] -= kappa
    worst = float(np.abs(residual).max())
    if worst > tol.form:
        raise WitnessFormError(
            f"difference deviates from kappa(|0><1|+|1><0|) by {worst:.3e}")
    if kappa <= 0.0:
        raise WitnessError(f"kappa = {kappa!r} is not strictly positive")
    return float(kappa)


def perron_witness(rho: Operator, tol: Tolerances = DEFAULT) -> tuple[bool, np.ndarray | None]:
    """Entrywise strict positivity of rho and, if it holds, the Perron vector.

    Positivity means every entry has real part above the positivity threshold
    and negligible imaginary part; the Perron vector is the top eigenvector,
    phase-fixed and componentwise positive.
    """
    m = _check_density(rho, tol, "rho")
    eig = eig_hermitian(Operator(m, hermitian=True), tol=tol)
    if eig.eigenvalues[-1] < -tol.eig:
        raise ParameterError(f"rho is not PSD: min eigenvalue {eig.eigenvalues[-1]!r}")
    if np.any(m.real <= tol.pos) or np.any(np.abs(m.imag) > tol.form):
        return False, None
    top = eig.eigenvectors[0].amps
    k = int(np.argmax(np.abs(top)))
    top = top * (top[k].conjugate() / abs(top[k]))
    if np.abs(top.imag).max() > 1e-9:
        raise WitnessError("Perron vector has a nonreal component")  # pragma: no cover
    vec = top.real / np.linalg.norm(top.real)
    if np.any(vec <= 0.0):
        raise WitnessError("Perron vector is not componentwise positive")  # pragma: no cover
    return True, vec


def determinant_witness(rho_in: Operator, tol: Tolerances = DEFAULT) -> float:
    """det of the 2x2 qubit block of P rho_in P - P/2, P = |0><0| + |1><1|.

    Negative determinant forces an eigenvalue of the compressed state above
    1/2, hence E^(2) of the input probe below 1/2.
    """
    m = _check_density(rho_in, tol, "rho_in")
    block = m[:2, :2] - np.eye(2) / 2.0
    det = block[0, 0] * block[1, 1] - block[0, 1] * block[1, 0]
    return float(det.real)
