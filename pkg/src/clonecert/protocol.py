"""Assisted-cloning instances: supplementary states and the cloning unitary.

For the canonical three-state family

    psi_1 = |0>,  psi_2 = |1>,  psi_3 = a0|0> + a1|1> + a2|2>   (a0, a1 > 0)

there exist supplementary states phi_i, supported on span{|0>, |1>}, with

    <psi_i|psi_j><phi_i|phi_j> = <psi_i|psi_j>^2   for all i, j,

which makes the Gram matrices of {psi_i phi_i} and {psi_i psi_i} equal, so a
single unitary U on the 3x3 pair register clones all three states at once:
U (psi_i ⊗ phi_i) = psi_i ⊗ psi_i. Larger irreducible non-PNO sets reduce to
this case by giving every state beyond the chain its own orthogonal flag
state.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError
from .linalg import Ket, Operator, complete_basis, gram_schmidt, tensor
from .statesets import CanonicalForm, Chain, StateSet, canonicalize, find_orthogonal_chain
from .tolerances import DEFAULT, Tolerances

# a0^2 + a1^2 may exceed 1 by at most this much (fp slack on the boundary)
_BOUNDARY_SLACK = 1e-12


def _check_parameters(alpha0: float, alpha1: float) -> float:
    """Validate (a0, a1) and return a2; the a2=0 boundary is admitted."""
    if not (math.isfinite(alpha0) and math.isfinite(alpha1)):
        raise ParameterError("alpha parameters must be finite")
    if alpha0 <= 0.0 or alpha1 <= 0.0:
        raise ParameterError(f"alpha0 and alpha1 must be positive, got ({alpha0}, {alpha1})")
    rest = 1.0 - alpha0 * alpha0 - alpha1 * alpha1
    if rest < -_BOUNDARY_SLACK:
        raise ParameterError(
            f"alpha0^2 + alpha1^2 = {alpha0**2 + alpha1**2!r} exceeds 1")
    return math.sqrt(max(0.0, rest))


def original_states(alpha0: float, alpha1: float) -> tuple[Ket, Ket, Ket]:
    """The canonical three states on a 3-dim register."""
    alpha2 = _check_parameters(alpha0, alpha1)
    return (
        Ket.basis(3, 0),
        Ket.basis(3, 1),
        Ket(np.array([alpha0, alpha1, alpha2])),
    )


def supplementary_states(alpha0: float, alpha1: float) -> tuple[Ket, Ket, Ket]:
    """Supplementary states on a 3-dim register, supported on span{|0>, |1>}."""
    _check_parameters(alpha0, alpha1)
    r0 = math.sqrt(1.0 - alpha0 * alpha0)
    r1 = math.sqrt(1.0 - alpha1 * alpha1)
    phi1 = Ket.basis(3, 0)
    phi2 = Ket(np.array([alpha0 * alpha1 + r0 * r1, r0 * alpha1 - alpha0 * r1, 0.0]))
    phi3 = Ket(np.array([alpha0, r0, 0.0]))
    return phi1, phi2, phi3


def compatibility_check(psi: tuple[Ket, ...], phi: tuple[Ket, ...]) -> float:
    """Max deviation of <psi_i|psi_j><phi_i|phi_j> - <psi_i|psi_j>^2 over all pairs."""
    if len(psi) != len(phi):
        raise ParameterError("state lists must have equal length")
    worst = 0.0
    for i in range(len(psi)):
        for j in range(len(psi)):
            s = psi[i].overlap(psi[j])
            p = phi[i].overlap(phi[j])
            worst = max(worst, abs(s * p - s * s))
    return worst


@dataclass(frozen=True)
class CloningInstance:
    """One constructed instance: states, the orthonormal pair bases, and U."""

    alpha: tuple[float, float, float]
    psi: tuple[Ket, Ket, Ket]
    phi: tuple[Ket, Ket, Ket]
    v_basis: tuple[Ket, Ket, Ket]
    w_basis: tuple[Ket, Ket, Ket]
    unitary: Operator

    def input_products(self) -> tuple[Ket, Ket, Ket]:
        return tuple(tensor(self.psi[i], self.phi[i]) for i in range(3))

    def output_products(self) -> tuple[Ket, Ket, Ket]:
        return tuple(tensor(self.psi[i], self.psi[i]) for i in range(3))

    def cloning_residual(self) -> float:
        """Max norm error of U(psi_i ⊗ phi_i) = psi_i ⊗ psi_i."""
        worst = 0.0
        for vin, vout in zip(self.input_products(), self.output_products()):
            mapped = self.unitary.mat @ vin.amps
            worst = max(worst, float(np.linalg.norm(mapped - vout.amps)))
        return worst


def build_unitary(alpha0: float, alpha1: float, tol: Tolerances = DEFAULT) -> CloningInstance:
    """Construct the full 9x9 cloning unitary for the canonical instance."""
    alpha2 = _check_parameters(alpha0, alpha1)
    guard = 1.0 - alpha0**4 - alpha1**4
    if guard <= 0.0:
        # impossible for valid parameters: a0^4 + a1^4 < (a0^2 + a1^2)^2 <= 1
        raise ParameterError("normalization factor 1 - a0^4 - a1^4 is not positive")

    psi = original_states(alpha0, alpha1)
    phi = supplementary_states(alpha0, alpha1)
    v_basis = tuple(gram_schmidt([tensor(psi[i], phi[i]) for i in range(3)], tol=tol.gs))
    w_basis = tuple(gram_schmidt([tensor(psi[i], psi[i]) for i in range(3)], tol=tol.gs))

    v_full = complete_basis(v_basis, 9, tol=tol.gs)
    w_full = complete_basis(w_basis, 9, tol=tol.gs)
    u = np.zeros((9, 9), dtype=np.complex128)
    for vk, wk in zip(v_full, w_full):
        u += np.outer(wk.amps, vk.amps.conj())

    return CloningInstance(
        alpha=(float(alpha0), float(alpha1), float(alpha2)),
        psi=psi,
        phi=phi,
        v_basis=v_basis,
        w_basis=w_basis,
        unitary=Operator(u),
    )


def extend_supplementary(
    sset: StateSet,
    chain: Chain,
    form: CanonicalForm | None = None,
    tol: Tolerances = DEFAULT,
) -> tuple[Ket, ...]:
    """Supplementary states for an n-state irreducible non-PNO set.

    Returned in the relabeled order (chain at positions 1, 3, 2): the first
    three are the canonical supplementary states and every further state gets
    its own basis ket |i-1>, orthogonal to all others. The B register has
    dimension max(3, n) so the highest flag ket |n-1> fits.
    """
    if form is None:
        form = canonicalize(sset, chain, tol=tol)
    n = len(sset)
    bdim = max(3, n)
    alpha0, alpha1, _ = form.alpha
    phi3 = supplementary_states(alpha0, alpha1)

    def embed(k: Ket) -> Ket:
        amps = np.zeros(bdim, dtype=np.complex128)
        amps[: k.dim] = k.amps
        return Ket(amps)

    out = [embed(k) for k in phi3]
    for i in range(4, n + 1):
        out.append(Ket.basis(bdim, i - 1))
    return tuple(out)


def verify_chain_supplement(sset: StateSet, tol: Tolerances = DEFAULT) -> tuple[Chain, CanonicalForm, tuple[Ket, ...]]:
    """Chain extraction, canonicalization, and supplementary extension in one step."""
    chain = find_orthogonal_chain(sset, tol=tol)
    form = canonicalize(sset, chain, tol=tol)
    phi = extend_supplementary(sset, chain, form=form, tol=tol)
    return chain, form, phi
