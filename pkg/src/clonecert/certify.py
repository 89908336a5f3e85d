"""End-to-end LOCC-infeasibility certificates for assisted cloning.

The argument: suppose a bipartite LOCC protocol clones all three states when
the copies may end up at AA', AB, or BB' with outcome probabilities
gamma_XY summing to 1. Feeding the protocol two entangled probe states and
tracking the monotones E^(3) and E^(2) forces gamma_BBp = 0 and
gamma_AAp + gamma_AB < 1, contradicting the normalization. The certificate
records every monotone value and witness margin so the contradiction can be
re-derived from the stored numbers alone.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .errors import ParameterError, WitnessError
from .linalg import ALICE, BOB, Ket, Operator, SystemLayout, partial_trace, tensor
from .monotones import determinant_witness, kappa_witness, monotone, perron_witness
from .protocol import CloningInstance, build_unitary, verify_chain_supplement
from .statesets import CanonicalForm, Chain, StateSet
from .tolerances import DEFAULT, Tolerances

VERDICT_INFEASIBLE = "LOCC-infeasible"
VERDICT_INCONCLUSIVE = "inconclusive"

# Probe layouts. Alice holds A, A', A''; Bob holds B, B', B''.
LAYOUT_PHI_IN = SystemLayout((("A", 3, ALICE), ("B", 3, BOB), ("App", 3, ALICE)))
LAYOUT_PHI_OUT_BBP = SystemLayout((("B", 3, BOB), ("Bp", 3, BOB), ("App", 3, ALICE)))
LAYOUT_PSI_IN = SystemLayout((("A", 3, ALICE), ("B", 3, BOB), ("Bpp", 2, BOB)))
LAYOUT_PSI_OUT_AAP = SystemLayout((("A", 3, ALICE), ("Ap", 3, ALICE), ("Bpp", 2, BOB)))
LAYOUT_PSI_OUT_AB = LAYOUT_PSI_IN


@dataclass(frozen=True)
class ProbeStates:
    """The two probe states and their images under the cloning process."""

    phi_in: Ket
    phi_out_bbp: Ket
    psi_in: Ket
    psi_out_aap: Ket
    psi_out_ab: Ket

    layout_phi_in: SystemLayout = LAYOUT_PHI_IN
    layout_phi_out_bbp: SystemLayout = LAYOUT_PHI_OUT_BBP
    layout_psi_in: SystemLayout = LAYOUT_PSI_IN
    layout_psi_out_aap: SystemLayout = LAYOUT_PSI_OUT_AAP
    layout_psi_out_ab: SystemLayout = LAYOUT_PSI_OUT_AB


def build_probes(instance: CloningInstance) -> ProbeStates:
    """Probe states from the instance's v/w bases.

    phi couples the pair register to a 3-dim ancilla A'' in a maximally
    entangled way; psi couples it to a qubit B'' with weights (1/2, 1/2,
    1/sqrt2). Outputs substitute w_i for v_i: the cloning process maps
    sum_i v_i ⊗ mu_i to sum_i w_i ⊗ mu_i for any ancilla states mu_i.
    """
    v, w = instance.v_basis, instance.w_basis
    anc3 = [Ket.basis(3, i) for i in range(3)]
    anc2 = [Ket.basis(2, i) for i in range(2)]

    phi_in = Ket(sum(tensor(v[i], anc3[i]).amps for i in range(3)) / math.sqrt(3))
    phi_out = Ket(sum(tensor(w[i], anc3[i]).amps for i in range(3)) / math.sqrt(3))

    def psi_probe(basis):
        amps = (
            tensor(Ket((basis[0].amps + basis[1].amps) / math.sqrt(2)), anc2[0]).amps / math.sqrt(2)
            + tensor(basis[2], anc2[1]).amps / math.sqrt(2)
        )
        return Ket(amps)

    psi_in = psi_probe(v)
    psi_out = psi_probe(w)
    return ProbeStates(
        phi_in=phi_in,
        phi_out_bbp=phi_out,
        psi_in=psi_in,
        psi_out_aap=psi_out,
        psi_out_ab=psi_out,
    )


@dataclass(frozen=True)
class GammaBBBound:
    """E^(3) pair forcing gamma_BBp = 0."""

    e3_in: float
    e3_out: float
    gamma_bbp_zero: bool


@dataclass(frozen=True)
class GammaABound:
    """E^(2) triple forcing gamma_AAp + gamma_AB < 1."""

    e2_in: float
    e2_out_ab: float
    e2_out_aap: float
    delta_ab: float
    delta_aap: float
    gamma_sum_lt_one: bool


def gamma_bb_bound(probes: ProbeStates, tol: Tolerances = DEFAULT) -> GammaBBBound:
    """E^(3) of the phi probe before and after: 0 vs 1/3 caps gamma_BBp at 0."""
    e3_in = monotone(probes.phi_in, probes.layout_phi_in, (("App", "A"), ("B",)), 3, tol=tol)
    e3_out = monotone(probes.phi_out_bbp, probes.layout_phi_out_bbp,
                      (("App",), ("B", "Bp")), 3, tol=tol)
    return GammaBBBound(
        e3_in=e3_in,
        e3_out=e3_out,
        gamma_bbp_zero=e3_in < e3_out - tol.margin,
    )


def gamma_a_bound(probes: ProbeStates, tol: Tolerances = DEFAULT) -> GammaABound:
    """E^(2) of the psi probe: both outputs strictly exceed the input."""
    part_ab = (("A",), ("B", "Bpp"))
    e2_in = monotone(probes.psi_in, probes.layout_psi_in, part_ab, 2, tol=tol)
    e2_out_ab = monotone(probes.psi_out_ab, probes.layout_psi_out_ab, part_ab, 2, tol=tol)
    e2_out_aap = monotone(probes.psi_out_aap, probes.layout_psi_out_aap,
                          (("A", "Ap"), ("Bpp",)), 2, tol=tol)
    delta_ab = e2_out_ab - e2_in
    delta_aap = e2_out_aap - e2_in
    return GammaABound(
        e2_in=e2_in,
        e2_out_ab=e2_out_ab,
        e2_out_aap=e2_out_aap,
        delta_ab=delta_ab,
        delta_aap=delta_aap,
        gamma_sum_lt_one=delta_ab > tol.margin and delta_aap > tol.margin,
    )


@dataclass(frozen=True)
class LoccCertificate:
    """Machine-checkable record of the infeasibility argument at one (a0, a1)."""

    alpha: tuple[float, float, float]
    e3_in: float
    e3_out: float
    e2_in: float
    e2_out_ab: float
    e2_out_aap: float
    delta_ab: float
    delta_aap: float
    kappa: float
    det_witness: float
    perron_ok: bool
    gamma_bbp_zero: bool
    gamma_sum_lt_one: bool
    verdict: str
    margin: float

    def recompute_verdict(self) -> str:
        """Re-derive the verdict from the stored numbers (self-verification)."""
        ok = (
            self.e3_in < self.e3_out - self.margin
            and self.delta_ab > self.margin
            and self.delta_aap > self.margin
        )
        return VERDICT_INFEASIBLE if ok else VERDICT_INCONCLUSIVE


def witness_densities(probes: ProbeStates) -> tuple[Operator, Operator]:
    """Reduced states of the psi probe on register A before and after cloning."""
    rho_in = partial_trace(probes.psi_in, probes.layout_psi_in, keep=("A",))
    rho_out = partial_trace(probes.psi_out_ab, probes.layout_psi_out_ab, keep=("A",))
    return rho_in, rho_out


def certify(alpha0: float, alpha1: float, tol: Tolerances = DEFAULT) -> LoccCertificate:
    """Full certificate: unitary, probes, both gamma bounds, all witnesses."""
    instance = build_unitary(alpha0, alpha1, tol=tol)
    probes = build_probes(instance)
    bb = gamma_bb_bound(probes, tol=tol)
    ab = gamma_a_bound(probes, tol=tol)

    rho_in, rho_out = witness_densities(probes)
    try:
        kappa = kappa_witness(rho_in, rho_out, tol=tol)
    except WitnessError:
        kappa = float("nan")
    det = determinant_witness(rho_in, tol=tol)
    perron_ok, _ = perron_witness(rho_out, tol=tol)

    # verdict is exactly the three monotone margins; witnesses corroborate
    conclusive = bb.gamma_bbp_zero and ab.gamma_sum_lt_one
    return LoccCertificate(
        alpha=instance.alpha,
        e3_in=bb.e3_in,
        e3_out=bb.e3_out,
        e2_in=ab.e2_in,
        e2_out_ab=ab.e2_out_ab,
        e2_out_aap=ab.e2_out_aap,
        delta_ab=ab.delta_ab,
        delta_aap=ab.delta_aap,
        kappa=kappa,
        det_witness=det,
        perron_ok=perron_ok,
        gamma_bbp_zero=bb.gamma_bbp_zero,
        gamma_sum_lt_one=ab.gamma_sum_lt_one,
        verdict=VERDICT_INFEASIBLE if conclusive else VERDICT_INCONCLUSIVE,
        margin=tol.margin,
    )


@dataclass(frozen=True)
class SweepRow:
    alpha0: float
    alpha1: float
    delta_ab: float
    delta_aap: float


def grid_values(n_grid: int, margin: float) -> np.ndarray:
    """Uniform axis values on [margin, sqrt(1 - margin^2)]."""
    if n_grid < 2:
        raise ParameterError("grid resolution must be at least 2")
    if not 0.0 < margin < 1.0:
        raise ParameterError("margin must lie in (0, 1)")
    return np.linspace(margin, math.sqrt(1.0 - margin * margin), n_grid)


def iter_grid(n_grid: int, margin: float = 1e-3) -> Iterator[tuple[float, float]]:
    """Row-major admissible grid points over {a0, a1 >= margin, a0^2 + a1^2 <= 1}."""
    values = grid_values(n_grid, margin)
    for a0 in values:
        for a1 in values:
            if a0 * a0 + a1 * a1 <= 1.0 + 1e-12:
                yield float(a0), float(a1)


def sweep(n_grid: int, margin: float = 1e-3, tol: Tolerances = DEFAULT) -> list[SweepRow]:
    """Fig.-1-style table of both deltas over the admissible grid."""
    rows = []
    for a0, a1 in iter_grid(n_grid, margin):
        probes = build_probes(build_unitary(a0, a1, tol=tol))
        ab = gamma_a_bound(probes, tol=tol)
        rows.append(SweepRow(alpha0=a0, alpha1=a1, delta_ab=ab.delta_ab, delta_aap=ab.delta_aap))
    return rows


@dataclass(frozen=True)
class VerifiedStateSet:
    """Certificate for an n-state set via the embedded 3-state chain problem."""

    chain: Chain
    form: CanonicalForm
    supplementary: tuple[Ket, ...]
    certificate: LoccCertificate


def verify_state_set(sset: StateSet, tol: Tolerances = DEFAULT) -> VerifiedStateSet:
    """Chain extraction, canonicalization, supplementary extension, certificate.

    States beyond the chain pair with mutually orthogonal flag states, so the
    cloning task decouples and the certificate for the embedded 3-state
    problem covers the whole set.
    """
    chain, form, phi = verify_chain_supplement(sset, tol=tol)
    cert = certify(form.alpha[0], form.alpha[1], tol=tol)
    return VerifiedStateSet(chain=chain, form=form, supplementary=phi, certificate=cert)
