"""Serialization for state-set files, instances, certificates, and sweeps.

JSON numbers are emitted with 17 significant digits so every double survives
a serialize-parse-serialize round trip byte-identically; complex data is
stored as parallel re/im arrays.
"""
from __future__ import annotations

import json
import math
import warnings
from typing import Any, Sequence

import numpy as np

from .certify import LoccCertificate, SweepRow, VerifiedStateSet
from .errors import FormatError
from .linalg import Ket, Operator
from .protocol import CloningInstance
from .statesets import CanonicalForm, Chain, GramAnalysis, StateSet

# state files must be normalized within this; softer deviations renormalize
_NORM_ERROR = 1e-8
_NORM_WARN = 1e-10


def _format_float(x: float) -> str:
    if not math.isfinite(x):
        raise FormatError(f"cannot serialize non-finite number {x!r}")
    if x == 0.0:
        x = 0.0  # normalize -0.0 so round trips stay byte-identical
    return format(x, ".17g")


def dumps(obj: Any, indent: int = 0) -> str:
    """Deterministic JSON with 17-significant-digit floats, insertion key order."""
    pad = " " * indent
    inner = " " * (indent + 2)
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _format_float(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [dumps(v, indent + 2) for v in obj]
        return "[\n" + ",\n".join(inner + it for it in items) + "\n" + pad + "]"
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [
            f"{inner}{json.dumps(str(k), ensure_ascii=False)}: {dumps(v, indent + 2)}"
            for k, v in obj.items()
        ]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    raise FormatError(f"cannot serialize object of type {type(obj).__name__}")


def dumps_document(obj: Any) -> str:
    return dumps(obj) + "\n"


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"malformed JSON: {exc}") from exc


def _reim(values: np.ndarray) -> dict[str, list[float]]:
    return {
        "re": [float(v.real) for v in values],
        "im": [float(v.imag) for v in values],
    }


def ket_to_dict(label: str, ket: Ket) -> dict[str, Any]:
    return {"label": label, **_reim(ket.amps)}


def _ket_from_dict(entry: Any, dim: int | None = None) -> tuple[str, np.ndarray]:
    if not isinstance(entry, dict):
        raise FormatError("each state must be an object with label/re/im")
    try:
        label = str(entry["label"])
        re = entry["re"]
        im = entry["im"]
    except KeyError as exc:
        raise FormatError(f"state entry missing field {exc}") from exc
    if not isinstance(re, list) or not isinstance(im, list) or len(re) != len(im):
        raise FormatError(f"state {label!r}: re/im must be equal-length lists")
    if dim is not None and len(re) != dim:
        raise FormatError(f"state {label!r}: length {len(re)} does not match dim {dim}")
    try:
        amps = np.asarray(re, dtype=np.float64) + 1j * np.asarray(im, dtype=np.float64)
    except (TypeError, ValueError) as exc:
        raise FormatError(f"state {label!r}: non-numeric amplitudes") from exc
    return label, amps


def state_set_to_dict(sset: StateSet) -> dict[str, Any]:
    return {
        "dim": sset.dim,
        "states": [ket_to_dict(lb, k) for lb, k in sset.states],
    }


def state_set_from_dict(data: Any) -> StateSet:
    """Parse and validate a state-set document; renormalizes with a warning."""
    if not isinstance(data, dict):
        raise FormatError("state-set document must be a JSON object")
    try:
        dim = int(data["dim"])
        entries = data["states"]
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"state-set document missing/invalid field: {exc}") from exc
    if not isinstance(entries, list) or len(entries) < 2:
        raise FormatError("state-set document needs a list of at least two states")
    states = []
    for entry in entries:
        label, amps = _ket_from_dict(entry, dim)
        norm = float(np.linalg.norm(amps))
        dev = abs(norm - 1.0)
        if dev > _NORM_ERROR:
            raise FormatError(f"state {label!r} has norm {norm!r}, beyond {_NORM_ERROR:g}")
        if dev > _NORM_WARN:
            warnings.warn(
                f"state {label!r} renormalized (norm deviation {dev:.3e})",
                stacklevel=2,
            )
        states.append((label, Ket(amps / norm)))
    return StateSet(dim=dim, states=tuple(states))


def _matrix_to_dict(op: Operator) -> dict[str, Any]:
    m = op.mat
    return {
        "rows": int(m.shape[0]),
        "cols": int(m.shape[1]),
        "re": [[float(v.real) for v in row] for row in m],
        "im": [[float(v.imag) for v in row] for row in m],
    }


def _matrix_from_dict(data: Any) -> Operator:
    try:
        re = np.asarray(data["re"], dtype=np.float64)
        im = np.asarray(data["im"], dtype=np.float64)
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"matrix entry invalid: {exc}") from exc
    if re.shape != im.shape or re.ndim != 2:
        raise FormatError("matrix re/im must be equal-shape 2-d arrays")
    return Operator(re + 1j * im)


def instance_to_dict(instance: CloningInstance) -> dict[str, Any]:
    return {
        "alpha": list(instance.alpha),
        "psi": [ket_to_dict(f"psi{i + 1}", k) for i, k in enumerate(instance.psi)],
        "phi": [ket_to_dict(f"phi{i + 1}", k) for i, k in enumerate(instance.phi)],
        "v_basis": [ket_to_dict(f"v{i + 1}", k) for i, k in enumerate(instance.v_basis)],
        "w_basis": [ket_to_dict(f"w{i + 1}", k) for i, k in enumerate(instance.w_basis)],
        "U": _matrix_to_dict(instance.unitary),
    }


def instance_from_dict(data: Any) -> CloningInstance:
    if not isinstance(data, dict):
        raise FormatError("instance document must be a JSON object")
    try:
        alpha = tuple(float(a) for a in data["alpha"])
        groups = {name: data[name] for name in ("psi", "phi", "v_basis", "w_basis")}
        u = _matrix_from_dict(data["U"])
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"instance document missing/invalid field: {exc}") from exc
    if len(alpha) != 3:
        raise FormatError("alpha must have three components")
    kets: dict[str, tuple[Ket, ...]] = {}
    for name, entries in groups.items():
        if not isinstance(entries, list) or len(entries) != 3:
            raise FormatError(f"{name} must list exactly three states")
        kets[name] = tuple(Ket(_ket_from_dict(e)[1]) for e in entries)
    return CloningInstance(
        alpha=alpha,
        psi=kets["psi"],
        phi=kets["phi"],
        v_basis=kets["v_basis"],
        w_basis=kets["w_basis"],
        unitary=u,
    )


def certificate_to_dict(cert: LoccCertificate) -> dict[str, Any]:
    return {
        "alpha": list(cert.alpha),
        "monotones": {
            "e3_in": cert.e3_in,
            "e3_out": cert.e3_out,
            "e2_in": cert.e2_in,
            "e2_out_AB": cert.e2_out_ab,
            "e2_out_AAp": cert.e2_out_aap,
        },
        "deltas": {
            "delta_AB": cert.delta_ab,
            "delta_AAp": cert.delta_aap,
        },
        "witnesses": {
            # a failed off-diagonal witness records NaN; JSON carries it as null
            "kappa": cert.kappa if math.isfinite(cert.kappa) else None,
            "det_witness": cert.det_witness,
            "perron_ok": cert.perron_ok,
        },
        "gamma_constraints": {
            "gamma_BBp_zero": cert.gamma_bbp_zero,
            "gamma_AAp_plus_AB_lt_one": cert.gamma_sum_lt_one,
        },
        "margin": cert.margin,
        "verdict": cert.verdict,
    }


def certificate_from_dict(data: Any) -> LoccCertificate:
    try:
        alpha = tuple(float(a) for a in data["alpha"])
        mono = data["monotones"]
        deltas = data["deltas"]
        wit = data["witnesses"]
        gamma = data["gamma_constraints"]
        kappa = float("nan") if wit["kappa"] is None else float(wit["kappa"])
        return LoccCertificate(
            alpha=alpha,
            e3_in=float(mono["e3_in"]),
            e3_out=float(mono["e3_out"]),
            e2_in=float(mono["e2_in"]),
            e2_out_ab=float(mono["e2_out_AB"]),
            e2_out_aap=float(mono["e2_out_AAp"]),
            delta_ab=float(deltas["delta_AB"]),
            delta_aap=float(deltas["delta_AAp"]),
            kappa=kappa,
            det_witness=float(wit["det_witness"]),
            perron_ok=bool(wit["perron_ok"]),
            gamma_bbp_zero=bool(gamma["gamma_BBp_zero"]),
            gamma_sum_lt_one=bool(gamma["gamma_AAp_plus_AB_lt_one"]),
            verdict=str(data["verdict"]),
            margin=float(data["margin"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"certificate document missing/invalid field: {exc}") from exc


def classification(result: GramAnalysis) -> str:
    if result.is_pno:
        return "PNO"
    if result.is_reducible:
        return "reducible"
    return "irreducible non-PNO"


def analysis_to_dict(
    sset: StateSet,
    result: GramAnalysis,
    chain: Chain | None = None,
    form: CanonicalForm | None = None,
) -> dict[str, Any]:
    """Structured report: Gram data, classification, and chain/alpha when found."""
    labels = sset.labels
    g = result.gram
    report: dict[str, Any] = {
        "n": len(sset),
        "dim": sset.dim,
        "labels": list(labels),
        "gram": {
            "re": [[float(v.real) for v in row] for row in g],
            "im": [[float(v.imag) for v in row] for row in g],
        },
        "is_pno": result.is_pno,
        "is_reducible": result.is_reducible,
        "components": [
            {"indices": list(comp), "labels": [labels[i] for i in comp]}
            for comp in result.components
        ],
        "classification": classification(result),
    }
    if chain is not None:
        report["chain"] = {
            "indices": list(chain.indices),
            "labels": [labels[i] for i in chain.indices],
        }
    if form is not None:
        report["alpha"] = list(form.alpha)
    return report


def verified_to_dict(sset: StateSet, result: VerifiedStateSet) -> dict[str, Any]:
    """Certificate document for a verified n-state set, with pipeline context."""
    labels = sset.labels
    return {
        "state_set": {
            "n": len(sset),
            "dim": sset.dim,
            "labels": list(labels),
        },
        "chain": {
            "indices": list(result.chain.indices),
            "labels": [labels[i] for i in result.chain.indices],
        },
        "relabeling": list(result.form.relabeling),
        "supplementary": [
            ket_to_dict(f"phi{i + 1}", k) for i, k in enumerate(result.supplementary)
        ],
        "certificate": certificate_to_dict(result.certificate),
    }


def sweep_to_csv(rows: Sequence[SweepRow]) -> str:
    lines = ["alpha0,alpha1,delta_AB,delta_AAp"]
    for r in rows:
        lines.append(",".join(_format_float(v)
                              for v in (r.alpha0, r.alpha1, r.delta_ab, r.delta_aap)))
    return "\n".join(lines) + "\n"


def sweep_from_csv(text: str) -> list[SweepRow]:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != "alpha0,alpha1,delta_AB,delta_AAp":
        raise FormatError("sweep CSV must start with the standard header")
    rows = []
    for ln in lines[1:]:
        parts = ln.split(",")
        if len(parts) != 4:
            raise FormatError(f"sweep CSV row has {len(parts)} fields: {ln!r}")
        try:
            vals = [float(p) for p in parts]
        except ValueError as exc:
            raise FormatError(f"sweep CSV row not numeric: {ln!r}") from exc
        if not all(math.isfinite(v) for v in vals):
            raise FormatError(f"sweep CSV row not finite: {ln!r}")
        rows.append(SweepRow(*vals))
    return rows
