"""Command-line front end.

Subcommands: analyze, construct, certify, verify, sweep. Structured artifacts
go out as JSON, sweep tables as CSV. Exit codes: 0 success or infeasible
verdict, 1 inconclusive verdict, 2 usage/IO error.

Example:
  clonecert certify --alpha0 0.7071067811865476 --alpha1 0.7071067811865476 --out cert.json
  clonecert sweep --grid 50 --margin 1e-3 --out fig1.csv
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from . import serialize
from .certify import VERDICT_INFEASIBLE, certify, sweep, verify_state_set
from .errors import CloneCertError, FormatError
from .protocol import build_unitary
from .statesets import analyze, canonicalize, find_orthogonal_chain
from .tolerances import DEFAULT, Tolerances

EXIT_OK = 0
EXIT_INCONCLUSIVE = 1
EXIT_ERROR = 2


def _parse_tolerances(pairs: Sequence[str] | None) -> Tolerances:
    overrides: dict[str, float] = {}
    names = Tolerances.field_names()
    for item in pairs or ():
        name, sep, raw = item.partition("=")
        if not sep or name not in names:
            raise FormatError(
                f"--tol expects NAME=VALUE with NAME in {{{', '.join(names)}}}, got {item!r}"
            )
        try:
            value = float(raw)
        except ValueError as exc:
            raise FormatError(f"--tol {name}: {raw!r} is not a number") from exc
        if not value > 0.0:
            raise FormatError(f"--tol {name}: value must be positive, got {raw}")
        overrides[name] = value
    return DEFAULT.replace(**overrides)


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _load_state_set(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc
    return serialize.state_set_from_dict(serialize.loads(text))


def _cmd_analyze(args: argparse.Namespace, tol: Tolerances) -> int:
    sset = _load_state_set(args.path)
    result = analyze(sset, tol=tol)
    chain = form = None
    if not result.is_pno and not result.is_reducible:
        chain = find_orthogonal_chain(sset, tol=tol)
        form = canonicalize(sset, chain, tol=tol)
    report = serialize.analysis_to_dict(sset, result, chain=chain, form=form)
    _emit(serialize.dumps_document(report), args.out)
    return EXIT_OK


def _cmd_construct(args: argparse.Namespace, tol: Tolerances) -> int:
    instance = build_unitary(args.alpha0, args.alpha1, tol=tol)
    _emit(serialize.dumps_document(serialize.instance_to_dict(instance)), args.out)
    return EXIT_OK


def _cmd_certify(args: argparse.Namespace, tol: Tolerances) -> int:
    cert = certify(args.alpha0, args.alpha1, tol=tol)
    _emit(serialize.dumps_document(serialize.certificate_to_dict(cert)), args.out)
    return EXIT_OK if cert.verdict == VERDICT_INFEASIBLE else EXIT_INCONCLUSIVE


def _cmd_verify(args: argparse.Namespace, tol: Tolerances) -> int:
    sset = _load_state_set(args.path)
    result = analyze(sset, tol=tol)
    if result.is_pno:
        print(
            "pair-wise nonorthogonal set: the stronger no-cloning theorem "
            "already forbids local cloning; no supplementary construction applies",
            file=sys.stderr,
        )
        return EXIT_INCONCLUSIVE
    if result.is_reducible:
        comps = ", ".join("{" + ", ".join(sset.labels[i] for i in c) + "}"
                          for c in result.components)
        print(
            f"reducible set: orthogonal components {comps} can be cloned freely; "
            "split the set before certification",
            file=sys.stderr,
        )
        return EXIT_INCONCLUSIVE
    verified = verify_state_set(sset, tol=tol)
    _emit(serialize.dumps_document(serialize.verified_to_dict(sset, verified)), args.out)
    verdict = verified.certificate.verdict
    return EXIT_OK if verdict == VERDICT_INFEASIBLE else EXIT_INCONCLUSIVE


def _cmd_sweep(args: argparse.Namespace, tol: Tolerances) -> int:
    rows = sweep(args.grid, margin=args.margin, tol=tol)
    _emit(serialize.sweep_to_csv(rows), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="clonecert",
        description="LOCC-infeasibility certificates for nonlocally assisted cloning",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--out", metavar="PATH", default=None,
                       help="output file (default: stdout)")
        p.add_argument("--tol", action="append", metavar="NAME=VALUE",
                       help="override a tolerance; repeatable")

    p = sub.add_parser("analyze", help="classify a state-set file and extract a chain")
    p.add_argument("path", help="state-set JSON file")
    add_common(p)
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("construct", help="build the cloning unitary at (alpha0, alpha1)")
    p.add_argument("--alpha0", type=float, required=True)
    p.add_argument("--alpha1", type=float, required=True)
    add_common(p)
    p.set_defaults(func=_cmd_construct)

    p = sub.add_parser("certify", help="emit an LOCC-infeasibility certificate")
    p.add_argument("--alpha0", type=float, required=True)
    p.add_argument("--alpha1", type=float, required=True)
    add_common(p)
    p.set_defaults(func=_cmd_certify)

    p = sub.add_parser("verify", help="run the full pipeline on a state-set file")
    p.add_argument("path", help="state-set JSON file")
    add_common(p)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("sweep", help="tabulate both monotone gaps over a parameter grid")
    p.add_argument("--grid", type=int, required=True, metavar="N",
                   help="points per axis (N >= 2)")
    p.add_argument("--margin", type=float, default=1e-3,
                   help="distance from the degenerate boundary (default 1e-3)")
    add_common(p)
    p.set_defaults(func=_cmd_sweep)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        tol = _parse_tolerances(args.tol)
        return args.func(args, tol)
    except CloneCertError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    raise SystemExit(main())
