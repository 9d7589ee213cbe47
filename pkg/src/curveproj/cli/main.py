"""Command-line entry point."""

from __future__ import annotations

import argparse
import sys
import time

from .. import pointsets
from ..config import DEFAULT, Config
from ..errors import CurveprojError, Exceptional, ParseError
from ..invariants import classify
from ..projection import decide_central, decide_parallel, verify_projection
from ..projection.matrix import ProjectionMatrix
from ..signatures import equivalent, signature
from .parse import load_curve, load_points, parse_matrix
from .report import EXIT_INPUT, Report, numeric, rat


def _sig_result(curve, group, config) -> dict:
    cls = classify(curve, group)
    out = {"group": group, "class": cls.kind.value}
    try:
        sig = signature(curve, group, config)
    except Exceptional:
        out["signature"] = None
        return out
    out["signature"] = str(sig)
    out["signature_kind"] = sig.kind
    return out


def _matrix(P) -> list[list[str]] | None:
    return None if P is None else P.to_lists()


def _decision_result(dec) -> dict:
    return {
        "complete": dec.complete,
        "matrix": _matrix(dec.matrix),
        "witnesses": [
            {"family": w.family, "params": {k: rat(v) for k, v in sorted(w.params.items())},
             "certificate": w.certificate, "matrix": _matrix(w.matrix)}
            for w in dec.witnesses
        ],
        "numeric": [
            {"family": n.family, "real": n.real, "params": {k: numeric(v) for k, v in sorted(n.params.items())}}
            for n in dec.numeric
        ],
    }


def cmd_signature(args, config):
    return None, _sig_result(load_curve(args.curve), args.group, config), []


def cmd_classify(args, config):
    cls = classify(load_curve(args.curve), args.group)
    return None, {"group": args.group, "class": cls.kind.value, "exceptional": cls.exceptional}, []


def cmd_equivalent(args, config):
    c1, c2 = load_curve(args.curve1), load_curve(args.curve2)
    dec = equivalent(c1, c2, args.group, config)
    return dec.verdict.value, {"group": args.group}, dec.trace


def _cmd_project(fn):
    def run(args, config):
        dec = fn(load_curve(args.spatial), load_curve(args.planar), config)
        return dec.verdict.value, _decision_result(dec), dec.trace
    return run


def cmd_verify(args, config):
    P = ProjectionMatrix(parse_matrix(args.matrix))
    ok = verify_projection(P, load_curve(args.spatial), load_curve(args.planar), config)
    return ("Yes" if ok else "No"), {"matrix": P.to_lists(), "kind": P.kind}, []


def _cmd_points(fn):
    def run(args, config):
        dec = fn(load_points(args.spatial), load_points(args.planar))
        return dec.verdict.value, {"matrix": _matrix(dec.matrix)}, dec.trace
    return run


COMMANDS = {
    "signature": cmd_signature,
    "classify": cmd_classify,
    "equivalent": cmd_equivalent,
    "project-central": _cmd_project(decide_central),
    "project-parallel": _cmd_project(decide_parallel),
    "verify": cmd_verify,
    "project-points-central": _cmd_points(pointsets.decide_central_points),
    "project-points-parallel": _cmd_points(pointsets.decide_parallel_points),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="canonical JSON report")
    common.add_argument("--trace", action="store_true", help="include algorithm steps")
    common.add_argument("--config", help="key = value file with degree caps and sample counts")
    grp = argparse.ArgumentParser(add_help=False)
    grp.add_argument("--group", choices=("projective", "affine"), default="projective")

    p = argparse.ArgumentParser(prog="curveproj", description="Projections of rational curves.")
    sub = p.add_subparsers(dest="command", required=True)
    for name in ("signature", "classify"):
        s = sub.add_parser(name, parents=[common, grp])
        s.add_argument("curve")
    s = sub.add_parser("equivalent", parents=[common, grp])
    s.add_argument("curve1")
    s.add_argument("curve2")
    for name in ("project-central", "project-parallel", "project-points-central", "project-points-parallel"):
        s = sub.add_parser(name, parents=[common])
        s.add_argument("spatial")
        s.add_argument("planar")
    s = sub.add_parser("verify", parents=[common])
    s.add_argument("spatial")
    s.add_argument("planar")
    s.add_argument("--matrix", required=True, help="rows separated by ';', e.g. '1 0 0 0; 0 1 0 0; 0 0 1 1'")
    return p


def run(argv: list[str]) -> Report:
    args = build_parser().parse_args(argv)
    report = Report(command=list(argv))
    t0 = time.perf_counter()
    try:
        config = Config.from_file(args.config) if args.config else DEFAULT
        verdict, result, trace = COMMANDS[args.command](args, config)
        report.verdict, report.result = verdict, result
        if args.trace:
            report.trace = list(trace)
    except ParseError as exc:
        report.error = {"type": type(exc).__name__, "message": str(exc), "line": exc.line, "column": exc.column}
    except CurveprojError as exc:
        report.error = {"type": type(exc).__name__, "message": str(exc)}
    except (OSError, ValueError) as exc:
        name = "FileNotFoundError" if isinstance(exc, FileNotFoundError) else "UsageError"
        report.error = {"type": name, "message": str(exc)}
    report.timing = time.perf_counter() - t0
    return report


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else 0
    report = run(argv)
    sys.stdout.write(report.to_json() if args.json else report.to_text())
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
