"""Command line interface.

Exit codes: 0 when every check passes, 1 when a check fails, 2 for unreadable
input or bad usage.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .battery import run_battery
from .connection import InconsistencyError
from .corpus import check_entry, corpus_lowdim, corpus_model_examples
from .io import ParseError, algebra_from_dict, dumps, emit_algebra, emit_report, load_json
from .linalg import LinalgError, Matrix, vec
from .models.builders import build_model
from .models.extension import (
    curvature_system_check,
    classical_double_extension,
    data_from_dict,
    generalized_extension,
)
from .models.specs import FAMILIES, SpecError, spec_from_dict, spec_to_dict, validate_model_params
from .report import CheckReport, PreconditionError

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _read(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from None


def _write(path: str | None, data: bytes) -> None:
    if path is None or path == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    else:
        Path(path).write_bytes(data)


def _out(text: str) -> None:
    sys.stdout.buffer.write(text.encode("utf-8"))
    sys.stdout.flush()


def _emit(report: CheckReport, fmt: str) -> int:
    _write(None, emit_report(report, fmt))
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_check(args) -> int:
    alg = algebra_from_dict(load_json(_read(args.file)))
    try:
        report = run_battery(alg, args.witness)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return _emit(report, args.format)


def _load_spec(path: str, family: str | None = None):
    d = load_json(_read(path))
    if isinstance(d, dict) and "family" in d:
        if family is not None and str(d["family"]).lower() != family:
            raise UsageError(f"file is for family {d['family']}, not {family}")
    elif family is not None:
        d = {"family": family, "params": d}
    return spec_from_dict(d)


def cmd_build(args) -> int:
    spec = _load_spec(args.params, args.family)
    rep = validate_model_params(spec)
    if not rep.passed:
        sys.stderr.write(rep.to_text())
        return EXIT_FAIL
    _write(args.output, emit_algebra(build_model(spec, check=False)))
    return EXIT_OK


def cmd_validate(args) -> int:
    return _emit(validate_model_params(_load_spec(args.file)), args.format)


def _slug(label: str) -> str:
    keep = [c if c.isalnum() or c in "-_=" else "_" for c in label]
    return "".join(keep).strip("_")


def cmd_corpus(args) -> int:
    outdir = Path(args.output) if args.output else None
    if outdir:
        outdir.mkdir(parents=True, exist_ok=True)
    ok = True
    if args.which == "lowdim":
        entries = sorted(corpus_lowdim(), key=lambda e: e.label)
        for entry in entries:
            rep = check_entry(entry)
            ok &= rep.passed
            flags = ", ".join(f"{k}={'yes' if v else 'no'}" for k, v in sorted(rep.flags.items()))
            _out(f"[{'PASS' if rep.passed else 'FAIL'}] {entry.label}: {flags}\n")
            if outdir:
                (outdir / f"{_slug(entry.label)}.json").write_bytes(emit_algebra(entry.algebra))
        return EXIT_OK if ok else EXIT_FAIL

    if args.dim is None:
        raise UsageError("corpus models needs --dim")
    if not 4 <= args.dim <= 10:
        raise UsageError("--dim must be between 4 and 10")
    for fam, spec, alg, msg in corpus_model_examples(args.dim):
        if alg is None:
            _out(f"[SKIP] {fam}: {msg}\n")
            continue
        rep = run_battery(alg)
        lorentz = rep.flags.get("lorentzian", False)
        passed = rep.passed and rep.flags.get("flat", False) and lorentz
        ok &= passed
        flags = ", ".join(f"{k}={'yes' if v else 'no'}" for k, v in sorted(rep.flags.items()))
        _out(f"[{'PASS' if passed else 'FAIL'}] {fam} dim {alg.dim}: {flags}\n")
        if outdir:
            (outdir / f"{fam}-dim{args.dim}.spec.json").write_bytes(dumps(spec_to_dict(spec)))
            (outdir / f"{fam}-dim{args.dim}.json").write_bytes(emit_algebra(alg))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_extend(args) -> int:
    d = load_json(_read(args.input))
    if not isinstance(d, dict):
        raise UsageError("input must be a JSON object")
    if args.kind == "classical":
        try:
            base = algebra_from_dict(d["base"])
            A, D = Matrix(d["A"]), Matrix(d["D"])
            lam = d.get("lambda", 0)
            w = vec(d.get("w", [0] * base.dim))
        except KeyError as exc:
            raise UsageError(f"missing key {exc}") from None
        try:
            alg = classical_double_extension(base, A, D, lam, w)
        except PreconditionError as exc:
            sys.stderr.write(f"{exc}\n")
            if exc.report is not None:
                sys.stderr.write(exc.report.to_text())
            return EXIT_FAIL
        _write(args.output, emit_algebra(alg))
        return EXIT_OK
    data = data_from_dict(d)
    rep = curvature_system_check(data)
    if not rep.passed:
        sys.stderr.write(rep.to_text())
        return EXIT_FAIL
    alg, _ = generalized_extension(data, tuple(d.get("basis", ())))
    _write(args.output, emit_algebra(alg))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lorflat", description="Exact checks for flat Lorentzian Lie algebras.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="run the check battery on an algebra file")
    c.add_argument("file")
    c.add_argument("--witness", help="basis name, comma-separated coordinates, or 'auto'")
    c.add_argument("--format", choices=("text", "json"), default="text")
    c.set_defaults(func=cmd_check)

    b = sub.add_parser("build", help="build a family instance from parameters")
    b.add_argument("--family", required=True, choices=FAMILIES)
    b.add_argument("--params", required=True)
    b.add_argument("-o", "--output")
    b.set_defaults(func=cmd_build)

    v = sub.add_parser("validate-params", help="validate a model spec file")
    v.add_argument("file")
    v.add_argument("--format", choices=("text", "json"), default="text")
    v.set_defaults(func=cmd_validate)

    k = sub.add_parser("corpus", help="check the bundled corpora")
    k.add_argument("which", choices=("lowdim", "models"))
    k.add_argument("--dim", type=int)
    k.add_argument("-o", "--output", help="directory for the emitted algebra files")
    k.set_defaults(func=cmd_corpus)

    e = sub.add_parser("extend", help="build a double extension")
    e.add_argument("kind", choices=("classical", "generalized"))
    e.add_argument("--input", required=True)
    e.add_argument("-o", "--output")
    e.set_defaults(func=cmd_extend)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, ParseError, SpecError, LinalgError) as exc:
        sys.stderr.write(f"lorflat: {exc}\n")
        return EXIT_USAGE
    except PreconditionError as exc:
        sys.stderr.write(f"lorflat: {exc}\n")
        return EXIT_USAGE
    except InconsistencyError as exc:
        sys.stderr.write(f"lorflat: internal inconsistency: {exc}\n")
        return EXIT_FAIL


def main_exit() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
