"""Command-line interface.

Exit codes: 0 success, 1 falsification or corpus mismatch, 2 usage or
parse error.  Errors of kind 2 print a single JSON line on stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import __version__
from . import relation as rel
from .corpus import CorpusError, corpus_to_json, counterexample_corpus, load_corpus, replay
from .numkernel import DEFAULT_POLICY, EXACT, FLOAT, TolerancePolicy
from .relfile import RelationFileError, dumps, load_relation, relation_to_dict
from .subspace import AmbientMismatch, Subspace
from .theorems import (
    ALL_IDS,
    CLOSED_NOTE,
    DENSITY_NOTE,
    THEOREMS,
    CheckError,
    SuiteConfig,
    SuiteReport,
    TheoremSummary,
    parse_theorem_id,
    run_check,
    run_suite,
)
from .scalars import format_exact

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

UNARY = ("adjoint", "inverse", "dom", "ran", "ker", "mul", "classify")
BINARY = ("sum", "compose", "intersect")


class UsageError(Exception):
    def __init__(self, kind: str, message: str):
        super().__init__(message)
        self.kind = kind
        self.message = message


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError("usage", message)


def _fail(kind: str, message: str) -> int:
    print(json.dumps({"error": kind, "message": message}), file=sys.stderr)
    return EXIT_USAGE


def _policy(args, backend: str) -> TolerancePolicy:
    if args.tol is None:
        return DEFAULT_POLICY
    if backend == EXACT:
        raise UsageError("flag", "--tol applies only to the float backend")
    if not args.tol > 0:
        raise UsageError("flag", "--tol must be positive")
    return TolerancePolicy(args.tol, args.tol, args.tol)


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _subspace_to_dict(S: Subspace, field: str) -> dict:
    if S.backend == EXACT:
        fmt = format_exact
    else:
        def fmt(z):
            z = complex(z)
            return [float(z.real) + 0.0, float(z.imag) + 0.0]
    return {
        "ambient_dim": S.ambient_dim,
        "field": field,
        "scalars": S.backend,
        "dim": S.dim,
        "basis": [[fmt(z) for z in S.basis[:, j]] for j in range(S.dim)],
    }


def _load_inputs(paths, backend_flag, args):
    # backend resolution: explicit flag, else the first file's scalars
    first = load_relation(paths[0])
    backend = backend_flag or first.backend
    pol = _policy(args, backend)
    rels = [load_relation(p, backend, pol) for p in paths]
    for T in rels[1:]:
        if T.n != rels[0].n:
            raise UsageError("dimension", f"ambient dimensions differ: {rels[0].n} vs {T.n}")
        if T.field != rels[0].field:
            raise UsageError("field", f"fields differ: {rels[0].field} vs {T.field}")
    return rels


def cmd_op(args) -> int:
    name = args.command
    rels = _load_inputs(args.inputs, args.backend, args)
    T = rels[0]
    if name == "classify":
        out = dict(rel.classify(T))
        out["field"] = T.field
        out["backend"] = T.backend
        out["notes"] = [DENSITY_NOTE]
        _emit(dumps(out), args.out)
        return EXIT_OK
    if name in ("dom", "ran", "ker", "mul"):
        S = getattr(rel, name)(T)
        _emit(dumps(_subspace_to_dict(S, T.field)), args.out)
        return EXIT_OK
    if name == "adjoint":
        R = rel.adjoint(T)
    elif name == "inverse":
        R = rel.inverse(T)
    elif name == "sum":
        R = rel.rel_sum(rels[0], rels[1])
    elif name == "compose":
        R = rel.compose(rels[0], rels[1])
    else:
        R = rel.intersect_rel(rels[0], rels[1])
    _emit(dumps(relation_to_dict(R)), args.out)
    return EXIT_OK


def _parse_dims(text: str) -> tuple[int, ...]:
    try:
        dims = tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise UsageError("flag", f"--dims must be a comma-separated list of integers, got {text!r}") from None
    if not dims or any(not 1 <= n <= 12 for n in dims):
        raise UsageError("flag", "--dims entries must lie in 1..12")
    return dims


def _summary_table(summary: dict, min_rate: float | None) -> str:
    head = f"{'theorem':14s} {'confirmed':>9s} {'vacuous':>8s} {'falsified':>9s} {'hyp-rate':>8s}  notes"
    lines = [head, "-" * len(head)]
    for tid, s in summary.items():
        notes = []
        if THEOREMS[tid].trivial:
            notes.append("trivial")
        if s.printed_form_failures:
            notes.append(f"printed form fails on {s.printed_form_failures}")
        if min_rate is not None and not THEOREMS[tid].trivial and s.hypothesis_rate < min_rate:
            notes.append("LOW hypothesis rate")
        lines.append(
            f"{tid.value:14s} {s.confirmed:9d} {s.vacuous:8d} {s.falsified:9d} {s.hypothesis_rate:8.1%}  {', '.join(notes)}"
        )
    return "\n".join(lines) + "\n"


def cmd_check(args) -> int:
    if args.theorem.strip().lower() == "all":
        tids = ALL_IDS
    else:
        try:
            tids = (parse_theorem_id(args.theorem),)
        except CheckError as exc:
            raise UsageError("theorem", str(exc)) from None
    if args.cases < 1:
        raise UsageError("flag", "--cases must be >= 1")
    if args.jobs < 1:
        raise UsageError("flag", "--jobs must be >= 1")
    t0 = time.perf_counter()
    if args.input:
        rels = _load_inputs(args.input, args.backend, args)
        if len(tids) > 1:
            tids = tuple(t for t in tids if THEOREMS[t].arity == len(rels))
        elif THEOREMS[tids[0]].arity != len(rels):
            raise UsageError("arity", f"{tids[0].value} takes {THEOREMS[tids[0]].arity} input(s), got {len(rels)}")
        results = [run_check(t, rels, case=0, with_witness=True) for t in tids]
        summary = {t: TheoremSummary() for t in tids}
        for o in results:
            summary[o.theorem_id].add(o)
        config = SuiteConfig(dims=(rels[0].n,), cases_per_theorem=1, backend=rels[0].backend, theorems=tids)
        report = SuiteReport(config, results, summary)
        doc = report.to_dict()
        doc["config"] = {
            "inputs": list(args.input),
            "backend": rels[0].backend,
            "field": rels[0].field,
            "theorems": [t.value for t in tids],
        }
        min_rate = None
    else:
        backend = args.backend or EXACT
        pol = _policy(args, backend)
        config = SuiteConfig(
            dims=_parse_dims(args.dims),
            cases_per_theorem=args.cases,
            seed=args.seed,
            backend=backend,
            pol=pol,
            theorems=tids,
            field=args.field,
            entry_bound=args.entry_bound,
            jobs=args.jobs,
            enforce_nonvacuity=False,
        )
        report = run_suite(config)
        doc = report.to_dict()
        min_rate = config.min_hypothesis_rate
    wall = time.perf_counter() - t0
    if args.out:
        Path(args.out).write_text(dumps(doc), encoding="utf-8")
    sys.stdout.write(_summary_table(report.summary, min_rate))
    falsified = report.falsified
    print(f"falsified: {falsified}  cases: {len(report.results)}  wall time: {wall:.2f}s")
    if falsified:
        return EXIT_FAIL
    if args.require_nonvacuous and min_rate is not None and report.nonvacuity_failures():
        print("non-vacuity gate failed: " + ", ".join(report.nonvacuity_failures()))
        return EXIT_FAIL
    return EXIT_OK


def cmd_corpus(args) -> int:
    if args.dump:
        Path(args.dump).write_text(corpus_to_json(counterexample_corpus()), encoding="utf-8")
        if not args.replay:
            return EXIT_OK
    if not args.replay:
        raise UsageError("flag", "corpus needs --replay or --dump")
    entries = load_corpus(args.file) if args.file else counterexample_corpus()
    backends = (EXACT, FLOAT) if args.backend == "both" else (args.backend,)
    bad = 0
    for b in backends:
        for r in replay(entries, b):
            print(r.line())
            bad += not r.ok
    print(f"mismatches: {bad}")
    return EXIT_FAIL if bad else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="linrel", description="Linear relations in finite dimension: operations and theorem checks.")
    p.add_argument("--version", action="version", version=f"linrel {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--backend", choices=(EXACT, FLOAT), default=None,
                        help="arithmetic backend (default: the input file's scalars, or exact)")
        sp.add_argument("--tol", type=float, default=None,
                        help="float backend only: sets rank, PSD and equality tolerances")
        sp.add_argument("--out", default=None, help="output file (default stdout)")

    for name in UNARY:
        sp = sub.add_parser(name, help=f"{name} of a relation file")
        sp.add_argument("inputs", nargs=1, metavar="FILE")
        common(sp)
    for name in BINARY:
        sp = sub.add_parser(name, help=f"{name} of two relation files" + (" (S after T)" if name == "compose" else ""))
        sp.add_argument("inputs", nargs=2, metavar="FILE")
        common(sp)

    sp = sub.add_parser("check", help="run theorem checks")
    sp.add_argument("--theorem", required=True, help="theorem id or 'all'")
    sp.add_argument("--dims", default="2,3,4")
    sp.add_argument("--cases", type=int, default=200)
    sp.add_argument("--seed", type=int, default=42)
    sp.add_argument("--field", choices=("complex", "real"), default="complex")
    sp.add_argument("--entry-bound", type=int, default=4)
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--input", action="append", default=None, metavar="FILE",
                    help="check fixed relation files instead of random draws (repeat for binary theorems)")
    sp.add_argument("--require-nonvacuous", action="store_true",
                    help="exit 1 if a theorem's hypothesis fires on fewer than 30%% of cases")
    common(sp)

    sp = sub.add_parser("corpus", help="replay or dump the regression corpus")
    sp.add_argument("--replay", action="store_true")
    sp.add_argument("--file", default=None, help="corpus JSON to replay instead of the built-in one")
    sp.add_argument("--dump", default=None, metavar="PATH", help="write the built-in corpus as JSON")
    sp.add_argument("--backend", choices=(EXACT, FLOAT, "both"), default="both")
    return p


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.command == "check":
            return cmd_check(args)
        if args.command == "corpus":
            return cmd_corpus(args)
        return cmd_op(args)
    except UsageError as exc:
        return _fail(exc.kind, exc.message)
    except (RelationFileError, CorpusError) as exc:
        return _fail("parse", str(exc))
    except (rel.DimensionMismatch, AmbientMismatch) as exc:
        return _fail("dimension", str(exc))
    except (CheckError, ValueError) as exc:
        return _fail("invalid", str(exc))
    except OSError as exc:
        return _fail("io", f"{exc.filename}: {exc.strerror}")


if __name__ == "__main__":
    sys.exit(main())
