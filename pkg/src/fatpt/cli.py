"""Command line interface.

One subcommand per pipeline stage: lattice arithmetic (reduce, decompose),
dimension counts (hilbert, resolution), splitting types (split,
predict-split, enumerate-exceptional, sweep) and cokernel verification
(verify-cokernel). Reports go to stdout as JSON (default) or TSV; progress
and diagnostics go to stderr only, so redirected stdout is always a clean
report.

Exit codes: 0 success, 1 computation infeasible at the configured size
ceiling, 2 invalid input, 3 conjecture violation detected.

The same inputs (including --prime/--seed, or their FATPT_PRIME/FATPT_SEED
environment fallbacks) produce byte-identical reports. Every JSON report
embeds the prime and seed it used, the list of classes whose splitting type
came from the randomized pipeline ("provisional"), and whether the values
rest on the dimension conjectures ("conjectural").
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .betti import assemble_resolution
from .cokernel import DEFAULT_COLUMN_CEILING, cok_dimension, splitting_of
from .errors import ConjectureViolation, InfeasibleError, InputError
from .exactla import DEFAULT_PRIME, PrimeField
from .lattice import (
    format_class,
    format_mults,
    intersect,
    line_class,
    parse_class,
    parse_mults,
)
from .linsys import decompose, hilbert, sanity_check_decomposition
from .splitting import (
    DEFAULT_SEED,
    compute_splitting,
    derive_seed,
    forced_type,
    predict_report,
    split_bounds,
)
from .weyl import enumerate_exceptional, format_word
from . import weyl

TSV_COMMANDS = {"hilbert", "resolution", "enumerate-exceptional", "sweep"}


@dataclass(frozen=True)
class JobSpec:
    """Everything that determines a report byte for byte."""

    command: str
    spec: str | None
    degrees: tuple[int, int] | None
    prime: int
    seed: int
    trials: int
    fmt: str
    ceiling: int


def _int_token(text: str, origin: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise InputError(f"{origin} {text!r}: not an integer") from None


def _parse_range(text: str, origin: str) -> tuple[int, int]:
    """Inclusive degree range "a..b", or a single degree "a"."""
    if ".." in text:
        lo_s, _, hi_s = text.partition("..")
        lo, hi = _int_token(lo_s, origin), _int_token(hi_s, origin)
        if lo > hi:
            raise InputError(f"{origin} {text!r}: empty range")
        return lo, hi
    v = _int_token(text, origin)
    return v, v


def _resolve_job(args) -> JobSpec:
    prime = args.prime
    if prime is None:
        raw = os.environ.get("FATPT_PRIME")
        prime = _int_token(raw, "FATPT_PRIME") if raw is not None else DEFAULT_PRIME
        origin = f"FATPT_PRIME {prime}"
    else:
        origin = f"--prime {prime}"
    try:
        PrimeField(prime)
    except InputError as exc:
        raise InputError(f"{origin}: {exc}") from None

    seed = getattr(args, "seed", None)
    if seed is None:
        raw = os.environ.get("FATPT_SEED")
        seed = _int_token(raw, "FATPT_SEED") if raw is not None else DEFAULT_SEED

    degrees = None
    if getattr(args, "deg", None) is not None:
        degrees = _parse_range(args.deg, "--deg")
    fmt = getattr(args, "format", "json")
    if fmt == "tsv" and args.command not in TSV_COMMANDS:
        raise InputError(f"--format tsv: not available for {args.command}")
    return JobSpec(
        command=args.command,
        spec=getattr(args, "mults", None) or getattr(args, "cls", None),
        degrees=degrees,
        prime=prime,
        seed=seed,
        trials=getattr(args, "trials", 3),
        fmt=fmt,
        ceiling=getattr(args, "ceiling", DEFAULT_COLUMN_CEILING),
    )


def _value_cell(v) -> str:
    if v is None:
        return "?"
    if isinstance(v, tuple):
        return f"{v[0]}..{v[1]}"
    return str(v)


def _value_json(v):
    return list(v) if isinstance(v, tuple) else v


def _split_type(e, job: JobSpec):
    d = intersect(e, line_class(e.n))
    st = forced_type(d, max(e.m))
    if st is not None:
        return st, False
    return compute_splitting(e, job.prime, derive_seed(job.seed, 757), job.trials), True


def _base_report(job: JobSpec, conjectural: bool, provisional=()) -> dict:
    return {
        "command": job.command,
        "prime": job.prime,
        "seed": job.seed,
        "conjectural": conjectural,
        "provisional": [format_class(c) for c in provisional],
    }


def _cmd_hilbert(args, job: JobSpec):
    z = parse_mults(args.mults)
    degrees = range(job.degrees[0], job.degrees[1] + 1) if job.degrees else None
    rep = hilbert(z, degrees)
    rows = []
    for t in sorted(rep.entries):
        ent = rep.entries[t]
        rows.append(
            {
                "degree": t,
                "value": ent.value,
                "fixed": [
                    {"class": format_class(c), "multiplicity": k} for c, k in ent.fixed
                ],
            }
        )
    report = _base_report(job, conjectural=True)
    report.update({"scheme": format_mults(z), "alpha": rep.alpha, "rows": rows})
    tsv = (
        ("degree", "value", "fixed"),
        [
            (
                r["degree"],
                r["value"],
                " + ".join(f"{f['multiplicity']}*({f['class']})" for f in r["fixed"]) or "-",
            )
            for r in rows
        ],
    )
    return report, tsv, 0


def _cmd_resolution(args, job: JobSpec):
    z = parse_mults(args.mults)
    table = assemble_resolution(z, args.imax, job.prime, job.seed)
    rows = []
    for ent in table.entries:
        g = ent.generators if ent.generators is not None else ent.generators_interval
        s = ent.syzygies if ent.syzygies is not None else ent.syzygies_interval
        rows.append(
            {
                "degree": ent.degree,
                "generators": _value_json(g),
                "syzygies": _value_json(s),
                "flag": ent.flag,
            }
        )
    report = _base_report(job, conjectural=True, provisional=table.provisional)
    report.update(
        {
            "scheme": format_mults(z),
            "alpha": table.alpha,
            "regularity": table.regularity,
            "alpha_plus_one_path": table.alpha_plus_one_path,
            "rows": rows,
        }
    )
    tsv = (
        ("degree", "generators", "syzygies", "flag"),
        [
            (
                ent.degree,
                _value_cell(ent.generators if ent.generators is not None else ent.generators_interval),
                _value_cell(ent.syzygies if ent.syzygies is not None else ent.syzygies_interval),
                ent.flag,
            )
            for ent in table.entries
        ],
    )
    return report, tsv, 0


def _cmd_reduce(args, job: JobSpec):
    f = parse_class(args.cls)
    rf = weyl.reduce(f)
    report = _base_report(job, conjectural=False)
    report.update(
        {
            "input": format_class(f),
            "reduced": format_class(rf.reduced),
            "status": rf.status,
            "word": format_word(rf.word),
            "word_length": len(rf.word),
        }
    )
    return report, None, 0


def _cmd_decompose(args, job: JobSpec):
    f = parse_class(args.cls)
    dec = decompose(f)
    report = _base_report(job, conjectural=True)
    report["input"] = format_class(f)
    if dec is None:
        report.update({"effective": False, "status": weyl.reduce(f).status})
    else:
        sanity_check_decomposition(f, dec)
        report.update(
            {
                "effective": True,
                "free_part": format_class(dec.h),
                "components": [
                    {"class": format_class(c), "multiplicity": k}
                    for c, k in dec.components
                ],
                "boundary": dec.boundary,
            }
        )
    return report, None, 0


def _cmd_split(args, job: JobSpec):
    e = parse_class(args.cls)
    bounds = split_bounds(e)
    st, provisional = _split_type(e, job)
    report = _base_report(job, conjectural=False, provisional=(e,) if provisional else ())
    report.update(
        {
            "class": format_class(e),
            "degree": st.degree,
            "a": st.a,
            "b": st.b,
            "forced": not provisional,
            "candidates": [[c.a, c.b] for c in bounds],
            "trials": job.trials,
        }
    )
    return report, None, 0


def _cmd_predict_split(args, job: JobSpec):
    e = parse_class(args.cls)
    pred = predict_report(e, job.prime, job.seed, job.trials)
    report = _base_report(
        job, conjectural=True, provisional=(e,) if pred.provisional else ()
    )
    report.update(
        {
            "class": format_class(e),
            "type": [pred.type.a, pred.type.b],
            "defect": pred.defect,
            "score": pred.score,
            "rejected": [{"type": [t.a, t.b], "score": s} for t, s in pred.rejected],
        }
    )
    return report, None, 0


def _cmd_verify_cokernel(args, job: JobSpec):
    e = parse_class(args.cls)
    methods = ("formula", "oracle") if args.method == "both" else (args.method,)
    results = []
    verdicts = []
    for method in methods:
        v = cok_dimension(e, args.m, job.prime, job.seed, method, job.ceiling)
        verdicts.append(v)
        results.append(
            {
                "method": v.method,
                "computed": v.computed,
                "predicted": v.predicted,
                "match": v.match,
            }
        )
    first = verdicts[0]
    agree = all(v.match for v in verdicts) and len({v.computed for v in verdicts}) == 1
    report = _base_report(
        job, conjectural=False, provisional=(e,) if first.provisional else ()
    )
    report.update(
        {
            "class": format_class(e),
            "m": args.m,
            "splitting": [first.splitting.a, first.splitting.b],
            "results": results,
            "match": agree,
        }
    )
    return report, None, (0 if agree else 3)


def _cmd_enumerate(args, job: JobSpec):
    classes = enumerate_exceptional(args.max_degree)
    rows = []
    for e in classes:
        st = forced_type(e.t, max(e.m)) if e.m else forced_type(e.t, 0)
        rows.append(
            {
                "class": format_class(e),
                "degree": e.t,
                "forced": [st.a, st.b] if st is not None else None,
            }
        )
    report = _base_report(job, conjectural=False)
    report.update({"max_degree": args.max_degree, "count": len(classes), "rows": rows})
    tsv = (
        ("degree", "class", "a", "b"),
        [
            (
                r["degree"],
                r["class"],
                r["forced"][0] if r["forced"] else "-",
                r["forced"][1] if r["forced"] else "-",
            )
            for r in rows
        ],
    )
    return report, tsv, 0


def _sweep_classify(e, job: JobSpec):
    """(splitting, provisional, guaranteed): forced types and near-balanced
    types are covered by the proven multiplication-rank cases."""
    st = forced_type(e.t, max(e.m))
    if st is not None:
        return st, False, True
    st = compute_splitting(e, job.prime, derive_seed(job.seed, 757), job.trials)
    return st, True, st.b - st.a <= 2


def _cmd_sweep(args, job: JobSpec):
    classes = enumerate_exceptional(args.max_degree)
    jobs = args.jobs or min(8, os.cpu_count() or 1)
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        classified = list(pool.map(lambda e: _sweep_classify(e, job), classes))

    escapes = []
    provisional = []
    for e, (st, prov, guaranteed) in zip(classes, classified):
        if prov:
            provisional.append(e)
        if not guaranteed:
            escapes.append((e, st))
    rows = [
        {"class": format_class(e), "degree": e.t, "a": st.a, "b": st.b}
        for e, st in escapes
    ]
    report = _base_report(job, conjectural=False, provisional=provisional)
    report.update(
        {
            "max_degree": args.max_degree,
            "total": len(classes),
            "guaranteed": len(classes) - len(escapes),
            "escapes": rows,
        }
    )
    code = 0
    tsv_rows = [(r["degree"], r["class"], r["a"], r["b"], "escape") for r in rows]
    if args.verify:
        def verify_one(item):
            e, st = item
            try:
                v = cok_dimension(e, st.b, job.prime, job.seed, "formula", job.ceiling)
                return {
                    "class": format_class(e),
                    "m": st.b,
                    "predicted": v.predicted,
                    "computed": v.computed,
                    "match": v.match,
                }
            except InfeasibleError as exc:
                return {"class": format_class(e), "m": st.b, "skipped": str(exc)}

        done = 0
        verification = []
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            for row in pool.map(verify_one, escapes):
                done += 1
                sys.stderr.write(f"verified {done}/{len(escapes)}: {row['class']}\n")
                verification.append(row)
        violations = [r for r in verification if not r.get("match", True) and "skipped" not in r]
        report["verification"] = verification
        report["violations"] = len(violations)
        if violations:
            code = 3
        tsv_rows = []
        for r, row in zip(rows, verification):
            status = "skipped" if "skipped" in row else ("ok" if row["match"] else "VIOLATION")
            tsv_rows.append((r["degree"], r["class"], r["a"], r["b"], status))
    tsv = (("degree", "class", "a", "b", "status"), tsv_rows)
    return report, tsv, code


_HANDLERS = {
    "hilbert": _cmd_hilbert,
    "resolution": _cmd_resolution,
    "reduce": _cmd_reduce,
    "decompose": _cmd_decompose,
    "split": _cmd_split,
    "predict-split": _cmd_predict_split,
    "verify-cokernel": _cmd_verify_cokernel,
    "enumerate-exceptional": _cmd_enumerate,
    "sweep": _cmd_sweep,
}


def _add_common(sub, fmt: bool = False):
    sub.add_argument("--prime", type=int, default=None, help="field characteristic")
    sub.add_argument("--seed", type=int, default=None, help="random seed")
    if fmt:
        sub.add_argument("--format", choices=("json", "tsv"), default="json")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fatpt",
        description="Hilbert functions, resolutions and splitting types for "
        "fat point schemes at general points of the plane.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    s = subs.add_parser("hilbert", help="expected ideal dimensions by degree")
    s.add_argument("--mults", required=True, help='multiplicities, e.g. "5,5,4x3"')
    s.add_argument("--deg", default=None, help='degree range "a..b" (default alpha-2..alpha+2)')
    _add_common(s, fmt=True)

    s = subs.add_parser("resolution", help="expected graded Betti numbers")
    s.add_argument("--mults", required=True)
    s.add_argument("--imax", type=int, default=None, help="last degree (default regularity+2)")
    _add_common(s, fmt=True)

    s = subs.add_parser("reduce", help="Cremona reduction of a divisor class")
    s.add_argument("--class", dest="cls", required=True, help='class "t;m1,...,mn"')
    _add_common(s)

    s = subs.add_parser("decompose", help="free/fixed part of a divisor class")
    s.add_argument("--class", dest="cls", required=True)
    _add_common(s)

    s = subs.add_parser("split", help="splitting type of an exceptional class")
    s.add_argument("--class", dest="cls", required=True)
    s.add_argument("--trials", type=int, default=3)
    _add_common(s)

    s = subs.add_parser("predict-split", help="defect-based splitting prediction")
    s.add_argument("--class", dest="cls", required=True)
    s.add_argument("--trials", type=int, default=3)
    _add_common(s)

    s = subs.add_parser("verify-cokernel", help="multiplication map cokernel check")
    s.add_argument("--class", dest="cls", required=True)
    s.add_argument("--m", type=int, required=True, help="neighborhood multiplicity")
    s.add_argument("--method", choices=("formula", "oracle", "both"), default="formula")
    s.add_argument("--ceiling", type=int, default=DEFAULT_COLUMN_CEILING)
    _add_common(s)

    s = subs.add_parser("enumerate-exceptional", help="exceptional classes by degree")
    s.add_argument("--max-degree", type=int, required=True)
    _add_common(s, fmt=True)

    s = subs.add_parser("sweep", help="classify and optionally verify all types")
    s.add_argument("--max-degree", type=int, required=True)
    s.add_argument("--verify", action="store_true", help="check escapes at m = b")
    s.add_argument("--trials", type=int, default=3)
    s.add_argument("--jobs", type=int, default=None, help="worker pool size")
    s.add_argument("--ceiling", type=int, default=DEFAULT_COLUMN_CEILING)
    _add_common(s, fmt=True)

    return parser


def run(argv=None) -> int:
    """Parse, dispatch, print the report; returns the exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        job = _resolve_job(args)
        report, tsv, code = _HANDLERS[args.command](args, job)
        if job.fmt == "tsv":
            header, rows = tsv
            lines = ["\t".join(str(v) for v in header)]
            lines.extend("\t".join(str(v) for v in row) for row in rows)
            sys.stdout.write("\n".join(lines) + "\n")
        else:
            sys.stdout.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
        return code
    except InputError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except InfeasibleError as exc:
        sys.stderr.write(f"infeasible: {exc}\n")
        return 1
    except ConjectureViolation as exc:
        sys.stderr.write(f"conjecture violation: {exc}\n")
        return 3


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
