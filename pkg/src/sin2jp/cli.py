"""Command-line front end.

Subcommands:
  sin2    run the sin^2-algorithm on a matrix or polynomial input
  jp      run the classical Jacobi-Perron algorithm on a numeric triple
  verify  re-check a stored period report
  survey  batch-run random unimodular instances, CSV summary

Exit codes are a contract: 0 success / period found, 1 certificate
failure, 2 budget exceeded, 3 invalid input.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import os
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from .rationals import parse_rational
from .field import FieldError, discriminant
from .matrices import (
    Mat3,
    char_poly,
    format_matrix,
    mat,
    mat_inverse_unimodular,
    mat_mul,
    parse_matrix,
)
from .states import StateError, state_from_matrix, state_from_polynomials
from .transforms import TransformError
from .engine import (
    PrecisionExhausted,
    parse_numeric,
    run_classical_jp,
    run_sin2,
)
from .periodicity import CertificateFailed, PeriodReport, run_checks

EXIT_OK = 0
EXIT_CERTIFICATE = 1
EXIT_BUDGET = 2
EXIT_INVALID = 3

ENV_PRECISION = "SIN2JP_PRECISION_BITS"


def _default_bits() -> int:
    try:
        return max(64, int(os.environ.get(ENV_PRECISION, "256")))
    except ValueError:
        return 256


def _key_hash(key) -> str:
    return hashlib.sha256(repr(key).encode()).hexdigest()[:16]


def _matrix_json(m: Mat3):
    return [list(row) for row in m]


def _record_json(rec):
    return {
        "step": rec.index,
        "stage": rec.stage,
        "kind": rec.kind,
        "params": [list(p) if isinstance(p, tuple) else p for p in rec.params],
        "matrix": _matrix_json(rec.matrix),
        "sin2_approx": rec.sin2_approx,
        "state_key_hash": _key_hash(rec.state_key) if rec.state_key else "",
        "descent": rec.descent,
        "tied": rec.tied,
    }


def _report_json(report: PeriodReport):
    return {
        "preperiod": report.preperiod_len,
        "period": report.period_len,
        "M1": _matrix_json(report.m1),
        "M2": _matrix_json(report.m2),
        "certificate": _matrix_json(report.certificate),
        "checks": report.checks,
        "source_matrix": _matrix_json(report.source_matrix)
        if report.source_matrix
        else None,
    }


def _emit(payload: dict, args) -> None:
    if args.format == "json":
        text = json.dumps(payload, indent=2, sort_keys=True)
    elif args.format == "text":
        lines = [f"status: {payload['status']}"]
        if payload.get("pairs") is not None:
            lines.append("pairs: " + " ".join(f"({a},{b})" for a, b in payload["pairs"]))
            if payload.get("repetition_note"):
                i, j = payload["repetition_note"]
                lines.append(f"repetition note (heuristic): steps {i} and {j}")
        if payload.get("report"):
            rep = payload["report"]
            lines.append(f"preperiod: {rep['preperiod']}  period: {rep['period']}")
            lines.append(f"certificate: {rep['certificate']}")
            lines.append(f"checks: {rep['checks']}")
        for step in payload.get("steps", []):
            lines.append(
                f"{step['stage']}[{step['step']}] {step['kind']}{step['params']} "
                f"matrix={step['matrix']} sin2={step['sin2_approx']}"
            )
        text = "\n".join(lines)
    else:  # csv of the step stream
        import io

        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(
            ["step", "stage", "kind", "params", "matrix", "sin2_approx", "state_key_hash"]
        )
        for step in payload.get("steps", []):
            writer.writerow(
                [
                    step["step"],
                    step["stage"],
                    step["kind"],
                    json.dumps(step["params"]),
                    format_matrix(mat(step["matrix"])),
                    step["sin2_approx"],
                    step["state_key_hash"],
                ]
            )
        text = buf.getvalue()
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + ("\n" if not text.endswith("\n") else ""))
    else:
        print(text)


def _build_state(args):
    if args.matrix:
        a = parse_matrix(args.matrix)
        return state_from_matrix(a, args.root), a
    p = tuple(int(c) for c in args.poly.split(","))
    q1 = tuple(parse_rational(c) for c in args.q1.split(","))
    q2 = tuple(parse_rational(c) for c in args.q2.split(","))
    return state_from_polynomials(p, q1, q2, args.root), None


def cmd_sin2(args) -> int:
    try:
        state, a = _build_state(args)
    except (ValueError, FieldError, StateError) as ex:
        print(f"invalid input: {ex}", file=sys.stderr)
        return EXIT_INVALID
    try:
        result = run_sin2(
            state,
            max_steps=args.max_steps,
            report_digits=args.digits,
            source_matrix=a,
            cross_validate=not args.no_cross_validate,
        )
    except CertificateFailed as ex:
        print(f"certificate failed: {ex}", file=sys.stderr)
        return EXIT_CERTIFICATE
    except TransformError as ex:
        # e.g. an exact sin^2 tie on an engineered symmetric input: the
        # algorithm's next step is not uniquely defined there
        print(f"state outside the algorithm's domain: {ex}", file=sys.stderr)
        return EXIT_INVALID
    payload = {
        "input": {
            "matrix": _matrix_json(a) if a else None,
            "poly": args.poly,
            "q1": args.q1,
            "q2": args.q2,
            "root": str(args.root),
        },
        "field": {
            "char_poly": list(state.field.coeffs),
            "discriminant": state.field.discriminant,
        },
        "steps": [_record_json(r) for r in result.records],
        "report": _report_json(result.report) if result.report else None,
        "descents": result.descent_count,
        "status": "budget_exceeded" if result.budget_exceeded else "period",
    }
    _emit(payload, args)
    return EXIT_BUDGET if result.budget_exceeded else EXIT_OK


def cmd_jp(args) -> int:
    try:
        values = [parse_numeric(v) for v in args.vector.split(",")]
        if len(values) != 3:
            raise ValueError("expected three components")
    except ValueError as ex:
        print(f"invalid input: {ex}", file=sys.stderr)
        return EXIT_INVALID
    try:
        result = run_classical_jp(values, args.steps, precision_bits=args.bits)
    except PrecisionExhausted as ex:
        print(f"precision exhausted: {ex}", file=sys.stderr)
        return EXIT_BUDGET
    payload = {
        "pairs": [list(p) for p in result.pairs],
        "terminated": result.terminated,
        "repetition_note": list(result.repeat) if result.repeat else None,
        "bits_used": result.bits_used,
        "status": "terminated" if result.terminated else "ran",
    }
    _emit({**payload, "steps": []}, args)
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        with open(args.report) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as ex:
        print(f"invalid input: {ex}", file=sys.stderr)
        return EXIT_INVALID
    try:
        rep = data["report"] if "report" in data else data
        m1 = mat(rep["M1"])
        m2 = mat(rep["M2"])
        cert = mat(rep["certificate"])
        a = mat(rep["source_matrix"]) if rep.get("source_matrix") else None
    except (KeyError, TypeError, ValueError) as ex:
        print(f"invalid input: {ex}", file=sys.stderr)
        return EXIT_INVALID
    recomputed = mat_mul(mat_mul(m1, m2), mat_inverse_unimodular(m1))
    checks = run_checks(a, recomputed)
    checks["certificate_matches_products"] = recomputed == cert
    failures = [k for k, v in checks.items() if v is False]
    if failures:
        print(f"certificate failed: {', '.join(failures)}", file=sys.stderr)
        return EXIT_CERTIFICATE
    print("certificate ok")
    return EXIT_OK


# ---------------------------------------------------------------------------
# survey


def random_unimodular(rng: random.Random, max_entry: int = 200) -> Mat3:
    """Random GL(3,Z) matrix built from elementary unipotent factors and
    signed permutations, entries bounded by max_entry."""
    m = mat(((1, 0, 0), (0, 1, 0), (0, 0, 1)))
    for _ in range(rng.randint(4, 12)):
        i, j = rng.sample(range(3), 2)
        e = [[1 if r == c else 0 for c in range(3)] for r in range(3)]
        e[i][j] = rng.choice((-2, -1, 1, 2))
        nxt = mat_mul(m, mat(e))
        if max(abs(x) for row in nxt for x in row) > max_entry:
            break
        m = nxt
    perm = list(range(3))
    rng.shuffle(perm)
    p = [[0] * 3 for _ in range(3)]
    for jj, ii in enumerate(perm):
        p[ii][jj] = rng.choice((-1, 1))
    return mat_mul(m, mat(p))


def survey_instance(index: int, seed: int, max_entry: int = 200) -> Mat3:
    """Deterministic per-index totally-real irreducible instance."""
    rng = random.Random(seed * 1000003 + index)
    while True:
        a = random_unimodular(rng, max_entry)
        try:
            state_from_matrix(a)
        except (FieldError, StateError):
            continue
        return a


def _survey_worker(task):
    index, seed, budget, max_entry = task
    a = survey_instance(index, seed, max_entry)
    cp = char_poly(a)
    disc = discriminant(*cp)
    t0 = time.monotonic()
    row = {
        "index": index,
        "matrix": format_matrix(a),
        "discriminant": disc,
        "preperiod": "",
        "period": "",
        "descents": "",
        "steps": "",
        "status": "",
        "wall_time": "",
    }
    try:
        result = run_sin2(state_from_matrix(a), max_steps=budget, source_matrix=a)
        row["descents"] = result.descent_count
        row["steps"] = sum(1 for r in result.records if r.stage == "main")
        if result.report:
            row["preperiod"] = result.report.preperiod_len
            row["period"] = result.report.period_len
            row["status"] = "period"
            # extra fields for programmatic consumers; not part of the CSV
            row["m1"] = result.report.m1
            row["m2"] = result.report.m2
            row["certificate"] = result.report.certificate
            row["checks"] = dict(result.report.checks)
        else:
            row["status"] = "budget_exceeded"
    except CertificateFailed as ex:
        row["status"] = f"certificate_failed:{','.join(ex.failures)}"
    row["wall_time"] = f"{time.monotonic() - t0:.3f}"
    return row


SURVEY_COLUMNS = [
    "index",
    "matrix",
    "discriminant",
    "preperiod",
    "period",
    "descents",
    "steps",
    "status",
    "wall_time",
]


def run_survey(count: int, seed: int, budget: int, jobs: int = 1, max_entry: int = 200):
    tasks = [(i, seed, budget, max_entry) for i in range(count)]
    if jobs > 1 and count > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_survey_worker, tasks))
    else:
        rows = [_survey_worker(t) for t in tasks]
    rows.sort(key=lambda r: r["index"])
    return rows


def cmd_survey(args) -> int:
    rows = run_survey(args.count, args.seed, args.budget, jobs=args.jobs)
    out = open(args.output, "w", newline="") if args.output else sys.stdout
    try:
        writer = csv.DictWriter(out, fieldnames=SURVEY_COLUMNS, extrasaction="ignore")
        writer.writeheader()
        for row in rows:
            writer.writerow(row)
    finally:
        if args.output:
            out.close()
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sin2jp")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sin2", help="run the sin^2-algorithm")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--matrix", help="rows ';'-separated, entries ','-separated")
    group.add_argument("--poly", help="cubic coefficients, high to low degree")
    p.add_argument("--q1", help="first quadratic, coefficients high to low")
    p.add_argument("--q2", help="second quadratic, coefficients high to low")
    p.add_argument("--root", default="largest", help="largest (default) or 0|1|2")
    p.add_argument("--max-steps", type=int, default=10000)
    p.add_argument("--digits", type=int, default=50)
    p.add_argument("--no-cross-validate", action="store_true")
    p.add_argument("--output")
    p.add_argument("--format", choices=("json", "csv", "text"), default="json")
    p.set_defaults(func=cmd_sin2)

    p = sub.add_parser("jp", help="classical Jacobi-Perron (numeric)")
    p.add_argument("--vector", required=True, help="e.g. '1,cbrt(4),cbrt(16)'")
    p.add_argument("--steps", type=int, default=100)
    p.add_argument("--bits", type=int, default=_default_bits())
    p.add_argument("--output")
    p.add_argument("--format", choices=("json", "csv", "text"), default="json")
    p.set_defaults(func=cmd_jp)

    p = sub.add_parser("verify", help="re-check a stored period report")
    p.add_argument("report", help="path to a JSON report")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("survey", help="batch-run random instances")
    p.add_argument("--count", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=10000)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--output")
    p.set_defaults(func=cmd_survey)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "sin2" and args.poly and not (args.q1 and args.q2):
        print("--poly requires --q1 and --q2", file=sys.stderr)
        return EXIT_INVALID
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
