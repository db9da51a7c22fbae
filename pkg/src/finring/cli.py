"""Command-line front end: ring reports, single checks, and catalog sweeps.

Exit codes: 0 pass/vacuous, 1 a check found a violation, 2 usage or I/O
error, 3 inconclusive (a function-set cap was hit).
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from dataclasses import dataclass

from . import __version__
from .catalog import (
    RingSpecError,
    parse_poly_text,
    parse_ring_spec,
    realize,
    render_poly,
    standard_catalog,
)
from .core import (
    FiniteRing,
    UnsupportedStructureError,
    analyze,
    identity_embedding,
    local_decomposition,
    residue_field,
)
from .polyfun import (
    DEFAULT_CAP,
    IncompleteSearchError,
    Polynomial,
    poly_x,
    polynomial_function_set,
)
from .theorems import (
    RESULT_IDS,
    Verdict,
    check_bijections_iff_field,
    check_char_from_image,
    check_char_functions_iff_field,
    check_char_support_cosets,
    check_nilpotent_shift_powers,
    check_reachability_iff_field,
    check_residue_field_bound,
    check_residue_lift,
    check_spectrum_bound,
    check_unit_exponent_nilpotency,
    check_unit_order_bound,
    classify_char_function_existence,
    verify_subring_char_function,
)

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_INCONCLUSIVE = 3


@dataclass
class CheckOptions:
    cap: int = DEFAULT_CAP
    max_bijection_order: int = 6
    max_subset_order: int = 16
    poly: str | None = None
    subset: str | None = None
    s_max: int = 3


def _poly_or_x(ring: FiniteRing, opts: CheckOptions) -> Polynomial:
    if opts.poly is not None:
        return parse_poly_text(opts.poly, ring)
    return poly_x(ring)


def _subset_ids(opts: CheckOptions) -> list[int] | None:
    if opts.subset is None:
        return None
    try:
        return [int(part) for part in opts.subset.split(",") if part.strip() != ""]
    except ValueError:
        raise RingSpecError(f"subset must be comma-separated indices, got {opts.subset!r}")


def _run_p21(ring: FiniteRing, opts: CheckOptions) -> Verdict:
    emb = identity_embedding(ring)
    return verify_subring_char_function(emb, _poly_or_x(ring, opts))


def _run_p26lift(ring: FiniteRing, opts: CheckOptions) -> Verdict:
    k, _, _ = residue_field(ring)
    f = parse_poly_text(opts.poly, k) if opts.poly is not None else None
    return check_residue_lift(ring, f)


def _run_p27(ring: FiniteRing, opts: CheckOptions) -> Verdict:
    w = parse_poly_text(opts.poly, ring) if opts.poly is not None else None
    return classify_char_function_existence(ring, cap=opts.cap, witness_poly=w)


# id -> (requirement, runner); requirement is checked against the invariants.
_REQUIRES = {
    "any": lambda inv: True,
    "commutative": lambda inv: inv.is_commutative,
    "unital": lambda inv: inv.is_unital,
    "comm-unital": lambda inv: inv.is_unital and inv.is_commutative,
    "local-unital": lambda inv: inv.is_unital and bool(inv.is_local),
    "comm-local-unital": lambda inv: inv.is_unital and inv.is_commutative and bool(inv.is_local),
}

CHECKS: dict[str, tuple[str, object]] = {
    "L1.1": ("any", lambda ring, opts: check_reachability_iff_field(ring)),
    "P1.2": ("any", lambda ring, opts: check_bijections_iff_field(
        ring, max_order=opts.max_bijection_order, cap=opts.cap)),
    "P1.3": ("unital", lambda ring, opts: check_char_functions_iff_field(
        ring, max_order=opts.max_subset_order, cap=opts.cap)),
    "P2.1": ("comm-unital", _run_p21),
    "L2.2": ("commutative", lambda ring, opts: check_nilpotent_shift_powers(ring, s_max=opts.s_max)),
    "P2.3i": ("local-unital", lambda ring, opts: check_unit_order_bound(ring)),
    "P2.3ii": ("comm-local-unital", lambda ring, opts: check_unit_exponent_nilpotency(ring)),
    "L2.4": ("comm-unital", lambda ring, opts: check_residue_field_bound(
        identity_embedding(ring), _poly_or_x(ring, opts))),
    "L2.5": ("comm-unital", lambda ring, opts: check_spectrum_bound(ring, _poly_or_x(ring, opts))),
    "P2.6fwd": ("comm-local-unital", lambda ring, opts: check_char_from_image(ring, _poly_or_x(ring, opts))),
    "P2.6lift": ("comm-local-unital", _run_p26lift),
    "P2.7": ("comm-unital", _run_p27),
    "R2.8": ("local-unital", lambda ring, opts: check_char_support_cosets(
        ring, subset=_subset_ids(opts), sweep_limit=opts.max_subset_order, cap=opts.cap)),
}


def _witness_json(value):
    if isinstance(value, Polynomial):
        return render_poly(value.stripped().coeffs)
    if isinstance(value, dict):
        return {k: _witness_json(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_witness_json(v) for v in value]
    if hasattr(value, "indices"):
        return list(value.indices())
    return value


def _verdict_json(v: Verdict, ms: float) -> dict:
    return {
        "result_id": v.result_id,
        "status": v.status,
        "holds": v.holds,
        "vacuous": v.vacuous,
        "witness": _witness_json(v.witness),
        "details": v.details,
        "ms": round(ms, 3),
    }


def _invariants_json(ring: FiniteRing) -> dict:
    inv = analyze(ring)
    mask = lambda m: list(m.indices()) if m is not None else None
    return {
        "order": ring.order,
        "label": ring.label,
        "is_commutative": inv.is_commutative,
        "is_unital": inv.is_unital,
        "is_field": inv.is_field,
        "characteristic": inv.characteristic,
        "zero_dimensional": inv.zero_dimensional,
        "idempotents": mask(inv.idempotents),
        "nilpotents": mask(inv.nilpotents),
        "nilpotency_index": inv.nilpotency_index,
        "units": mask(inv.units),
        "unit_group_exponent": inv.unit_group_exponent,
        "jacobson_radical": mask(inv.jacobson_radical),
        "is_local": inv.is_local,
        "residue_field_order": inv.residue_field_order,
    }


def _status_exit(verdicts: list[Verdict]) -> int:
    if any(v.status == "fail" for v in verdicts):
        return EXIT_VIOLATION
    if any(v.status == "unknown" for v in verdicts):
        return EXIT_INCONCLUSIVE
    return EXIT_OK


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_report(args) -> int:
    ring = realize(parse_ring_spec(args.spec))
    inv = analyze(ring)
    doc = {
        "version": __version__,
        "kind": "report",
        "spec": args.spec,
        "invariants": _invariants_json(ring),
    }
    if inv.is_unital and inv.is_commutative:
        doc["local_factors"] = [
            {"idempotent": f.idempotent, "order": f.ring.order}
            for f in local_decomposition(ring)
        ]
    pset = polynomial_function_set(ring, args.cap_functions)
    doc["stabilization"] = list(pset.stabilization)
    doc["function_count"] = pset.count if pset.complete else None
    doc["function_count_complete"] = pset.complete
    if args.format == "json":
        print(json.dumps(doc, indent=2))
    else:
        print(f"ring {args.spec} (order {ring.order})")
        for key, value in doc["invariants"].items():
            if key in ("order", "label"):
                continue
            print(f"  {key}: {value}")
        if "local_factors" in doc:
            orders = [f["order"] for f in doc["local_factors"]]
            print(f"  local_factors: {len(orders)} of orders {orders}")
        t, p = doc["stabilization"]
        print(f"  power_stabilization: t={t} p={p}")
        if doc["function_count"] is not None:
            print(f"  polynomial_functions: {doc['function_count']}")
        else:
            print(f"  polynomial_functions: > cap ({args.cap_functions})")
    return EXIT_OK


def cmd_check(args) -> int:
    if args.result_id not in CHECKS:
        print(f"unknown check {args.result_id!r}; choose from {', '.join(RESULT_IDS)}",
              file=sys.stderr)
        return EXIT_USAGE
    ring = realize(parse_ring_spec(args.spec))
    opts = CheckOptions(
        cap=args.cap_functions,
        max_bijection_order=args.max_bijection_order,
        max_subset_order=args.max_subset_order,
        poly=args.poly,
        subset=args.subset,
        s_max=args.s_max,
    )
    requirement, runner = CHECKS[args.result_id]
    inv = analyze(ring)
    if not _REQUIRES[requirement](inv):
        verdict = Verdict(args.result_id, True, vacuous=True,
                          details=f"not applicable: ring is not {requirement}")
        ms = 0.0
    else:
        start = time.perf_counter()
        verdict = runner(ring, opts)
        ms = (time.perf_counter() - start) * 1000.0
    doc = {
        "version": __version__,
        "kind": "check",
        "spec": args.spec,
        "check": args.result_id,
        "verdict": _verdict_json(verdict, ms),
    }
    if args.format == "json":
        print(json.dumps(doc, indent=2))
    else:
        v = doc["verdict"]
        print(f"{args.result_id} on {args.spec}: {v['status']}")
        print(f"  {v['details']}")
        if v["witness"] is not None:
            print(f"  witness: {json.dumps(v['witness'])}")
    return _status_exit([verdict])


def _sweep_rows(max_order: int, opts: CheckOptions):
    rows = []
    for name, ring in standard_catalog(max_order):
        inv = analyze(ring)
        for result_id in RESULT_IDS:
            requirement, runner = CHECKS[result_id]
            if not _REQUIRES[requirement](inv):
                continue
            start = time.perf_counter()
            try:
                verdict = runner(ring, opts)
            except IncompleteSearchError as exc:
                verdict = Verdict(result_id, None, details=str(exc))
            ms = (time.perf_counter() - start) * 1000.0
            rows.append((name, result_id, verdict, ms))
    rows.sort(key=lambda row: (row[0], row[1]))
    return rows


def cmd_sweep(args) -> int:
    if not 2 <= args.max_order <= 16:
        print("sweep --max-order must be between 2 and 16", file=sys.stderr)
        return EXIT_USAGE
    opts = CheckOptions(
        cap=args.cap_functions,
        max_bijection_order=args.max_bijection_order,
        max_subset_order=args.max_subset_order,
    )
    rows = _sweep_rows(args.max_order, opts)
    counts = {"pass": 0, "fail": 0, "vacuous": 0, "unknown": 0}
    for _, _, verdict, _ in rows:
        counts[verdict.status] += 1
    json_rows = [
        {"ring": name, "check": result_id, **_verdict_json(verdict, ms)}
        for name, result_id, verdict, ms in rows
    ]
    try:
        if args.format == "csv":
            with open(args.out, "w", newline="") as fh:
                writer = csv.writer(fh)
                writer.writerow(["ring", "check", "status", "holds", "witness", "details", "ms"])
                for row in json_rows:
                    writer.writerow([
                        row["ring"], row["check"], row["status"], row["holds"],
                        json.dumps(row["witness"]), row["details"], row["ms"],
                    ])
        else:
            doc = {
                "version": __version__,
                "kind": "sweep",
                "max_order": args.max_order,
                "rows": json_rows,
                "summary": counts,
            }
            with open(args.out, "w") as fh:
                json.dump(doc, fh, indent=2)
                fh.write("\n")
    except OSError as exc:
        print(f"cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(f"sweep over catalog(max_order={args.max_order}): {len(json_rows)} rows -> {args.out}")
    print(f"pass={counts['pass']} fail={counts['fail']} "
          f"vacuous={counts['vacuous']} unknown={counts['unknown']}")
    return _status_exit([row[2] for row in rows])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="finring",
        description="Finite-ring calculator: invariants, polynomial function sets, "
                    "and structural verification checks.",
    )
    parser.add_argument("--version", action="version", version=f"finring {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--cap-functions", type=int, default=DEFAULT_CAP,
                       help="truncate the polynomial function set at this many tables")
        p.add_argument("--max-bijection-order", type=int, default=6,
                       help="largest ring order for which bijection sweeps run")
        p.add_argument("--max-subset-order", type=int, default=16,
                       help="largest ring order for which subset sweeps run")

    p_report = sub.add_parser("report", help="print a ring's invariants")
    p_report.add_argument("spec", help='ring spec, e.g. "Z/4" or "Z/2[x]/(x^3)"')
    p_report.add_argument("--format", choices=("text", "json"), default="text")
    common(p_report)
    p_report.set_defaults(func=cmd_report)

    p_check = sub.add_parser("check", help="run one verification check")
    p_check.add_argument("spec")
    p_check.add_argument("result_id", metavar="result-id",
                         help=f"one of {', '.join(RESULT_IDS)}")
    p_check.add_argument("--format", choices=("text", "json"), default="text")
    p_check.add_argument("--poly", help="polynomial in grammar syntax, e.g. x^2+x")
    p_check.add_argument("--subset", help="comma-separated element indices")
    p_check.add_argument("--s-max", type=int, default=3,
                         help="power multiplier range for the L2.2 check")
    common(p_check)
    p_check.set_defaults(func=cmd_check)

    p_sweep = sub.add_parser("sweep", help="run every applicable check over the catalog")
    p_sweep.add_argument("--max-order", type=int, required=True)
    p_sweep.add_argument("--out", required=True, help="output file for the rows")
    p_sweep.add_argument("--format", choices=("json", "csv"), default="json")
    common(p_sweep)
    p_sweep.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (RingSpecError, ValueError, UnsupportedStructureError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except IncompleteSearchError as exc:
        print(f"inconclusive: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE


if __name__ == "__main__":
    sys.exit(main())
