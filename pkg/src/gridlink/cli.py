"""Command-line front end.

Four subcommands: ``solve`` routes an instance file and prints a
certificate; ``verify`` checks a certificate against its instance;
``lemma`` runs one lemma's verification campaign; ``pairability`` runs the
4-pair campaign on the full grid.  Exit codes: 0 feasible/conforming,
1 infeasible or defective, 2 usage or parse errors.

Reports are stable ``key: value`` text.  For fixed inputs and flags every
byte is reproducible except the final ``elapsed_seconds`` line, which is
wall-clock time and is explicitly excluded from comparisons.
"""

from __future__ import annotations

import argparse
import sys
from collections import Counter
from typing import Optional, Sequence

from .fileio import ParseError, parse_certificate, parse_instance, serialize_certificate
from .lemmas import LemmaReport
from .routing import Infeasible, solve, verify
from .verifier import (
    LEMMA_IDS,
    T1,
    Campaign,
    exceptional_families,
    pairability_check,
    report_conforms,
    run_campaign,
)

_EXCLUDED_MARK = "# the line below is wall-clock time, excluded from byte comparisons"


def _fmt_vertices(vs) -> str:
    return " ".join(f"({v[0]},{v[1]})" for v in vs)


def _fmt_value(obj) -> str:
    if isinstance(obj, tuple) and obj and all(
        isinstance(x, tuple) and len(x) == 2 and all(isinstance(c, int) for c in x)
        for x in obj
    ):
        return _fmt_vertices(obj)
    if isinstance(obj, tuple):
        return "[" + ", ".join(_fmt_value(x) for x in obj) + "]"
    return str(obj)


def format_report(report: LemmaReport) -> str:
    """Render a campaign report; identical inputs give identical bytes."""
    tags = Counter(tag for tag, _, _ in report.exceptional)
    defects = sum(n for tag, n in tags.items() if tag not in ("refusal", "degenerate"))
    lines = [
        f"campaign: {report.lemma_id}",
        f"strategy: {report.strategy}",
        f"seed: {report.seed if report.seed is not None else 'none'}",
        f"instances: {report.instances_checked}",
        f"feasible: {report.feasible}",
    ]
    for tag in sorted(tags):
        lines.append(f"exceptional[{tag}]: {tags[tag]}")
    lines.append(f"defects: {defects}")
    conforming = report_conforms(report)
    lines.append(f"status: {'conforming' if conforming else 'defective'}")
    if report.lemma_id == "L9" and conforming:
        for terms, working in sorted(
            exceptional_families(report), key=lambda fam: fam[0] != T1
        ):
            label = "T1" if terms == T1 else "T2"
            lines.append(
                f"family {label}: {_fmt_vertices(sorted(terms))}"
                f" | working {_fmt_vertices(sorted(working))}"
            )
    if report.lemma_id == "L10":
        reasons = Counter(
            detail for tag, _, detail in report.exceptional if tag == "degenerate"
        )
        for reason in sorted(reasons):
            lines.append(f"degenerate[{reason}]: {reasons[reason]}")
    for tag, inst, detail in report.exceptional:
        if tag in ("refusal", "degenerate"):
            continue
        lines.append(f"defect: {tag} instance={_fmt_value(inst)} detail={detail}")
    lines.append(_EXCLUDED_MARK)
    lines.append(f"elapsed_seconds: {report.elapsed:.3f}")
    return "\n".join(lines) + "\n"


def report_body(text: str) -> str:
    """The comparable part of a report: everything above the timing mark."""
    return text.split(_EXCLUDED_MARK, 1)[0]


def _read(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError(path, 0, f"cannot read file: {exc.strerror or exc}") from None


def _emit_report(report: LemmaReport, out_path: Optional[str]) -> None:
    text = format_report(report)
    sys.stdout.write(text)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)


def cmd_solve(args: argparse.Namespace) -> int:
    inst = parse_instance(_read(args.instance), args.instance)
    result = solve(inst)
    sys.stdout.write(serialize_certificate(result))
    return 0 if result else 1


def cmd_verify(args: argparse.Namespace) -> int:
    inst = parse_instance(_read(args.instance), args.instance)
    cert = parse_certificate(_read(args.certificate), args.certificate)
    if cert is Infeasible:
        # an infeasibility claim is checked the only way it can be: by solving
        if solve(inst) is Infeasible:
            print("ok: instance is infeasible")
            return 0
        print("invalid: certificate claims infeasible, but the instance is solvable")
        return 1
    got = verify(inst, cert)
    if got:
        print("ok: certificate verifies")
        return 0
    print(f"invalid: {got.violation}")
    return 1


def cmd_lemma(args: argparse.Namespace) -> int:
    campaign = Campaign(
        lemma_id=args.lemma_id,
        strategy=args.strategy,
        samples=args.samples,
        seed=args.seed,
        workers=args.workers,
    )
    report = run_campaign(campaign)
    _emit_report(report, args.report)
    return 0 if report_conforms(report) else 1


def cmd_pairability(args: argparse.Namespace) -> int:
    if args.exhaustive_reduced:
        report = pairability_check(workers=args.workers, exhaustive_reduced=True)
    else:
        report = pairability_check(
            samples=args.samples, seed=args.seed, workers=args.workers
        )
    _emit_report(report, args.report)
    return 0 if report_conforms(report) else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gridlink",
        description="Edge-disjoint path routing on grids: solve, verify, and run lemma campaigns.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="solve an instance file, print a certificate")
    p_solve.add_argument("instance", help="instance file path")
    p_solve.set_defaults(func=cmd_solve)

    p_verify = sub.add_parser("verify", help="check a certificate against an instance")
    p_verify.add_argument("instance", help="instance file path")
    p_verify.add_argument("certificate", help="certificate file path")
    p_verify.set_defaults(func=cmd_verify)

    p_lemma = sub.add_parser("lemma", help="run one lemma's verification campaign")
    p_lemma.add_argument("lemma_id", choices=list(LEMMA_IDS), metavar="lemma_id")
    p_lemma.add_argument(
        "--strategy", choices=["exhaustive", "reduced", "random"], default="exhaustive"
    )
    p_lemma.add_argument("--samples", type=int, default=None)
    p_lemma.add_argument("--seed", type=int, default=None)
    p_lemma.add_argument("--workers", type=int, default=1)
    p_lemma.add_argument("--report", metavar="PATH", help="also write the report here")
    p_lemma.set_defaults(func=cmd_lemma)

    p_pair = sub.add_parser("pairability", help="run the 4-pair campaign on the 6x6 grid")
    p_pair.add_argument("--samples", type=int, default=100000)
    p_pair.add_argument("--seed", type=int, default=None)
    p_pair.add_argument(
        "--exhaustive-reduced",
        action="store_true",
        help="sweep all symmetry-reduced placements (very long-running)",
    )
    p_pair.add_argument("--workers", type=int, default=1)
    p_pair.add_argument("--report", metavar="PATH", help="also write the report here")
    p_pair.set_defaults(func=cmd_pairability)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command == "lemma" and args.strategy == "random" and args.seed is None:
        parser.error("--strategy random requires --seed")
    if args.command == "pairability" and not args.exhaustive_reduced and args.seed is None:
        parser.error("pairability sampling requires --seed")
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
