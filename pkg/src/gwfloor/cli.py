"""Command-line interface: enumeration dumps, counts, sweeps, suites.

All commands print a single JSON document to standard output (stable key
order, no timestamps, byte-identical across reruns); ``--table`` adds a
human-readable rendering, ``--out FILE`` redirects the JSON to a file.
Exit codes: 0 on success, 1 when a verification check fails, 2 on usage
errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from .checks import SUITE_NAMES, run_suite
from .diagrams import (
    enumerate_merge_configs,
    enumerate_merged_diagrams,
    floor_count,
)
from .fields import ClosedField, FiniteField, RealField, specialize_field
from .springer import form_report, pfister_concrete
from .wallcross import SCHEMA_VERSION, pfister_element, wallcross_report

_DEFAULT_BUDGET = 4


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# Argument parsing helpers
# ---------------------------------------------------------------------------


def _parse_positions(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(",") if part != "")
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}")


def _validate_config(cfg: tuple[int, ...], n: int) -> None:
    if cfg not in enumerate_merge_configs(n, len(cfg)):
        raise UsageError(
            f"{cfg} is not a valid merge configuration for {n} points "
            "(positions must be ascending and at least 2 apart)"
        )


def _parse_signs(text, s: int) -> dict[int, int]:
    if text == []:
        # argparse swallows the exact value "--" (its option terminator),
        # leaving an empty list; that spelling can only mean two minuses
        text = "--"
    text = text.replace(",", "")
    if len(text) != s or any(ch not in "+-" for ch in text):
        raise UsageError(
            f"sign pattern must be {s} characters of '+'/'-', got {text!r}"
        )
    return {l: 1 if text[l - 1] == "+" else -1 for l in range(1, s + 1)}


def _parse_square_bits(text: str, s: int) -> dict[int, int]:
    tokens = [t for t in text.replace(",", "/").split("/") if t]
    if len(tokens) != s or any(t not in ("sq", "ns") for t in tokens):
        raise UsageError(
            f"assignment must be {s} 'sq'/'ns' tokens separated by '/', got {text!r}"
        )
    return {l: 0 if tokens[l - 1] == "sq" else 1 for l in range(1, s + 1)}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gwfloor",
        description="Enriched floor-diagram counts and their invariance checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--json", action="store_true", help="emit JSON (the default)")
        p.add_argument("--table", action="store_true", help="also print a text table")
        p.add_argument("--out", metavar="FILE", help="write the JSON document to FILE")
        p.add_argument(
            "--budget",
            type=int,
            default=_DEFAULT_BUDGET,
            help="largest degree the command may enumerate (default 4)",
        )

    p_enum = sub.add_parser("enumerate", help="dump marked floor diagrams")
    p_enum.add_argument("--degree", type=int, required=True)
    add_common(p_enum)

    p_count = sub.add_parser("count", help="compute one enriched count")
    p_count.add_argument("--degree", type=int, required=True)
    p_count.add_argument("--pairs", type=int, default=None, help="number of merged pairs")
    p_count.add_argument("--merge", default="", help="comma-separated merge positions")
    p_count.add_argument(
        "--field",
        default="symbolic",
        help="symbolic (default), real, closed, or fq:Q for an odd prime power Q",
    )
    p_count.add_argument("--signs", default=None, help="real model: one '+'/'-' per pair")
    p_count.add_argument(
        "--assign", default=None, help="finite-field model: 'sq'/'ns' per pair, '/'-separated"
    )
    add_common(p_count)

    p_wall = sub.add_parser("wallcross", help="full report for one wall crossing")
    p_wall.add_argument("--degree", type=int, required=True)
    p_wall.add_argument("--merge-from", required=True, help="source merge positions")
    p_wall.add_argument("--merge-to", required=True, help="target merge positions")
    p_wall.add_argument(
        "--sweep", default="default", help="field sweep to run (only 'default')"
    )
    add_common(p_wall)

    p_pf = sub.add_parser("pfister", help="Pfister element and its anisotropy verdict")
    p_pf.add_argument("--vars", type=int, required=True)
    add_common(p_pf)

    p_ver = sub.add_parser("verify", help="run a verification suite")
    p_ver.add_argument("--suite", required=True, help="|".join(SUITE_NAMES))
    p_ver.add_argument("--jobs", type=int, default=1)
    add_common(p_ver)

    return parser


# ---------------------------------------------------------------------------
# Command implementations: each returns (document, table lines, exit code)
# ---------------------------------------------------------------------------


def _check_degree(d: int, budget: int) -> None:
    if d < 1:
        raise UsageError(f"degree must be positive, got {d}")
    if d > budget:
        raise UsageError(f"degree {d} exceeds the enumeration budget {budget}")


def _cmd_enumerate(args):
    _check_degree(args.degree, args.budget)
    merged = enumerate_merged_diagrams(args.degree, ())
    total = floor_count(args.degree, ())
    doc = {
        "schema": SCHEMA_VERSION,
        "d": args.degree,
        "count": len(merged),
        "rank": total.rank,
        "diagrams": [m.to_json() for m in merged],
    }
    lines = [f"degree {args.degree}: {len(merged)} marked diagrams, total rank {total.rank}"]
    for m in merged:
        elevators = " ".join(f"{lo}-{hi}:{w}" for lo, hi, w in m.diagram.elevators)
        lines.append(
            f"  elevators [{elevators or '-'}] ends {list(m.diagram.end_counts)} "
            f"multiplicity {m.multiplicity()!r}"
        )
    return doc, lines, 0


def _cmd_count(args):
    _check_degree(args.degree, args.budget)
    n = 3 * args.degree - 1
    cfg = _parse_positions(args.merge)
    if args.pairs is not None and args.pairs != len(cfg):
        if cfg:
            raise UsageError(
                f"--pairs {args.pairs} disagrees with {len(cfg)} merge positions"
            )
        raise UsageError("--pairs given without --merge positions")
    _validate_config(cfg, n)
    s = len(cfg)
    value = floor_count(args.degree, cfg)

    doc = {
        "schema": SCHEMA_VERSION,
        "d": args.degree,
        "s": s,
        "merge": list(cfg),
        "field": args.field,
        "rank": value.rank,
    }
    lines = [f"degree {args.degree}, merges {list(cfg)}"]

    if args.field == "symbolic":
        doc["value"] = value.to_json()
        lines.append(f"  value {value!r}")
    elif args.field == "real":
        assign = _parse_signs(args.signs if args.signs is not None else "+" * s, s)
        image = specialize_field(value, RealField(), assign)
        doc["signs"] = "".join("+" if assign[l] == 1 else "-" for l in range(1, s + 1))
        doc["signature"] = image.sig
        lines.append(f"  signs {doc['signs'] or '-'} rank {image.rank} signature {image.sig}")
    elif args.field == "closed":
        image = specialize_field(value, ClosedField(), {l: 0 for l in range(1, s + 1)})
        doc["rank"] = image.rank
        lines.append(f"  rank {image.rank}")
    elif args.field.startswith("fq:"):
        try:
            q = int(args.field[3:])
            model = FiniteField(q)
        except ValueError as exc:
            raise UsageError(str(exc))
        assign = _parse_square_bits(
            args.assign if args.assign is not None else "/".join(["sq"] * s), s
        )
        image = specialize_field(value, model, assign)
        doc["assign"] = "/".join(
            "sq" if assign[l] == 0 else "ns" for l in range(1, s + 1)
        )
        doc["disc"] = image.disc
        lines.append(f"  q={q} assign {doc['assign'] or '-'} rank {image.rank} disc bit {image.disc}")
    else:
        raise UsageError(f"unknown field model {args.field!r}")
    return doc, lines, 0


def _cmd_wallcross(args):
    _check_degree(args.degree, args.budget)
    if args.sweep != "default":
        raise UsageError(f"unknown sweep {args.sweep!r}; only 'default' is available")
    n = 3 * args.degree - 1
    cfg_from = _parse_positions(args.merge_from)
    cfg_to = _parse_positions(args.merge_to)
    _validate_config(cfg_from, n)
    _validate_config(cfg_to, n)
    if len(cfg_from) != len(cfg_to):
        raise UsageError("source and target must merge the same number of pairs")
    report = wallcross_report(args.degree, cfg_from, cfg_to)
    doc = report.to_json()
    checks = doc["checks"]
    lines = [
        f"degree {args.degree}: {list(cfg_from)} -> {list(cfg_to)}",
        f"  coefficient (n1, n2, m) = ({report.n1}, {report.n2}, {report.m})",
    ]
    for key in ("rank_zero", "broccoli", "parity", "witnesses_zero", "reconstruction"):
        lines.append(f"  {key:<16} {'ok' if checks[key] else 'FAIL'}")
    bad = [c for c in checks["field_zero"] if not c["ok"]]
    lines.append(
        f"  field_zero       {len(checks['field_zero']) - len(bad)}/{len(checks['field_zero'])} ok"
    )
    return doc, lines, 0 if report.passed else 1


def _cmd_pfister(args):
    s = args.vars
    if s < 0:
        raise UsageError(f"--vars must be nonnegative, got {s}")
    element = pfister_element(s)
    concrete = form_report(pfister_concrete(s))
    doc = {
        "schema": SCHEMA_VERSION,
        "s": s,
        "element": element.to_json(),
        "form": concrete["form"],
        "verdict": concrete["verdict"],
    }
    lines = [
        f"{s}-variable Pfister element: {element!r}",
        f"  concrete diagonal form of rank {2 ** (s + 1)}: verdict {concrete['verdict']}",
    ]
    return doc, lines, 0


def _cmd_verify(args):
    result = run_suite(args.suite, budget=args.budget, jobs=args.jobs)
    doc = result.to_json()
    lines = [f"suite {result.suite}: {len(result.checks)} checks"]
    for c in result.checks:
        mark = "ok  " if c.passed else "FAIL"
        detail = f" -- {c.detail}" if c.detail else ""
        lines.append(f"  {mark} {c.check_id}{detail}")
    lines.append(f"overall: {'PASS' if result.passed else 'FAIL'}")
    return doc, lines, 0 if result.passed else 1


_COMMANDS = {
    "enumerate": _cmd_enumerate,
    "count": _cmd_count,
    "wallcross": _cmd_wallcross,
    "pfister": _cmd_pfister,
    "verify": _cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        doc, lines, code = _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    text = json.dumps(doc, sort_keys=True, indent=2)
    if args.out:
        with open(args.out, "w") as handle:
            handle.write(text + "\n")
    else:
        print(text)
    if args.table:
        for line in lines:
            print(line)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
