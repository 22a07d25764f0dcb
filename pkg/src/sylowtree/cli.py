"""Command-line front end.

Subcommands expose the constructions and the verification drivers; output is
human-readable text or machine-readable JSON. Exit codes: 0 on success (all
verifications passed), 1 when a verification fails, 2 on bad arguments, 3
when an exhaustive engine hits its element cap.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import classify as cls
from . import portrait as pt
from . import sylow
from .engine import (
    ClosureCapExceeded,
    GeneratingSet,
    StabilizerChain,
    closure,
    order_report,
    table_lines,
)
from .perm import format_cycles, format_one_line

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_CAP = 3


class UsageError(ValueError):
    pass


def _family_gens(family: str, param: int) -> GeneratingSet:
    if family == "sbeta":
        if param < 2:
            raise UsageError(f"sbeta needs depth >= 2, got {param}")
        return sylow.s_beta(param)
    if family == "sn":
        if param < 1:
            raise UsageError(f"sn needs degree >= 1, got {param}")
        return sylow.syl2_Sn_gens(param)
    if family == "an":
        if param < 3:
            raise UsageError(f"an needs degree >= 3, got {param}")
        return sylow.syl2_An_gens(param)
    if family == "h":
        try:
            return sylow.build_h_subgroup(param)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    raise UsageError(f"unknown family {family!r}")


def _formula_order(family: str, param: int) -> int:
    if family == "a2k":
        if param < 2:
            raise UsageError(f"a2k needs depth >= 2, got {param}")
        return 1 << ((1 << param) - 2)
    if family == "sn":
        return sylow.syl2_order_Sn(param)
    if family == "an":
        return sylow.syl2_order_An(param)
    raise UsageError(f"no closed-form order for family {family!r}")


def _order_gens(family: str, param: int) -> GeneratingSet:
    if family == "a2k":
        if param < 2:
            raise UsageError(f"a2k needs depth >= 2, got {param}")
        return sylow.s_beta(param)
    return _family_gens(family, param)


def cmd_order(args: argparse.Namespace) -> int:
    engines = args.engine or ["formula"]
    results = []
    for engine in engines:
        if engine == "formula":
            value = _formula_order(args.family, args.param)
        elif engine == "closure":
            value = len(closure(_order_gens(args.family, args.param)))
        elif engine == "chain":
            value = StabilizerChain(_order_gens(args.family, args.param)).order()
        else:
            raise UsageError(f"unknown engine {engine!r}")
        results.append((engine, value))
    values = {v for _, v in results}
    if len(values) > 1:
        print(f"engine disagreement: {results}", file=sys.stderr)
        return EXIT_VERIFY_FAILED
    name = f"{args.family}({args.param})"
    degree = args.param if args.family != "a2k" else 1 << args.param
    if args.format == "json":
        reports = [order_report(name, degree, v, e) for e, v in results]
        print(json.dumps(reports if len(reports) > 1 else reports[0]))
    else:
        print(str(results[0][1]))
    return EXIT_OK


def cmd_gens(args: argparse.Namespace) -> int:
    gs = _family_gens(args.family, args.param)
    portraits = None
    if args.family == "sbeta":
        portraits = sylow.generator_portraits(args.param)
    if args.portrait_dir and portraits:
        out_dir = Path(args.portrait_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        for name, p in portraits:
            (out_dir / f"{name}.portrait").write_text(pt.to_text(p))
    if args.format == "json":
        records = []
        for idx, g in enumerate(gs.generators):
            rec = {
                "name": portraits[idx][0] if portraits else f"g{idx}",
                "cycles": format_cycles(g),
                "one_line": format_one_line(g),
            }
            if portraits:
                rec["portrait"] = pt.to_text(portraits[idx][1])
            records.append(rec)
        print(json.dumps({"family": args.family, "param": args.param,
                          "degree": gs.degree, "generators": records}))
    else:
        for idx, g in enumerate(gs.generators):
            name = portraits[idx][0] if portraits else f"g{idx}"
            print(f"{name}: {format_cycles(g)}")
    return EXIT_OK


_CHECKS = ("minimal", "semidirect", "frattini", "relations", "tclass", "distance")


def _run_check(check: str, param: int) -> tuple[bool, list[dict]]:
    if check == "minimal":
        report = sylow.verify_minimal(param)
        return report.ok, [_record_json(r) for r in report.records()]
    if check == "semidirect":
        report = sylow.verify_semidirect(param)
        return report.ok, [_record_json(r) for r in report.records()]
    if check == "frattini":
        report = sylow.verify_frattini_action(param)
        return report.ok, [_record_json(r) for r in report.records()]
    if check == "relations":
        report = sylow.verify_order_relations(param)
        return report.ok, [_record_json(r) for r in report.records()]
    if check == "tclass":
        ok = cls.check_T_not_closed(param)
        return ok, [_bool_record("tclass.not_closed", param, ok)]
    if check == "distance":
        ok = cls.check_distance_barrier(param)
        return ok, [_bool_record("distance.barrier", param, ok)]
    raise UsageError(f"unknown check {check!r}")


def _record_json(r: sylow.CheckRecord) -> dict:
    return {"check": r.check, "k_or_n": r.param, "expected": r.expected,
            "got": r.got, "pass": r.ok}


def _bool_record(check: str, param: int, ok: bool) -> dict:
    return {"check": check, "k_or_n": param, "expected": "True",
            "got": str(ok), "pass": ok}


def cmd_verify(args: argparse.Namespace) -> int:
    try:
        ok, records = _run_check(args.check, args.param)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.format == "json":
        print(json.dumps(records))
    else:
        for rec in records:
            status = "PASS" if rec["pass"] else "FAIL"
            print(f"{status} {rec['check']}[{rec['k_or_n']}]: "
                  f"expected={rec['expected']} got={rec['got']}")
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


def cmd_classify(args: argparse.Namespace) -> int:
    try:
        text = Path(args.portrait).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {args.portrait}: {exc}") from None
    p = pt.from_text(text)
    info = cls.classify(p)
    payload = {
        "klass": info.klass,
        "half_counts": [info.first_half_count, info.second_half_count],
        "level_indices": [pt.level_index(p, l) for l in range(p.depth)],
        "is_level_stabilizer": info.is_level_stabilizer,
    }
    if args.format == "json":
        print(json.dumps(payload))
    else:
        print(f"class: {payload['klass']}")
        print(f"half counts: {payload['half_counts']}")
        print(f"level indices: {payload['level_indices']}")
    return EXIT_OK


def cmd_decompose(args: argparse.Namespace) -> int:
    decomp = sylow.binary_decompose(args.n)
    parts = [
        {"exponent": e, "block": 1 << e, "syl2_order": str(sylow.syl2_order_Sn(1 << e))}
        for e in decomp.parts
    ]
    payload = {
        "n": decomp.n,
        "parts": parts,
        "syl2_Sn_order": str(sylow.syl2_order_Sn(args.n)),
        "syl2_An_order": str(sylow.syl2_order_An(args.n)) if args.n >= 1 else "1",
    }
    if args.format == "json":
        print(json.dumps(payload))
    else:
        blocks = " + ".join(str(p["block"]) for p in parts)
        print(f"{args.n} = {blocks}")
        for p in parts:
            print(f"  block {p['block']}: order {p['syl2_order']}")
        print(f"symmetric 2-part: {payload['syl2_Sn_order']}")
        print(f"alternating 2-part: {payload['syl2_An_order']}")
    return EXIT_OK


def cmd_export(args: argparse.Namespace) -> int:
    gs = _family_gens(args.family, args.param)
    table = closure(gs)
    Path(args.out).write_text("\n".join(table_lines(table)) + "\n")
    print(f"wrote {len(table)} elements to {args.out}", file=sys.stderr)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sylowtree",
        description="Constructions and verifications for maximal 2-subgroups "
                    "of symmetric and alternating groups on binary trees.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("order", help="exact group order")
    p.add_argument("--family", required=True, choices=("a2k", "an", "sn"))
    p.add_argument("--param", required=True, type=int)
    p.add_argument("--engine", action="append",
                   choices=("closure", "chain", "formula"))
    add_format(p)
    p.set_defaults(func=cmd_order)

    p = sub.add_parser("gens", help="print a generating set")
    p.add_argument("--family", required=True, choices=("sbeta", "sn", "an", "h"))
    p.add_argument("--param", required=True, type=int)
    p.add_argument("--portrait-dir", help="write portrait files here (sbeta only)")
    add_format(p)
    p.set_defaults(func=cmd_gens)

    p = sub.add_parser("verify", help="run a verification driver")
    p.add_argument("--check", required=True, choices=_CHECKS)
    p.add_argument("--param", required=True, type=int)
    add_format(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("classify", help="classify a portrait file")
    p.add_argument("--portrait", required=True, help="path to a portrait text file")
    add_format(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("decompose", help="binary decomposition and block orders")
    p.add_argument("--n", required=True, type=int)
    add_format(p)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("export", help="write the sorted element list of a family")
    p.add_argument("--family", required=True, choices=("sbeta", "sn", "an", "h"))
    p.add_argument("--param", required=True, type=int)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_export)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ClosureCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
