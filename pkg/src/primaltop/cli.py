"""Command-line interface.

Exit codes: 0 success or pass, 1 falsified formula or failed battery,
2 usage, validation, parse or capacity error.

Space files are JSON documents::

    {"n": 3, "open": [0, 1, 7], "primal": {"generator": 4}}

with ``primal`` holding either an integer ``generator`` or an integer array
``sets``.  Subsets are integer bit codes (element i is bit i).
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import __version__
from .dsl import FAIL, NOT_MET, PASS, DslError, eval_formula, eval_set, free_variables, parse, parse_expr
from .enumeration import MAX_ENUM_N, count, enumerate_primals, enumerate_spaces, enumerate_topologies
from .operators import OperatorTable
from .setcore import CapacityError, InvalidCodeError, describe_code
from .spaces import AxiomError, PrimalSpace, make_space
from .verify import REGISTRY, check_all_spaces

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


class SpaceFileError(ValueError):
    """Malformed space document."""


def _is_int(v) -> bool:
    return isinstance(v, int) and not isinstance(v, bool)


def space_from_document(doc) -> PrimalSpace:
    if not isinstance(doc, dict):
        raise SpaceFileError("space document must be an object")
    extra = set(doc) - {"n", "open", "primal"}
    if extra:
        raise SpaceFileError(f"unknown field(s): {', '.join(sorted(extra))}")
    for key in ("n", "open", "primal"):
        if key not in doc:
            raise SpaceFileError(f"missing field {key!r}")
    if not _is_int(doc["n"]):
        raise SpaceFileError("'n' must be an integer")
    if not isinstance(doc["open"], list) or not all(_is_int(v) for v in doc["open"]):
        raise SpaceFileError("'open' must be an array of integers")
    primal = doc["primal"]
    if not isinstance(primal, dict):
        raise SpaceFileError("'primal' must be an object")
    extra = set(primal) - {"generator", "sets"}
    if extra:
        raise SpaceFileError(f"unknown primal field(s): {', '.join(sorted(extra))}")
    if len(primal) != 1:
        raise SpaceFileError("'primal' needs exactly one of 'generator' or 'sets'")
    if "generator" in primal:
        if not _is_int(primal["generator"]):
            raise SpaceFileError("'generator' must be an integer")
        return make_space(doc["n"], doc["open"], generator=primal["generator"])
    sets = primal["sets"]
    if not isinstance(sets, list) or not all(_is_int(v) for v in sets):
        raise SpaceFileError("'sets' must be an array of integers")
    return make_space(doc["n"], doc["open"], sets=sets)


def load_space(path: str) -> PrimalSpace:
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SpaceFileError(f"{path}: {exc}") from exc
    return space_from_document(doc)


def _int(text: str) -> int:
    return int(text, 0)


def _binding(text: str):
    name, sep, value = text.partition("=")
    if not sep or not name:
        raise argparse.ArgumentTypeError(f"expected V=INT, got {text!r}")
    try:
        return name.strip(), _int(value.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {value!r}") from None


def _emit(args, doc: dict, text: str):
    if args.format == "json":
        print(json.dumps(doc, indent=2))
    else:
        print(text)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_validate(args) -> int:
    space = load_space(args.file)
    _emit(args, {"status": "valid", "space": space.describe()}, "valid")
    return EXIT_OK


def cmd_compute(args) -> int:
    space = load_space(args.file)
    expr = parse_expr(args.expr)
    bindings = dict(args.bind)
    missing = [v for v in free_variables(expr) if v not in bindings]
    if missing:
        raise DslError(f"no binding for variable(s) {', '.join(missing)}", 0)
    for v in bindings.values():
        space.g.check(v)
    value = eval_set(expr, space, bindings)
    doc = {"expr": args.expr, "bindings": bindings, "value": value}
    _emit(args, doc, describe_code(value, space.g))
    return EXIT_OK


def _witness_lines(space: PrimalSpace, bindings: dict) -> list[str]:
    lines = [f"space: {json.dumps(space.describe())}"]
    lines += [f"{k} = {describe_code(v, space.g)}" for k, v in bindings.items()]
    return lines


def cmd_check(args) -> int:
    if args.all_n is None:
        if len(args.target) != 2:
            raise SpaceFileError("usage: check FILE FORMULA | check --all-n N FORMULA")
        path, text = args.target
    else:
        if len(args.target) != 1:
            raise SpaceFileError("usage: check FILE FORMULA | check --all-n N FORMULA")
        path, text = None, args.target[0]
    formula = parse(text)
    filters = [parse(w) for w in args.where]

    spaces = [load_space(path)] if path else enumerate_spaces(args.all_n)
    tallies = {PASS: 0, FAIL: 0, NOT_MET: 0, "filtered": 0}
    scanned = 0
    for index, space in enumerate(spaces):
        ops = OperatorTable(space)
        scanned += 1
        if any(eval_formula(w, ops).status != PASS for w in filters):
            tallies["filtered"] += 1
            continue
        verdict = eval_formula(formula, ops)
        tallies[verdict.status] += 1
        if verdict.status == FAIL:
            doc = {"formula": text, "verdict": "fail", "space_index": index,
                   "space": space.describe(), "bindings": verdict.witness,
                   "spaces_scanned": scanned}
            lines = ["FAIL"] + ([f"space index: {index}"] if path is None else [])
            _emit(args, doc, "\n".join(lines + _witness_lines(space, verdict.witness)))
            return EXIT_FAIL
    if path and tallies[NOT_MET]:
        _emit(args, {"formula": text, "verdict": NOT_MET}, "HYPOTHESIS-NOT-MET")
        return EXIT_OK
    doc = {"formula": text, "verdict": "pass", "spaces_scanned": scanned, "tallies": tallies}
    if path:
        summary = "PASS"
    else:
        summary = (f"PASS over {scanned} spaces ({tallies[NOT_MET]} hypothesis-not-met"
                   + (f", {tallies['filtered']} filtered out" if filters else "") + ")")
    _emit(args, doc, summary)
    return EXIT_OK


def battery_document(n: int, report, command: Sequence[str], timing: bool) -> dict:
    checks = []
    for name in report.names:
        t = report.tallies[name]
        checks.append({
            "name": name,
            "summary": REGISTRY[name].summary,
            "status": FAIL if t[FAIL] else PASS,
            "tallies": {PASS: t[PASS], FAIL: t[FAIL], NOT_MET: t[NOT_MET]},
            "witness": report.witnesses.get(name),
        })
    totals = {k: sum(c["tallies"][k] for c in checks) for k in (PASS, FAIL, NOT_MET)}
    doc = {
        "tool": "primaltop",
        "version": __version__,
        "command": list(command),
        "n": n,
        "space_count": report.space_count,
        "check_count": len(checks),
        "checks": checks,
        "totals": totals,
        "verdict": FAIL if totals[FAIL] else PASS,
    }
    if timing:
        doc["elapsed_seconds"] = round(report.elapsed, 3)
    return doc


def battery_text(doc: dict) -> str:
    lines = [f"verify-paper n={doc['n']}: {doc['check_count']} checks over "
             f"{doc['space_count']} spaces"]
    for c in doc["checks"]:
        t = c["tallies"]
        lines.append(f"{c['status'].upper():4}  {c['name']:36} pass={t[PASS]} fail={t[FAIL]} "
                     f"not-met={t[NOT_MET]}")
        if c["witness"]:
            lines.append(f"      witness: {json.dumps(c['witness'])}")
    t = doc["totals"]
    lines.append(f"{doc['verdict'].upper()}: pass={t[PASS]} fail={t[FAIL]} not-met={t[NOT_MET]}")
    if "elapsed_seconds" in doc:
        lines.append(f"elapsed: {doc['elapsed_seconds']} s")
    return "\n".join(lines)


def cmd_verify_paper(args) -> int:
    if args.n > MAX_ENUM_N:
        raise CapacityError(f"n={args.n} exceeds the enumeration bound {MAX_ENUM_N}")
    report = check_all_spaces(args.n)
    doc = battery_document(args.n, report, args.command, args.timing)
    body = json.dumps(doc, indent=2) + "\n" if args.format == "json" else battery_text(doc) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(body)
        t = doc["totals"]
        print(f"{doc['verdict'].upper()}: {doc['check_count']} checks, {doc['space_count']} "
              f"spaces, fail={t[FAIL]}; report written to {args.out}")
    else:
        sys.stdout.write(body)
    return EXIT_FAIL if doc["verdict"] == FAIL else EXIT_OK


def cmd_enumerate(args) -> int:
    if args.count:
        print(count(args.kind, args.n))
        return EXIT_OK
    if args.kind == "topologies":
        for t in enumerate_topologies(args.n):
            print(json.dumps(list(t.open)))
    elif args.kind == "primals":
        for p in enumerate_primals(args.n):
            print(json.dumps({"generator": p.generator, "sets": list(p.sets)}))
    else:
        for s in enumerate_spaces(args.n):
            print(json.dumps(s.describe()))
    return EXIT_OK


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="primaltop",
                                     description="Finite-model workbench for primal topological spaces")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command_name", required=True)

    def fmt(p):
        p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("validate", help="validate a space file")
    p.add_argument("file")
    fmt(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("compute", help="evaluate a set expression on a space")
    p.add_argument("file")
    p.add_argument("--expr", required=True)
    p.add_argument("--bind", action="append", type=_binding, default=[], metavar="V=INT")
    fmt(p)
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("check", help="check a formula on one space or all spaces on N points")
    p.add_argument("target", nargs="+", metavar="[FILE] FORMULA")
    p.add_argument("--all-n", type=int, dest="all_n")
    p.add_argument("--where", action="append", default=[], metavar="FORMULA",
                   help="only consider spaces where this formula passes (repeatable)")
    fmt(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("verify-paper", help="run the full theorem battery over all spaces")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out")
    p.add_argument("--timing", action="store_true", help="include wall time in the report")
    fmt(p)
    p.set_defaults(func=cmd_verify_paper)

    p = sub.add_parser("enumerate", help="count or list topologies, primals or spaces")
    p.add_argument("kind", choices=("topologies", "primals", "spaces"))
    p.add_argument("--n", type=int, required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--count", action="store_true")
    group.add_argument("--list", action="store_true")
    p.set_defaults(func=cmd_enumerate)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_OK
    args.command = argv
    try:
        return args.func(args)
    except (AxiomError, CapacityError, InvalidCodeError, DslError, SpaceFileError,
            OSError, ValueError) as exc:
        kind = getattr(exc, "kind", type(exc).__name__)
        print(f"error: {exc}", file=sys.stderr)
        if getattr(args, "format", "text") == "json":
            print(json.dumps({"error": kind, "message": str(exc)}))
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
