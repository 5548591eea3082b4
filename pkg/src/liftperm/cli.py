"""Command-line entry point: ``liftperm <command> ...``.

Exit codes: 0 when every requested check passes, 1 when a check fails or
a computation raises, 2 for usage and parse errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from fractions import Fraction

from . import chain_poset, compositions, genperm, interp, nesto, sweep
from .errors import LiftpermError, ParseError
from .exactmath import parse_rational

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _write(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv_text(rows, header) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _flatten(data, prefix="") -> list[tuple[str, str]]:
    rows = []
    if isinstance(data, dict):
        for k, v in data.items():
            rows.extend(_flatten(v, f"{prefix}{k}."))
    elif isinstance(data, list) and not all(isinstance(x, (str, int, bool)) or x is None for x in data):
        for i, v in enumerate(data):
            rows.extend(_flatten(v, f"{prefix}{i}."))
    else:
        value = " ".join(map(str, data)) if isinstance(data, list) else data
        rows.append((prefix[:-1], json.dumps(value) if isinstance(value, bool) or value is None else str(value)))
    return rows


def _emit(args, data: dict, rows=None, header=None) -> None:
    if args.format == "csv":
        if rows is None:
            rows, header = _flatten(data), ("key", "value")
        _write(_csv_text(rows, header), args.output)
    else:
        _write(json.dumps(data, indent=2) + "\n", args.output)


def _composition(text: str) -> compositions.Composition:
    return compositions.Composition.parse(text)


def _rational(text: str) -> Fraction:
    return parse_rational(text)


# commands

def cmd_gc(args) -> int:
    c = _composition(args.composition)
    methods = ["closed", "recursive", "integral"] if args.method == "all" else [args.method]
    polys = [compositions.g(c, m) for m in methods]
    agree = all(p == polys[0] for p in polys)
    data = compositions.report(c, methods[0])
    data["methods"] = methods
    data["methods_agree"] = agree
    gc, fc = polys[0], compositions.f_reduced(c)
    rows = [(i, str(gc[i]), str(fc[i]) if i <= fc.degree else "") for i in range(c.n + 1)]
    _emit(args, data, rows, ("i", "g_i", "f_i"))
    return EXIT_OK if agree and all(data["checks"].values()) else EXIT_FAIL


def cmd_sweep(args) -> int:
    checks = frozenset(x.strip() for x in args.checks.split(",") if x.strip())
    try:
        config = sweep.SweepConfig(args.max_parts, args.max_part, checks, args.jobs, None)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    result = sweep.run_sweep(config, write_csv=args.format == "csv" or bool(args.output))
    if args.format == "csv":
        _write(result.csv_text, args.output)
        sys.stderr.write(json.dumps(result.summary()) + "\n")
    else:
        if args.output:
            with open(args.output, "w", newline="") as fh:
                fh.write(result.csv_text)
        sys.stdout.write(json.dumps(result.summary(), indent=2) + "\n")
    return EXIT_OK if result.ok else EXIT_FAIL


def cmd_interp(args) -> int:
    c = _composition(args.composition)
    lead = interp.interpolation_leading_coeff(c)
    gc = compositions.g_closed_form(c)
    expected = gc * (-1) ** c.k
    ok = lead == expected
    fc = compositions.f_reduced(c)
    shifted = [interp.shifted_coefficient_interp(c, i) for i in range(c.n - c.k + 1)]
    shifted_ok = all(s == (-1) ** c.k * fc[i] for i, s in enumerate(shifted))
    sign = "-" if c.k % 2 else ""
    data = {
        "composition": list(c.parts),
        "leading_coefficient": lead.to_json_list(),
        "expected": expected.to_json_list(),
        "ok": ok,
        "shifted_coefficients": [str(s) for s in shifted],
        "shifted_ok": shifted_ok,
        "message": f"a_{c.k} = {sign}g_c: {'OK' if ok else 'FAIL'}",
    }
    _emit(args, data)
    return EXIT_OK if ok and shifted_ok else EXIT_FAIL


def cmd_linext(args) -> int:
    c = _composition(args.composition)
    rep = chain_poset.report(c, args.limit)
    volume = chain_poset.order_polytope_volume(c)
    stanley = math.factorial(c.n + 1) * volume == rep["extensions_total"]
    rep["order_polytope_volume"] = str(volume)
    rep["volume_consistent"] = stanley
    rows = [(j + 1, n) for j, n in enumerate(rep["N"])]
    _emit(args, rep, rows, ("height", "N"))
    return EXIT_OK if rep["bernstein_ok"] and rep["logconcave_ok"] and stanley else EXIT_FAIL


BODIES = {
    "perm": genperm.permutahedron,
    "assoc": genperm.associahedron,
    "simplex": genperm.simplex,
}


def _load_params(args) -> genperm.SubsetParams:
    if args.params:
        try:
            with open(args.params) as fh:
                return genperm.SubsetParams.from_json(fh.read())
        except OSError as exc:
            raise ParseError(f"cannot read {args.params}: {exc}") from exc
    name, _, size = args.body.partition(":")
    if name not in BODIES or not size.isdigit():
        raise ParseError(f"unknown body {args.body!r}; use perm:N, assoc:N or simplex:N")
    return BODIES[name](int(size))


def cmd_lift(args) -> int:
    zp = _load_params(args)
    q = _rational(args.q)
    shift = Fraction(0)
    if args.normalize:
        zp, shift = genperm.normalize(zp)
    supermodular = genperm.check_supermodular(zp)
    lifted = genperm.q_lift(zp, q)
    lifted_super = genperm.check_supermodular(lifted)
    data = {
        "n": zp.n,
        "q": str(q),
        "shift": str(shift),
        "supermodular": supermodular,
        "lifted": lifted.to_dict(),
        "lifted_supermodular": lifted_super,
        "f_vector": None,
        "base_f_vector": None,
    }
    if lifted.n <= genperm.MAX_LATTICE_N:
        data["f_vector"] = list(genperm.face_lattice(lifted).f_vector)
        data["base_f_vector"] = list(genperm.face_lattice(zp).f_vector)
    _emit(args, data)
    return EXIT_OK if supermodular and lifted_super else EXIT_FAIL


def cmd_subdiv(args) -> int:
    zp = _load_params(args)
    rep = genperm.subdivision_report(zp, _rational(args.q))
    rows = [(pi, v) for pi, v in rep["cells"].items()]
    rows.append(("sum", rep["sum"]))
    if rep["hull_volume"] is not None:
        rows.append(("hull_volume", rep["hull_volume"]))
    _emit(args, rep, rows, ("cell", "volume"))
    return EXIT_FAIL if rep["ok"] is False else EXIT_OK


def cmd_nesto(args) -> int:
    if args.building:
        try:
            with open(args.building) as fh:
                bset = nesto.BuildingSet.from_json(fh.read(), close=args.close)
        except OSError as exc:
            raise ParseError(f"cannot read {args.building}: {exc}") from exc
    else:
        edges = nesto.parse_edges(args.graph)
        n = args.n or max((max(e) for e in edges), default=0)
        if n < 1:
            raise ParseError("give --n for a graph without edges")
        bset = nesto.graph_building_set(edges, n)
    rep = nesto.face_poset_crosscheck(bset)
    data = {"building_set": bset.to_dict(), **rep.to_dict()}
    depth = max(len(rep.forests_by_rank), len(rep.painted_by_rank))
    rows = [
        (r,
         rep.forests_by_rank[r] if r < len(rep.forests_by_rank) else 0,
         rep.painted_by_rank[r] if r < len(rep.painted_by_rank) else 0)
        for r in range(depth)
    ]
    _emit(args, data, rows, ("rank", "forests", "painted"))
    return EXIT_OK if rep.ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default=argparse.SUPPRESS)
    common.add_argument("--output", default=argparse.SUPPRESS, help="write output to this file")
    common.add_argument("--jobs", type=int, default=argparse.SUPPRESS, help="worker processes")

    p = _Parser(prog="liftperm", description=__doc__.splitlines()[0])
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--output", default=None, help="write output to this file")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("gc", parents=[common], help="composition polynomial report")
    s.add_argument("-c", "--composition", required=True)
    s.add_argument("--method", choices=("closed", "recursive", "integral", "all"), default="closed")
    s.set_defaults(func=cmd_gc)

    s = sub.add_parser("sweep", parents=[common], help="check every composition in a box")
    s.add_argument("--max-parts", type=int, default=7)
    s.add_argument("--max-part", type=int, default=6)
    s.add_argument("--checks", default="positive,unimodal,logconcave")
    s.set_defaults(func=cmd_sweep)

    s = sub.add_parser("interp", parents=[common], help="interpolation identity")
    s.add_argument("-c", "--composition", required=True)
    s.set_defaults(func=cmd_interp)

    s = sub.add_parser("linext", parents=[common], help="linear extensions of the chain poset")
    s.add_argument("-c", "--composition", required=True)
    s.add_argument("--limit", type=int, default=chain_poset.DEFAULT_LIMIT)
    s.set_defaults(func=cmd_linext)

    for name, func, helptext in (
        ("lift", cmd_lift, "q-lift subset parameters"),
        ("subdiv", cmd_subdiv, "cell volumes of the lifted polytope"),
    ):
        s = sub.add_parser(name, parents=[common], help=helptext)
        src = s.add_mutually_exclusive_group(required=True)
        src.add_argument("--params", help="JSON file with subset parameters")
        src.add_argument("--body", help="built-in body: perm:N, assoc:N or simplex:N")
        s.add_argument("--q", default="1/2")
        if name == "lift":
            s.add_argument("--normalize", action="store_true",
                           help="shift into the open positive orthant first")
        s.set_defaults(func=func)

    s = sub.add_parser("nesto", parents=[common], help="forest posets against face lattices")
    src = s.add_mutually_exclusive_group(required=True)
    src.add_argument("--graph", help='edge list such as "1-2,2-3"')
    src.add_argument("--building", help="JSON file with a building set")
    s.add_argument("--n", type=int, default=None, help="number of graph vertices")
    s.add_argument("--close", action="store_true", help="complete the family to a building set")
    s.set_defaults(func=cmd_nesto)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.jobs < 1:
            raise UsageError("--jobs must be >= 1")
        return args.func(args)
    except (UsageError, ParseError) as exc:
        sys.stderr.write(f"liftperm: error: {exc}\n")
        return EXIT_USAGE
    except LiftpermError as exc:
        sys.stderr.write(f"liftperm: {type(exc).__name__}: {exc}\n")
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
