"""Command line front end.

    logstab check    --rank2 1,1 --a 1 --delta v1 --nu 1/2
    logstab oracle   --rank1 1,2,3 --delta u0 --nu 1
    logstab region   --rank2 1,1 --a 0 --delta v0
    logstab table    --table 2 --max-rs 4 --max-a 2
    logstab delpezzo --surface p2
    logstab sweep

Every command prints a JSON report ``{command, input, result, version}`` by
default, or a fixed-width table with ``--format text``. Exit status is 0 on
success, 2 on bad input and 1 when ``sweep`` finds a disagreement.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from itertools import combinations, product
from math import gcd
from typing import Optional, Sequence

from . import __version__
from .delpezzo import P2, SurfaceKind, hirzebruch, surface_reports, to_labels
from .errors import MismatchFound, ParseError, PreconditionError
from .lattice_fan import Rank1Variety, Variety, build_rank1, build_rank2, ray_sort_key
from .regions import Endpoint, Interval, StabilityRegion, stability_region
from .roots import AlgebraicNumber
from .stability import Verdict, brute_force_at, check_at, witness_summary

DISPLAY_WIDTH = Fraction(1, 10**6)


# -- parsing ------------------------------------------------------------------


def parse_int_list(text: str, what: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip() != ""]
    except ValueError:
        raise ParseError(f"{what}: expected comma separated integers, got {text!r}") from None


def parse_nu(text: str) -> Fraction:
    try:
        nu = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"--nu: expected p/q, got {text!r}") from None
    if nu <= 0:
        raise ParseError(f"--nu must be positive, got {text}")
    return nu


def parse_delta(text: Optional[str]) -> list[str]:
    if not text:
        return []
    return [x.strip() for x in text.split(",") if x.strip()]


def variety_from_args(args) -> Variety:
    if args.rank1 is not None:
        if args.rank2 is not None:
            raise ParseError("give either --rank1 or --rank2, not both")
        return build_rank1(parse_int_list(args.rank1, "--rank1"))
    if args.rank2 is None:
        raise ParseError("one of --rank1 or --rank2 is required")
    rs = parse_int_list(args.rank2, "--rank2")
    if len(rs) != 2:
        raise ParseError(f"--rank2 expects r,s, got {args.rank2!r}")
    a = parse_int_list(args.a or "", "--a")
    return build_rank2(rs[0], rs[1], a)


def parse_surface(text: str) -> SurfaceKind:
    t = text.lower()
    if t == "p2":
        return P2
    for prefix in ("hirzebruch", "f"):
        if t.startswith(prefix):
            try:
                return hirzebruch(int(t[len(prefix):]))
            except ValueError:
                break
    raise ParseError(f"--surface: expected p2 or f<r>, got {text!r}")


# -- serialization ------------------------------------------------------------


def endpoint_json(e: Optional[Endpoint]) -> dict:
    if e is None:
        return {"kind": "infinity"}
    if isinstance(e, AlgebraicNumber) and e.rational is None:
        tight = e.refine(DISPLAY_WIDTH)
        return {
            "kind": "algebraic",
            "poly": list(e.coeffs),
            "interval": [str(tight.lo), str(tight.hi)],
            "display": [float(tight.lo), float(tight.hi)],
        }
    value = e.rational if isinstance(e, AlgebraicNumber) else Fraction(e)
    out = {"kind": "rational", "value": str(value)}
    if isinstance(e, AlgebraicNumber):
        out["poly"] = list(e.coeffs)
    return out


def interval_json(i: Interval) -> dict:
    return {
        "lo": endpoint_json(i.lo),
        "hi": endpoint_json(i.hi),
        "lo_closed": i.lo_closed,
        "hi_closed": i.hi_closed,
        "text": str(i),
    }


def region_json(region: StabilityRegion) -> dict:
    return {
        "stable": [interval_json(i) for i in region.stable],
        "semistable": [interval_json(i) for i in region.semistable],
        "reason": region.reason,
    }


def verdict_json(variety: Variety, v: Verdict) -> dict:
    def cand(c):
        return {"label": c.label, "slope": str(c.value), "subspace": witness_summary(variety, c)}

    return {
        "verdict": v.kind.value,
        "polystable": v.polystable.value,
        "mu": str(v.mu),
        "method": v.method,
        "witnesses": [cand(c) for c in v.witnesses],
        "candidates": [cand(c) for c in v.candidates],
    }


def variety_json(variety: Variety) -> dict:
    if isinstance(variety, Rank1Variety):
        return {"rank1": list(variety.q)}
    return {"rank2": [variety.r, variety.s], "a": list(variety.a)}


# -- commands -----------------------------------------------------------------


def cmd_check(args, oracle: bool = False):
    variety = variety_from_args(args)
    delta = parse_delta(args.delta)
    nu = parse_nu(args.nu)
    v = brute_force_at(variety, delta, nu) if oracle else check_at(variety, delta, nu)
    inp = {**variety_json(variety), "delta": sorted(delta, key=ray_sort_key), "nu": str(nu)}
    result = verdict_json(variety, v)
    rows = [[c["label"], c["slope"], c["subspace"]] for c in result["candidates"]]
    text = [f"verdict: {result['verdict']}  polystable: {result['polystable']}  mu: {result['mu']}"]
    text += format_table(["candidate", "slope", "subspace"], rows)
    return inp, result, text, 0


def cmd_region(args):
    variety = variety_from_args(args)
    delta = parse_delta(args.delta)
    region = stability_region(variety, delta)
    inp = {**variety_json(variety), "delta": sorted(delta, key=ray_sort_key)}
    result = region_json(region)
    text = [
        "stable:     " + (" u ".join(str(i) for i in region.stable) or "empty"),
        "semistable: " + (" u ".join(str(i) for i in region.semistable) or "empty"),
        "reason:     " + region.reason,
    ]
    return inp, result, text, 0


def table_of(variety, delta: frozenset[str]) -> int:
    """Which of the four published tables a (variety, divisor) row belongs to."""
    if variety.a[-1] == 0:
        return 1
    if len(delta) == 1:
        return 2
    return 4 if delta == {"v0", "v1"} else 3


def table_rows(which: Optional[int], max_rs: int, max_a: int) -> list[dict]:
    rows = []
    for r in range(1, max_rs):
        for s in range(1, max_rs - r + 1):
            for a in _sorted_tuples(r, max_a):
                variety = build_rank2(r, s, a)
                names = variety.ray_names
                for k in (1, 2):
                    for sub in combinations(names, k):
                        delta = frozenset(sub)
                        t = table_of(variety, delta)
                        if which is not None and t != which:
                            continue
                        region = stability_region(variety, delta)
                        rows.append(
                            {"table": t, "r": r, "s": s, "a": list(a),
                             "delta": sorted(delta, key=ray_sort_key), **region_json(region)}
                        )
    return rows


def _sorted_tuples(r: int, max_a: int):
    def rec(prefix, lo):
        if len(prefix) == r:
            yield tuple(prefix)
            return
        for x in range(lo, max_a + 1):
            yield from rec(prefix + [x], x)

    yield from rec([], 0)


def cmd_table(args):
    which = args.table
    if which is not None and which not in (1, 2, 3, 4):
        raise ParseError("--table must be 1, 2, 3 or 4")
    rows = table_rows(which, args.max_rs, args.max_a)
    inp = {"table": which, "max_rs": args.max_rs, "max_a": args.max_a}
    text = format_table(
        ["table", "r", "s", "a", "D", "stable", "semistable"],
        [
            [row["table"], row["r"], row["s"], ",".join(map(str, row["a"])), "+".join(row["delta"]),
             " u ".join(i["text"] for i in row["stable"]) or "empty",
             " u ".join(i["text"] for i in row["semistable"]) or "empty"]
            for row in rows
        ],
    )
    return inp, rows, text, 0


def cmd_delpezzo(args):
    kind = parse_surface(args.surface)
    out = []
    for rep in surface_reports(kind):
        entry = {
            "divisor": to_labels(kind, rep.divisor),
            "rays": sorted(rep.divisor, key=ray_sort_key),
            "ample": rep.ample,
        }
        if rep.ample:
            entry["nu"] = None if rep.nu is None else str(rep.nu)
            entry["verdict"] = rep.verdict.kind.value
            entry["polystable"] = rep.verdict.polystable.value
        out.append(entry)
    inp = {"surface": str(kind)}
    text = format_table(
        ["D", "ample", "nu", "verdict", "polystable"],
        [["+".join(e["divisor"]) or "0", e["ample"], e.get("nu") or "-", e.get("verdict", "-"),
          e.get("polystable", "-")] for e in out],
    )
    return inp, out, text, 0


def sweep_grid(max_rs: int, max_a: int, max_n: int, max_q: int):
    for r in range(1, max_rs):
        for s in range(1, max_rs - r + 1):
            for a in _sorted_tuples(r, max_a):
                yield build_rank2(r, s, a)
    for n in range(1, max_n + 1):
        for q in product(range(1, max_q + 1), repeat=n + 1):
            if gcd(*q) == 1:
                yield build_rank1(q)


SWEEP_NUS = tuple(Fraction(x) for x in ("1/3", "1/2", "1", "3/2", "2", "3"))


def run_sweep(max_rs: int = 4, max_a: int = 2, max_n: int = 3, max_q: int = 3) -> tuple[int, list[dict]]:
    """Compare :func:`check_at` against :func:`brute_force_at` on every cell of the grid."""
    cells, mismatches = 0, []
    for variety in sweep_grid(max_rs, max_a, max_n, max_q):
        names = variety.ray_names
        for k in range(len(names) + 1):
            for sub in combinations(names, k):
                for nu in SWEEP_NUS:
                    cells += 1
                    fast = check_at(variety, sub, nu).kind
                    slow = brute_force_at(variety, sub, nu).kind
                    if fast is not slow:
                        mismatches.append(
                            {**variety_json(variety), "delta": list(sub), "nu": str(nu),
                             "check": fast.value, "oracle": slow.value}
                        )
    return cells, mismatches


def cmd_sweep(args):
    cells, mismatches = run_sweep(args.max_rs, args.max_a, args.max_n, args.max_q)
    inp = {"max_rs": args.max_rs, "max_a": args.max_a, "max_n": args.max_n, "max_q": args.max_q,
           "nu": [str(x) for x in SWEEP_NUS]}
    result = {"cells": cells, "mismatches": mismatches}
    text = [f"cells: {cells}  mismatches: {len(mismatches)}"]
    text += format_table(["variety", "delta", "nu", "check", "oracle"],
                         [[json.dumps({k: m[k] for k in m if k in ("rank1", "rank2", "a")}),
                           ",".join(m["delta"]), m["nu"], m["check"], m["oracle"]] for m in mismatches])
    return inp, result, text, (1 if mismatches else 0)


# -- plumbing -----------------------------------------------------------------


def format_table(header: Sequence[str], rows: Sequence[Sequence]) -> list[str]:
    if not rows:
        return []
    cells = [[str(x) for x in header]] + [[str(x) for x in row] for row in rows]
    widths = [max(len(row[k]) for row in cells) for k in range(len(header))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return lines


def _add_variety(p: argparse.ArgumentParser, need_nu: bool) -> None:
    p.add_argument("--rank2", metavar="R,S", help="Picard rank two variety X(r, s, a)")
    p.add_argument("--a", metavar="A1,...,AR", help="non-decreasing twist vector")
    p.add_argument("--rank1", metavar="Q0,...,QN", help="Picard rank one variety with weights q")
    p.add_argument("--delta", default="", metavar="RAYS", help="comma list such as v0,w1 or u0")
    if need_nu:
        p.add_argument("--nu", required=True, metavar="P/Q", help="positive rational ratio mu/lambda")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="logstab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--format", choices=("json", "text"), default="json")
        return p

    _add_variety(command("check", "decide stability at one polarization"), True)
    _add_variety(command("oracle", "the same question by exhaustive search"), True)
    _add_variety(command("region", "exact stable and semistable sets in nu"), False)

    p = command("table", "regenerate the stability tables over a grid")
    p.add_argument("--table", type=int, default=None, help="1, 2, 3 or 4 (default all)")
    p.add_argument("--max-rs", type=int, default=4, help="bound on r + s")
    p.add_argument("--max-a", type=int, default=2, help="bound on each a_i")

    p = command("delpezzo", "log del Pezzo pairs on a surface")
    p.add_argument("--surface", required=True, help="p2 or f<r> (Hirzebruch)")

    p = command("sweep", "compare the criterion with the oracle on a grid")
    p.add_argument("--max-rs", type=int, default=4)
    p.add_argument("--max-a", type=int, default=2)
    p.add_argument("--max-n", type=int, default=3)
    p.add_argument("--max-q", type=int, default=3)
    return parser


COMMANDS = {
    "check": cmd_check,
    "oracle": lambda args: cmd_check(args, oracle=True),
    "region": cmd_region,
    "table": cmd_table,
    "delpezzo": cmd_delpezzo,
    "sweep": cmd_sweep,
}


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        inp, result, text, code = COMMANDS[args.command](args)
    except PreconditionError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=err)
        return 2
    if args.format == "text":
        print("\n".join(text), file=out)
    else:
        report = {"command": args.command, "input": inp, "result": result, "version": __version__}
        print(json.dumps(report, indent=2), file=out)
    if code == 1:
        print(f"error: {MismatchFound.__name__}: criterion and oracle disagree", file=err)
    return code


def main() -> None:
    sys.exit(run())
