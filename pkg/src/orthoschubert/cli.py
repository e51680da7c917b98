"""Command-line front end.

    orthoschubert mult    -d 7 -v 1,2,3,4,7,9,10 -w 4,6,7,10,12,13,14 [--check]
    orthoschubert hilbert -d 4 -v 1,2,5,6 -w 3,4,7,8 --max-degree 6 [--sm]
    orthoschubert paths   -d 7 -v ... -w ... [--count-only] [--tuple FILE]
    orthoschubert verify  [--seed 0] [--samples 200] [--d-max 5]

Exit codes: 0 success, 2 parse/validation error, 3 guardrail, 4 property
failure, 5 disagreement between methods.  Counts are printed as decimal strings.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path
from typing import Sequence

from .counting import (
    DEFAULT_NODE_BUDGET,
    METHODS,
    GuardrailError,
    hilbert_series_prefix,
    iter_path_tuples,
    multiplicity,
    path_endpoints,
    tuple_violations,
)
from .index_sets import IdElement, IndexSetError, leq, parse_entries, parse_instance, validate
from .root_lattice import Root

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_GUARDRAIL = 3
EXIT_PROPERTY = 4
EXIT_DISAGREE = 5


class UsageError(ValueError):
    pass


# instance handling ---------------------------------------------------------------

def _load_instance(text: str) -> dict:
    """A JSON file {"d":..,"v":[..],"w":[..]} or the inline form "d=7;v=..;w=..". """
    path = Path(text)
    if path.suffix == ".json" or path.is_file():
        try:
            data = json.loads(path.read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read instance file {text}: {exc}") from exc
        if not isinstance(data, dict) or "d" not in data:
            raise UsageError("instance file must be an object with a 'd' field")
        d = int(data["d"])
        out: dict = {"d": d}
        for key in ("v", "w"):
            if key in data:
                out[key] = validate(d, [int(x) for x in data[key]], require_Id=True)
        for key in ("method", "max_degree", "seed", "samples", "node_budget"):
            if key in data:
                out[key] = data[key]
        return out
    return parse_instance(text)


def resolve_instance(args: argparse.Namespace, need_w: bool = True) -> tuple[IdElement, IdElement]:
    inst = _load_instance(args.instance) if args.instance else {}
    d = args.d if args.d is not None else inst.get("d")
    if d is None:
        raise UsageError("d is required (-d or --instance)")
    v = validate(d, parse_entries(args.v), require_Id=True) if args.v else inst.get("v")
    w = validate(d, parse_entries(args.w), require_Id=True) if args.w else inst.get("w")
    if v is None:
        raise UsageError("v is required (-v or --instance)")
    if w is None:
        if need_w:
            raise UsageError("w is required (-w or --instance)")
        w = v
    if v.d != d or w.d != d:
        raise UsageError("v and w must have d entries")
    if not leq(v, w):
        raise UsageError(f"v = {v} is not <= w = {w}")
    for key in ("method", "max_degree", "node_budget"):
        if key in inst and getattr(args, key, None) is None:
            setattr(args, key, inst[key])
    return v, w


# output ----------------------------------------------------------------------------

def _emit(args: argparse.Namespace, payload: dict, rows: list[list[str]], text: str) -> None:
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True))
    elif args.format == "csv":
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(rows)
        sys.stdout.write(buf.getvalue())
    else:
        print(text)


def _root_json(a: Root) -> dict:
    return {"r": a.r, "c": a.c}


# commands --------------------------------------------------------------------------

def cmd_mult(args: argparse.Namespace) -> int:
    v, w = resolve_instance(args)
    budget = args.node_budget or DEFAULT_NODE_BUDGET
    base = {"v": list(v.entries), "w": list(w.entries)}
    if args.check:
        values = {m: multiplicity(v, w, m, force=args.force, node_budget=budget) for m in METHODS}
        agree = len(set(values.values())) == 1
        payload = {**base, "methods": {m: str(x) for m, x in values.items()}, "agree": agree}
        if agree:
            payload["multiplicity"] = str(values["paths"])
        rows = [["method", "multiplicity"]] + [[m, str(x)] for m, x in values.items()]
        text = "\n".join(f"{m}: {x}" for m, x in values.items())
        text += "\nall methods agree" if agree else "\nMETHODS DISAGREE"
        _emit(args, payload, rows, text)
        return EXIT_OK if agree else EXIT_DISAGREE
    method = args.method or "paths"
    value = multiplicity(v, w, method, force=args.force, node_budget=budget)
    payload = {**base, "method": method, "multiplicity": str(value)}
    _emit(args, payload, [["method", "multiplicity"], [method, str(value)]], f"{value} ({method})")
    return EXIT_OK


def cmd_hilbert(args: argparse.Namespace) -> int:
    v, w = resolve_instance(args)
    M = 4 if args.max_degree is None else int(args.max_degree)
    if M < 0:
        raise UsageError("--max-degree must be non-negative")
    H = hilbert_series_prefix(v, w, M)
    payload: dict = {"v": list(v.entries), "w": list(w.entries), "max_degree": M,
                     "hilbert": [str(x) for x in H]}
    header = ["m", "hilbert"]
    sm = None
    if args.sm:
        from .standard_monomials import count_sm

        sm = [count_sm(v, w, m) for m in range(M + 1)]
        payload["sm"] = [str(x) for x in sm]
        payload["agree"] = sm == H
        header.append("sm")
    rows = [header] + [
        [str(m), str(H[m])] + ([str(sm[m])] if sm is not None else []) for m in range(M + 1)
    ]
    text = " ".join(str(x) for x in H)
    if sm is not None:
        text += "\nstandard monomials: " + " ".join(str(x) for x in sm)
        text += "\nagree" if sm == H else "\nDISAGREE"
    _emit(args, payload, rows, text)
    return EXIT_DISAGREE if sm is not None and sm != H else EXIT_OK


def _read_tuple(path: str) -> list[list[Root]]:
    try:
        data = json.loads(Path(path).read_text())
        return [[Root(int(p["r"]), int(p["c"])) for p in path_] for path_ in data]
    except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"cannot read path tuple {path}: {exc}") from exc


def cmd_paths(args: argparse.Namespace) -> int:
    v, w = resolve_instance(args)
    ends = path_endpoints(v, w)
    betas = [_root_json(e.beta) for e in ends]
    if args.tuple:
        msgs = tuple_violations(v, w, _read_tuple(args.tuple))
        payload = {"betas": betas, "admissible": not msgs, "violations": msgs}
        rows = [["violation"]] + [[m] for m in msgs]
        _emit(args, payload, rows, "\n".join(msgs) if msgs else "admissible")
        return EXIT_PROPERTY if msgs else EXIT_OK
    budget = args.node_budget or DEFAULT_NODE_BUDGET
    count = 0
    tuples = []
    for t in iter_path_tuples(v, w, budget):
        count += 1
        if not args.count_only:
            tuples.append([[_root_json(a) for a in p] for p in t])
    payload = {"v": list(v.entries), "w": list(w.entries), "betas": betas, "count": str(count)}
    if not args.count_only:
        payload["tuples"] = tuples
    if args.format == "csv":
        rows = [["tuple", "beta_r", "beta_c", "step", "r", "c"]]
        for i, t in enumerate(tuples):
            for b, p in zip(betas, t):
                rows += [[str(i), str(b["r"]), str(b["c"]), str(k), str(a["r"]), str(a["c"])]
                         for k, a in enumerate(p)]
        rows.append(["count", str(count)])
    else:
        rows = []
    lines = [
        " | ".join(" ".join(f"({a['r']},{a['c']})" for a in p) or "-" for p in t) for t in tuples
    ]
    lines.append(f"count {count}")
    _emit(args, payload, rows, "\n".join(lines))
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    from .verify import run_all

    results = run_all(seed=args.seed, samples=args.samples, d_max=args.d_max)
    ok = all(r.ok for r in results)
    payload = {
        "seed": args.seed,
        "samples": args.samples,
        "d_max": args.d_max,
        "ok": ok,
        "suites": [
            {"name": r.name, "checked": r.checked, "failures": len(r.failures),
             "counterexample": r.failures[0] if r.failures else None}
            for r in results
        ],
    }
    rows = [["suite", "checked", "failures"]] + [
        [r.name, str(r.checked), str(len(r.failures))] for r in results
    ]
    lines = [r.line() for r in results]
    for r in results:
        if r.failures:
            lines.append(f"counterexample for {r.name}: {json.dumps(r.failures[0], sort_keys=True)}")
    _emit(args, payload, rows, "\n".join(lines))
    return EXIT_OK if ok else EXIT_PROPERTY


# parser ------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="orthoschubert", description=__doc__.split("\n\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("-d", type=int, help="rank d (entries live in 1..2d)")
        sp.add_argument("-v", help="comma separated entries of v")
        sp.add_argument("-w", help="comma separated entries of w")
        sp.add_argument("--instance", help="JSON instance file or inline 'd=..;v=..;w=..'")
        sp.add_argument("--format", choices=("json", "csv", "text"), default="text")
        sp.add_argument("--force", action="store_true", help="lift enumeration size guardrails")
        sp.add_argument("--node-budget", type=int, default=None, help="search node budget")

    m = sub.add_parser("mult", help="multiplicity of X(w) at e_v")
    common(m)
    m.add_argument("--method", choices=METHODS, default=None)
    m.add_argument("--check", action="store_true", help="run all methods and compare")
    m.set_defaults(func=cmd_mult)

    h = sub.add_parser("hilbert", help="Hilbert function values H(0..M)")
    common(h)
    h.add_argument("--max-degree", type=int, default=None)
    h.add_argument("--sm", action="store_true", help="cross-count standard monomials")
    h.set_defaults(func=cmd_hilbert)

    t = sub.add_parser("paths", help="enumerate non-intersecting path tuples")
    common(t)
    t.add_argument("--count-only", action="store_true")
    t.add_argument("--tuple", help="JSON path tuple to check instead of enumerating")
    t.set_defaults(func=cmd_paths)

    vf = sub.add_parser("verify", help="run the property suites")
    vf.add_argument("--seed", type=int, default=0)
    vf.add_argument("--samples", type=int, default=200)
    vf.add_argument("--d-max", type=int, default=5)
    vf.add_argument("--format", choices=("json", "csv", "text"), default="text")
    vf.set_defaults(func=cmd_verify)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except GuardrailError as exc:
        print(f"guardrail: {exc}", file=sys.stderr)
        return EXIT_GUARDRAIL
    except (UsageError, IndexSetError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
