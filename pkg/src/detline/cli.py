"""Command line: detline verify | demo triple | translate."""

from __future__ import annotations

import argparse
import json
import sys

from .conventions import ConventionSystem, translate
from .exactq import rational_to_str
from .fredholm import generator
from .harness.gen import GenConfig
from .harness.suites import SUITES, run_suite
from .io import det_element_from_json, det_element_to_json, triple_from_json
from .multilinear import line_compare
from .triples import psi


def _load(path: str):
    with open(path) as fh:
        return json.load(fh)


def cmd_verify(args) -> int:
    cfg = GenConfig(seed=args.seed, max_dim=args.max_dim, entry_bound=args.entry_bound,
                    trials=args.trials)
    conv = ConventionSystem.from_json(_load(args.convention)) if args.convention else None
    names = list(SUITES) if args.suite == "all" else [args.suite]
    reports = [run_suite(n, cfg, conv, workers=args.workers) for n in names]
    if args.json:
        print(json.dumps([r.to_json() for r in reports], indent=2))
    else:
        for r in reports:
            status = "PASS" if r.ok else "FAIL"
            print(f"{status} {r.name:26s} trials={r.trials} failures={r.failures} "
                  f"time={r.wall_time:.2f}s convention={r.convention}")
            if not r.ok:
                print("  first counterexample:", json.dumps(r.counterexample))
    return 0 if all(r.ok for r in reports) else 1


def cmd_demo(args) -> int:
    t = triple_from_json(_load(args.input))
    data = _load(args.element)
    if isinstance(data, list):
        left, right = data
    else:
        left, right = data["left"], data["right"]
    s1 = det_element_from_json(left, t.Dp)
    s2 = det_element_from_json(right, t.Dpp)
    out = psi(t, s1, s2)
    res = det_element_to_json(out)
    res["coordinate"] = rational_to_str(line_compare(out, generator(t.D)))
    print(json.dumps(res, indent=2))
    return 0


def _params(text: str) -> dict:
    out = {}
    for part in filter(None, (text or "").split(",")):
        k, _, v = part.partition("=")
        out[k.strip()] = v.strip()
    return out


def cmd_translate(args) -> int:
    if args.source != "baseline":
        print("only --from baseline is supported", file=sys.stderr)
        return 2
    try:
        s = translate(args.target, _params(args.params))
    except KeyError as exc:
        print(f"missing parameter {exc}", file=sys.stderr)
        return 2
    print(json.dumps({"from": args.source, "to": args.target, "sign": s}))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="detline", description="Determinant line sign checks")
    sub = p.add_subparsers(dest="cmd", required=True)

    v = sub.add_parser("verify", help="run randomized diagram suites")
    v.add_argument("--suite", default="all", choices=["all", *SUITES])
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--trials", type=int, default=200)
    v.add_argument("--max-dim", type=int, default=5)
    v.add_argument("--entry-bound", type=int, default=3)
    v.add_argument("--convention", help="JSON file with an A(i, c) table")
    v.add_argument("--workers", type=int, default=1)
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_verify)

    d = sub.add_parser("demo", help="evaluate Ψ on a triple")
    dsub = d.add_subparsers(dest="what", required=True)
    dt = dsub.add_parser("triple")
    dt.add_argument("--in", dest="input", required=True, help="triple JSON")
    dt.add_argument("--element", required=True, help="JSON with 'left' and 'right' elements")
    dt.set_defaults(func=cmd_demo)

    t = sub.add_parser("translate", help="sign relating the baseline to another convention")
    t.add_argument("--from", dest="source", default="baseline")
    t.add_argument("--to", dest="target", required=True, choices=["km", "ms", "salamon-seidel"])
    t.add_argument("--params", default="",
                   help="km: rank=r; ms: N=..,Nprime=..,cdim=..; salamon-seidel: N=..,ind=..,cdim=..")
    t.set_defaults(func=cmd_translate)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
