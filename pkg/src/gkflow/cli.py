"""``gkflow`` command line.

Exit codes: 0 ok, 2 parse/validation error, 3 oracle mismatch,
4 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path
from typing import Any

from .errors import GKError, InvariantViolation
from .generate import generate_instances, random_permutation, random_poset
from .instance_file import load_instance_data, parse_instance, parse_labeling, parse_poset
from .network import build_network, to_dot
from .solver import solve
from .verify import VerifyResult, verify_classical, verify_general, verify_localized

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_MISMATCH = 3
EXIT_INVARIANT = 4


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise GKError(f"cannot read {path}: {exc}") from exc


def _fmt(value: Any) -> str:
    if isinstance(value, (list, tuple)):
        return ",".join(_fmt(v) for v in value)
    return str(value)


def _emit(report: dict, as_json: bool, out) -> None:
    if as_json:
        json.dump(report, out, indent=2)
        out.write("\n")
        return
    for key, value in report.items():
        if key in ("trace", "results", "witnesses_A", "witnesses_D"):
            continue
        out.write(f"{key}={_fmt(value)}\n")
    for kind in ("witnesses_A", "witnesses_D"):
        for k, seqs in report.get(kind, {}).items():
            out.write(f"{kind}[{k}]=" + " ".join("(" + ",".join(s) + ")" for s in seqs) + "\n")
    for res in report.get("results", []):
        status = "pass" if res["ok"] else "fail"
        out.write(f"instance={res['label']} n={res['n']} lambda={_fmt(res['lambda'])} mu={_fmt(res['mu'])} status={status}\n")
        for c in res["comparisons"]:
            line = f"  check={c['name']} status={'pass' if c['ok'] else 'fail'}"
            if c["detail"]:
                line += f" detail={c['detail']}"
            out.write(line + "\n")
    for line in report.get("trace", []):
        out.write(line + "\n")


def cmd_solve(args, out) -> int:
    inst = parse_instance(_read(args.file))
    result, state = solve(inst, witnesses=args.witnesses)
    trace = state.trace
    report: dict[str, Any] = {
        "n": inst.n,
        "lambda": list(result.lambda_.parts),
        "mu": list(result.mu.parts),
        "a_table": result.a_table,
        "d_table": result.d_table,
        "augments": sum(ev.kind == "augment" for ev in trace),
        "relabels": sum(ev.kind == "relabel" for ev in trace),
        "final_p_abs": trace[-1].p_abs if trace else 0,
    }
    if args.witnesses:
        report["witnesses_A"] = {str(k): [list(s) for s in v] for k, v in result.witnesses_A.items()}
        report["witnesses_D"] = {str(k): [list(s) for s in v] for k, v in result.witnesses_D.items()}
    if args.trace:
        report["trace"] = [ev.format() for ev in trace]
    _emit(report, args.json, out)
    return EXIT_OK


def _parse_generate(tokens: list[str]) -> dict[str, int]:
    opts = {"n": 4, "seed": 0, "count": 10}
    for tok in tokens:
        key, sep, value = tok.partition("=")
        if not sep or key not in opts:
            raise GKError(f"bad --generate option {tok!r}; expected n=, seed=, count=")
        try:
            opts[key] = int(value)
        except ValueError:
            raise GKError(f"--generate {key} must be an integer") from None
    if opts["n"] < 0 or opts["count"] < 0:
        raise GKError("--generate n and count must be nonnegative")
    return opts


def _verify_results(args) -> list[VerifyResult]:
    mode = args.mode
    if args.perm is not None:
        if mode != "localized":
            raise GKError("--perm requires --mode localized")
        try:
            perm = [int(x) for x in args.perm.split(",") if x.strip()]
        except ValueError:
            raise GKError(f"bad permutation {args.perm!r}") from None
        if sorted(perm) != list(range(1, len(perm) + 1)):
            raise GKError(f"not a permutation: {args.perm}")
        return [verify_localized(perm)]

    if args.generate is not None:
        g = _parse_generate(args.generate)
        rng = random.Random(g["seed"])
        if mode == "localized":
            return [verify_localized(random_permutation(g["n"], rng)) for _ in range(g["count"])]
        if mode == "classical":
            return [
                verify_classical(random_poset(g["n"], rng), label=f"#{i}", seed=g["seed"] + i)
                for i in range(g["count"])
            ]
        return [
            verify_general(inst, label=f"#{i}:{family}")
            for i, (family, inst) in enumerate(generate_instances(g["n"], g["seed"], g["count"]))
        ]

    if args.file is None:
        raise GKError("verify needs an instance file, --generate, or --perm")
    text = _read(args.file)
    if mode == "classical":
        data = load_instance_data(text)
        poset = parse_poset(data)
        h = parse_labeling(data, poset)
        return [verify_classical(poset, h, label=args.file)]
    if mode == "localized":
        raise GKError("--mode localized takes --perm or --generate, not a file")
    return [verify_general(parse_instance(text), label=args.file)]


def cmd_verify(args, out) -> int:
    results = _verify_results(args)
    failed = [r for r in results if not r.ok]
    report = {
        "mode": args.mode,
        "instances": len(results),
        "failed": len(failed),
        "results": [
            {
                "label": r.label,
                "n": r.n,
                "lambda": r.lambda_,
                "mu": r.mu,
                "ok": r.ok,
                "comparisons": [vars(c) for c in r.comparisons],
            }
            for r in results
        ],
    }
    _emit(report, args.json, out)
    return EXIT_MISMATCH if failed else EXIT_OK


def cmd_dot(args, out) -> int:
    inst = parse_instance(_read(args.file))
    out.write(to_dot(build_network(inst)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gkflow", description="Generalized Greene-Kleitman partitions via min-cost flow.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="compute lambda and mu for an instance file")
    p.add_argument("file")
    p.add_argument("--witnesses", action="store_true", help="include witness sequences")
    p.add_argument("--trace", action="store_true", help="append the event trace")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="compare the solver with brute-force oracles")
    p.add_argument("file", nargs="?")
    p.add_argument("--generate", nargs="+", metavar="KEY=INT", help="n=<int> seed=<int> count=<int>")
    p.add_argument("--mode", choices=("general", "localized", "classical"), default="general")
    p.add_argument("--perm", help="comma-separated permutation (localized mode)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("dot", help="print the flow network in Graphviz DOT")
    p.add_argument("file")
    p.set_defaults(func=cmd_dot)
    return parser


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except InvariantViolation as exc:
        print(f"gkflow: invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except GKError as exc:
        print(f"gkflow: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
