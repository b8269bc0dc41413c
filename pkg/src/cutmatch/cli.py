"""Command-line interface.

Exit codes: 0 success, 1 input error, 2 inconclusive, 3 verification reject.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from fractions import Fraction

from cutmatch import bench as bench_mod
from cutmatch.certify import ORACLE_MAX_N, brute_force_sparsest_cut
from cutmatch.document import (
    DocumentError,
    approximation_document,
    dumps,
    game_document,
    loads,
    verify_document,
    zero_cut_document,
)
from cutmatch.game import (
    EXACT,
    INCONCLUSIVE,
    PROJECTED,
    GameConfig,
    OddVertexCountError,
    approximate_sparsest_cut,
    play_game,
)
from cutmatch.graph import GraphFormatError, find_zero_expansion_cut, read_graph
from cutmatch.maxflow import FlowNetwork, max_flow, min_cut

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_INCONCLUSIVE = 2
EXIT_REJECT = 3

log = logging.getLogger("cutmatch")


class InputError(Exception):
    pass


def parse_alpha(text: str) -> Fraction:
    """Exact rational from ``"num/den"`` or a finite decimal."""
    try:
        alpha = Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise InputError(f"cannot parse alpha {text!r}; use num/den or a decimal") from None
    if alpha <= 0:
        raise InputError("alpha must be positive")
    return alpha


def _load_graph(path):
    try:
        return read_graph(path)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    except GraphFormatError as exc:
        raise InputError(f"{path}: {exc}") from None


def solve_document(G, alpha, auto: bool, seed: int, mode: str, round_cap) -> dict:
    """Library path behind ``solve``; the CLI only adds I/O."""
    if G.n % 2:
        raise OddVertexCountError(G.n)
    if auto:
        approx = approximate_sparsest_cut(G, seed=seed, mode=mode, round_cap=round_cap)
        return approximation_document(G, approx, mode, seed, round_cap)
    zero = find_zero_expansion_cut(G)
    if zero is not None:
        return zero_cut_document(G, zero, alpha, mode, seed, round_cap)
    result = play_game(G, GameConfig(alpha, mode=mode, round_cap=round_cap, seed=seed))
    return game_document(G, result)


def _summary(doc: dict) -> str:
    branch = doc["branch"]
    parts = [f"branch={branch}", f"rounds={doc['rounds']}", f"maxflow_calls={doc['maxflow_calls']}"]
    if doc.get("cut"):
        parts.append(f"expansion={Fraction(doc['cut']['expansion'])}")
    if doc.get("expander"):
        exp = doc["expander"]
        parts.append(f"lower_bound={Fraction(exp['implied_lower_bound'])}")
        if exp["final_psi"] is not None:
            parts.append(f"psi={Fraction(exp['final_psi'])}")
        if exp["heuristic"]:
            parts.append("heuristic")
    if doc.get("ratio"):
        parts.append(f"ratio={float(Fraction(doc['ratio'])):.3f}")
    return " ".join(parts)


def cmd_solve(args) -> int:
    G = _load_graph(args.graph)
    alpha = None if args.auto else parse_alpha(args.alpha)
    try:
        doc = solve_document(G, alpha, args.auto, args.seed, args.mode, args.round_cap)
    except OddVertexCountError as exc:
        raise InputError(str(exc)) from None
    text = dumps(doc)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    print(_summary(doc))
    return EXIT_INCONCLUSIVE if doc["branch"] == INCONCLUSIVE else EXIT_OK


def cmd_oracle(args) -> int:
    G = _load_graph(args.graph)
    if G.n > ORACLE_MAX_N:
        raise InputError(f"oracle is limited to n <= {ORACLE_MAX_N} (got n={G.n})")
    res = brute_force_sparsest_cut(G)
    print(f"OPT = {res.expansion}")
    print(f"side = {list(res.cut.side)}")
    return EXIT_OK


def cmd_verify(args) -> int:
    G = _load_graph(args.graph)
    try:
        with open(args.certificate) as fh:
            doc = loads(fh.read())
        verdicts = verify_document(G, doc)
    except (OSError, json.JSONDecodeError, DocumentError, KeyError, TypeError) as exc:
        raise InputError(f"certificate: {exc}") from None
    if not verdicts:
        print("ACCEPT (inconclusive run: nothing certified)")
        return EXIT_OK
    status = EXIT_OK
    for label, v in verdicts:
        if v.ok:
            print(f"ACCEPT {label}: {v.message}")
        else:
            print(f"REJECT {label}: {v.code} {v.message}")
            status = EXIT_REJECT
    return status


def parse_flow_network(text: str) -> FlowNetwork:
    """Header ``n m s t`` then ``m`` lines ``tail head capacity``."""
    rows = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if line and not line.startswith("#"):
            rows.append((lineno, line.split()))
    if not rows or len(rows[0][1]) != 4:
        raise GraphFormatError("header must be 'n m s t'", rows[0][0] if rows else None)
    try:
        n, m, s, t = (int(x) for x in rows[0][1])
        arcs = []
        for lineno, toks in rows[1:]:
            if len(toks) != 3:
                raise GraphFormatError("arc line must be 'tail head capacity'", lineno)
            arcs.append(tuple(int(x) for x in toks))
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from None
    if len(arcs) != m:
        raise GraphFormatError(f"expected {m} arcs, found {len(arcs)}")
    try:
        return FlowNetwork(n, tuple(arcs), s, t)
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from None


def cmd_flow(args) -> int:
    try:
        with open(args.network) as fh:
            net = parse_flow_network(fh.read())
    except OSError as exc:
        raise InputError(str(exc)) from None
    except GraphFormatError as exc:
        raise InputError(f"{args.network}: {exc}") from None
    flow = max_flow(net)
    cut = min_cut(net, flow)
    print(f"value = {flow.value}")
    print(f"source_side = {sorted(cut.source_side)}")
    return EXIT_OK


def cmd_bench(args) -> int:
    sizes = [int(x) for x in args.sizes.split(",") if x]
    rows = bench_mod.run_bench(
        args.family,
        sizes,
        alpha=parse_alpha(args.alpha),
        seed=args.seed,
        density=args.density,
        mode=args.mode,
        round_cap=args.round_cap,
    )
    records = bench_mod.rows_as_dicts(rows)
    if args.format == "json":
        print(json.dumps(records, indent=2))
    else:
        writer = csv.DictWriter(sys.stdout, fieldnames=list(records[0]) if records else [])
        writer.writeheader()
        writer.writerows(records)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cutmatch", description="Directed sparsest cut via the cut-matching game.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="run the game at one alpha, or search over alpha")
    p.add_argument("graph")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--alpha", help="num/den or decimal")
    group.add_argument("--auto", action="store_true", help="binary search over alpha")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mode", choices=[EXACT, PROJECTED], default=EXACT)
    p.add_argument("--round-cap", type=int, default=None)
    p.add_argument("--out", help="write the certificate JSON here")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("oracle", help="exhaustive sparsest cut (n <= 20)")
    p.add_argument("graph")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("verify", help="re-check a certificate against a graph")
    p.add_argument("graph")
    p.add_argument("certificate")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("flow", help="max-flow / min-cut on a capacitated network")
    p.add_argument("network")
    p.set_defaults(func=cmd_flow)

    p = sub.add_parser("bench", help="rounds, max-flow calls and ratios on generated instances")
    p.add_argument("--family", action="append", choices=sorted(bench_mod.FAMILIES))
    p.add_argument("--sizes", default="8,16,32,64")
    p.add_argument("--alpha", default="1")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--density", type=float, default=3.0, help="arcs per vertex for 'random'")
    p.add_argument("--mode", choices=[EXACT, PROJECTED], default=EXACT)
    p.add_argument("--round-cap", type=int, default=None)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; 2 means "inconclusive" here
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    if args.command == "bench" and not args.family:
        args.family = ["complete", "cycle", "random"]
    if getattr(args, "round_cap", None) is not None and args.round_cap < 1:
        print("error: --round-cap must be at least 1", file=sys.stderr)
        return EXIT_INPUT
    if getattr(args, "seed", 0) < 0:
        print("error: --seed must be nonnegative", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
