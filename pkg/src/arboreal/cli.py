"""Command line front end.

Exit codes: 0 for success (or a true answer), 1 for a false answer or a
failed reconstruction, 2 for bad input.
"""
from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor

from .encoding import CHAIN, LITERAL, induced_duets, induced_triplets
from .generate import GenConfig, GenerationError, random_network
from .io import ParseError, emit_dot, parse_constraints, parse_net, serialize_constraints, serialize_net
from .metric import duet_triplet_distance, is_isomorphic
from .network import NetworkError, is_arboreal, is_banyan, is_stack_free, validate_m_network
from .reconstruct import ara

OK, NO, BAD_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise InputError(f"{path}: {e.strerror}") from None


def _load_net(path: str):
    try:
        return parse_net(_read(path))
    except ParseError as e:
        raise InputError(f"{path}: {e}") from None


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def cmd_check(args, out) -> int:
    net = _load_net(args.net)
    report = validate_m_network(net)
    out.write(f"m-network: {_yes(report.ok)}\n")
    for v in report.violations:
        out.write(f"  {v}\n")
    arboreal = is_arboreal(net)
    out.write(f"arboreal: {_yes(arboreal)}\n")
    out.write(f"stack-free: {_yes(is_stack_free(net))}\n")
    out.write(f"banyan: {_yes(is_banyan(net))}\n")
    return OK if report.ok else NO


def cmd_extract(args, out) -> int:
    net = _load_net(args.net)
    mode = CHAIN if args.duet_mode == "chain" else LITERAL
    try:
        r = induced_triplets(net)
        d = induced_duets(net, mode)
    except NetworkError as e:
        raise InputError(str(e)) from None
    out.write(serialize_constraints(r, d))
    return OK


def cmd_reconstruct(args, out) -> int:
    try:
        r, d = parse_constraints(_read(args.constraints))
    except ParseError as e:
        raise InputError(f"{args.constraints}: {e}") from None
    try:
        net = ara(r, d)
    except ValueError as e:
        raise InputError(str(e)) from None
    if net is None:
        out.write("NONE\n")
        return NO
    out.write(serialize_net(net))
    return OK


def cmd_distance(args, out) -> int:
    a, b = _load_net(args.net1), _load_net(args.net2)
    try:
        out.write(f"{duet_triplet_distance(a, b)}\n")
    except ValueError as e:
        raise InputError(str(e)) from None
    return OK


def cmd_iso(args, out) -> int:
    same = is_isomorphic(_load_net(args.net1), _load_net(args.net2))
    out.write("true\n" if same else "false\n")
    return OK if same else NO


def cmd_gen(args, out) -> int:
    try:
        net = random_network(GenConfig(args.n, args.seed, args.roots))
    except (ValueError, GenerationError) as e:
        raise InputError(str(e)) from None
    out.write(serialize_net(net))
    return OK


def cmd_dot(args, out) -> int:
    out.write(emit_dot(_load_net(args.net)))
    return OK


def roundtrip_one(n: int, seed: int) -> bool:
    """Generate, extract, rebuild and compare one network."""
    net = random_network(GenConfig(n, seed))
    rebuilt = ara(induced_triplets(net), induced_duets(net))
    return rebuilt is not None and is_isomorphic(rebuilt, net)


def cmd_roundtrip(args, out) -> int:
    if args.n < 3 or args.seeds < 1:
        raise InputError("need --n >= 3 and --seeds >= 1")
    seeds = range(1, args.seeds + 1)
    if args.workers > 1:
        with ProcessPoolExecutor(args.workers) as pool:
            results = list(pool.map(roundtrip_one, [args.n] * len(seeds), seeds))
    else:
        results = [roundtrip_one(args.n, s) for s in seeds]
    failed = [s for s, ok in zip(seeds, results) if not ok]
    out.write(f"passed {len(results) - len(failed)} failed {len(failed)}\n")
    for s in failed:
        out.write(f"  seed {s}\n")
    return OK if not failed else NO


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="arboreal", description="Arboreal network toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", help="classify a network file")
    s.add_argument("net")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("extract", help="write the induced triplets and duets")
    s.add_argument("net")
    s.add_argument("--duet-mode", choices=["chain", "literal"], default="chain")
    s.set_defaults(func=cmd_extract)

    s = sub.add_parser("reconstruct", help="rebuild a network from a constraint file")
    s.add_argument("constraints")
    s.set_defaults(func=cmd_reconstruct)

    s = sub.add_parser("distance", help="duet-triplet distance between two networks")
    s.add_argument("net1")
    s.add_argument("net2")
    s.set_defaults(func=cmd_distance)

    s = sub.add_parser("iso", help="test two networks for isomorphism")
    s.add_argument("net1")
    s.add_argument("net2")
    s.set_defaults(func=cmd_iso)

    s = sub.add_parser("gen", help="generate a random stack-free arboreal network")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--roots", type=int, default=None)
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("dot", help="render a network as Graphviz DOT")
    s.add_argument("net")
    s.set_defaults(func=cmd_dot)

    s = sub.add_parser("roundtrip", help="generate/extract/rebuild over many seeds")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--seeds", type=int, required=True)
    s.add_argument("--workers", type=int, default=1)
    s.set_defaults(func=cmd_roundtrip)
    return p


def main(argv=None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return BAD_INPUT if e.code else OK
    try:
        return args.func(args, sys.stdout)
    except InputError as e:
        print(f"arboreal: {e}", file=sys.stderr)
        return BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
