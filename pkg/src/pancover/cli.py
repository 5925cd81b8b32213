"""Command-line front end: ``pancover gen|detect|solve|verify|oracle|bench``.

Exit codes: 0 success, 2 usage or input error, 3 verification failure,
4 budget exceeded.  Every run ends with one ``result ...`` line on stderr.
"""
from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path
from typing import Callable, Sequence

from .certificate import VerificationFailed, parse_certificate, verify_certificate
from .detect import (
    DIAMOND, PAN1, PAN2, BudgetExceeded, Pattern, detect_diamond, find_min_pan, find_model,
    load_pattern,
)
from .diamond import solve_diamond
from .forge import (
    ConstructionError, build_3far_ce, build_forest_ce, build_k2r_ce, build_longcycle_ce,
    build_semigrid, build_ub, garland, triangle_wall,
)
from .graph import Graph, GraphFormatError, parse_graph
from .oracle import is_star_forest, nu_exact, solve_star_forest, tau_exact
from .pans import PolicyTooWeak, solve_pan1, solve_pan2
from .policy import DEFAULT_POLICY, ThresholdPolicy

EXIT_OK, EXIT_USAGE, EXIT_VERIFY, EXIT_BUDGET = 0, 2, 3, 4


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _pattern(name: str | None, pattern_file: str | None) -> Pattern:
    if pattern_file:
        return load_pattern(_read(pattern_file))
    if name in (None, "custom"):
        raise UsageError("a custom pattern needs --pattern-file")
    return load_pattern(name)


def _policy(items: Sequence[str]) -> ThresholdPolicy:
    overrides = {}
    for item in items:
        key, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"policy override {item!r} must read KEY=VALUE")
        overrides[key] = value
    try:
        return DEFAULT_POLICY.with_overrides(overrides)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _result(**fields) -> None:
    print("result " + " ".join(f"{k}={v}" for k, v in fields.items()), file=sys.stderr)


# ---------------------------------------------------------------------------
# subcommands


def cmd_gen(args) -> int:
    family = args.family
    pattern = load_pattern(_read(args.pattern_file)) if args.pattern_file else None
    n = args.n
    if family == "triangle-wall":
        lg = triangle_wall(n)
    elif family == "garland":
        lg = garland(n)
    elif family == "k2r":
        lg = build_k2r_ce(args.r, n)
    elif family == "forest":
        if pattern is None:
            raise UsageError("family forest needs --pattern-file")
        lg = build_forest_ce(pattern, n)
    elif family == "hyper":
        lg = build_ub(n) if pattern is None else build_longcycle_ce(pattern, n)
    elif family == "semigrid":
        lg = build_semigrid(n) if pattern is None else build_3far_ce(pattern, n)
    else:
        raise UsageError(f"unknown family {family}")
    _write(args.output, lg.serialize())
    _result(command="gen", family=lg.family, vertices=lg.graph.n, edges=len(lg.graph.edges()))
    return EXIT_OK


def _detect(g: Graph, pattern: Pattern, budget: int):
    if pattern is PAN1 or pattern is PAN2:
        pan = find_min_pan(g, 1 if pattern is PAN1 else 2)
        return None if pan is None else pan.model()
    if pattern is DIAMOND:
        return detect_diamond(g)
    return find_model(g, pattern, budget=budget)


def cmd_detect(args) -> int:
    g = parse_graph(_read(args.input))
    pattern = _pattern(args.pattern, args.pattern_file)
    model = _detect(g, pattern, args.budget)
    if model is None:
        print("none")
    else:
        print("m " + " ".join(map(str, model.vertices())))
    _result(command="detect", pattern=pattern.name, found=int(model is not None),
            order=len(model.vertices()) if model else 0)
    return EXIT_OK


def cmd_solve(args) -> int:
    g = parse_graph(_read(args.input))
    pattern = _pattern(args.pattern, args.pattern_file)
    policy = _policy(args.policy)
    if args.k < 1:
        raise UsageError("k must be positive")
    if pattern is PAN1:
        cert = solve_pan1(g, args.k, policy)
    elif pattern is PAN2:
        cert = solve_pan2(g, args.k, policy)
    elif pattern is DIAMOND:
        cert = solve_diamond(g, args.k, policy)
    elif is_star_forest(pattern):
        cert = solve_star_forest(g, pattern, args.k, budget=args.budget)
    else:
        raise UsageError("solve supports pan1, pan2, diamond, and forests of paths and subdivided stars")
    check = verify_certificate(g, cert, pattern, budget=args.budget)
    if not check.ok:
        raise VerificationFailed(check.reason)
    _write(args.output, cert.format())
    size = cert.k if cert.is_packing else len(cert.cover)
    _result(command="solve", pattern=pattern.name, k=args.k, outcome=cert.kind, size=size)
    return EXIT_OK


def cmd_verify(args) -> int:
    g = parse_graph(_read(args.input))
    cert = parse_certificate(_read(args.cert))
    pattern = _pattern(args.pattern or cert.pattern, args.pattern_file)
    check = verify_certificate(g, cert, pattern, budget=args.budget)
    _result(command="verify", pattern=pattern.name, outcome=cert.kind, ok=int(check.ok),
            reason=(check.reason or "-").replace(" ", "_"))
    if not check.ok:
        print(f"rejected: {check.reason}")
        return EXIT_VERIFY
    print("accepted")
    return EXIT_OK


def cmd_oracle(args) -> int:
    g = parse_graph(_read(args.input))
    pattern = _pattern(args.pattern, args.pattern_file)
    if args.nu:
        res = nu_exact(g, pattern, budget=args.budget)
        print(f"nu {res.size}")
        for m in res.models:
            print("m " + " ".join(map(str, m.vertices())))
        _result(command="oracle", quantity="nu", value=res.size, expansions=res.expansions)
    else:
        res = tau_exact(g, pattern, budget=args.budget)
        print(f"tau {res.size}")
        print("x " + " ".join(map(str, res.cover)) if res.cover else "x")
        _result(command="oracle", quantity="tau", value=res.size, expansions=res.expansions)
    return EXIT_OK


# ---------------------------------------------------------------------------
# benchmarks


def random_graph(rng: random.Random, n: int, density: float) -> Graph:
    edges = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1) if rng.random() < density]
    return Graph.from_edges(n, edges)


def _solver_suite(solver: Callable, pattern: Pattern, rows: list[list[str]], rng: random.Random,
                  count: int, n_max: int, bound: Callable[[int], int]) -> None:
    for k in (1, 2, 3):
        packs = covers = worst = over = 0
        for _ in range(count):
            g = random_graph(rng, rng.randint(4, n_max), rng.uniform(0.05, 0.4))
            cert = solver(g, k)
            if cert.is_packing:
                packs += 1
            else:
                covers += 1
                worst = max(worst, len(cert.cover))
                over += len(cert.cover) > bound(k)
        rows.append([pattern.name, str(k), str(count), str(packs), str(covers), str(worst), str(bound(k)), str(over)])


SUITES = ("pan1", "pan2", "diamond", "oracle")


def cmd_bench(args) -> int:
    rng = random.Random(args.seed)
    policy = _policy(args.policy)
    if args.suite == "oracle":
        header = ["pattern", "instances", "nu_max", "tau_max", "tau_minus_nu_max"]
        rows = []
        for pattern in (PAN1, PAN2, DIAMOND):
            nus, gaps, taus = [], [], []
            for _ in range(args.count):
                g = random_graph(rng, rng.randint(4, min(args.n_max, 10)), rng.uniform(0.1, 0.5))
                nu = nu_exact(g, pattern, budget=args.budget).size
                tau = tau_exact(g, pattern, budget=args.budget).size
                nus.append(nu)
                taus.append(tau)
                gaps.append(tau - nu)
            rows.append([pattern.name, str(args.count), str(max(nus)), str(max(taus)), str(max(gaps))])
    elif args.suite in ("pan1", "pan2", "diamond"):
        header = ["pattern", "k", "instances", "packings", "covers", "max_cover", "bound", "over_bound"]
        rows = []
        if args.suite == "pan1":
            _solver_suite(lambda g, k: solve_pan1(g, k, policy), PAN1, rows, rng, args.count, args.n_max,
                          lambda k: k * policy.mu1(k))
        elif args.suite == "pan2":
            _solver_suite(lambda g, k: solve_pan2(g, k, policy), PAN2, rows, rng, args.count, args.n_max,
                          lambda k: k * policy.mu2(k))
        else:
            _solver_suite(lambda g, k: solve_diamond(g, k, policy), DIAMOND, rows, rng, args.count, args.n_max,
                          lambda k: k * policy.g1(k))
    else:
        raise UsageError(f"unknown suite {args.suite}; choose from {', '.join(SUITES)}")
    widths = [max(len(r[i]) for r in [header] + rows) for i in range(len(header))]
    lines = ["  ".join(c.rjust(w) for c, w in zip(row, widths)) for row in [header] + rows]
    _write(args.output, "\n".join(lines) + "\n")
    _result(command="bench", suite=args.suite, seed=args.seed, rows=len(rows))
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pancover", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    pattern_choices = ["pan1", "pan2", "diamond", "custom"]

    p = sub.add_parser("gen", help="generate a counterexample family member")
    p.add_argument("--family", required=True,
                   choices=["triangle-wall", "garland", "k2r", "forest", "hyper", "semigrid"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, default=3)
    p.add_argument("--pattern-file")
    p.add_argument("-o", "--output")
    p.set_defaults(run=cmd_gen)

    p = sub.add_parser("detect", help="find an induced subdivision")
    p.add_argument("--pattern", choices=pattern_choices, required=True)
    p.add_argument("--pattern-file")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--budget", type=int, default=10**7)
    p.set_defaults(run=cmd_detect)

    p = sub.add_parser("solve", help="packing or covering certificate")
    p.add_argument("--pattern", choices=pattern_choices, required=True)
    p.add_argument("--pattern-file")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-o", "--output")
    p.add_argument("--policy", nargs="*", default=[], metavar="KEY=VAL")
    p.add_argument("--budget", type=int, default=10**7)
    p.set_defaults(run=cmd_solve)

    p = sub.add_parser("verify", help="check a certificate")
    p.add_argument("--cert", required=True)
    p.add_argument("--pattern", choices=pattern_choices)
    p.add_argument("--pattern-file")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--budget", type=int, default=10**7)
    p.set_defaults(run=cmd_verify)

    p = sub.add_parser("oracle", help="exact packing or covering number")
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--nu", action="store_true")
    which.add_argument("--tau", action="store_true")
    p.add_argument("--pattern", choices=pattern_choices)
    p.add_argument("--pattern-file")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--budget", type=int, default=10**7)
    p.set_defaults(run=cmd_oracle)

    p = sub.add_parser("bench", help="seeded batch experiment, printed as a table")
    p.add_argument("--suite", required=True, choices=SUITES)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--count", type=int, default=50)
    p.add_argument("--n-max", type=int, default=20)
    p.add_argument("--policy", nargs="*", default=[], metavar="KEY=VAL")
    p.add_argument("--budget", type=int, default=10**7)
    p.add_argument("-o", "--output")
    p.set_defaults(run=cmd_bench)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.run(args)
    except (UsageError, GraphFormatError, ConstructionError, PolicyTooWeak) as exc:
        print(f"error: {exc}", file=sys.stderr)
        _result(command=args.command, status="usage")
        return EXIT_USAGE
    except VerificationFailed as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        _result(command=args.command, status="verification-failed")
        return EXIT_VERIFY
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        _result(command=args.command, status="budget-exceeded")
        return EXIT_BUDGET


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
