"""Command-line front end.

Subcommands build and serialize LG sets, verify their defining
properties, tabulate Dickman's rho, run residue-discrepancy checks and
the smooth-sum experiments, and emit CSV/JSON for offline analysis.

Randomness: all random test sets are drawn with ``random.Random(seed)``
(CPython's Mersenne Twister) via ``sample``, which is stable across
platforms and versions, so identical configs yield byte-identical
output.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import random
import sys

import numpy as np

from . import dickman, discrepancy, lgset as lg, smoothcount
from .powers import real_pow
from .primes import DEFAULT_TABLE_CEILING, ResourceLimitError, build_prime_table

SWEEP_CSV_HEADER = (
    "x,delta,c,theta,gamma,setsizeA,setsizeB,seed,smooth_count,"
    "sigma_sum1,rho_theta,deviation,hyp1,hyp2,conclusion"
)


def _table_ceiling() -> int:
    env = os.environ.get("LGSIEVE_TABLE_LIMIT")
    return int(env) if env else DEFAULT_TABLE_CEILING


def _positive_int(value):
    n = int(value)
    if n <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return n


def _unit_open(value):
    v = float(value)
    if not 0.0 < v < 1.0:
        raise argparse.ArgumentTypeError(f"expected a value in (0,1), got {value}")
    return v


def _unit_half_open(value):
    v = float(value)
    if not 0.0 < v <= 1.0:
        raise argparse.ArgumentTypeError(f"expected a value in (0,1], got {value}")
    return v


def _range_spec(value):
    """start:step:end sweep specification."""
    parts = value.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected start:step:end, got {value}")
    start, step, end = (float(p) for p in parts)
    if step <= 0 or end < start:
        raise argparse.ArgumentTypeError(f"bad sweep range {value}")
    out = []
    v = start
    while v <= end + 1e-9:
        out.append(round(v, 10))
        v += step
    return out


def _add_set_source(p, require_delta=True):
    p.add_argument("--set", dest="set_path", help="load an LG set from JSON")
    p.add_argument("--x", type=_positive_int, help="global bound x")
    p.add_argument("--delta", type=_unit_open, help="prime floor exponent")
    p.add_argument("--c", type=_unit_half_open, default=None, help="cutoff exponent")
    p.add_argument(
        "--epsilon",
        type=_unit_open,
        default=0.2,
        help="coverage target used to choose c when --c is absent",
    )


def parse_args(argv=None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(
        prog="lgsieve",
        description="LG-set construction, verification, and smooth-sum experiments",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="construct an LG set and write it as JSON")
    _add_set_source(p)
    p.add_argument("--out", required=True, help="output JSON path")

    p = sub.add_parser("verify", help="check the pairwise-lcm property")
    _add_set_source(p)

    p = sub.add_parser("coverage", help="exhaustive coverage scan")
    _add_set_source(p)
    p.add_argument("--cutoff", type=_unit_half_open, default=None)
    p.add_argument("--out", default=None, help="CSV path (default stdout)")

    p = sub.add_parser("dickman", help="tabulate Dickman's rho as CSV")
    p.add_argument("--max-u", type=float, default=4.0)
    p.add_argument("--step", type=float, default=dickman.DEFAULT_STEP)
    p.add_argument("--x", type=_positive_int, default=None, help="also emit Psi(x, x^(1/u))/x")
    p.add_argument("--emit-every", type=_positive_int, default=1, help="emit every k-th grid point")
    p.add_argument("--out", default=None)

    p = sub.add_parser("sieve-check", help="residue-variance bound on a random test set")
    _add_set_source(p)
    p.add_argument("--size", type=_positive_int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=_positive_int, default=1)
    p.add_argument("--out", default=None)

    p = sub.add_parser("theorem2", help="smooth-sieve implication report on one weight set")
    _add_set_source(p)
    p.add_argument("--theta", type=_unit_half_open, required=True)
    p.add_argument("--gamma", type=_unit_open, required=True)
    p.add_argument(
        "--weights",
        choices=["uniform", "random-dense", "random-sparse", "indicator"],
        default="uniform",
    )
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)

    p = sub.add_parser("sumset", help="smooth-sum experiment on random A, B")
    _add_set_source(p)
    p.add_argument("--theta", type=_unit_half_open, required=True)
    p.add_argument("--gamma", type=_unit_open, required=True)
    p.add_argument("--size-a", type=_positive_int, required=True)
    p.add_argument("--size-b", type=_positive_int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument(
        "--lg-at-2x",
        action="store_true",
        help="build the LG set at bound 2x and sample A, B from {1..x} "
        "instead of restricting A, B to {1..x/2}",
    )
    p.add_argument("--out", default=None)

    p = sub.add_parser("sweep", help="sumset experiment over a theta grid, CSV output")
    _add_set_source(p)
    p.add_argument("--theta", type=_range_spec, required=True, help="start:step:end")
    p.add_argument("--gamma", type=_unit_open, required=True)
    p.add_argument("--size-a", type=_positive_int, required=True)
    p.add_argument("--size-b", type=_positive_int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)

    args = parser.parse_args(argv)
    if args.command != "dickman" and not args.set_path:
        if args.x is None or args.delta is None:
            parser.error(f"{args.command}: need --set or both --x and --delta")
        if args.c is not None and args.c <= args.delta:
            parser.error(f"--c must exceed --delta, got c={args.c} delta={args.delta}")
    return args


def _load_or_build(args):
    if args.set_path:
        s = lg.load_json(args.set_path)
        if getattr(args, "c", None) is not None:
            s = lg.with_cutoff(s, args.c)
        table = build_prime_table(s.params.x, ceiling=_table_ceiling())
        return s, table
    x = args.x
    table = build_prime_table(x, ceiling=_table_ceiling())
    params = lg.LGParams(x=x, delta=args.delta, c=1.0, epsilon_target=args.epsilon)
    s = lg.construct(params, table)
    c = args.c if args.c is not None else lg.choose_cutoff(s, args.epsilon)
    return lg.with_cutoff(s, c), table


def _emit(lines, out_path) -> int:
    text = "\n".join(lines) + "\n"
    if out_path is None:
        sys.stdout.write(text)
        return 0
    try:
        with open(out_path, "w") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"lgsieve: cannot write {out_path}: {exc}", file=sys.stderr)
        return 3
    return 0


def _emit_json(doc, out_path) -> int:
    return _emit([json.dumps(doc, sort_keys=True, indent=2)], out_path)


def _cmd_build(args) -> int:
    s, _ = _load_or_build(args)
    try:
        lg.save_json(s, args.out)
    except OSError as exc:
        print(f"lgsieve: cannot write {args.out}: {exc}", file=sys.stderr)
        return 3
    print(f"wrote {args.out}: x={s.params.x} delta={s.params.delta} "
          f"c={s.params.c} members={len(s)}")
    return 0


def _cmd_verify(args) -> int:
    s, _ = _load_or_build(args)
    rep = lg.verify_pairwise_lcm(s)
    print(f"pairs examined: {rep.pair_count}; violations: {len(rep.violations)}")
    for a, b, l in rep.violations[:20]:
        print(f"  lcm({a},{b}) = {l} <= {s.params.x}")
    return 0 if rep.ok else 1


def _cmd_coverage(args) -> int:
    s, table = _load_or_build(args)
    cutoff = args.cutoff if args.cutoff is not None else s.params.c
    rep = lg.coverage(s, cutoff, table)
    return _emit([lg.COVERAGE_CSV_HEADER, rep.csv_row()], args.out)


def _cmd_dickman(args) -> int:
    if args.step <= 0 or args.step >= 1:
        print("lgsieve: --step must be in (0,1)", file=sys.stderr)
        return 2
    if args.max_u < 1:
        print("lgsieve: --max-u must be >= 1", file=sys.stderr)
        return 2
    table = dickman.build_dickman_table(step=args.step, max_u=args.max_u)
    sorted_lpf = None
    x = args.x
    if x is not None:
        pt = build_prime_table(x, ceiling=_table_ceiling())
        sorted_lpf = np.sort(pt.largest_factor_array()[1 : x + 1])
    lines = ["u,rho,empirical_rho,x"]
    n = len(table.values)
    for i in range(0, n, args.emit_every):
        u = i * args.step
        if u > args.max_u + 1e-12:
            break
        r = float(table.values[i])
        if sorted_lpf is not None and u >= 1.0:
            y = real_pow(x, 1.0 / u) if u > 0 else float(x)
            emp = int(np.searchsorted(sorted_lpf, y, side="right")) / x
            lines.append(f"{u!r},{r!r},{emp!r},{x}")
        else:
            lines.append(f"{u!r},{r!r},,{'' if x is None else x}")
    return _emit(lines, args.out)


def _cmd_sieve_check(args) -> int:
    s, table = _load_or_build(args)
    x = s.params.x
    cutoff = s.params.c
    cov = lg.coverage(s, cutoff, table)
    eps = cov.epsilon_prime / 2.0
    rng = random.Random(args.seed)
    ok = True
    if args.trials == 1:
        C = rng.sample(range(1, x + 1), min(args.size, x))
        rep = discrepancy.variance_report(
            C, s, cutoff, eps, table, eps_prime=cov.epsilon_prime
        )
        ok = rep.bound_holds and rep.exact_bound_holds and rep.pair_bound_holds
        status = _emit(rep.modulus_csv_lines(), args.out)
        if status:
            return status
    else:
        lines = ["trial,seed,lhs,rhs,rhs_exact,pair_sum,bound_holds,exact_bound_holds"]
        for t in range(args.trials):
            C = rng.sample(range(1, x + 1), min(args.size, x))
            rep = discrepancy.variance_report(
                C, s, cutoff, eps, table, eps_prime=cov.epsilon_prime
            )
            ok = ok and rep.bound_holds and rep.exact_bound_holds and rep.pair_bound_holds
            lines.append(
                f"{t},{args.seed},{rep.lhs!r},{rep.rhs!r},{rep.rhs_exact!r},"
                f"{rep.pair_sum},{rep.bound_holds},{rep.exact_bound_holds}"
            )
        status = _emit(lines, args.out)
        if status:
            return status
    return 0 if ok else 1


def _make_weights(kind, x, rng) -> smoothcount.WeightedSet:
    if kind == "uniform":
        arr = np.ones(x + 1)
        arr[0] = 0.0
        return smoothcount.WeightedSet(x, arr)
    if kind == "random-dense":
        arr = np.array([0.0] + [rng.random() for _ in range(x)])
        return smoothcount.WeightedSet(x, arr)
    if kind == "random-sparse":
        size = max(1, x // 5)
        support = rng.sample(range(1, x + 1), size)
        return smoothcount.WeightedSet(x, {n: 1.0 + rng.random() for n in support})
    # indicator of a random subset
    size = max(1, x // 3)
    support = rng.sample(range(1, x + 1), size)
    return smoothcount.WeightedSet(x, {n: 1.0 for n in support})


def _cmd_theorem2(args) -> int:
    s, table = _load_or_build(args)
    if args.theta <= s.params.delta:
        print("lgsieve: --theta must exceed delta", file=sys.stderr)
        return 2
    rng = random.Random(args.seed)
    ws = _make_weights(args.weights, s.params.x, rng)
    part = smoothcount.partition(s, args.theta, s.params.c, table)
    rep = smoothcount.sieve_report(ws, part, s, args.gamma, table)
    doc = {
        "params": {
            "x": s.params.x,
            "delta": s.params.delta,
            "c": s.params.c,
            "theta": args.theta,
            "gamma": args.gamma,
            "weights": args.weights,
            "seed": args.seed,
        },
        "report": {
            "sigma": rep.sigma,
            "sum1": rep.sum1,
            "sum2": rep.sum2,
            "lhs1": rep.lhs1,
            "lhs2": rep.lhs2,
            "hyp1_holds": rep.hyp1_holds,
            "hyp2_holds": rep.hyp2_holds,
            "smooth_total": rep.smooth_total,
            "center": rep.center,
            "bound": rep.bound,
            "lower_bound": rep.lower_bound,
            "tau": rep.tau,
            "conclusion_holds": rep.conclusion_holds,
            "lower_bound_holds": rep.lower_bound_holds,
        },
    }
    return _emit_json(doc, args.out)


def _sample_sets(args, x_domain):
    rng = random.Random(args.seed)
    A = rng.sample(range(1, x_domain + 1), min(args.size_a, x_domain))
    B = rng.sample(range(1, x_domain + 1), min(args.size_b, x_domain))
    return A, B


def _sumset_setup(args):
    if getattr(args, "lg_at_2x", False):
        if args.set_path:
            raise SystemExit("--lg-at-2x cannot be combined with --set")
        big = argparse.Namespace(**vars(args))
        big.x = 2 * args.x
        s, table = _load_or_build(big)
        A, B = _sample_sets(args, args.x)
    else:
        s, table = _load_or_build(args)
        A, B = _sample_sets(args, s.params.x // 2)
    return s, table, A, B


def _cmd_sumset(args) -> int:
    s, table, A, B = _sumset_setup(args)
    if args.theta <= s.params.delta:
        print("lgsieve: --theta must exceed delta", file=sys.stderr)
        return 2
    doc = smoothcount.theorem3_experiment(A, B, s, args.theta, args.gamma, table)
    doc["params"]["seed"] = args.seed
    return _emit_json(doc, args.out)


def _cmd_sweep(args) -> int:
    s, table, A, B = _sumset_setup(args)
    dt = dickman.build_dickman_table(max_u=max(10.0, 1.0 / min(args.theta) + 1))
    lines = [SWEEP_CSV_HEADER]
    for theta in args.theta:
        if not s.params.delta < theta <= 1:
            continue
        doc = smoothcount.theorem3_experiment(
            A, B, s, theta, args.gamma, table,
            dickman_table=dt, check_residue_identity=False,
        )
        p = doc["params"]
        d = doc["direct"]
        h = doc["hypotheses"]
        sigma_sum1 = doc["sums"]["sigma"] * doc["sums"]["sum1"]
        deviation = d["smooth_count"] - sigma_sum1
        lines.append(
            f"{p['x']},{p['delta']!r},{p['c']!r},{theta!r},{args.gamma!r},"
            f"{p['size_a']},{p['size_b']},{args.seed},{d['smooth_count']},"
            f"{sigma_sum1!r},{d['rho_theta']!r},{deviation!r},"
            f"{h['hyp1_holds']},{h['hyp2_holds']},"
            f"{doc['verdicts']['conclusion_holds']}"
        )
    return _emit(lines, args.out)


_DISPATCH = {
    "build": _cmd_build,
    "verify": _cmd_verify,
    "coverage": _cmd_coverage,
    "dickman": _cmd_dickman,
    "sieve-check": _cmd_sieve_check,
    "theorem2": _cmd_theorem2,
    "sumset": _cmd_sumset,
    "sweep": _cmd_sweep,
}


def run(args: argparse.Namespace) -> int:
    try:
        return _DISPATCH[args.command](args)
    except (ValueError, ResourceLimitError) as exc:
        print(f"lgsieve: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"lgsieve: {exc}", file=sys.stderr)
        return 3


def main(argv=None) -> int:
    return run(parse_args(argv))


if __name__ == "__main__":
    sys.exit(main())
