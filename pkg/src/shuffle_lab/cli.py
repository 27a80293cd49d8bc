"""Command-line front end: sampling, distance tables, identity
verification, and cycle-structure reports.

Exit codes: 0 success, 1 verification failure, 2 usage error.
Table sweeps across m values run in a thread pool; SHUFFLE_LAB_THREADS
caps the pool size.  Output is deterministic for a fixed seed and config.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from . import analysis, models, orderpoly, posets, ppartitions
from .permutations import (
    all_permutations,
    cycle_type_partition,
    descents,
    fixed_points,
    format_permutation,
    left_peaks,
    peaks,
)

__all__ = ["main", "entry"]

TABLE_M_DEFAULT = "10,15,20,25,30,35,50,100,150,200,250,300"

_MODEL_LABEL = {
    "shelf-lazy": "Lazy",
    "shelf-standard": "Standard",
    "shelf-strict": "Strict",
    "riffle-updown": "Riffle-updown",
    "riffle-downup": "Riffle-downup",
    "riffle-classic": "Riffle-classic",
}

_DISTANCES = {
    "tv": analysis.tv_distance,
    "sep": analysis.sep_distance,
    "linf": analysis.linf_distance,
}


def format_fixed(value: Fraction, places: int = 4) -> str:
    """Exact decimal rendering, round half to even at the last place."""
    scaled = round(value * 10**places)  # Fraction.__round__ is half-even
    sign = "-" if scaled < 0 else ""
    scaled = abs(scaled)
    return f"{sign}{scaled // 10**places}.{scaled % 10**places:0{places}d}"


def _emit(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w") as handle:
            handle.write(text)


def _threads(jobs: int) -> int:
    env = os.environ.get("SHUFFLE_LAB_THREADS")
    limit = int(env) if env else (os.cpu_count() or 1)
    if limit < 1:
        raise ValueError("SHUFFLE_LAB_THREADS must be a positive integer")
    return max(1, min(limit, jobs))


# ---------------------------------------------------------------------------
# simulate


def cmd_simulate(args: argparse.Namespace) -> int:
    spec = models.ShuffleSpec(args.n, args.m, args.model)
    rng = random.Random(args.seed)
    sampler = (
        models.simulate_shelf if args.model in models.SHELF_MODELS else models.simulate_riffle
    )
    rows = []
    for index in range(args.count):
        _, perm = sampler(spec, rng)
        row = {"index": index, "permutation": format_permutation(perm)}
        if args.stats:
            row["des"] = descents(perm)[0]
            row["pk"] = peaks(perm)
            row["lpk"] = left_peaks(perm)
        rows.append(row)

    if args.format == "json":
        payload = {
            "model": spec.model,
            "n": spec.n,
            "m": spec.m,
            "seed": args.seed,
            "samples": rows,
        }
        text = json.dumps(payload, indent=2) + "\n"
    elif args.format == "csv":
        header = ["index", "permutation"] + (["des", "pk", "lpk"] if args.stats else [])
        lines = [",".join(header)]
        lines += [",".join(str(row[h]) for h in header) for row in rows]
        text = "\n".join(lines) + "\n"
    else:
        lines = []
        for row in rows:
            line = row["permutation"]
            if args.stats:
                line += f"  des={row['des']} pk={row['pk']} lpk={row['lpk']}"
            lines.append(line)
        text = "".join(line + "\n" for line in lines)
    _emit(text, args.output)
    return 0


# ---------------------------------------------------------------------------
# tv-table


def cmd_tv_table(args: argparse.Namespace) -> int:
    ms = [int(part) for part in args.m.split(",") if part.strip()]
    if not ms:
        raise ValueError("empty m list")
    model_list = [args.model] if args.model else list(models.SHELF_MODELS)
    distance = _DISTANCES[args.distance]
    jobs = [(model, m) for model in model_list for m in ms]
    with ThreadPoolExecutor(max_workers=_threads(len(jobs))) as pool:
        values = list(
            pool.map(lambda job: distance(models.ShuffleSpec(args.n, job[1], job[0])), jobs)
        )
    cells = {job: value for job, value in zip(jobs, values)}

    def render(value: Fraction) -> str:
        return str(value) if args.exact else format_fixed(value)

    if args.format == "json":
        payload = {
            "n": args.n,
            "distance": args.distance,
            "m": ms,
            "rows": {
                _MODEL_LABEL[model]: [render(cells[(model, m)]) for m in ms]
                for model in model_list
            },
        }
        text = json.dumps(payload, indent=2) + "\n"
    elif args.format == "csv":
        lines = ["model," + ",".join(str(m) for m in ms)]
        for model in model_list:
            lines.append(
                _MODEL_LABEL[model] + "," + ",".join(render(cells[(model, m)]) for m in ms)
            )
        text = "\n".join(lines) + "\n"
    else:
        label_w = max(len(_MODEL_LABEL[model]) for model in model_list)
        col_w = max(
            [len(str(m)) for m in ms]
            + [len(render(v)) for v in cells.values()]
        )
        lines = [
            " " * label_w + "  " + "  ".join(str(m).rjust(col_w) for m in ms)
        ]
        for model in model_list:
            lines.append(
                _MODEL_LABEL[model].ljust(label_w)
                + "  "
                + "  ".join(render(cells[(model, m)]).rjust(col_w) for m in ms)
            )
        text = "\n".join(lines) + "\n"
    _emit(text, args.output)
    return 0


# ---------------------------------------------------------------------------
# verify


def _verify_convention(n: int) -> tuple[bool, str]:
    orderpoly.composition_convention_check(range(3, min(n, 4) + 1))
    return True, "composition convention fixed by decomposition identities"


def _verify_decomposition(n: int, perturbation: int = 0) -> tuple[bool, str]:
    worst = None
    for size in range(1, n + 1):
        for mode in ppartitions.MODES:
            for k in range(3):
                for l in range(3):
                    report = orderpoly.verify_decomposition(
                        size, k, l, mode, perturbation=perturbation
                    )
                    if not report.ok:
                        worst = report
    if worst is not None:
        return False, f"mismatch: {worst.to_dict()}"
    return True, f"two-pass decomposition holds up to n={n}, k,l<=2, all modes"


def _verify_monotonicity(n: int) -> tuple[bool, str]:
    for size in range(1, n + 1):
        for mode in ppartitions.MODES:
            for m in range(6):
                report = orderpoly.check_monotonicity(size, m, mode)
                if not report.ok:
                    return False, f"violation: {report.to_dict()}"
    return True, f"chain counts weakly decrease in the statistic up to n={n}, m<=5"


def _verify_group_algebra(n: int) -> tuple[bool, str]:
    size = min(n, 4)
    for family in ("lazy", "standard", "strict"):
        for k, l in ((1, 1), (1, 2)):
            report = models.group_algebra_product_check(size, k, l, family)
            if not report.ok:
                return False, f"mismatch: {report.to_dict()}"
    return True, f"distribution convolution matches the single pass at n={size}"


def _verify_fundamental(n: int) -> tuple[bool, str]:
    size = min(n, 4)
    for poset in posets.all_posets(size):
        extensions = poset.linear_extensions()
        for mode in ppartitions.MODES:
            for m in range(3):
                whole = set(ppartitions.enumerate_bounded(poset, m, mode))
                pieces: list[set] = [
                    set(
                        ppartitions.enumerate_bounded(posets.Poset.chain(p), m, mode)
                    )
                    for p in extensions
                ]
                union: set = set()
                total = 0
                for piece in pieces:
                    union |= piece
                    total += len(piece)
                if union != whole or total != len(whole):
                    return False, f"partition failure: poset={poset}, mode={mode}, m={m}"
    return True, f"bounded partitions split by linear extension on all posets, n<={size}"


def _verify_oracle(n: int) -> tuple[bool, str]:
    size = min(n, 5)
    for nn in range(1, size + 1):
        for p in all_permutations(nn):
            chain = posets.Poset.chain(p)
            for mode in ppartitions.MODES:
                for m in range(3):
                    closed = orderpoly.op_of_perm(p, m, mode)
                    count = len(ppartitions.enumerate_bounded(chain, m, mode))
                    if closed != count:
                        return False, f"op mismatch at p={p}, mode={mode}, m={m}"
    return True, f"closed forms equal enumeration on every chain, n<={size}, m<=2"


def _verify_cycles(n: int) -> tuple[bool, str]:
    size = min(n, 5)
    for nn in range(1, size + 1):
        for m in range(1, 3):
            spec = models.ShuffleSpec(nn, m, "shelf-lazy")
            expected: dict[tuple[int, ...], Fraction] = {}
            for p in all_permutations(nn):
                part = cycle_type_partition(p)
                expected[part] = expected.get(part, Fraction(0)) + models.exact_prob(p, spec)
            table = analysis.cycle_distribution(spec)
            if {k: v for k, v in expected.items() if v} != table:
                return False, f"cycle table mismatch at n={nn}, m={m}"
    return True, f"cycle tables match exhaustive totals, n<={size}, m<=2"


def _verify_fixed_points(n: int) -> tuple[bool, str]:
    size = min(n, 5)
    for nn in range(1, size + 1):
        for m in range(1, 3):
            spec = models.ShuffleSpec(nn, m, "shelf-lazy")
            brute = sum(
                (models.exact_prob(p, spec) * fixed_points(p) for p in all_permutations(nn)),
                Fraction(0),
            )
            if brute != analysis.expected_fixed_points(nn, m):
                return False, f"fixed-point mismatch at n={nn}, m={m}"
    return True, f"fixed-point formula matches exhaustive means, n<={size}, m<=2"


def _verify_joint(n: int) -> tuple[bool, str]:
    report = analysis.verify_joint_lpk_cycle(min(n, 4), 2)
    if not report.ok:
        return False, f"mismatch: {report.to_dict()}"
    return True, f"joint statistic/cycle identity holds, n<={min(n, 4)}, m<=2"


_VERIFIERS = {
    "convention": (_verify_convention, 4),
    "decomposition": (_verify_decomposition, 4),
    "monotonicity": (_verify_monotonicity, 8),
    "group-algebra": (_verify_group_algebra, 4),
    "fundamental": (_verify_fundamental, 4),
    "oracle": (_verify_oracle, 4),
    "cycles": (_verify_cycles, 5),
    "fixed-points": (_verify_fixed_points, 5),
    "joint": (_verify_joint, 4),
}

_EXHAUSTIVE_LIMIT = 7  # S_n sweeps refuse anything larger


def cmd_verify(args: argparse.Namespace) -> int:
    names = [args.only] if args.only else list(_VERIFIERS)
    if args.n is not None and args.n > _EXHAUSTIVE_LIMIT and args.only != "monotonicity":
        raise ValueError(f"exhaustive verification refuses n > {_EXHAUSTIVE_LIMIT}")
    results = []
    ok_all = True
    if args.self_test_corrupt:
        ok, detail = _verify_decomposition(args.n or 3, perturbation=1)
        ok_all &= ok
        results.append(("decomposition[corrupted]", ok, detail))
    else:
        for name in names:
            func, default_n = _VERIFIERS[name]
            ok, detail = func(args.n if args.n is not None else default_n)
            ok_all &= ok
            results.append((name, ok, detail))
    if args.format == "json":
        payload = [
            {"check": name, "ok": ok, "detail": detail} for name, ok, detail in results
        ]
        text = json.dumps(payload, indent=2) + "\n"
    else:
        text = "".join(
            f"{'PASS' if ok else 'FAIL'} {name}: {detail}\n" for name, ok, detail in results
        )
    _emit(text, args.output)
    return 0 if ok_all else 1


# ---------------------------------------------------------------------------
# cycles / fixed-points


def cmd_cycles(args: argparse.Namespace) -> int:
    spec = models.ShuffleSpec(args.n, args.m, "shelf-lazy")
    table = analysis.cycle_distribution(spec)
    rows = [
        {"type": list(part), "prob_num": str(p.numerator), "prob_den": str(p.denominator)}
        for part, p in table.items()
    ]
    if args.format == "json":
        payload = {"model": spec.model, "n": spec.n, "m": spec.m, "types": rows}
        text = json.dumps(payload, indent=2) + "\n"
    elif args.format == "csv":
        lines = ["type,prob_num,prob_den,prob"]
        for part, p in table.items():
            lines.append(
                f"{'+'.join(map(str, part))},{p.numerator},{p.denominator},{format_fixed(p, 6)}"
            )
        text = "\n".join(lines) + "\n"
    else:
        width = max(len("+".join(map(str, part))) for part in table)
        lines = [
            f"{'+'.join(map(str, part)).ljust(width)}  {format_fixed(p, 6)}  ({p})"
            for part, p in table.items()
        ]
        text = "\n".join(lines) + "\n"
    _emit(text, args.output)
    return 0


def cmd_fixed_points(args: argparse.Namespace) -> int:
    value = analysis.expected_fixed_points(args.n, args.m)
    if args.format == "json":
        payload = {
            "n": args.n,
            "m": args.m,
            "expected_num": str(value.numerator),
            "expected_den": str(value.denominator),
            "expected": float(value),
        }
        text = json.dumps(payload, indent=2) + "\n"
    elif args.format == "csv":
        text = f"n,m,expected_num,expected_den,expected\n{args.n},{args.m},{value.numerator},{value.denominator},{format_fixed(value, 6)}\n"
    else:
        text = f"expected fixed points after one lazy pass (n={args.n}, m={args.m}): {value} = {format_fixed(value, 6)}\n"
    _emit(text, args.output)
    return 0


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="shuffle-lab",
        description="Exact and Monte Carlo analysis of shelf and riffle shuffles.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--format", choices=("text", "csv", "json"), default="text")
        p.add_argument("--output", default=None, help="write to a file instead of stdout")

    p = sub.add_parser("simulate", help="draw shuffled decks")
    p.add_argument("--model", choices=models.MODELS, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--stats", action="store_true", help="annotate des/pk/lpk")
    add_common(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("tv-table", help="distance-to-uniform table over m")
    p.add_argument("--n", type=int, default=52)
    p.add_argument("--m", default=TABLE_M_DEFAULT, help="comma-separated m values")
    p.add_argument("--model", choices=models.MODELS, default=None,
                   help="single model (default: the three shelf models)")
    p.add_argument("--distance", choices=tuple(_DISTANCES), default="tv")
    p.add_argument("--exact", action="store_true", help="print exact rationals")
    add_common(p)
    p.set_defaults(func=cmd_tv_table)

    p = sub.add_parser("verify", help="run the identity suite")
    p.add_argument("--only", choices=tuple(_VERIFIERS), default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--self-test-corrupt", action="store_true",
                   help="negative control: perturb a constant and expect failure")
    add_common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("cycles", help="cycle-type law of the lazy model")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    add_common(p)
    p.set_defaults(func=cmd_cycles)

    p = sub.add_parser("fixed-points", help="expected fixed points, lazy model")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    add_common(p)
    p.set_defaults(func=cmd_fixed_points)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
