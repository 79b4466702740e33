"""Command-line front end.

Subcommands::

    catassoc bounds --caterpillar '{"legs": [2, 0, 1, 1, 2]}'
    catassoc transform --in pair.json --out trace.json
    catassoc worst-case --weights '[1, 1, 1, 1]'
    catassoc oracle diameter --caterpillar '{"legs": [1, 1]}'
    catassoc experiment --family uniform --sizes 2 3 4 --out rows.csv

Exit status: 0 success, 1 internal invariant failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import oracle, stg, transform, wilber
from .caterpillar import Caterpillar, entropy
from .errors import BudgetExceeded, InputError

DEFAULT_SEED = 20240601
EXPERIMENT_BUDGET = 20_000
FAMILIES = ("path", "uniform", "heavy", "geometric", "random")
CSV_FIELDS = (
    "family", "caterpillar", "n", "m", "H", "H_prime", "reference",
    "wilber_lb", "trace_len", "upper_len", "oracle_diam", "ratio",
)


class UsageError(Exception):
    pass


class InvariantFailure(Exception):
    pass


def _load_json(text: str):
    if text is None:
        raise UsageError("missing JSON argument")
    stripped = text.strip()
    if not stripped.startswith(("{", "[")):
        path = Path(text)
        if not path.exists():
            raise UsageError(f"neither JSON nor an existing file: {text!r}")
        stripped = path.read_text()
    try:
        return json.loads(stripped)
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON: {exc}") from None


def _caterpillar(text: str) -> Caterpillar:
    try:
        return Caterpillar.from_json(_load_json(text))
    except InputError as exc:
        raise UsageError(str(exc)) from None


def _emit(payload, out: str | None) -> None:
    text = json.dumps(payload, indent=2)
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


def worst_case_pair(graph: Caterpillar):
    """(S, pi, sigma) of the worst-case construction for the leg counts of ``graph``."""
    s, sigma = wilber.worst_case_instance(graph.legs)
    return s, stg.pi_of_sigma(graph, sigma), sigma


def bounds_report(graph: Caterpillar) -> dict:
    h = entropy(graph)
    report = {
        "caterpillar": graph.to_json(),
        "n": graph.n,
        "m": graph.m,
        "H": h,
        "H_prime": h + 1,
        "reference": transform.reference_budget(graph),
        "envelope": dict(zip(("lower", "upper"), oracle.envelope(graph))),
        "upper_len": transform.certified_upper_bound(graph),
    }
    if graph.m:
        s, pi, sigma = worst_case_pair(graph)
        lp = wilber.lambda_prime_total(s, sigma)
        trace = transform.transform(stg.build_A(graph, s, pi), stg.build_B(graph, s))
        report.update(
            worst_case={"S": s.to_json(), "sigma": sigma, "LambdaPrime": lp},
            wilber_lb=math.ceil(lp / 2),
            trace_len=len(trace),
        )
    else:
        report.update(worst_case=None, wilber_lb=0, trace_len=0)
    return report


def cmd_bounds(args) -> int:
    _emit(bounds_report(_caterpillar(args.caterpillar)), args.out)
    return 0


def _read_pair(data) -> tuple[stg.Stg, stg.Stg]:
    if not isinstance(data, dict):
        raise UsageError('pair JSON must be an object with "source" and "target"')
    src = data.get("source", data.get("t1"))
    dst = data.get("target", data.get("t2"))
    if src is None or dst is None:
        raise UsageError('pair JSON must have "source" and "target" trees')
    try:
        return stg.Stg.from_json(src), stg.Stg.from_json(dst)
    except InputError as exc:
        raise UsageError(str(exc)) from None


def cmd_transform(args) -> int:
    t1, t2 = _read_pair(_load_json(args.input))
    if t1.graph != t2.graph:
        raise UsageError(f"caterpillars differ: {t1.graph!r} vs {t2.graph!r}")
    trace = transform.transform(t1, t2)
    if trace.replay(check=True) != t2:
        raise InvariantFailure("trace does not replay to the target tree")
    payload = trace.to_json()
    payload["verified"] = True
    _emit(payload, args.out)
    return 0


def cmd_worst_case(args) -> int:
    data = _load_json(args.weights)
    if isinstance(data, dict):
        data = data.get("weights")
    if not isinstance(data, list) or not data or not all(isinstance(x, int) and x >= 0 for x in data):
        raise UsageError("weights must be a nonempty list of nonnegative integers")
    if sum(data) == 0:
        raise UsageError("weights must have a positive total")
    s, sigma = wilber.worst_case_instance(data)
    lp = wilber.lambda_prime_total(s, sigma)
    hm = entropy(data) * sum(data)
    _emit(
        {
            "weights": data,
            "S": s.to_json(),
            "sigma": sigma,
            "LambdaPrime": lp,
            "H_times_m": hm,
            "ratio": lp / hm if hm else None,
        },
        args.out,
    )
    return 0


def cmd_oracle(args) -> int:
    if args.action == "diameter":
        graph = _caterpillar(args.caterpillar)
        start = time.perf_counter()
        diam, (a, b) = oracle.exact_diameter(graph, args.budget)
        rg = oracle.rotation_graph(graph, args.budget)
        payload = {
            "caterpillar": graph.to_json(),
            "diameter": diam,
            "pair": [a.to_json(), b.to_json()],
            "nodes": rg.nodes,
            "edges": rg.edges,
            "millis": round((time.perf_counter() - start) * 1000, 3),
        }
    else:
        t1, t2 = _read_pair(_load_json(args.input))
        if t1.graph != t2.graph:
            raise UsageError("caterpillars differ")
        payload = {"distance": oracle.exact_distance(t1, t2, args.budget)}
    _emit(payload, args.out)
    return 0


def family_legs(family: str, size: int, rng: random.Random) -> tuple[int, ...]:
    if family == "path":
        return (0,) * size
    if family == "uniform":
        return (1,) * size
    if family == "heavy":
        legs = [0] * size
        legs[(size - 1) // 2] = size
        return tuple(legs)
    if family == "geometric":
        return tuple(2 ** (size - i) for i in range(1, size + 1))
    if family == "random":
        return tuple(rng.randint(0, 2) for _ in range(size))
    raise UsageError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")


def experiment_row(family: str, size: int, seed: int, budget: int) -> tuple[dict, str | None]:
    rng = random.Random(f"{seed}:{family}:{size}")
    graph = Caterpillar(family_legs(family, size, rng))
    rep = bounds_report(graph)
    row = {
        "family": family,
        "caterpillar": json.dumps(graph.to_json(), separators=(",", ":")),
        "n": graph.n,
        "m": graph.m,
        "H": f"{rep['H']:.6f}",
        "H_prime": f"{rep['H_prime']:.6f}",
        "reference": f"{rep['reference']:.6f}",
        "wilber_lb": rep["wilber_lb"],
        "trace_len": rep["trace_len"],
        "upper_len": rep["upper_len"],
        "oracle_diam": "",
        "ratio": f"{rep['upper_len'] / rep['reference']:.6f}",
    }
    warning = None
    try:
        diam, _ = oracle.exact_diameter(graph, budget)
    except BudgetExceeded as exc:
        warning = f"{graph!r}: oracle skipped ({exc})"
    else:
        row["oracle_diam"] = diam
        if not rep["wilber_lb"] <= diam <= rep["upper_len"]:
            raise InvariantFailure(f"{graph!r}: sandwich violated {rep['wilber_lb']} <= {diam} <= {rep['upper_len']}")
    return row, warning


def _row_job(job):
    return experiment_row(*job)


def run_experiment(families, sizes, seed=DEFAULT_SEED, budget=EXPERIMENT_BUDGET, jobs=1) -> tuple[list[dict], list[str]]:
    for fam in families:
        if fam not in FAMILIES:
            raise UsageError(f"unknown family {fam!r}; choose from {', '.join(FAMILIES)}")
    work = [(fam, size, seed, budget) for fam in families for size in sizes]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_row_job, work))
    else:
        results = [_row_job(job) for job in work]
    return [r for r, _ in results], [w for _, w in results if w]


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def cmd_experiment(args) -> int:
    if any(s < 1 for s in args.sizes):
        raise UsageError("sizes must be positive")
    rows, warnings = run_experiment(args.family, args.sizes, args.seed, args.budget, args.jobs)
    for w in warnings:
        print(f"warning: {w}", file=sys.stderr)
    text = rows_to_csv(rows)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="catassoc", description=__doc__.split("\n")[0])
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED)
    parser.add_argument("--jobs", type=int, default=1)
    parser.add_argument(
        "--budget", type=int, default=None,
        help=f"oracle node cap (default {oracle.DEFAULT_BUDGET}, {EXPERIMENT_BUDGET} for experiment)",
    )
    parser.add_argument("--out", help="write output here instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    # options are accepted both before and after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--jobs", type=int, default=argparse.SUPPRESS)
    common.add_argument("--budget", type=int, default=argparse.SUPPRESS)
    common.add_argument("--out", default=argparse.SUPPRESS)

    p = sub.add_parser("bounds", parents=[common], help="entropy, lower and upper bounds")
    p.add_argument("--caterpillar", "-c", required=True)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("transform", parents=[common], help="rotation sequence between two trees")
    p.add_argument("--in", dest="input", required=True)
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("worst-case", parents=[common], help="Wilber worst-case instance")
    p.add_argument("--weights", "-w", required=True)
    p.set_defaults(func=cmd_worst_case)

    p = sub.add_parser("oracle", parents=[common], help="exhaustive rotation-graph search")
    p.add_argument("action", choices=("diameter", "distance"))
    p.add_argument("--caterpillar", "-c")
    p.add_argument("--in", dest="input")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("experiment", parents=[common], help="CSV sweep over caterpillar families")
    p.add_argument("--family", "-f", nargs="+", default=["uniform"])
    p.add_argument("--sizes", "-n", type=int, nargs="+", default=[2, 3, 4])
    p.set_defaults(func=cmd_experiment)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.budget is None:
        # not via set_defaults: the option object is shared by all subparsers
        args.budget = EXPERIMENT_BUDGET if args.command == "experiment" else oracle.DEFAULT_BUDGET
    try:
        if args.command == "oracle":
            if args.action == "diameter" and not args.caterpillar:
                raise UsageError("oracle diameter needs --caterpillar")
            if args.action == "distance" and not args.input:
                raise UsageError("oracle distance needs --in")
        return args.func(args)
    except (UsageError, InputError, BudgetExceeded) as exc:
        print(f"catassoc: error: {exc}", file=sys.stderr)
        return 2
    except (InvariantFailure, AssertionError) as exc:
        print(f"catassoc: invariant failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
