"""Timing harness for the permanent engines over random sparse matrices.

Each (engine, order, column_weight) point times the same trial matrices for
every engine and appends a mean row, so downstream plotting needs no joins.
"""

from __future__ import annotations

import csv
import sys
import time
from typing import Iterable, Sequence, TextIO

from .permanent import (
    BRUTE_MAX_ORDER,
    ENGINES,
    RYSER_MAX_ORDER,
    random_benchmark_matrix,
)

CSV_FIELDS = ("engine", "order", "column_weight", "seed", "seconds")

DEFAULT_TRIALS = 5


def _engine_handles(engine: str, order: int) -> bool:
    if engine == "brute":
        return order <= BRUTE_MAX_ORDER
    if engine in ("ryser", "ryser_nw"):
        return order <= RYSER_MAX_ORDER
    if engine == "kallman":
        return False
    return True


def point_seed(base_seed: int, order: int, column_weight: int, trial: int) -> int:
    return base_seed * 1_000_003 + order * 10_007 + column_weight * 101 + trial


def run_benchmark(
    engines: Sequence[str],
    orders: Sequence[int],
    column_weights: Sequence[int],
    trials: int = DEFAULT_TRIALS,
    base_seed: int = 0,
    notice: TextIO | None = None,
) -> list[dict]:
    """Rows of the benchmark CSV schema, trial rows first, then a mean row."""
    for engine in engines:
        if engine not in ENGINES:
            raise ValueError(f"unknown engine {engine!r}")
    if trials < 1:
        raise ValueError("trials must be at least 1")
    rows: list[dict] = []
    for weight in column_weights:
        for order in orders:
            if weight > order:
                continue
            matrices = [
                (
                    point_seed(base_seed, order, weight, t),
                    random_benchmark_matrix(order, weight, point_seed(base_seed, order, weight, t)),
                )
                for t in range(trials)
            ]
            for engine in engines:
                if not _engine_handles(engine, order):
                    if notice is not None:
                        print(
                            f"note: engine {engine} skipped at order {order}",
                            file=notice,
                        )
                    continue
                fn = ENGINES[engine]
                times = []
                for seed, matrix in matrices:
                    t0 = time.perf_counter()
                    fn(matrix)
                    elapsed = time.perf_counter() - t0
                    times.append(elapsed)
                    rows.append(
                        {
                            "engine": engine,
                            "order": order,
                            "column_weight": weight,
                            "seed": seed,
                            "seconds": f"{elapsed:.9f}",
                        }
                    )
                rows.append(
                    {
                        "engine": engine,
                        "order": order,
                        "column_weight": weight,
                        "seed": "mean",
                        "seconds": f"{sum(times) / len(times):.9f}",
                    }
                )
    return rows


def write_csv(rows: Iterable[dict], out: TextIO) -> None:
    writer = csv.DictWriter(out, fieldnames=CSV_FIELDS)
    writer.writeheader()
    for row in rows:
        writer.writerow(row)


def mean_seconds(rows: Iterable[dict], engine: str, order: int, column_weight: int) -> float:
    for row in rows:
        if (
            row["engine"] == engine
            and int(row["order"]) == order
            and int(row["column_weight"]) == column_weight
            and row["seed"] == "mean"
        ):
            return float(row["seconds"])
    raise KeyError(f"no mean row for ({engine}, {order}, {column_weight})")


def main_bench(argv=None) -> int:  # pragma: no cover - thin wrapper used by the CLI
    import argparse

    parser = argparse.ArgumentParser(prog="qcbound-bench")
    parser.add_argument("--engines", default="recursive,ryser_nw")
    parser.add_argument("--orders", default="8,10,12,14")
    parser.add_argument("--weights", default="3")
    parser.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--out", default="-")
    args = parser.parse_args(argv)
    rows = run_benchmark(
        [s.strip() for s in args.engines.split(",") if s.strip()],
        [int(s) for s in args.orders.split(",")],
        [int(s) for s in args.weights.split(",")],
        trials=args.trials,
        base_seed=args.seed,
        notice=sys.stderr,
    )
    if args.out == "-":
        write_csv(rows, sys.stdout)
    else:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            write_csv(rows, fh)
    return 0
