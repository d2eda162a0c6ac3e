"""Command-line front end: bound/refine/check/expand/bench/rank/unrank.

Exit codes: 0 success, 1 failed check, 2 usage, 3 parse error, 4 value
overflow, 5 checkpoint problem. Progress goes to stderr; machine-readable
output goes to stdout.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from math import comb

from . import __version__
from .bench import DEFAULT_TRIALS, run_benchmark, write_csv
from .codewords import (
    CramerBoundKernel,
    cramer_codeword,
    load_witness,
    refined_bound,
    verify_witness,
    witness_to_json,
)
from .permanent import PermanentOverflowError
from .qcmat import CodeInfo, PolyMatrix, QcmatParseError, load_qcmat
from .search import (
    CheckpointError,
    WeightBoundKernel,
    run_chunked,
)
from .subsets import rank as rank_of
from .subsets import unrank as unrank_to

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_OVERFLOW = 4
EXIT_CHECKPOINT = 5


def _add_matrix_options(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("matrix", help="qcmat file")
    sub.add_argument("--punctured", help="comma-separated column indices, overrides metadata")
    sub.add_argument("--scale-to", type=int, metavar="N", help="rescale shift exponents to ring size N")
    sub.add_argument(
        "--scale-mode",
        choices=("proportional", "modulo"),
        default="modulo",
        help="exponent scaling rule used with --scale-to",
    )


def _add_run_options(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--chunk-size", type=int, default=4096)
    sub.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    sub.add_argument("--checkpoint", help="checkpoint file updated after every chunk")
    sub.add_argument("--resume", action="store_true", help="continue from --checkpoint")
    sub.add_argument("--max-chunks", type=int, help="stop after this many chunks (partial run)")
    sub.add_argument("--format", choices=("table", "json"), default="table")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qcbound",
        description="Distance bounds for quasi-cyclic LDPC codes via exact permanents",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)

    p_bound = subs.add_parser("bound", help="weight-matrix distance bound over all subsets")
    _add_matrix_options(p_bound)
    _add_run_options(p_bound)
    p_bound.add_argument("--form", choices=("sum", "augmented"), default="augmented")
    p_bound.add_argument(
        "--calibrate",
        action="store_true",
        help="time one chunk, suggest a chunk size for --target-minutes, and exit",
    )
    p_bound.add_argument("--target-minutes", type=float, default=30.0)

    p_refine = subs.add_parser("refine", help="constructed-codeword bound (ring permanents)")
    _add_matrix_options(p_refine)
    _add_run_options(p_refine)
    p_refine.add_argument("--budget", type=int, help="evaluate only the first R subset ranks")
    p_refine.add_argument("--witness", help="write the arg-min codeword record to this file")

    p_check = subs.add_parser("check", help="verify a codeword witness against a matrix")
    p_check.add_argument("matrix")
    p_check.add_argument("witness")

    p_expand = subs.add_parser("expand", help="emit the full binary matrix in alist format")
    _add_matrix_options(p_expand)

    p_bench = subs.add_parser("bench", help="time permanent engines on random matrices")
    p_bench.add_argument("--engines", default="recursive,ryser,ryser_nw")
    p_bench.add_argument("--orders", default="6,8,10,12")
    p_bench.add_argument("--weights", default="3")
    p_bench.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    p_bench.add_argument("--seed", type=int, default=0)
    p_bench.add_argument("--out", default="-", help="CSV path, - for stdout")

    p_rank = subs.add_parser("rank", help="lexicographic rank of a subset")
    p_rank.add_argument("universe", type=int)
    p_rank.add_argument("members", help="comma-separated ascending indices")

    p_unrank = subs.add_parser("unrank", help="subset at a lexicographic rank")
    p_unrank.add_argument("rank", type=int)
    p_unrank.add_argument("universe", type=int)
    p_unrank.add_argument("k", type=int)

    return parser


def _load_matrix(args) -> tuple[PolyMatrix, CodeInfo]:
    matrix, info = load_qcmat(args.matrix)
    if args.scale_to is not None:
        table = matrix.to_exponent_table().scale(args.scale_to, args.scale_mode)
        matrix = table.to_matrix()
    if args.punctured is not None:
        cols = frozenset(int(t) for t in args.punctured.split(",") if t.strip() != "")
        info = CodeInfo(info.standard, info.rate, info.k, cols, info.extra)
    return matrix, info


class _Progress:
    """Chunk-granularity progress lines on stderr, throttled to ~1/s."""

    def __init__(self, label: str):
        self.label = label
        self.last = 0.0

    def __call__(self, done: int, total: int, best) -> None:
        now = time.monotonic()
        if now - self.last < 1.0 and done != total:
            return
        self.last = now
        pct = 100.0 * done / total if total else 100.0
        print(
            f"{self.label}: {done}/{total} subsets ({pct:.1f}%) best={best}",
            file=sys.stderr,
        )


def _print_result(result, wall: float, fmt: str) -> None:
    if fmt == "json":
        payload = result.to_json()
        payload["wall_seconds"] = round(wall, 3)
        print(json.dumps(payload, indent=2))
    else:
        bound = result.bound if result.bound is not None else "none"
        argmin = ",".join(map(str, result.argmin)) if result.argmin else "none"
        print(f"bound: {bound}")
        print(f"argmin: {argmin}")
        print(f"subsets: {result.subsets_evaluated}/{result.total_subsets}")
        print(f"status: {result.status}")
        print(f"form: {result.form}")
        print(f"wall: {wall:.3f}s")


def _cmd_bound(args) -> int:
    matrix, info = _load_matrix(args)
    weights = matrix.weight_matrix()
    kernel = WeightBoundKernel(weights, punctured=info.punctured, form=args.form)
    total = comb(kernel.universe, kernel.subset_size)
    if args.calibrate:
        sample = min(args.chunk_size, total)
        t0 = time.perf_counter()
        kernel.evaluate_range(0, sample)
        per_subset = (time.perf_counter() - t0) / sample
        suggested = max(1, int(args.target_minutes * 60.0 / per_subset))
        print(f"subsets: {total}")
        print(f"seconds_per_subset: {per_subset:.6g}")
        print(f"suggested_chunk_size: {suggested}")
        return EXIT_OK
    t0 = time.perf_counter()
    result = run_chunked(
        kernel,
        chunk_size=args.chunk_size,
        workers=args.workers,
        checkpoint_path=args.checkpoint,
        resume=args.resume,
        max_chunks=args.max_chunks,
        progress=_Progress("bound"),
    )
    _print_result(result, time.perf_counter() - t0, args.format)
    return EXIT_OK


def _cmd_refine(args) -> int:
    matrix, _info = _load_matrix(args)
    t0 = time.perf_counter()
    result = refined_bound(
        matrix,
        subset_budget=args.budget,
        chunk_size=args.chunk_size,
        workers=args.workers,
        checkpoint_path=args.checkpoint,
        resume=args.resume,
        max_chunks=args.max_chunks,
        progress=_Progress("refine"),
    )
    _print_result(result, time.perf_counter() - t0, args.format)
    if args.witness:
        if result.argmin is None:
            print("no codeword found; witness not written", file=sys.stderr)
        else:
            codeword = cramer_codeword(matrix, result.argmin)
            with open(args.witness, "w", encoding="utf-8") as fh:
                fh.write(witness_to_json(codeword, matrix))
    return EXIT_OK


def _cmd_check(args) -> int:
    matrix, _info = load_qcmat(args.matrix)
    with open(args.witness, "r", encoding="utf-8") as fh:
        record = load_witness(fh.read())
    ok = verify_witness(matrix, record)
    if ok and matrix.block_cols <= 20000:
        from .codewords import witness_vector

        ok = matrix.expand().is_codeword(witness_vector(record).to_bits())
    print("pass" if ok else "fail")
    return EXIT_OK if ok else EXIT_FAIL


def _cmd_expand(args) -> int:
    matrix, _info = _load_matrix(args)
    sys.stdout.write(matrix.expand().to_alist())
    return EXIT_OK


def _cmd_bench(args) -> int:
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
    return EXIT_OK


def _cmd_rank(args) -> int:
    members = [int(t) for t in args.members.split(",") if t.strip() != ""]
    print(rank_of(members, args.universe))
    return EXIT_OK


def _cmd_unrank(args) -> int:
    members = unrank_to(args.rank, args.universe, args.k)
    print(",".join(map(str, members)))
    return EXIT_OK


_HANDLERS = {
    "bound": _cmd_bound,
    "refine": _cmd_refine,
    "check": _cmd_check,
    "expand": _cmd_expand,
    "bench": _cmd_bench,
    "rank": _cmd_rank,
    "unrank": _cmd_unrank,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return _HANDLERS[args.command](args)
    except QcmatParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except PermanentOverflowError as exc:
        print(f"overflow: {exc}", file=sys.stderr)
        return EXIT_OVERFLOW
    except CheckpointError as exc:
        print(f"checkpoint error: {exc}", file=sys.stderr)
        return EXIT_CHECKPOINT
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
