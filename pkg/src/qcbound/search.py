"""Distance upper bound over all (J+1)-column subsets of a weight matrix,
in either the cofactor-sum form or the augmented-permanent form, with
rank-range chunking, multiprocess execution, and checkpoint/resume.

The subset space [0, C(L, J+1)) is split into disjoint rank ranges. Workers
return one (min, argmin-rank, count) triple per chunk; the reducer folds
chunks in rank order, so the result is independent of scheduling. Ties are
broken toward the lowest rank.
"""

from __future__ import annotations

import json
import os
import tempfile
from concurrent.futures import FIRST_COMPLETED, ProcessPoolExecutor, wait
from dataclasses import dataclass
from hashlib import sha256
from math import comb
from typing import Callable, Iterable, Sequence

from .permanent import IntMatrix, PermanentOverflowError, perm_dispatch
from .qcmat import WeightMatrix
from .subsets import SubsetCursor, unrank

FORMS = ("sum", "augmented")
CHECKPOINT_VERSION = 1


class CheckpointError(RuntimeError):
    """Checkpoint file missing, unreadable, or structurally invalid."""


class CheckpointMismatchError(CheckpointError):
    """Checkpoint describes a different matrix, form, or punctured set."""


class BoundOverflowError(PermanentOverflowError):
    """A subset term exceeded the value range; carries the subset rank."""

    def __init__(self, rank_: int, message: str):
        super().__init__(f"subset rank {rank_}: {message}")
        self.rank = rank_


@dataclass(frozen=True)
class BoundResult:
    bound: int | None
    argmin: tuple[int, ...] | None
    argmin_rank: int | None
    subsets_evaluated: int
    total_subsets: int
    status: str
    form: str

    @property
    def complete(self) -> bool:
        return self.status == "complete"

    def to_json(self) -> dict:
        return {
            "bound": self.bound,
            "argmin": list(self.argmin) if self.argmin is not None else None,
            "argmin_rank": self.argmin_rank,
            "subsets_evaluated": self.subsets_evaluated,
            "total_subsets": self.total_subsets,
            "status": self.status,
            "form": self.form,
        }


def subset_term(a: WeightMatrix, members: Sequence[int]) -> int:
    """Sum of the J permanents perm(A_{S minus i}) over i in S."""
    return _term_sum(a, tuple(members), frozenset())


def _term_sum(a: WeightMatrix, members: tuple[int, ...], punctured: frozenset[int]) -> int:
    if len(members) != a.rows + 1:
        raise ValueError("subset size must be J+1")
    base = IntMatrix(a.entries)
    view = base.view()
    total = 0
    for i in members:
        # a punctured position contributes a zero in the appended row of the
        # augmented form, which kills exactly this cofactor
        if i in punctured:
            continue
        view.set_cols([c for c in members if c != i])
        total += perm_dispatch(view)
    return total


def subset_term_augmented(
    a: WeightMatrix, members: Sequence[int], punctured: Iterable[int] = ()
) -> int:
    """Permanent of A_S with an appended all-ones row, zeroed at punctured columns."""
    members = tuple(members)
    if len(members) != a.rows + 1:
        raise ValueError("subset size must be J+1")
    punctured = frozenset(punctured)
    rows = [list(row) for row in a.entries]
    rows.append([0 if c in punctured else 1 for c in range(a.cols)])
    view = IntMatrix(rows).view()
    view.set_cols(members)
    return perm_dispatch(view)


class WeightBoundKernel:
    """Per-subset kernel for the weight-matrix bound; picklable for workers."""

    def __init__(self, a: WeightMatrix, punctured: Iterable[int] = (), form: str = "augmented"):
        if form not in FORMS:
            raise ValueError(f"form must be one of {FORMS}")
        if a.rows >= a.cols:
            raise ValueError("the bound requires J < L")
        self.entries = a.entries
        self.punctured = frozenset(punctured)
        bad = [i for i in self.punctured if not 0 <= i < a.cols]
        if bad:
            raise ValueError(f"punctured column {bad[0]} out of range")
        self.form = form
        self.universe = a.cols
        self.subset_size = a.rows + 1

    def digest(self) -> str:
        matrix_digest = WeightMatrix(self.entries).digest()
        canon = f"{matrix_digest}|{self.form}|{sorted(self.punctured)}"
        return sha256(canon.encode()).hexdigest()

    def evaluate_range(self, start: int, end: int) -> tuple[int | None, int | None, int]:
        a = WeightMatrix(self.entries)
        if self.form == "augmented":
            rows = [list(row) for row in a.entries]
            rows.append([0 if c in self.punctured else 1 for c in range(a.cols)])
            base = IntMatrix(rows)
            view = base.view()

            def term(members: tuple[int, ...]) -> int:
                view.set_cols(members)
                return perm_dispatch(view)

        else:
            base = IntMatrix(a.entries)
            view = base.view()

            def term(members: tuple[int, ...]) -> int:
                total = 0
                for i in members:
                    if i in self.punctured:
                        continue
                    view.set_cols([c for c in members if c != i])
                    total += perm_dispatch(view)
                return total

        cursor = SubsetCursor.at(start, self.universe, self.subset_size)
        best: int | None = None
        best_rank: int | None = None
        for r in range(start, end):
            try:
                value = term(cursor.members)
            except PermanentOverflowError as exc:
                raise BoundOverflowError(r, str(exc)) from exc
            # A zero term constructs no codeword, so it is skipped, not minimized.
            if value > 0 and (best is None or value < best):
                best, best_rank = value, r
            if r + 1 < end:
                cursor.advance()
        return best, best_rank, end - start


_WORKER_KERNEL = None


def _init_worker(kernel) -> None:
    global _WORKER_KERNEL
    _WORKER_KERNEL = kernel


def _eval_chunk(bounds: tuple[int, int]):
    start, end = bounds
    return _WORKER_KERNEL.evaluate_range(start, end)


def _atomic_write_json(path: str, payload: dict) -> None:
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".ckpt-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            json.dump(payload, fh)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _load_checkpoint(path: str, kernel_digest: str, total: int) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except FileNotFoundError:
        raise CheckpointError(f"checkpoint {path} does not exist") from None
    except (OSError, json.JSONDecodeError) as exc:
        raise CheckpointError(f"checkpoint {path} is unreadable: {exc}") from None
    required = {"version", "digest", "frontier", "best", "best_rank", "total"}
    if not isinstance(data, dict) or not required.issubset(data):
        raise CheckpointError(f"checkpoint {path} is missing required fields")
    if data["version"] != CHECKPOINT_VERSION:
        raise CheckpointError(f"checkpoint version {data['version']} is unsupported")
    if data["digest"] != kernel_digest:
        raise CheckpointMismatchError(
            "checkpoint was written for a different matrix, form, or punctured set"
        )
    if data["total"] != total or not 0 <= data["frontier"] <= total:
        raise CheckpointError("checkpoint progress fields are inconsistent")
    return data


def run_chunked(
    kernel,
    *,
    chunk_size: int = 4096,
    workers: int = 1,
    checkpoint_path: str | None = None,
    resume: bool = False,
    max_chunks: int | None = None,
    limit: int | None = None,
    stop_below: int | None = None,
    progress: Callable[[int, int, int | None], None] | None = None,
) -> BoundResult:
    """Fold kernel.evaluate_range over the whole subset space.

    The returned result is identical for any chunk_size, worker count, or
    interrupt/resume pattern. A checkpoint records the contiguous completed
    frontier only, so resumption never recounts or skips a subset.
    """
    if chunk_size < 1:
        raise ValueError("chunk_size must be at least 1")
    if workers < 1:
        raise ValueError("workers must be at least 1")
    total = comb(kernel.universe, kernel.subset_size)
    digest = kernel.digest()

    frontier = 0
    best: int | None = None
    best_rank: int | None = None
    if resume:
        if checkpoint_path is None:
            raise ValueError("resume requires a checkpoint path")
        data = _load_checkpoint(checkpoint_path, digest, total)
        frontier = data["frontier"]
        best = data["best"]
        best_rank = data["best_rank"]

    def fold(chunk_best: int | None, chunk_rank: int | None) -> None:
        nonlocal best, best_rank
        if chunk_best is not None and (
            best is None or chunk_best < best or (chunk_best == best and chunk_rank < best_rank)
        ):
            best, best_rank = chunk_best, chunk_rank

    def save(frontier_now: int) -> None:
        if checkpoint_path is not None:
            _atomic_write_json(
                checkpoint_path,
                {
                    "version": CHECKPOINT_VERSION,
                    "kind": kernel.__class__.__name__,
                    "digest": digest,
                    "frontier": frontier_now,
                    "best": best,
                    "best_rank": best_rank,
                    "total": total,
                },
            )

    span_end = total if limit is None else min(max(limit, 0), total)
    chunks = [
        (lo, min(lo + chunk_size, span_end)) for lo in range(frontier, span_end, chunk_size)
    ]
    if max_chunks is not None:
        chunks = chunks[:max_chunks]

    stopped_early = False
    if workers == 1 or len(chunks) <= 1:
        for lo, hi in chunks:
            chunk_best, chunk_rank, _count = kernel.evaluate_range(lo, hi)
            fold(chunk_best, chunk_rank)
            frontier = hi
            save(frontier)
            if progress is not None:
                progress(frontier, total, best)
            if stop_below is not None and best is not None and best <= stop_below:
                stopped_early = True
                break
    else:
        window = workers * 4
        with ProcessPoolExecutor(
            max_workers=workers, initializer=_init_worker, initargs=(kernel,)
        ) as pool:
            next_submit = 0
            next_fold = 0
            pending: dict[int, tuple[int | None, int | None]] = {}
            futures = {}
            while next_fold < len(chunks) and not stopped_early:
                while next_submit < len(chunks) and len(futures) < window:
                    fut = pool.submit(_eval_chunk, chunks[next_submit][:2])
                    futures[fut] = next_submit
                    next_submit += 1
                done, _ = wait(futures, return_when=FIRST_COMPLETED)
                for fut in done:
                    idx = futures.pop(fut)
                    chunk_best, chunk_rank, _count = fut.result()
                    pending[idx] = (chunk_best, chunk_rank)
                # fold strictly in rank order so ties and checkpoints are deterministic
                while next_fold in pending:
                    chunk_best, chunk_rank = pending.pop(next_fold)
                    fold(chunk_best, chunk_rank)
                    frontier = chunks[next_fold][1]
                    next_fold += 1
                    save(frontier)
                    if progress is not None:
                        progress(frontier, total, best)
                    if stop_below is not None and best is not None and best <= stop_below:
                        stopped_early = True
                        break

    status = "complete" if frontier == total and not stopped_early else "partial"
    argmin = (
        unrank(best_rank, kernel.universe, kernel.subset_size) if best_rank is not None else None
    )
    return BoundResult(
        bound=best,
        argmin=argmin,
        argmin_rank=best_rank,
        subsets_evaluated=frontier,
        total_subsets=total,
        status=status,
        form=getattr(kernel, "form", "sum"),
    )


def weight_bound(
    a: WeightMatrix,
    punctured: Iterable[int] = (),
    form: str = "augmented",
    **run_kwargs,
) -> BoundResult:
    """Minimum positive subset term over every (J+1)-column subset."""
    kernel = WeightBoundKernel(a, punctured=punctured, form=form)
    return run_chunked(kernel, **run_kwargs)
