"""Benchmark CSV ingestion and aggregation.

The input schema is ``engine,order,column_weight,seed,seconds``. Trial rows
carry an integer seed; rows whose seed is the literal ``mean`` are derived
summaries written by the producer and are skipped here, because every mean
is recomputed from exactly the trial rows present in the file.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import Iterable, TextIO

REQUIRED_COLUMNS = ("engine", "order", "column_weight", "seed", "seconds")

DERIVED_SEED = "mean"


class SchemaError(ValueError):
    """The CSV is missing required columns or holds unusable values."""


class EmptySelectionError(ValueError):
    """No trial rows survive the requested column-weight filter."""


@dataclass(frozen=True)
class BenchRecord:
    """One timing sample (or an aggregate of samples) for an engine."""

    engine: str
    order: int
    column_weight: int
    seconds: float

    def __post_init__(self) -> None:
        if not self.engine:
            raise SchemaError("engine name must be nonempty")
        if self.order < 1:
            raise SchemaError(f"order must be positive, got {self.order}")
        if self.column_weight < 0:
            raise SchemaError(f"column weight must be nonnegative, got {self.column_weight}")
        if self.seconds < 0.0:
            raise SchemaError(f"seconds must be nonnegative, got {self.seconds}")

    @property
    def key(self) -> tuple[str, int, int]:
        return (self.engine, self.order, self.column_weight)


def read_records(source: TextIO) -> list[BenchRecord]:
    """Trial rows of an open CSV stream, with derived mean rows dropped."""
    reader = csv.DictReader(source)
    header = reader.fieldnames or []
    missing = [c for c in REQUIRED_COLUMNS if c not in header]
    if missing:
        raise SchemaError(f"CSV is missing required columns: {', '.join(missing)}")
    records = []
    for line_no, row in enumerate(reader, start=2):
        if row["seed"] == DERIVED_SEED:
            continue
        try:
            records.append(
                BenchRecord(
                    engine=row["engine"],
                    order=int(row["order"]),
                    column_weight=int(row["column_weight"]),
                    seconds=float(row["seconds"]),
                )
            )
        except (TypeError, ValueError) as exc:
            raise SchemaError(f"line {line_no}: {exc}") from None
    return records


def load_records(path: str) -> list[BenchRecord]:
    with open(path, "r", encoding="utf-8", newline="") as fh:
        return read_records(fh)


def aggregate(records: Iterable[BenchRecord]) -> list[BenchRecord]:
    """One record per (engine, order, column_weight): the mean of its rows.

    The mean is taken over exactly the rows present for the key, however
    many trials the producer ran. Output order is deterministic: engine
    name, then order, then column weight.
    """
    groups: dict[tuple[str, int, int], list[float]] = {}
    for record in records:
        groups.setdefault(record.key, []).append(record.seconds)
    return [
        BenchRecord(engine, order, weight, sum(samples) / len(samples))
        for (engine, order, weight), samples in sorted(groups.items())
    ]
