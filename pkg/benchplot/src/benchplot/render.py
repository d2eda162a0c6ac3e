"""Timing-curve figures: mean seconds versus matrix order, one line per
engine, at a fixed column weight, on a logarithmic time axis."""

from __future__ import annotations

from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .records import BenchRecord, EmptySelectionError, aggregate, load_records


@dataclass(frozen=True)
class Series:
    """One engine's aggregated curve, ordered by increasing matrix order."""

    engine: str
    orders: tuple[int, ...]
    seconds: tuple[float, ...]


def build_series(records: list[BenchRecord], column_weight: int) -> list[Series]:
    """Per-engine mean curves at one column weight, engines sorted by name."""
    selected = [r for r in aggregate(records) if r.column_weight == column_weight]
    if not selected:
        raise EmptySelectionError(
            f"no rows with column weight {column_weight} in the input"
        )
    by_engine: dict[str, list[BenchRecord]] = {}
    for record in selected:
        by_engine.setdefault(record.engine, []).append(record)
    series = []
    for engine in sorted(by_engine):
        points = sorted(by_engine[engine], key=lambda r: r.order)
        series.append(
            Series(
                engine=engine,
                orders=tuple(p.order for p in points),
                seconds=tuple(p.seconds for p in points),
            )
        )
    return series


def figure_from_series(series: list[Series], column_weight: int):
    """A matplotlib figure with one labeled line per series and a log time axis."""
    fig, ax = plt.subplots(figsize=(6.4, 4.8))
    for s in series:
        ax.plot(s.orders, s.seconds, marker="o", label=s.engine)
    ax.set_yscale("log")
    ax.set_xlabel("matrix order")
    ax.set_ylabel("mean seconds per permanent")
    ax.set_title(f"column weight {column_weight}")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend()
    fig.tight_layout()
    return fig


def render(csv_path: str, column_weight: int, out_path: str) -> list[Series]:
    """Write the figure for one column weight; returns the plotted series."""
    series = build_series(load_records(csv_path), column_weight)
    fig = figure_from_series(series, column_weight)
    try:
        fig.savefig(out_path)
    finally:
        plt.close(fig)
    return series
