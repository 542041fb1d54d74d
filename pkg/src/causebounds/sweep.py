"""Grid sweeps of the expected improvements over (P(y_x), P(y_x'))."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import Optional, TextIO

from .core import CausalBoundsError, ExperimentalDistribution
from .improvement import expected_lower_gain, expected_upper_drop

HEADER = ("p_y_x", "p_y_xp", "e_lower_gain", "e_upper_drop")


@dataclass(frozen=True)
class SweepRecord:
    p_y_x: float
    p_y_xp: float
    e_lower_gain: Optional[float]
    e_upper_drop: Optional[float]


@dataclass(frozen=True)
class SweepGrid:
    resolution: int
    closed: bool
    records: tuple[SweepRecord, ...]

    def row(self, i: int) -> tuple[SweepRecord, ...]:
        r = self.resolution
        return self.records[i * r:(i + 1) * r]


def grid_axis(resolution: int, closed: bool = False) -> list[float]:
    if resolution < 2:
        raise ValueError("resolution must be at least 2")
    if closed:
        return [i / (resolution - 1) for i in range(resolution)]
    return [i / (resolution + 1) for i in range(1, resolution + 1)]


def _safe(fn, e):
    try:
        return fn(e)
    except CausalBoundsError:
        return None


def sweep_grid(resolution: int, closed: bool = False, which: str = "both") -> SweepGrid:
    """Evaluate both expectations on a square grid, row-major in P(y_x).

    The open grid uses i/(R+1), i=1..R; ``closed`` uses i/(R-1), i=0..R-1 and
    leaves the expectation empty (None) on degenerate cells.
    """
    axis = grid_axis(resolution, closed)
    want_lower = which in ("lower", "both")
    want_upper = which in ("upper", "both")
    records = []
    for p in axis:
        for q in axis:
            e = ExperimentalDistribution(p, q)
            records.append(
                SweepRecord(
                    p,
                    q,
                    _safe(expected_lower_gain, e) if want_lower else None,
                    _safe(expected_upper_drop, e) if want_upper else None,
                )
            )
    return SweepGrid(resolution, closed, tuple(records))


def _fmt(v: Optional[float]) -> str:
    return "" if v is None else repr(v)


def write_csv(grid: SweepGrid, fh: TextIO) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(HEADER)
    for rec in grid.records:
        writer.writerow([repr(rec.p_y_x), repr(rec.p_y_xp), _fmt(rec.e_lower_gain), _fmt(rec.e_upper_drop)])
