"""Row- and column-similarity features over a cell grid.

Each feature scores a line (row or column) by summing the similarity of every
ordered cell pair in it, self-pairs included, and dividing by the squared line
length.  The first row (for the horizontal features) or first column (for the
vertical ones) is skipped as the presumed header.  The two averaged features
divide by the full row/column count even though they sum one fewer term.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence, Tuple

from .errors import TooFewColumns, TooFewRows
from .extraction import CellGrid
from .similarity import MetricConfig, similarity

FEATURE_NAMES = ("max_sim_hor", "max_sim_vert", "avg_sim_hor", "avg_sim_vert")


@dataclass(frozen=True)
class TableTrace:
    max_sim_hor: float
    max_sim_vert: float
    avg_sim_hor: float
    avg_sim_vert: float
    metric: MetricConfig
    source: Tuple[str, int] = ("", 0)

    def values(self) -> Tuple[float, float, float, float]:
        return (self.max_sim_hor, self.max_sim_vert, self.avg_sim_hor, self.avg_sim_vert)

    def to_record(self) -> dict:
        record = dict(zip(FEATURE_NAMES, self.values()))
        record["metric"] = self.metric.to_dict()
        record["document_uri"], record["table_index"] = self.source
        return record


class _PairCache:
    """Memoizes similarity for unordered pairs within one grid evaluation."""

    def __init__(self, cfg: MetricConfig):
        self.cfg = cfg
        self._memo = {}

    def __call__(self, a: str, b: str) -> float:
        key = (a, b) if a <= b else (b, a)
        try:
            return self._memo[key]
        except KeyError:
            value = self._memo[key] = similarity(key[0], key[1], self.cfg)
            return value


def line_score(cells: Sequence[str], sim: Callable[[str, str], float]) -> float:
    """Sum of sim over all ordered pairs of ``cells`` divided by len(cells)**2."""
    k = len(cells)
    total = 0.0
    for p in range(k):
        total += sim(cells[p], cells[p])
        for q in range(p + 1, k):
            total += 2.0 * sim(cells[p], cells[q])
    return total / (k * k)


def _row_scores(grid: CellGrid, sim) -> list:
    if grid.n < 2:
        raise TooFewRows(f"need at least 2 rows, got {grid.n}")
    return [line_score(grid.row(i), sim) for i in range(1, grid.n)]


def _column_scores(grid: CellGrid, sim) -> list:
    if grid.m < 2:
        raise TooFewColumns(f"need at least 2 columns, got {grid.m}")
    return [line_score(grid.column(j), sim) for j in range(1, grid.m)]


def max_sim_hor(grid: CellGrid, cfg: MetricConfig) -> float:
    return max(_row_scores(grid, _PairCache(cfg)))


def max_sim_vert(grid: CellGrid, cfg: MetricConfig) -> float:
    return max(_column_scores(grid, _PairCache(cfg)))


def avg_sim_hor(grid: CellGrid, cfg: MetricConfig) -> float:
    return sum(_row_scores(grid, _PairCache(cfg))) / grid.n


def avg_sim_vert(grid: CellGrid, cfg: MetricConfig) -> float:
    return sum(_column_scores(grid, _PairCache(cfg))) / grid.m


def compute_trace(grid: CellGrid, cfg: MetricConfig) -> TableTrace:
    sim = _PairCache(cfg)
    rows = _row_scores(grid, sim)
    cols = _column_scores(grid, sim)
    return TableTrace(
        max_sim_hor=max(rows),
        max_sim_vert=max(cols),
        avg_sim_hor=sum(rows) / grid.n,
        avg_sim_vert=sum(cols) / grid.m,
        metric=cfg,
        source=grid.source,
    )
