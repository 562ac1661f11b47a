"""Gridded data behind the standard plots of e_q, E_q, c(q), s_q and G_q."""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Dict, List, Sequence

import numpy as np

from .gaussq import GaussQ, c_q_series
from .qcore import DEFAULT_POLICY, TruncationPolicy
from .qexp import E_q, e_q

Q_RANGE = (0.0, 0.99)
MIN_RESOLUTION, MAX_RESOLUTION = 8, 2048

# x-ranges per figure; figure 1 stays inside |x| < 1, where e_q converges for every q
X_RANGES = {1: (-0.95, 0.95), 2: (-3.0, 3.0), 4: (-4.0, 4.0), 5: (-1.0, 1.0)}


@dataclass(frozen=True)
class GridSeries:
    """Values on a 1-D or 2-D rectangular grid, stored row-major."""

    axes: Dict[str, List[float]]
    values: List[float]

    def __post_init__(self):
        if not 1 <= len(self.axes) <= 2:
            raise ValueError("a grid has one or two axes")
        expected = math.prod(len(v) for v in self.axes.values())
        if len(self.values) != expected:
            raise ValueError(f"expected {expected} values, got {len(self.values)}")
        if not all(math.isfinite(v) for v in self.values):
            raise ValueError("grid values must be finite")

    def rows(self):
        names = list(self.axes)
        if len(names) == 1:
            for x, v in zip(self.axes[names[0]], self.values):
                yield (x, v)
        else:
            outer, inner = self.axes[names[0]], self.axes[names[1]]
            it = iter(self.values)
            for a in outer:
                for b in inner:
                    yield (a, b, next(it))

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow([*self.axes, "value"])
        for row in self.rows():
            writer.writerow([repr(float(v)) for v in row])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "GridSeries":
        reader = csv.reader(io.StringIO(text))
        header = next(reader)
        names = header[:-1]
        rows = [[float(v) for v in row] for row in reader if row]
        axes: Dict[str, List[float]] = {}
        for i, name in enumerate(names):
            seen: List[float] = []
            for row in rows:
                if row[i] not in seen:
                    seen.append(row[i])
            axes[name] = seen
        return cls(axes, [row[-1] for row in rows])


def _linspace(lo: float, hi: float, n: int) -> List[float]:
    return [float(v) for v in np.linspace(lo, hi, n)]


def figure_grid(fig_id: int, resolution: int, policy: TruncationPolicy = DEFAULT_POLICY) -> GridSeries:
    """Evaluate the function behind figure ``fig_id`` (1-5) on a ``resolution``-point grid per axis."""
    if fig_id not in (1, 2, 3, 4, 5):
        raise ValueError(f"unknown figure id {fig_id!r}")
    if not MIN_RESOLUTION <= resolution <= MAX_RESOLUTION:
        raise ValueError(f"resolution must lie in [{MIN_RESOLUTION}, {MAX_RESOLUTION}]")
    qs = _linspace(*Q_RANGE, resolution)
    if fig_id == 3:
        return GridSeries({"q": qs}, [c_q_series(q, policy) for q in qs])

    xs = _linspace(*X_RANGES[fig_id], resolution)
    values: List[float] = []
    for q in qs:
        if fig_id == 1:
            values.extend(e_q(q, x, policy).value for x in xs)
        elif fig_id == 2:
            values.extend(E_q(q, x, policy).value for x in xs)
        else:
            g = GaussQ(q, policy)
            if fig_id == 4:
                values.extend(g.density(x) for x in xs)
            else:
                values.extend(float(v) for v in g.cdf_array(xs))
    return GridSeries({"q": qs, "x": xs}, values)
