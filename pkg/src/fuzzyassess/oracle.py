"""Brute-force geometric centroids of the literal bar graphs.

Used to cross-check the closed forms in :mod:`fuzzyassess.model`:

* :func:`integral_centroid` integrates over the union of disjoint rectangles
  with the 2-D midpoint rule (classic model only);
* :func:`particle_centroid` treats each rectangle as a point mass at its own
  centre, so overlapping parts are counted once per rectangle (GRM).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (
    AssessmentError,
    EmptyGraph,
    OverlappingRegions,
    ScaleMismatch,
    UnsupportedShape,
)
from .model import Centroid, GradeDistribution, ModelSpec, ShapeKind

DEFAULT_RESOLUTION = 1e-3


@dataclass(frozen=True)
class RectangleRegion:
    x_lo: float
    x_hi: float
    height: float

    def __post_init__(self):
        if not self.x_lo < self.x_hi:
            raise ValueError(f"empty rectangle base [{self.x_lo}, {self.x_hi}]")
        if not self.height >= 0:
            raise ValueError(f"negative rectangle height {self.height}")

    @property
    def area(self) -> float:
        return (self.x_hi - self.x_lo) * self.height

    @property
    def center(self) -> tuple[float, float]:
        return 0.5 * (self.x_lo + self.x_hi), 0.5 * self.height


def layout(model: ModelSpec, dist: GradeDistribution) -> list[RectangleRegion]:
    """Unit-base rectangles, one per grade, each shifted ``1 - f`` from the last."""
    if model.shape not in (ShapeKind.RECTANGULAR_CLASSIC, ShapeKind.GENERALIZED_RECTANGULAR):
        raise UnsupportedShape(f"no rectangle layout for the {model.shape.value} model")
    if dist.n != model.n:
        raise ScaleMismatch(f"distribution has {dist.n} grades, model expects {model.n}")
    step = 1.0 - model.f
    return [
        RectangleRegion(i * step, i * step + 1.0, h) for i, h in enumerate(dist.y)
    ]


def _check_disjoint(regions: Sequence[RectangleRegion]) -> None:
    spans = sorted((r.x_lo, r.x_hi) for r in regions)
    for (_, hi), (lo, _) in zip(spans, spans[1:]):
        if lo < hi:
            raise OverlappingRegions(
                "overlapping regions: the area integral would count shared parts once"
            )


def integral_centroid(
    regions: Sequence[RectangleRegion], resolution: float = DEFAULT_RESOLUTION
) -> Centroid:
    """Centroid of the union of disjoint rectangles by the 2-D midpoint rule.

    The grid has cells of width ``~resolution`` over the x-extent and height
    ``resolution`` from y = 0. A cell counts when its midpoint lies inside a
    rectangle. Along y the sum over midpoints below a height ``h`` is an
    arithmetic series, evaluated in closed form per column.
    """
    if not resolution > 0:
        raise AssessmentError(f"resolution must be positive, got {resolution}")
    if not regions:
        raise EmptyGraph("no regions to integrate")
    _check_disjoint(regions)

    x0 = min(r.x_lo for r in regions)
    x1 = max(r.x_hi for r in regions)
    nx = max(1, math.ceil((x1 - x0) / resolution - 1e-9))
    dx = (x1 - x0) / nx
    dy = resolution
    xm = x0 + (np.arange(nx) + 0.5) * dx

    heights = np.zeros(nx)
    for r in regions:
        inside = (xm >= r.x_lo) & (xm < r.x_hi)
        heights[inside] = r.height
    # number of row midpoints (j + 1/2) * dy strictly below each column height
    rows = np.clip(np.ceil(heights / dy - 0.5), 0, None)

    cell = dx * dy
    area = cell * rows.sum()
    if area <= 0:
        raise EmptyGraph("graph has zero area at this resolution")
    moment_x = cell * (xm * rows).sum()
    moment_y = cell * (0.5 * dy * rows**2).sum()
    return Centroid(float(moment_x / area), float(moment_y / area))


def particle_centroid(regions: Sequence[RectangleRegion]) -> Centroid:
    """Area-weighted mean of rectangle centres; overlaps count in every rectangle."""
    areas = [r.area for r in regions]
    total = math.fsum(areas)
    if not total > 0:
        raise EmptyGraph("regions have zero total area")
    x_c = math.fsum(a * r.center[0] for a, r in zip(areas, regions)) / total
    y_c = math.fsum(a * r.center[1] for a, r in zip(areas, regions)) / total
    return Centroid(x_c, y_c)
