"""Centroid assessment models: scales, distributions, coefficients, comparison.

Every model in the family reduces to two key sums over a normalized grade
distribution ``y`` (worst grade first, 1-based index ``i``)::

    x_c = alpha * sum(i * y_i) - beta
    y_c = gamma * sum(y_i ** 2)

with ``alpha = 1 - f`` and ``beta = 0.5 - f`` for an overlap fraction ``f``
between adjacent figures, and ``gamma`` fixed by the figure shape.

The sums are evaluated in exact rational arithmetic over the binary values of
the float inputs and rounded once, so algebraically equal paths (for example
``sum(i * y_i)`` versus ``1 + GPA``) produce bit-identical floats.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Sequence

from .errors import (
    AssessmentError,
    InvalidOverlap,
    InvalidScaleSize,
    NormalizationError,
    OverlapNotAllowed,
    ScaleMismatch,
    TooFewGroups,
)

NORMALIZATION_TOL = 1e-12
DEFAULT_OVERLAP = 0.3
DEFAULT_EPS = 1e-9


@dataclass(frozen=True)
class GradeScale:
    """Ordered grade labels, worst first (``labels[0]`` is grade 1)."""

    labels: tuple[str, ...]

    def __post_init__(self):
        labels = tuple(self.labels)
        object.__setattr__(self, "labels", labels)
        if len(labels) < 2:
            raise InvalidScaleSize(f"a grade scale needs at least 2 labels, got {len(labels)}")
        for label in labels:
            if not isinstance(label, str) or not label:
                raise InvalidScaleSize(f"grade labels must be non-empty strings, got {label!r}")
        if len(set(labels)) != len(labels):
            raise InvalidScaleSize(f"grade labels must be unique: {list(labels)}")

    @classmethod
    def parse(cls, text: str) -> GradeScale:
        """Build a scale from a comma-separated, worst-first label list."""
        return cls(tuple(part.strip() for part in text.split(",")))

    @classmethod
    def generic(cls, n: int) -> GradeScale:
        return cls(tuple(str(i) for i in range(1, n + 1)))

    @property
    def n(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        """1-based position of ``label``; raises KeyError if absent."""
        try:
            return self.labels.index(label) + 1
        except ValueError:
            raise KeyError(label) from None

    def __contains__(self, label: object) -> bool:
        return label in self.labels

    def __str__(self) -> str:
        return ",".join(self.labels)


@dataclass(frozen=True)
class GradeDistribution:
    """Normalized frequencies ``y`` over a scale; ``y[0]`` belongs to the worst grade."""

    scale: GradeScale
    y: tuple[float, ...]

    def __post_init__(self):
        y = tuple(float(v) for v in self.y)
        object.__setattr__(self, "y", y)
        if len(y) != self.scale.n:
            raise ScaleMismatch(f"{len(y)} frequencies for a scale of {self.scale.n} grades")
        for v in y:
            if not math.isfinite(v) or v < 0:
                raise NormalizationError(f"frequencies must be finite and non-negative, got {v}")
        total = math.fsum(y)
        if abs(total - 1.0) > NORMALIZATION_TOL:
            raise NormalizationError(f"frequencies sum to {total!r}, expected 1")

    @classmethod
    def from_weights(cls, scale: GradeScale, weights: Sequence[float]) -> GradeDistribution:
        """Normalize arbitrary non-negative weights (counts, percentages) to frequencies."""
        if len(weights) != scale.n:
            raise ScaleMismatch(f"{len(weights)} weights for a scale of {scale.n} grades")
        exact = []
        for w in weights:
            if not math.isfinite(w) or w < 0:
                raise NormalizationError(f"weights must be finite and non-negative, got {w}")
            exact.append(Fraction(w))
        total = sum(exact)
        if total == 0:
            raise NormalizationError("cannot normalize a distribution with zero total mass")
        return cls(scale, tuple(float(w / total) for w in exact))

    @classmethod
    def uniform(cls, scale: GradeScale) -> GradeDistribution:
        return cls.from_weights(scale, [1.0] * scale.n)

    @classmethod
    def point_mass(cls, scale: GradeScale, grade: int) -> GradeDistribution:
        """All mass on the 1-based ``grade``."""
        y = [0.0] * scale.n
        y[grade - 1] = 1.0
        return cls(scale, tuple(y))

    @property
    def n(self) -> int:
        return self.scale.n


class ShapeKind(str, enum.Enum):
    RECTANGULAR_CLASSIC = "classic"
    GENERALIZED_RECTANGULAR = "grm"
    TRIANGULAR = "triangular"
    TRAPEZOIDAL = "trapezoidal"


# Shape only scales y_c, so gamma does not depend on the overlap fraction.
_GAMMA = {
    ShapeKind.RECTANGULAR_CLASSIC: Fraction(1, 2),
    ShapeKind.GENERALIZED_RECTANGULAR: Fraction(1, 2),
    ShapeKind.TRIANGULAR: Fraction(1, 5),
    ShapeKind.TRAPEZOIDAL: Fraction(3, 7),
}


@dataclass(frozen=True)
class ModelSpec:
    """A model shape on ``n`` grades with overlap fraction ``f``.

    The coefficients are derived on access, so they can never disagree with
    ``shape``, ``n`` and ``f``. Use :func:`make_model` to get shape-dependent
    defaults for ``f``.
    """

    shape: ShapeKind
    n: int
    f: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "shape", ShapeKind(self.shape))
        if isinstance(self.n, bool) or int(self.n) != self.n:
            raise InvalidScaleSize(f"grade count must be an integer, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))
        if self.n < 2:
            raise InvalidScaleSize(f"grade count must be at least 2, got {self.n}")
        f = float(self.f)
        if not (math.isfinite(f) and 0.0 <= f < 0.5):
            raise InvalidOverlap(f"overlap fraction must lie in [0, 0.5), got {self.f!r}")
        if self.shape is ShapeKind.RECTANGULAR_CLASSIC and f != 0.0:
            raise OverlapNotAllowed("the classic rectangular model has no overlap (f must be 0)")
        object.__setattr__(self, "f", f)

    @property
    def _f(self) -> Fraction:
        return Fraction(self.f)

    @property
    def _alpha(self) -> Fraction:
        return 1 - self._f

    @property
    def _beta(self) -> Fraction:
        return Fraction(1, 2) - self._f

    @property
    def _gamma(self) -> Fraction:
        return _GAMMA[self.shape]

    @property
    def _m(self) -> Fraction:
        return self.n - self._f * (self.n - 1)

    @property
    def alpha(self) -> float:
        return float(self._alpha)

    @property
    def beta(self) -> float:
        return float(self._beta)

    @property
    def gamma(self) -> float:
        return float(self._gamma)

    @property
    def m(self) -> float:
        """Length of the model's support on the x-axis."""
        return float(self._m)

    @property
    def threshold(self) -> float:
        """Midpoint of the support; splits the high and low halves of the criterion."""
        return float(self._m / 2)

    @property
    def percent(self) -> float:
        return self.f * 100

    def coefficients(self) -> dict[str, float]:
        return {
            "alpha": self.alpha,
            "beta": self.beta,
            "gamma": self.gamma,
            "m": self.m,
            "threshold": self.threshold,
        }


def make_model(shape: ShapeKind | str, n: int, f: float | None = None) -> ModelSpec:
    """Build a model; ``f`` defaults to 0 for the classic shape and 0.3 otherwise."""
    shape = ShapeKind(shape)
    if f is None:
        f = 0.0 if shape is ShapeKind.RECTANGULAR_CLASSIC else DEFAULT_OVERLAP
    return ModelSpec(shape, n, f)


@dataclass(frozen=True)
class Centroid:
    x_c: float
    y_c: float


class Extremes(NamedTuple):
    minimum: Centroid
    ideal: Centroid
    worst: Centroid


def _exact(dist: GradeDistribution) -> list[Fraction]:
    return [Fraction(v) for v in dist.y]


def _check_scale(dist: GradeDistribution, model: ModelSpec) -> None:
    if dist.n != model.n:
        raise ScaleMismatch(f"distribution has {dist.n} grades, model expects {model.n}")


def _first_moment(q: list[Fraction]) -> Fraction:
    return sum((i * v for i, v in enumerate(q, start=1)), Fraction(0))


def _sum_squares(q: list[Fraction]) -> Fraction:
    return sum((v * v for v in q), Fraction(0))


def _gpa(q: list[Fraction]) -> Fraction:
    return sum((i * v for i, v in enumerate(q)), Fraction(0))


def centroid(dist: GradeDistribution, model: ModelSpec) -> Centroid:
    _check_scale(dist, model)
    q = _exact(dist)
    x_c = model._alpha * _first_moment(q) - model._beta
    y_c = model._gamma * _sum_squares(q)
    return Centroid(float(x_c), float(y_c))


def gpa(dist: GradeDistribution) -> float:
    """Grade point average with grade ``i`` worth ``i - 1`` points."""
    return float(_gpa(_exact(dist)))


def gpa_xc_identity(dist: GradeDistribution, model: ModelSpec) -> float:
    """x_c recovered from the GPA as ``alpha * (1 + GPA) - beta``.

    The leading 1 is the distribution's total mass taken exactly, which makes
    the result equal to ``centroid(dist, model).x_c`` bit for bit.
    """
    _check_scale(dist, model)
    q = _exact(dist)
    mass = sum(q, Fraction(0))
    return float(model._alpha * (mass + _gpa(q)) - model._beta)


def extremes(model: ModelSpec) -> Extremes:
    """Centroids of the uniform, best-grade and worst-grade distributions."""
    scale = GradeScale.generic(model.n)
    return Extremes(
        minimum=centroid(GradeDistribution.uniform(scale), model),
        ideal=centroid(GradeDistribution.point_mass(scale, model.n), model),
        worst=centroid(GradeDistribution.point_mass(scale, 1), model),
    )


def sum_squares_lower_bound(dist: GradeDistribution) -> tuple[float, bool]:
    """Return ``sum(y_i**2)`` and whether it sits on its lower bound ``1/n``."""
    value = _sum_squares(_exact(dist))
    return float(value), abs(float(value - Fraction(1, dist.n))) <= NORMALIZATION_TOL


class Rule(str, enum.Enum):
    XC_DOMINATES = "XcDominates"
    TIE_HIGH_HALF_YC_HIGHER = "TieHighHalf_YcHigher"
    TIE_LOW_HALF_YC_LOWER = "TieLowHalf_YcLower"
    FULL_TIE = "FullTie"

    @property
    def description(self) -> str:
        return _RULE_TEXT[self]


_RULE_TEXT = {
    Rule.XC_DOMINATES: "greater x_c wins",
    Rule.TIE_HIGH_HALF_YC_HIGHER: "tie on x_c; high half; greater y_c wins",
    Rule.TIE_LOW_HALF_YC_LOWER: "tie on x_c; low half; smaller y_c wins",
    Rule.FULL_TIE: "full tie",
}


@dataclass(frozen=True)
class Decision:
    pair: tuple[str, str]
    rule: Rule


@dataclass(frozen=True)
class Verdict:
    """Ranking best first; each rank holds the ids tied at that position.

    ``decisions`` has one entry per adjacent pair of the flattened ranking,
    naming the rule that separated (or tied) them.
    """

    ranking: tuple[tuple[str, ...], ...]
    decisions: tuple[Decision, ...] = field(default=())

    @property
    def order(self) -> list[str]:
        return [gid for rank in self.ranking for gid in rank]

    def rank_of(self, group_id: str) -> int:
        for pos, rank in enumerate(self.ranking, start=1):
            if group_id in rank:
                return pos
        raise KeyError(group_id)


def _bands(items: list, key, eps: float) -> list[list]:
    """Split ``items`` (already sorted on ``key``) into runs within ``eps`` of each run's head."""
    bands: list[list] = []
    for item in items:
        if bands and abs(key(item) - key(bands[-1][0])) <= eps:
            bands[-1].append(item)
        else:
            bands.append([item])
    return bands


def compare(
    groups: Sequence[tuple[str, GradeDistribution]],
    model: ModelSpec,
    eps: float = DEFAULT_EPS,
) -> Verdict:
    """Rank groups by the centroid criterion.

    Larger x_c is better. Groups whose x_c agree within ``eps`` are ordered by
    y_c: larger wins when the shared x_c lies in the upper half of the support
    (``x_c >= m/2``), smaller wins in the lower half. The y_c comparison runs
    on ``sum(y_i**2)``, so verdicts do not depend on the shape's gamma.
    """
    if len(groups) < 2:
        raise TooFewGroups("at least two groups required")
    if not eps > 0:
        raise AssessmentError(f"eps must be positive, got {eps}")
    ids = [gid for gid, _ in groups]
    if len(set(ids)) != len(ids):
        raise AssessmentError(f"duplicate group ids: {ids}")
    scale = groups[0][1].scale
    for gid, dist in groups:
        if dist.scale != scale:
            raise ScaleMismatch(f"group {gid!r} uses a different grade scale")
        _check_scale(dist, model)

    scored = []
    for gid, dist in groups:
        c = centroid(dist, model)
        sq, _ = sum_squares_lower_bound(dist)
        scored.append((gid, c.x_c, sq))
    scored.sort(key=lambda s: -s[1])

    ranking: list[tuple[str, ...]] = []
    decisions: list[Decision] = []
    previous: str | None = None
    for band in _bands(scored, key=lambda s: s[1], eps=eps):
        high = band[0][1] >= model.threshold - eps
        band.sort(key=lambda s: -s[2] if high else s[2])
        tie_rule = Rule.TIE_HIGH_HALF_YC_HIGHER if high else Rule.TIE_LOW_HALF_YC_LOWER
        for j, tied in enumerate(_bands(band, key=lambda s: s[2], eps=eps)):
            for k, (gid, _, _) in enumerate(tied):
                if previous is not None:
                    if k > 0:
                        rule = Rule.FULL_TIE
                    elif j > 0:
                        rule = tie_rule
                    else:
                        rule = Rule.XC_DOMINATES
                    decisions.append(Decision((previous, gid), rule))
                previous = gid
            ranking.append(tuple(gid for gid, _, _ in tied))
    return Verdict(tuple(ranking), tuple(decisions))
