"""Grade datasets: CSV/JSON parsing and normalization to distributions.

CSV layout (``#`` lines are comments; an optional first line
``#scale:F,D,C,B,A`` declares the scale worst first)::

    group,grade,count
    ClassI,C,10
    ClassI,B|A,5        # 5 students ambiguous between B and A

JSON layout::

    {"scale": ["F", "D", "C", "B", "A"],
     "groups": [{"id": "ClassI", "counts": {"C": 10, "A": 50},
                 "boundaries": [{"between": ["B", "A"], "count": 5}]}]}
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import (
    BoundaryNotAllowed,
    DuplicateCell,
    NegativeCount,
    NonAdjacentBoundary,
    NormalizationError,
    ParseError,
    UnknownGrade,
)
from .model import GradeDistribution, GradeScale, ModelSpec, ShapeKind

SCALE_PRAGMA = "#scale:"
CSV_HEADER = ("group", "grade", "count")


@dataclass(frozen=True)
class GradeDataset:
    """Raw counts for one group.

    ``boundary_counts[j]`` holds individuals ambiguous between grades ``j+1``
    and ``j+2`` (0-based ``j``); each of them is placed in both grades.
    """

    group_id: str
    scale: GradeScale
    counts: tuple[float, ...]
    boundary_counts: tuple[float, ...] = ()

    def __post_init__(self):
        n = self.scale.n
        counts = tuple(float(c) for c in self.counts)
        boundaries = tuple(float(b) for b in self.boundary_counts) or (0.0,) * (n - 1)
        if len(counts) != n:
            raise ValueError(f"group {self.group_id!r}: {len(counts)} counts for {n} grades")
        if len(boundaries) != n - 1:
            raise ValueError(
                f"group {self.group_id!r}: {len(boundaries)} boundary counts, expected {n - 1}"
            )
        for v in counts + boundaries:
            if not math.isfinite(v) or v < 0:
                raise NegativeCount(f"group {self.group_id!r}: invalid count {v}")
        object.__setattr__(self, "counts", counts)
        object.__setattr__(self, "boundary_counts", boundaries)

    @property
    def total_mass(self) -> float:
        return math.fsum(self.counts) + 2 * math.fsum(self.boundary_counts)

    @property
    def has_boundaries(self) -> bool:
        return any(b > 0 for b in self.boundary_counts)


def normalize(ds: GradeDataset) -> GradeDistribution:
    """Frequencies with each ambiguous score counted in both adjacent grades."""
    counts = [Fraction(c) for c in ds.counts]
    bounds = [Fraction(b) for b in ds.boundary_counts]
    weights = []
    for i, c in enumerate(counts):
        left = bounds[i - 1] if i > 0 else 0
        right = bounds[i] if i < len(bounds) else 0
        weights.append(c + left + right)
    total = sum(weights)
    if total == 0:
        raise NormalizationError(f"group {ds.group_id!r} has no recorded scores")
    return GradeDistribution(ds.scale, tuple(float(w / total) for w in weights))


def distributions_for(
    datasets: Sequence[GradeDataset], model: ModelSpec
) -> list[tuple[str, GradeDistribution]]:
    """Normalize datasets for ``model``; the classic model has no room for boundary scores."""
    if model.shape is ShapeKind.RECTANGULAR_CLASSIC:
        for ds in datasets:
            if ds.has_boundaries:
                raise BoundaryNotAllowed(
                    f"group {ds.group_id!r} has boundary scores, which the classic model "
                    "cannot represent; use an overlapping model such as grm"
                )
    return [(ds.group_id, normalize(ds)) for ds in datasets]


class _Builder:
    """Accumulates cells per group, in order of first appearance."""

    def __init__(self, scale: GradeScale):
        self.scale = scale
        self.groups: dict[str, tuple[list[float], list[float]]] = {}
        self.seen: set[tuple[str, str]] = set()

    def add(self, group: str, grade: str, count: float, line: int | None = None) -> None:
        if not group:
            raise ParseError("empty group id", line)
        if not math.isfinite(count):
            raise ParseError(f"count must be finite, got {count}", line)
        if count < 0:
            raise NegativeCount(f"negative count {count} for {group}/{grade}", line)
        counts, bounds = self.groups.setdefault(
            group, ([0.0] * self.scale.n, [0.0] * (self.scale.n - 1))
        )
        if "|" in grade:
            lo, hi = self._boundary(grade, line)
            cell = f"{self.scale.labels[lo - 1]}|{self.scale.labels[hi - 1]}"
            target, pos = bounds, lo - 1
        else:
            cell = grade
            target, pos = counts, self._grade(grade, line) - 1
        if (group, cell) in self.seen:
            raise DuplicateCell(f"{group}/{cell} given more than once", line)
        self.seen.add((group, cell))
        target[pos] = count

    def _grade(self, label: str, line: int | None) -> int:
        try:
            return self.scale.index(label)
        except KeyError:
            raise UnknownGrade(f"unknown grade {label!r} (scale {self.scale})", line) from None

    def _boundary(self, text: str, line: int | None) -> tuple[int, int]:
        parts = text.split("|")
        if len(parts) != 2:
            raise ParseError(f"boundary must name two grades as X|Y, got {text!r}", line)
        a, b = sorted(self._grade(p, line) for p in parts)
        if b - a != 1:
            raise NonAdjacentBoundary(f"grades in {text!r} are not adjacent", line)
        return a, b

    def build(self) -> list[GradeDataset]:
        if not self.groups:
            raise ParseError("dataset contains no groups")
        return [
            GradeDataset(gid, self.scale, tuple(counts), tuple(bounds))
            for gid, (counts, bounds) in self.groups.items()
        ]


def _resolve_scale(declared: GradeScale | None, given: GradeScale | None) -> GradeScale:
    if declared is not None and given is not None and declared != given:
        raise ParseError(f"scale in file ({declared}) disagrees with supplied scale ({given})")
    scale = declared or given
    if scale is None:
        raise ParseError("no grade scale: add a '#scale:' line or pass one explicitly")
    return scale


def _parse_count(text: str, line: int) -> float:
    try:
        return float(text)
    except ValueError:
        raise ParseError(f"count is not a number: {text!r}", line) from None


def parse_csv(text: str, scale: GradeScale | None = None) -> list[GradeDataset]:
    lines = text.splitlines()
    declared = None
    body: list[tuple[int, str]] = []
    for lineno, raw in enumerate(lines, start=1):
        stripped = raw.strip()
        if stripped.startswith(SCALE_PRAGMA):
            if declared is not None or body:
                raise ParseError("the scale pragma must come before any data", lineno)
            try:
                declared = GradeScale.parse(stripped[len(SCALE_PRAGMA):])
            except ValueError as exc:
                raise ParseError(str(exc), lineno) from None
        elif stripped and not stripped.startswith("#"):
            body.append((lineno, raw))
    if not body:
        raise ParseError("empty dataset")
    scale = _resolve_scale(declared, scale)

    rows = csv.reader(io.StringIO("\n".join(r for _, r in body)))
    builder = _Builder(scale)
    for (lineno, _), row in zip(body, rows):
        cells = tuple(c.strip() for c in row)
        if lineno == body[0][0]:
            if cells != CSV_HEADER:
                raise ParseError(f"expected header {','.join(CSV_HEADER)}", lineno)
            continue
        if len(cells) != 3:
            raise ParseError(f"expected 3 fields, got {len(cells)}", lineno)
        group, grade, count = cells
        builder.add(group, grade, _parse_count(count, lineno), lineno)
    return builder.build()


def parse_json(text: str, scale: GradeScale | None = None) -> list[GradeDataset]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno) from None
    if not isinstance(doc, dict) or not isinstance(doc.get("groups"), list):
        raise ParseError("expected an object with a 'groups' list")
    declared = None
    if "scale" in doc:
        if not isinstance(doc["scale"], list):
            raise ParseError("'scale' must be a list of labels")
        try:
            declared = GradeScale(tuple(doc["scale"]))
        except ValueError as exc:
            raise ParseError(str(exc)) from None
    builder = _Builder(_resolve_scale(declared, scale))

    def number(value) -> float:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ParseError(f"count must be a number, got {value!r}")
        return float(value)

    for group in doc["groups"]:
        if not isinstance(group, dict) or not isinstance(group.get("id"), str):
            raise ParseError("each group needs a string 'id'")
        gid = group["id"]
        counts = group.get("counts", {})
        if not isinstance(counts, dict):
            raise ParseError(f"group {gid!r}: 'counts' must be an object")
        if gid in builder.groups:
            raise DuplicateCell(f"group {gid!r} appears twice")
        builder.groups[gid] = ([0.0] * builder.scale.n, [0.0] * (builder.scale.n - 1))
        for label, value in counts.items():
            builder.add(gid, label, number(value))
        for entry in group.get("boundaries", []):
            between = entry.get("between") if isinstance(entry, dict) else None
            if not (isinstance(between, list) and len(between) == 2
                    and all(isinstance(b, str) for b in between)):
                raise ParseError(f"group {gid!r}: boundary needs 'between': [label, label]")
            builder.add(gid, "|".join(between), number(entry.get("count")))
    return builder.build()


def parse_dataset(
    text: str, format: str = "csv", scale: GradeScale | None = None
) -> list[GradeDataset]:
    """Parse ``text`` as ``csv`` or ``json``; ``scale`` fills in when the file declares none."""
    if format == "csv":
        return parse_csv(text, scale)
    if format == "json":
        return parse_json(text, scale)
    raise ValueError(f"unknown dataset format {format!r}")
