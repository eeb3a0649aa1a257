"""Text and JSON reports for centroid analyses."""

from __future__ import annotations

import json
from typing import Mapping

from .model import Centroid, ModelSpec, Verdict

TEXT_DIGITS = 6


def report_dict(
    verdict: Verdict | None,
    centroids: Mapping[str, Centroid],
    gpas: Mapping[str, float],
    model: ModelSpec,
) -> dict:
    """The JSON report as plain data. ``verdict`` is None for single-group reports."""
    if verdict is not None and set(verdict.order) != set(centroids):
        raise ValueError("verdict and centroids cover different groups")
    ids = verdict.order if verdict is not None else list(centroids)
    doc = {
        "model": {"shape": model.shape.value, "n": model.n, "f": model.f, **model.coefficients()},
        "groups": [
            {"id": gid, "x_c": centroids[gid].x_c, "y_c": centroids[gid].y_c, "gpa": gpas[gid]}
            for gid in ids
        ],
    }
    if verdict is not None:
        doc["ranking"] = [list(rank) for rank in verdict.ranking]
        doc["decisions"] = [
            {"pair": list(d.pair), "rule": d.rule.value} for d in verdict.decisions
        ]
    return doc


def _fmt(value: float) -> str:
    return f"{value:.{TEXT_DIGITS}f}"


def render_text(
    verdict: Verdict | None,
    centroids: Mapping[str, Centroid],
    gpas: Mapping[str, float],
    model: ModelSpec,
) -> str:
    doc = report_dict(verdict, centroids, gpas, model)
    m = doc["model"]
    lines = [
        f"model: {m['shape']} (n={m['n']}, overlap={_fmt(m['f'] * 100)}%)",
        "coefficients: "
        + ", ".join(f"{k}={_fmt(m[k])}" for k in ("alpha", "beta", "gamma", "m", "threshold")),
        "",
        "groups:",
    ]
    width = max(len(g["id"]) for g in doc["groups"])
    for g in doc["groups"]:
        lines.append(
            f"  {g['id']:<{width}}  x_c={_fmt(g['x_c'])}  y_c={_fmt(g['y_c'])}  gpa={_fmt(g['gpa'])}"
        )
    if verdict is not None:
        lines += ["", "ranking:"]
        for pos, rank in enumerate(verdict.ranking, start=1):
            for gid in rank:
                lines.append(f"  {pos}. {gid}")
        lines += ["", "decisions:"]
        for d in verdict.decisions:
            lines.append(f"  {d.pair[0]} vs {d.pair[1]}: {d.rule.description}")
    return "\n".join(lines) + "\n"


def render_report(
    verdict: Verdict | None,
    centroids: Mapping[str, Centroid],
    gpas: Mapping[str, float],
    model: ModelSpec,
    format: str = "text",
) -> str:
    if format == "json":
        return json.dumps(report_dict(verdict, centroids, gpas, model), indent=2) + "\n"
    if format == "text":
        return render_text(verdict, centroids, gpas, model)
    raise ValueError(f"unknown report format {format!r}")
