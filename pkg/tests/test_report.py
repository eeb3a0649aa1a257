import json

import pytest

from conftest import CLASS_I_COUNTS, CLASS_II_COUNTS
from fuzzyassess.model import (
    GradeDistribution,
    centroid,
    compare,
    gpa,
    make_model,
)
from fuzzyassess.report import render_report

GRM = make_model("grm", 5)


@pytest.fixture
def table1(letters):
    groups = [
        ("ClassI", GradeDistribution.from_weights(letters, CLASS_I_COUNTS)),
        ("ClassII", GradeDistribution.from_weights(letters, CLASS_II_COUNTS)),
    ]
    verdict = compare(groups, GRM)
    centroids = {gid: centroid(d, GRM) for gid, d in groups}
    gpas = {gid: gpa(d) for gid, d in groups}
    return verdict, centroids, gpas


def test_text_ranking(table1):
    text = render_report(*table1, GRM, "text")
    assert text.index("1. ClassI") < text.index("2. ClassII")
    assert "tie on x_c; high half; greater y_c wins" in text
    assert "alpha=0.700000" in text and "threshold=1.900000" in text
    assert "y_c=0.361111" in text


def test_json_schema(table1):
    doc = json.loads(render_report(*table1, GRM, "json"))
    assert set(doc) == {"model", "groups", "ranking", "decisions"}
    assert set(doc["model"]) == {"shape", "n", "f", "alpha", "beta", "gamma", "m", "threshold"}
    assert doc["model"]["threshold"] == 1.9
    assert all(set(g) == {"id", "x_c", "y_c", "gpa"} for g in doc["groups"])
    assert doc["ranking"] == [["ClassI"], ["ClassII"]]
    assert doc["decisions"] == [{"pair": ["ClassI", "ClassII"], "rule": "TieHighHalf_YcHigher"}]


def test_json_round_trip(table1):
    verdict, centroids, gpas = table1
    doc = json.loads(render_report(verdict, centroids, gpas, GRM, "json"))
    for g in doc["groups"]:
        c = centroids[g["id"]]
        assert g["x_c"] == c.x_c and g["y_c"] == c.y_c and g["gpa"] == gpas[g["id"]]


def test_single_group(table1):
    _, centroids, gpas = table1
    one = {"ClassI": centroids["ClassI"]}
    text = render_report(None, one, gpas, GRM, "text")
    assert "ranking" not in text
    assert "ClassI" in text
    doc = json.loads(render_report(None, one, gpas, GRM, "json"))
    assert "ranking" not in doc and len(doc["groups"]) == 1


def test_full_tie_shares_rank(letters):
    d = GradeDistribution.from_weights(letters, CLASS_I_COUNTS)
    verdict = compare([("a", d), ("b", d)], GRM)
    c = {"a": centroid(d, GRM), "b": centroid(d, GRM)}
    text = render_report(verdict, c, {"a": gpa(d), "b": gpa(d)}, GRM)
    assert "1. a" in text and "1. b" in text
    assert "full tie" in text


def test_deterministic(table1):
    assert render_report(*table1, GRM, "json") == render_report(*table1, GRM, "json")


def test_mismatched_groups(table1):
    verdict, centroids, gpas = table1
    with pytest.raises(ValueError):
        render_report(verdict, {"ClassI": centroids["ClassI"]}, gpas, GRM)
