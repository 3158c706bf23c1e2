from __future__ import annotations

import json
import sys
from pathlib import Path

PROJECT_ROOT: Path = Path(__file__).resolve().parents[1]
if str(PROJECT_ROOT) not in sys.path:
    sys.path.insert(0, str(PROJECT_ROOT))

from core.catalog import catalog_graph
from core.graph import EdgeSet, classify
from core.types import CutReport, HistCertificate, InflationCheck, RunReport, SolveReport, Verdict


def test_solve_report_to_dict() -> None:
    k4 = catalog_graph("k4")
    star = EdgeSet.of(k4, [k4.edge_index(0, 1), k4.edge_index(0, 2), k4.edge_index(0, 3)])
    report = SolveReport(Verdict.HAS_HIST, [HistCertificate(star, t1=3, t3=1)], nodes_explored=3)
    data = report.to_dict(k4)
    assert data["verdict"] == "HasHist"
    assert data["filter_used"] == "None"
    assert data["certificates"] == [[[0, 1], [0, 2], [0, 3]]]
    assert data["count"] is None


def test_cut_report_without_witness() -> None:
    k4 = catalog_graph("k4")
    data = CutReport("Undefined").to_dict(k4)
    assert data["cec"] == "Undefined"
    assert data["witness_cut"] is None
    assert data["witness_cycles"] is None


def test_inflation_check_to_dict() -> None:
    check = InflationCheck(connectivity=3, girth=5, k_star=3, cec=3, passed=True)
    assert check.to_dict() == {
        "connectivity": 3, "girth": 5, "k_star": 3, "cec": 3, "passed": True, "capped": False,
    }


def test_run_report_round_trip() -> None:
    petersen = catalog_graph("petersen")
    report = RunReport(
        input={"catalog": "petersen"},
        profile=classify(petersen),
        filters={"mod4": "Inconclusive"},
        solve={"verdict": "HasHist", "count": 10},
        wall_time=0.25,
        tool_version="test",
    )
    data = json.loads(json.dumps(report.to_dict()))
    restored = RunReport.from_dict(data)
    assert restored == report
    assert restored.profile.girth == 5


def test_run_report_error_only() -> None:
    report = RunReport.from_dict({"input": {"path": "x.g6"}, "error": {"code": "format"}})
    assert report.profile is None
    assert report.error == {"code": "format"}
    assert report.to_dict()["solve"] is None
