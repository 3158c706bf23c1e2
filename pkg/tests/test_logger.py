"""Tests for logger.py."""

import json
import logging
import sys
from pathlib import Path

PROJECT_ROOT: Path = Path(__file__).resolve().parents[1]
if str(PROJECT_ROOT) not in sys.path:
    sys.path.insert(0, str(PROJECT_ROOT))

from logger import RunLogger, _preview, setup_logging


def _events(run_log: RunLogger) -> list[dict]:
    return [json.loads(line) for line in run_log.jsonl_path.read_text().splitlines()]


class TestRunLogger:
    """Tests for RunLogger."""

    def test_creates_run_dir(self, tmp_path: Path):
        """The run directory is named after the command and holds both files."""
        run_log = RunLogger("batch", "corpus/", logs_dir=tmp_path)
        run_log.close()
        assert run_log.run_dir.parent == tmp_path
        assert run_log.run_dir.name.startswith("run_batch_")
        assert run_log.jsonl_path.exists()
        assert run_log.log_path.exists()

    def test_event_sequence(self, tmp_path: Path):
        """Graph events and the summary land in run.jsonl in order."""
        run_log = RunLogger("batch", "corpus/", logs_dir=tmp_path)
        run_log.log_graph_start(0, "a.g6#0", 20, 30)
        run_log.log_graph_result(0, "NoHist", 12, 0.5)
        run_log.log_error("a.g6#1", ValueError("bad byte"))
        run_log.log_run_end({"graphs": 2})
        run_log.close()

        events = _events(run_log)
        assert [e["type"] for e in events] == ["run_start", "graph_start", "graph_result", "error", "run_end"]
        assert events[1]["n"] == 20
        assert events[2]["verdict"] == "NoHist"
        assert events[3]["error_type"] == "ValueError"
        assert events[4]["graphs"] == 1
        assert events[4]["errors"] == 1
        assert all("ts" in e for e in events)

    def test_human_log(self, tmp_path: Path):
        """run.log has one line per event."""
        run_log = RunLogger("solve", "k4", logs_dir=tmp_path)
        run_log.log_debug("k4", "filters done", mod4="Inconclusive")
        run_log.close()
        lines = run_log.log_path.read_text().splitlines()
        assert len(lines) == 2
        assert "RUN START command=solve" in lines[0]
        assert "DEBUG [k4] filters done" in lines[1]
        assert _events(run_log)[1]["mod4"] == "Inconclusive"


def test_preview_truncates() -> None:
    assert _preview("a\nb") == "a b"
    assert _preview("x" * 100, length=10) == "x" * 10 + "..."
    assert _preview("") == ""


def test_setup_logging_writes_app_log(tmp_path: Path) -> None:
    root = logging.getLogger()
    saved = list(root.handlers), root.level
    try:
        setup_logging(tmp_path)
        logging.getLogger("histlab.test").info("hello from the test")
        for handler in root.handlers:
            handler.flush()
        assert "hello from the test" in (tmp_path / "app.log").read_text()
    finally:
        for handler in root.handlers:
            handler.close()
        root.handlers[:] = saved[0]
        root.setLevel(saved[1])
