"""
Logging for histlab.

Two logging systems:
1. Global app log (logs/app.log) - every module's logger plus third-party libs
2. Per-run logs (logs/run_*/run.log + run.jsonl) - one event per graph processed

Nothing goes to the console: stdout is reserved for JSON and graph payloads,
stderr for the CLI's one-line diagnostics.
"""
import json
import logging
import time
from datetime import datetime
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import Any, Optional

from config import LOGS_DIR

# Content preview length
PREVIEW_LENGTH = 60

def setup_logging(logs_dir: Optional[Path] = None) -> None:
    """Configure logging: silent console, full file logging."""
    target_dir = logs_dir or LOGS_DIR
    target_dir.mkdir(parents=True, exist_ok=True)

    # Root logger config - capture everything but don't output to console
    root_logger = logging.getLogger()
    root_logger.setLevel(logging.DEBUG)

    # Remove any existing handlers (prevents console output)
    root_logger.handlers.clear()

    file_handler = RotatingFileHandler(
        target_dir / "app.log",
        maxBytes=10 * 1024 * 1024,  # 10 MB
        backupCount=5,
        encoding="utf-8"
    )
    file_handler.setLevel(logging.DEBUG)
    file_handler.setFormatter(logging.Formatter(
        '%(asctime)s.%(msecs)03d [%(levelname)s] %(name)s: %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S'
    ))
    root_logger.addHandler(file_handler)

    app_logger = logging.getLogger("histlab")
    app_logger.setLevel(logging.DEBUG)
    app_logger.info("=" * 60)
    app_logger.info("histlab starting up")
    app_logger.info("=" * 60)


def _preview(text: str, length: int = PREVIEW_LENGTH) -> str:
    """Truncate text to preview length with ellipsis."""
    if not text:
        return ""
    text = text.replace('\n', ' ').replace('\r', '')
    if len(text) <= length:
        return text
    return text[:length] + "..."


def _timestamp() -> float:
    return time.time()


def _format_time(ts: float) -> str:
    dt = datetime.fromtimestamp(ts)
    return dt.strftime("%Y-%m-%d %H:%M:%S.") + f"{int((ts % 1) * 1000):03d}"


class RunLogger:
    """Logger for a single CLI run (solve or batch).

    Creates a run directory with:
    - run.log: Human-readable timeline
    - run.jsonl: Machine-readable JSON lines
    """

    def __init__(self, command: str, source: str, logs_dir: Optional[Path] = None):
        self.command = command
        self.source = source
        self.logs_dir = logs_dir or LOGS_DIR
        self.graph_count = 0
        self.error_count = 0

        self.run_dir = self._create_run_dir()
        self.jsonl_path = self.run_dir / "run.jsonl"
        self.log_path = self.run_dir / "run.log"
        self.jsonl_file = open(self.jsonl_path, "a", encoding="utf-8")
        self.log_file = open(self.log_path, "a", encoding="utf-8")

        self.log_run_start()

    def _create_run_dir(self) -> Path:
        self.logs_dir.mkdir(parents=True, exist_ok=True)
        ts = datetime.now().strftime("%Y%m%d_%H%M%S_%f")
        run_dir = self.logs_dir / f"run_{self.command}_{ts}"
        run_dir.mkdir(exist_ok=True)
        return run_dir

    def _write_jsonl(self, entry: dict) -> None:
        entry["ts"] = _timestamp()
        self.jsonl_file.write(json.dumps(entry, ensure_ascii=False) + "\n")
        self.jsonl_file.flush()

    def _write_log(self, message: str) -> None:
        ts = _format_time(_timestamp())
        self.log_file.write(f"[{ts}] {message}\n")
        self.log_file.flush()

    def log_run_start(self) -> None:
        self._write_jsonl({
            "type": "run_start",
            "command": self.command,
            "source": self.source,
        })
        self._write_log(f"RUN START command={self.command} source={_preview(self.source)}")

    def log_graph_start(self, index: int, descriptor: str, n: int, m: int) -> None:
        self.graph_count += 1
        self._write_jsonl({
            "type": "graph_start",
            "index": index,
            "descriptor": descriptor,
            "n": n,
            "m": m,
        })
        self._write_log(f"GRAPH #{index} {_preview(descriptor)} n={n} m={m}")

    def log_graph_result(self, index: int, verdict: str, nodes: int, seconds: float) -> None:
        self._write_jsonl({
            "type": "graph_result",
            "index": index,
            "verdict": verdict,
            "nodes": nodes,
            "seconds": round(seconds, 6),
        })
        self._write_log(f"RESULT #{index} {verdict} nodes={nodes} time={seconds:.3f}s")

    def log_error(self, context: str, error: Exception) -> None:
        self.error_count += 1
        self._write_jsonl({
            "type": "error",
            "context": context,
            "error": str(error),
            "error_type": type(error).__name__,
        })
        self._write_log(f"ERROR [{context}] {type(error).__name__}: {error}")

    def log_debug(self, context: str, message: str, **kwargs: Any) -> None:
        self._write_jsonl({
            "type": "debug",
            "context": context,
            "message": message,
            **kwargs
        })
        self._write_log(f"DEBUG [{context}] {message}")

    def log_run_end(self, summary: dict[str, int]) -> None:
        self._write_jsonl({
            "type": "run_end",
            "graphs": self.graph_count,
            "errors": self.error_count,
            "summary": summary,
        })
        self._write_log(f"RUN END graphs={self.graph_count} errors={self.error_count} summary={summary}")

    def close(self) -> None:
        try:
            self.jsonl_file.close()
            self.log_file.close()
        except Exception:
            pass
