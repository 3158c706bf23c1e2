import logging
import os
import tempfile
from pathlib import Path
from typing import Optional

logger = logging.getLogger("histlab.utils")

GRAPH6_SUFFIXES = (".g6", ".graph6")


def atomic_write_text(path: Path, text: str) -> Path:
    """Write text to path via a temp file in the same directory and os.replace.

    A crash mid-write leaves the previous file (or nothing) in place,
    never a truncated certificate or graph file.
    """
    path = Path(path)
    tmp_path: Optional[Path] = None
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with tempfile.NamedTemporaryFile(
            "w",
            encoding="utf-8",
            dir=path.parent,
            delete=False,
        ) as tmp_file:
            tmp_file.write(text)
            tmp_file.flush()
            os.fsync(tmp_file.fileno())
            tmp_path = Path(tmp_file.name)
        os.replace(tmp_path, path)
    except Exception as exc:
        logger.error("Failed to write %s: %s", path, exc)
        if tmp_path and tmp_path.exists():
            try:
                tmp_path.unlink()
            except Exception:
                pass
        raise
    return path


def list_graph_files(directory: Path) -> list[Path]:
    """graph6 files directly inside directory, sorted by name."""
    directory = Path(directory)
    if not directory.is_dir():
        raise NotADirectoryError(f"{directory} is not a directory")
    return sorted(
        p for p in directory.iterdir()
        if p.is_file() and p.suffix.lower() in GRAPH6_SUFFIXES and not p.name.startswith(".")
    )
