import os
from pathlib import Path
from dotenv import load_dotenv

load_dotenv()

PROJECT_ROOT = Path(__file__).resolve().parent


def _env_int(key: str, default: int) -> int:
    try:
        return int(os.getenv(key, str(default)))
    except (TypeError, ValueError):
        return default


# --- Worker pool (batch mode and parallel solve) ---
# 1 runs every job inline, which is what you want under a debugger
HISTLAB_THREADS = max(1, _env_int("HISTLAB_THREADS", 1))

# --- Solver ---
HISTLAB_BUDGET = _env_int("HISTLAB_BUDGET", 50_000_000)
# Branch depth at which solve() cuts the search tree into jobs.
# Independent of HISTLAB_THREADS so reports do not depend on the worker count.
HISTLAB_SPLIT_DEPTH = _env_int("HISTLAB_SPLIT_DEPTH", 3)
HISTLAB_ORACLE_CAP = _env_int("HISTLAB_ORACLE_CAP", 24)

# --- Generators ---
HISTLAB_REJECTION_LIMIT = _env_int("HISTLAB_REJECTION_LIMIT", 10_000)

# --- Paths ---
# Optional data: buckminster.g6, grinberg.g6, fullerene isomer files
DATA_DIR = Path(os.getenv("HISTLAB_DATA_DIR", PROJECT_ROOT / "data"))
LOGS_DIR = Path(os.getenv("HISTLAB_LOGS_DIR", PROJECT_ROOT / "logs"))

TOOL_VERSION = "0.3.0"
