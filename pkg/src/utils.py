"""
Utilitarios
===========

Helpers shared by the engine and the command line: logging setup, thread
budget, order-preserving parallel map, JSON output and durations.
"""

import json
import logging
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Iterable, List, Optional, TypeVar, Union

import numpy as np
from tqdm import tqdm

T = TypeVar("T")
R = TypeVar("R")

THREADS_ENV = "TROPFAN_THREADS"

# set by main.py from engine.progress
PROGRESS_DEFAULT = False


def setup_logging(level: int = logging.INFO,
                 log_file: Optional[str] = None,
                 format_str: Optional[str] = None) -> None:
    """
    Configure the root logger

    Console output goes to stderr so that JSON reports on stdout stay clean.

    Args:
        level: Logging level
        log_file: Optional log file (UTF-8)
        format_str: Message format
    """
    if format_str is None:
        format_str = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(level)
    console_handler.setFormatter(logging.Formatter(format_str))

    handlers = [console_handler]
    if log_file:
        file_handler = logging.FileHandler(log_file, encoding='utf-8')
        file_handler.setLevel(level)
        file_handler.setFormatter(logging.Formatter(format_str))
        handlers.append(file_handler)

    root_logger = logging.getLogger()
    root_logger.handlers.clear()
    root_logger.setLevel(level)
    for handler in handlers:
        root_logger.addHandler(handler)


def thread_budget(configured: Optional[int] = None) -> int:
    """
    Number of worker threads

    TROPFAN_THREADS wins over the configured value; 0 or None means
    ``os.cpu_count()``. Always at least 1.
    """
    logger = logging.getLogger(__name__)
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            logger.warning(f"WARNING: ignoring non-integer {THREADS_ENV}={env!r}")
    if configured:
        return max(1, int(configured))
    return max(1, os.cpu_count() or 1)


def parallel_map(fn: Callable[[T], R], items: Iterable[T], desc: str = "",
                 threads: Optional[int] = None, progress: Optional[bool] = None) -> List[R]:
    """
    Map ``fn`` over ``items`` on a thread pool

    Results come back in input order whatever the thread count.

    Args:
        fn: Function of one item
        items: Inputs
        desc: tqdm label
        threads: Worker count (None: :func:`thread_budget`)
        progress: Show a tqdm bar (None: module default)
    """
    items = list(items)
    workers = min(thread_budget(threads), max(1, len(items)))
    show = (PROGRESS_DEFAULT if progress is None else progress) and len(items) > 1
    if workers == 1:
        iterator = tqdm(items, desc=desc, disable=not show, leave=False)
        return [fn(x) for x in iterator]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = pool.map(fn, items)
        return list(tqdm(results, total=len(items), desc=desc, disable=not show, leave=False))


def to_jsonable(obj: Any) -> Any:
    """Convert reports to plain JSON types (tuples, Fractions, numpy ints, objects with to_dict)."""
    if hasattr(obj, "to_dict"):
        return to_jsonable(obj.to_dict())
    if isinstance(obj, dict):
        return {_key(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [to_jsonable(v) for v in items]
    if isinstance(obj, Fraction):
        return obj.numerator if obj.denominator == 1 else str(obj)
    if isinstance(obj, np.ndarray):
        return to_jsonable(obj.tolist())
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def _key(k: Any) -> str:
    if isinstance(k, tuple):
        return ",".join(str(x) for x in k)
    return str(k)


def dumps(data: Any) -> str:
    """Deterministic JSON text (sorted keys, two-space indent, trailing newline)."""
    return json.dumps(to_jsonable(data), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _flatten(data: Any, prefix: str = "") -> List[tuple]:
    if isinstance(data, dict) and data:
        rows = []
        for key in sorted(data):
            rows.extend(_flatten(data[key], f"{prefix}.{key}" if prefix else str(key)))
        return rows
    if isinstance(data, list) and data and any(isinstance(v, (dict, list)) for v in data):
        if all(isinstance(v, list) and not any(isinstance(x, (dict, list)) for x in v) for v in data):
            return [(prefix, json.dumps(data))]
        rows = []
        for i, value in enumerate(data):
            rows.extend(_flatten(value, f"{prefix}[{i}]"))
        return rows
    return [(prefix or "value", json.dumps(data, ensure_ascii=False))]


def render_table(data: Any) -> str:
    """
    Human rendering of a report: one ``key  value`` row per leaf

    Nested keys are joined with dots; lists of integer vectors stay on one row.
    """
    rows = _flatten(to_jsonable(data))
    width = max((len(k) for k, _ in rows), default=0)
    lines = ["=" * 60]
    lines.extend(f"{k.ljust(width)}  {v}" for k, v in rows)
    lines.append("=" * 60)
    return "\n".join(lines) + "\n"


def dump_json(data: Any, path: Optional[Union[str, Path]] = None, fmt: str = "json") -> None:
    """Write JSON (or its table rendering) to ``path`` or to stdout."""
    text = render_table(data) if fmt == "table" else dumps(data)
    if path is None or str(path) == "-":
        sys.stdout.write(text)
        return
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")


def format_duration(seconds: float) -> str:
    """
    Format a duration

    Args:
        seconds: Duration in seconds

    Returns:
        Readable string (e.g. "2m 3.4s")
    """
    minutes, secs = divmod(float(seconds), 60)
    hours, minutes = divmod(int(minutes), 60)

    parts = []
    if hours > 0:
        parts.append(f"{hours}h")
    if minutes > 0:
        parts.append(f"{minutes}m")
    if secs > 0 or not parts:
        parts.append(f"{secs:.1f}s")

    return " ".join(parts)
