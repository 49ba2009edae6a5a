"""JSONL event logger.

One record per line: {"timestamp", "level", "event", "data"}. The sink path comes from
``system.log_path`` in settings.yaml (or SIGMA_WITT_LOG_PATH); a null path keeps records
in memory only.
"""
import json
import os
import sys
import threading
from datetime import datetime, timezone
from typing import Any, Dict, List, Optional


class JsonlLogger:
    def __init__(self, path: Optional[str] = None, echo_errors: bool = True, keep: int = 200):
        self.path = path
        self.echo_errors = echo_errors
        self._lock = threading.Lock()
        self._recent: List[Dict[str, Any]] = []
        self._keep = keep
        if path:
            directory = os.path.dirname(path)
            if directory:
                os.makedirs(directory, exist_ok=True)

    def _write(self, level: str, event: str, data: Dict[str, Any]) -> None:
        record = {
            "timestamp": datetime.now(timezone.utc).isoformat(),
            "level": level,
            "event": event,
            "data": data,
        }
        line = json.dumps(record, default=str)
        with self._lock:
            self._recent.append(record)
            if len(self._recent) > self._keep:
                del self._recent[0]
            if self.path:
                with open(self.path, "a", encoding="utf-8") as fh:
                    fh.write(line + "\n")
        if level == "ERROR" and self.echo_errors:
            print(f"[sigma-witt] {event}: {data.get('message', '')}", file=sys.stderr)

    def log(self, event: str, data: Optional[Dict[str, Any]] = None) -> None:
        self._write("INFO", event, data or {})

    def warn(self, message: str, **fields: Any) -> None:
        self._write("WARN", fields.pop("event", "warning"), {"message": message, **fields})

    def error(self, message: str, **fields: Any) -> None:
        self._write("ERROR", fields.pop("event", "error"), {"message": message, **fields})

    def recent(self, event: Optional[str] = None) -> List[Dict[str, Any]]:
        with self._lock:
            return [r for r in self._recent if event is None or r["event"] == event]


_logger: Optional[JsonlLogger] = None
_logger_lock = threading.Lock()


def get_logger() -> JsonlLogger:
    global _logger
    with _logger_lock:
        if _logger is None:
            from .config import load_settings

            path = os.environ.get("SIGMA_WITT_LOG_PATH")
            if path is None:
                try:
                    path = load_settings().get("system", {}).get("log_path")
                except Exception:
                    path = None
            _logger = JsonlLogger(path or None)
        return _logger


def configure_logger(path: Optional[str], echo_errors: bool = True) -> JsonlLogger:
    """Replace the process-wide logger (used by the runner and by tests)."""
    global _logger
    with _logger_lock:
        _logger = JsonlLogger(path, echo_errors=echo_errors)
        return _logger
