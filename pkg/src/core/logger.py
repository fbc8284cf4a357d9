import os
import sys
import json
import datetime

import portalocker

from . import config

LEVELS = {"DEBUG": 10, "INFO": 20, "WARNING": 30, "ERROR": 40}


def _enabled(level: str) -> bool:
    threshold = LEVELS.get(config.LOG_LEVEL, LEVELS["INFO"])
    return LEVELS.get(level.upper(), LEVELS["INFO"]) >= threshold


def log_event(message: str, level: str = "INFO", **fields):
    """
    Appends a structured log entry to the event log.

    Extra keyword arguments are stored as additional JSON fields. Values that
    JSON cannot represent are stored as their str().
    """
    if not _enabled(level):
        return

    log_entry = {
        "timestamp": datetime.datetime.now(datetime.timezone.utc).replace(tzinfo=None).isoformat() + "Z",
        "pid": os.getpid(),
        "level": level.upper(),
        "message": message,
    }
    log_entry.update(fields)

    log_file = config.LOG_FILE
    try:
        os.makedirs(os.path.dirname(log_file) or ".", exist_ok=True)
        with portalocker.Lock(log_file, mode="a", timeout=config.LOCK_TIMEOUT) as f:
            f.write(json.dumps(log_entry, default=str))
            f.write("\n")
            f.flush()
            os.fsync(f.fileno())
    except Exception as e:
        print(f"[Logger] Failed to write to {log_file}: {e}", file=sys.stderr)


def read_latest_logs(n=50):
    """
    Reads the last n log entries, newest first.
    """
    log_file = config.LOG_FILE
    if not os.path.exists(log_file):
        return []

    try:
        with open(log_file, "r") as f:
            lines = f.readlines()[-n:]
    except Exception as e:
        print(f"[Logger] Failed to read {log_file}: {e}", file=sys.stderr)
        return []

    logs = []
    for line in lines:
        try:
            logs.append(json.loads(line))
        except json.JSONDecodeError as e:
            print(f"[Logger] Invalid JSON in log file: {e}", file=sys.stderr)
            continue
    return logs[::-1]
