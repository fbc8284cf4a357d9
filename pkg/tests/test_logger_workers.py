import json

from src.core import config
from src.core.logger import log_event, read_latest_logs
from src.core.workers import sweep_map, worker_count


def _square(x):
    return x * x


def test_log_event_writes_json_lines(isolated_log):
    log_event("First", answer=42)
    log_event("Second", level="warning", formula="p0")
    lines = isolated_log.read_text().splitlines()
    assert len(lines) == 2
    first = json.loads(lines[0])
    assert first["message"] == "First" and first["level"] == "INFO" and first["answer"] == 42
    assert first["timestamp"].endswith("Z")


def test_read_latest_logs_newest_first():
    for i in range(5):
        log_event("Event", index=i)
    entries = read_latest_logs(3)
    assert [e["index"] for e in entries] == [4, 3, 2]


def test_levels_below_threshold_are_dropped(monkeypatch, isolated_log):
    monkeypatch.setattr(config, "LOG_LEVEL", "WARNING")
    log_event("Quiet", level="DEBUG")
    log_event("Loud", level="ERROR")
    assert [e["message"] for e in read_latest_logs()] == ["Loud"]


def test_unserializable_fields_are_stringified():
    log_event("Odd", value=frozenset({1}))
    assert read_latest_logs(1)[0]["value"] == "frozenset({1})"


def test_missing_log_reads_empty(monkeypatch, tmp_path):
    monkeypatch.setattr(config, "LOG_FILE", str(tmp_path / "absent.json"))
    assert read_latest_logs() == []


def test_worker_count_bounds():
    assert worker_count(0) == 1
    assert worker_count(1) == 1
    assert 1 <= worker_count(64) <= 64


def test_sweep_map_keeps_order():
    assert sweep_map(_square, range(6)) == [0, 1, 4, 9, 16, 25]
    assert sweep_map(_square, range(6), workers=2) == [0, 1, 4, 9, 16, 25]
    assert sweep_map(_square, []) == []
