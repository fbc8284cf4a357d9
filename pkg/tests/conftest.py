import pytest

from src.core import config


@pytest.fixture(autouse=True)
def isolated_log(tmp_path, monkeypatch):
    """Every test writes its events to its own log file and uses default budgets."""
    log_file = tmp_path / "events.json"
    monkeypatch.setattr(config, "LOG_FILE", str(log_file))
    monkeypatch.setattr(config, "LOG_LEVEL", "DEBUG")
    monkeypatch.delenv(config.BUDGET_ENV, raising=False)
    return log_file
