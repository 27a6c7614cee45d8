"""Settings and error envelope tests."""

import pytest
from pydantic import ValidationError

from src.core.config import PARAM_ALIASES, SETKIND_ALIASES, Settings
from src.core.exceptions import BoundViolation, CapExceededError, ParseError
from src.models.digraph import ParamKind, SetKind


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv("SECDOM_SIZE_CAP", "12")
    monkeypatch.setenv("SECDOM_LOG_LEVEL", "debug")
    settings = Settings()
    assert settings.SIZE_CAP == 12
    assert settings.LOG_LEVEL == "DEBUG"


@pytest.mark.parametrize(
    "name, value",
    [("SECDOM_SIZE_CAP", "0"), ("SECDOM_DEFAULT_ARC_PROB", "1.5"), ("SECDOM_ENVIRONMENT", "staging")],
)
def test_invalid_values_rejected(monkeypatch, name, value):
    monkeypatch.setenv(name, value)
    with pytest.raises(ValidationError):
        Settings()


def test_aliases_cover_every_kind():
    assert set(PARAM_ALIASES) == {kind.value for kind in ParamKind}
    assert set(SETKIND_ALIASES) == {kind.value for kind in SetKind}


def test_error_payloads():
    assert ParseError("bad arc", 3).to_dict() == {"error": "ParseError", "message": "line 3: bad arc", "line": 3}
    cap = CapExceededError("size_cap", 26, 30)
    assert cap.to_dict()["actual"] == 30
    assert cap.exit_code == 1
    assert BoundViolation("os.upper.n_minus_one", "p digraph 1 0\n", {}).exit_code == 2
