import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from services.sexagesimal_service import TRIJYA  # noqa: E402


@pytest.fixture(autouse=True)
def standard_environment(monkeypatch):
    """Run every test against the standard radius and default logging"""
    monkeypatch.delenv("KERALA_RADIUS", raising=False)
    monkeypatch.delenv("ORACLE_DIGITS", raising=False)
    monkeypatch.delenv("LOG_LEVEL", raising=False)


@pytest.fixture
def r():
    return TRIJYA
