"""Shared fixtures."""

import pytest

from app.config import settings
from app.core.cache import ResultCache


@pytest.fixture
def cache(tmp_path):
    return ResultCache(str(tmp_path / "cache"))


@pytest.fixture
def guard(monkeypatch):
    """Lower a desk-scale guard for the duration of a test."""

    def lower(name: str, value):
        monkeypatch.setattr(settings, name, value)

    return lower
