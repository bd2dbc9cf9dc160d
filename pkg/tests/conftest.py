"""Shared fixtures for the test suite."""

import pytest

from hamstab.core.config import reset_settings
from hamstab.core.diophantine import build_profile, frequency_from_preset
from hamstab.core.fourier_taylor import AnalyticityWindow


@pytest.fixture(autouse=True)
def fresh_settings(monkeypatch):
    """Reload settings per test so HAMSTAB_* overrides do not leak."""
    for name in ("HAMSTAB_PRUNE_TOLERANCE", "HAMSTAB_LOG_LEVEL", "HAMSTAB_THREADS"):
        monkeypatch.delenv(name, raising=False)
    reset_settings()
    yield
    reset_settings()


@pytest.fixture
def sqrt2m1():
    return frequency_from_preset("sqrt2m1")


@pytest.fixture
def golden():
    return frequency_from_preset("golden")


@pytest.fixture
def window():
    return AnalyticityWindow(sigma=0.1, R=2.0, n=2)


@pytest.fixture(scope="session")
def sqrt2m1_profile():
    return build_profile(frequency_from_preset("sqrt2m1"), 200)
