import os
from pathlib import Path

import pytest

from scenarios.scenario_parser import parse_scenario

# ------------------------------------------------------------------------------
# Setup paths
# ------------------------------------------------------------------------------
TESTS_DIR = os.path.dirname(os.path.abspath(__file__))
PROJECT_ROOT = os.path.abspath(os.path.join(TESTS_DIR, ".."))
SCENARIO_DIR = Path(PROJECT_ROOT) / "scenarios" / "data"

COFFEE_CUP_PATH = SCENARIO_DIR / "coffee_cup.scn"
ICE_CREAM_PATH = SCENARIO_DIR / "ice_cream.scn"


# ------------------------------------------------------------------------------
# Shared scenarios
# ------------------------------------------------------------------------------
@pytest.fixture
def coffee_text() -> str:
    return COFFEE_CUP_PATH.read_text()


@pytest.fixture
def coffee_scenario(coffee_text):
    return parse_scenario(coffee_text)


@pytest.fixture
def coffee_model(coffee_scenario):
    return coffee_scenario.model


@pytest.fixture
def auto_coffee_text(coffee_text) -> str:
    return coffee_text.replace("express=distress?", "express=auto").replace(
        "express=none(distress)", "express=auto"
    )


# ------------------------------------------------------------------------------
# Test Collection Customization
# ------------------------------------------------------------------------------
def pytest_ignore_collect(collection_path, config):
    """Ignore certain directories during test collection"""
    ignored_dirs = {".git", ".github", ".hypothesis"}
    if any(ignored in str(collection_path) for ignored in ignored_dirs):
        return True
    return None


# ------------------------------------------------------------------------------
# Logging cleanup
# ------------------------------------------------------------------------------
@pytest.fixture(scope="session", autouse=True)
def cleanup_logging():
    """Ensure logger queue is properly shutdown after tests complete."""
    yield
    # Shutdown the logger queue listener to prevent "I/O operation on closed file" errors
    from utils.logger import logger_config

    logger_config.shutdown()
