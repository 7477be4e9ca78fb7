"""Shared fixtures: src/ on the import path, standard spaces, seeded generators"""

import logging
import sys
from pathlib import Path

import numpy as np
import pytest

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from lg.lg_space import build_lg_space  # noqa: E402
from lg.polynomial import parse_polynomial  # noqa: E402

SAMPLES = ROOT / "samples"


@pytest.fixture
def samples_dir() -> Path:
    return SAMPLES


@pytest.fixture(scope="session")
def a2_space():
    return build_lg_space(parse_polynomial("x1^3", 1))


@pytest.fixture(scope="session")
def fermat_space():
    return build_lg_space(parse_polynomial("x1^3 + x2^3", 2))


@pytest.fixture(scope="session")
def loop_space():
    return build_lg_space(parse_polynomial("x1^2*x2 + x2^2*x1", 2))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(autouse=True)
def _detach_log_handlers():
    """CLI runs attach handlers to captured streams; drop them afterwards"""
    yield
    logging.getLogger().handlers.clear()
