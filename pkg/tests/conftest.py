import random
from pathlib import Path

import pytest

from chronomind import load_model
from chronomind.oracle import GenConfig, random_dlca_model, random_lek_model

DATA = Path(__file__).parent / "data"


@pytest.fixture
def data_dir() -> Path:
    return DATA


@pytest.fixture
def basic_model():
    return load_model(DATA / "basic.tlek")


@pytest.fixture
def revision_model():
    return load_model(DATA / "revision.tlek")


@pytest.fixture
def prefs_model():
    return load_model(DATA / "prefs.tdlca")


def lek_cases(n, **cfg):
    """Seeded (rng, model) pairs; each seed owns its own stream."""
    for seed in range(n):
        rng = random.Random(seed)
        yield seed, rng, random_lek_model(GenConfig(seed=seed, **cfg), rng)


def dlca_cases(n, **cfg):
    for seed in range(n):
        rng = random.Random(seed)
        yield seed, rng, random_dlca_model(GenConfig(seed=seed, **cfg), rng)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
