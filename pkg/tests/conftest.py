import json
import pathlib

import pytest

from fbmclink import compute_weights, design_prototype

FIXTURES = pathlib.Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def recorded_bounds():
    with open(FIXTURES / "recorded_bounds.json", encoding="utf-8") as f:
        return json.load(f)


@pytest.fixture(scope="session")
def filt16():
    return design_prototype(16, 4, 1.0)


@pytest.fixture(scope="session")
def weights16(filt16):
    return compute_weights(filt16)


@pytest.fixture(scope="session")
def filt64():
    return design_prototype(64, 4, 1.0)


@pytest.fixture(scope="session")
def weights64(filt64):
    return compute_weights(filt64)
