import json
from pathlib import Path

import pytest

from toricdual.exactla import IntMat
from toricdual.glm import GlmSpec, PyramidalFamilySpec, build_glm, build_selfdual_family
from toricdual.multiset import MultisetConfig

DATA = Path(__file__).resolve().parents[1] / "data"


@pytest.fixture(scope="session")
def data_dir():
    return DATA


@pytest.fixture(scope="session")
def a4567():
    return IntMat.from_rows([[4, 5, 6, 7]])


@pytest.fixture(scope="session")
def spec35():
    return GlmSpec.from_json(json.loads((DATA / "spec35.json").read_text()))


@pytest.fixture(scope="session")
def C35(spec35):
    return build_glm(spec35)


@pytest.fixture(scope="session")
def E1():
    return build_selfdual_family(PyramidalFamilySpec.from_json(json.loads((DATA / "spec36_e1.json").read_text())))


@pytest.fixture(scope="session")
def E2():
    return build_selfdual_family(PyramidalFamilySpec.from_json(json.loads((DATA / "spec36_e2.json").read_text())))


@pytest.fixture(scope="session")
def C1(E1):
    return E1.ground


@pytest.fixture(scope="session")
def M223():
    return MultisetConfig(IntMat.from_rows([[2, 3]]), (1, 0))
