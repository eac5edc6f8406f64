from pathlib import Path

import pytest

from fmc import compile_model, parse

REPO_ROOT = Path(__file__).resolve().parent.parent
AISCO_PATH = REPO_ROOT / "examples" / "aisco.fm"
GOLDEN_PATH = Path(__file__).resolve().parent / "data" / "aisco.ofn"


@pytest.fixture(scope="session")
def aisco_source() -> str:
    return AISCO_PATH.read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def aisco_model(aisco_source):
    return parse(aisco_source)


@pytest.fixture(scope="session")
def aisco_ontology(aisco_model):
    return compile_model(aisco_model)
