import random

import pytest
from typer.testing import CliRunner

from ebt.symbols.characters import FinAbelianGroupSpec


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def cache_dir(tmp_path):
    return tmp_path / "ebt-cache"


def cyclic(N):
    return FinAbelianGroupSpec.cyclic(N)
