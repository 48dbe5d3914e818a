"""Shared fixtures for the test suite"""
import os
import sys

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from growth.characters import CharacterParams  # noqa: E402


@pytest.fixture
def plancherel():
    return CharacterParams.plancherel(1.5)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
