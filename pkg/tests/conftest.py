from __future__ import annotations

import numpy as np
import pytest

from offcenterlib.config import VERIFY_SETTINGS


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(VERIFY_SETTINGS.seed)
