import os

import pytest


@pytest.fixture
def seed():
    """Base seed for randomized tests; override with VERSAL_KIT_SEED."""
    return int(os.environ.get("VERSAL_KIT_SEED", "0"))
