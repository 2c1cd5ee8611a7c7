import random
import zlib

import pytest


@pytest.fixture
def rng(request):
    """Per-test deterministic generator: the seed is derived from the test name."""
    return random.Random(zlib.crc32(request.node.name.encode()))
