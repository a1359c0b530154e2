import itertools

import numpy as np
import pytest

from homspace.signature import Signature

ALL_TYPES = (-1, 0, 1)


def signatures_up_to(max_n):
    out = []
    for n in range(1, max_n + 1):
        for elems in itertools.product(ALL_TYPES, repeat=n):
            out.append(Signature(elems))
    return out


PLANES = [Signature((k1, k2)) for k1 in ALL_TYPES for k2 in ALL_TYPES]


@pytest.fixture
def rng():
    return np.random.default_rng(20260809)
