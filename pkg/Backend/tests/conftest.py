import logging

import numpy as np
import pytest

from lctspin.config import Signature
from lctspin.logger import logger
from lctspin.weyl import CommutationConvention


@pytest.fixture(autouse=True, scope="session")
def _quiet_logs():
    logger.set_level(logging.WARNING)
    yield


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def e1():
    return Signature.euclidean(1)


@pytest.fixture
def e2():
    return Signature.euclidean(2)


@pytest.fixture
def lorentz2():
    return Signature(plus=1, minus=1)


@pytest.fixture
def c1():
    """The commutation convention the one-dimensional table singles out."""
    return CommutationConvention.minus_i_eta((1,))
