import logging

import matplotlib
matplotlib.use('Agg')

import numpy as np
import pytest

from core.logger import ProfessionalLogger
from Module_9_Metrics.phantoms import make_phantom


@pytest.fixture
def logger():
    return ProfessionalLogger(base_dir=None, console_level=logging.ERROR)


@pytest.fixture
def file_logger(tmp_path):
    log = ProfessionalLogger(base_dir=tmp_path / "run", console_level=logging.ERROR)
    yield log
    log.close()


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def disk16():
    return np.array(make_phantom("disk", 16).data)


@pytest.fixture
def rectangles32():
    return np.array(make_phantom("rectangles", 32).data)
