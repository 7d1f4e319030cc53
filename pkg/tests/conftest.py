"""Plugins for pytest."""

import logging
import os

import numpy as np
import pytest

from quadfunc.config import ENV_THREADS


@pytest.fixture(scope='session', autouse=True)
def log():
    """Store quadfunc log statements in a list."""
    log_statements = list()

    class ListHandler(logging.StreamHandler):
        def emit(self, record):
            log_statements.append(self.format(record))
    handler = ListHandler()
    handler.setFormatter(logging.Formatter('%(funcName)s: %(message)s'))
    logger = logging.getLogger()
    logger.setLevel(logging.DEBUG)
    logger.addHandler(handler)
    return log_statements


@pytest.fixture(scope='function')
def rng():
    """Return a numpy Generator with a fixed seed."""
    return np.random.default_rng(20240601)


@pytest.fixture(scope='function')
def threads_env(request):
    """Set QUADFUNC_THREADS for one test and restore the previous value afterwards."""
    previous = os.environ.get(ENV_THREADS)

    def setter(value):
        os.environ[ENV_THREADS] = str(value)

    def fin():
        if previous is None:
            os.environ.pop(ENV_THREADS, None)
        else:
            os.environ[ENV_THREADS] = previous
    request.addfinalizer(fin)
    return setter
