"""
Shared fixtures: the two canonical triples, solver settings and a seeded generator.
"""

import numpy as np
import pytest
from loguru import logger

from src.model import basic_triple, twisted_triple
from src.observability import metrics
from src.solver import DEFAULT_CONFIG


@pytest.fixture(scope="session")
def basic():
    return basic_triple()


@pytest.fixture(scope="session")
def twisted():
    return twisted_triple()


@pytest.fixture
def cfg():
    return DEFAULT_CONFIG


@pytest.fixture
def rng():
    return np.random.default_rng(20240517)


@pytest.fixture
def fresh_metrics():
    metrics.reset()
    yield metrics
    metrics.reset()


@pytest.fixture
def log_messages():
    """Messages logged through loguru while the test runs."""
    messages = []
    handler_id = logger.add(lambda message: messages.append(message.record["message"]), level="DEBUG")
    yield messages
    logger.remove(handler_id)
