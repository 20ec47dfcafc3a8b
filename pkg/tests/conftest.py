#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
    Shared fixtures for the elliptic_gfn tests.
"""
import os

import mpmath
import pytest
from hypothesis import HealthCheck, settings

from elliptic_gfn.milnor_ring import build_model

DATA_DIR = os.path.join(os.path.dirname(__file__), 'gfn-test-data')

# restore_mp_dps is autouse and function scoped; it only resets mpmath state
settings.register_profile(
    "gfn", suppress_health_check=[HealthCheck.function_scoped_fixture])
settings.load_profile("gfn")


@pytest.fixture
def prec():
    """Working precision of the numeric tests; mpmath runs with headroom."""
    mpmath.mp.dps = 80
    return 64


@pytest.fixture(autouse=True)
def restore_mp_dps():
    dps = mpmath.mp.dps
    yield
    mpmath.mp.dps = dps


@pytest.fixture(params=["E6t", "E7t", "E8t"])
def model(request):
    return build_model(request.param)


@pytest.fixture
def e6():
    return build_model("E6t")


@pytest.fixture
def data_dir():
    return DATA_DIR
