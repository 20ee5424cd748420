#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""测试公共夹具: 标准参数点、ω = -1 点、复 q 点、大 |q| 点与 TL 点"""

import pytest

from uqsl21chain.braid import braid_pair
from uqsl21chain.config import ToleranceConfig
from uqsl21chain.scalars import derive_params, tl_params
from uqsl21chain.uqsl21 import build_rep


@pytest.fixture(scope="session")
def tol():
    return ToleranceConfig(seed=7)


@pytest.fixture(scope="session")
def std_point(tol):
    return derive_params(1.2, 0.3, 1, tol)


@pytest.fixture(scope="session")
def neg_omega_point(tol):
    return derive_params(1.2, 0.3, -1, tol)


@pytest.fixture(scope="session")
def complex_point(tol):
    return derive_params(complex(0.7, 0.2), -0.45, 1, tol)


@pytest.fixture(scope="session")
def large_point(tol):
    return derive_params(2.5, 1.7, 1, tol)


@pytest.fixture(scope="session")
def tl_point(tol):
    return tl_params(1.4, 1, tol)


@pytest.fixture(scope="session", params=["std", "neg_omega", "complex"])
def any_point(request, std_point, neg_omega_point, complex_point):
    return {"std": std_point, "neg_omega": neg_omega_point, "complex": complex_point}[request.param]


@pytest.fixture(scope="session")
def std_pair(std_point, tol):
    return braid_pair(build_rep(std_point), std_point, tol)
