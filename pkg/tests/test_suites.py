#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import pytest

from uqsl21chain.config import Constants
from uqsl21chain.errors import InvalidChainSpec
from uqsl21chain.suites import SuiteContext, resolve_suites, run_suites

SMALL_SAMPLING = {"ybe": 3, "inversion": 2, "pt": 2, "crossing": 2, "reflection": 3, "chain": 2}


@pytest.fixture
def ctx(std_point, tol):
    return SuiteContext(p=std_point, tol=tol, sampling=SMALL_SAMPLING)


class TestResolve:
    def test_all(self):
        assert resolve_suites(["all"]) == Constants.SUITES

    def test_dedup(self):
        assert resolve_suites(["ybe", "ybe", "tl"]) == ["ybe", "tl"]

    def test_unknown(self):
        with pytest.raises(InvalidChainSpec):
            resolve_suites(["bogus"])


class TestSuites:
    @pytest.mark.parametrize("name", ["algebra", "casimir", "coproduct", "braid", "ybe", "reflection", "twist", "tl"])
    def test_suite_passes(self, ctx, name):
        checks = run_suites([name], ctx)
        assert checks
        failed = [c.name for c in checks if not c.passed and not c.informative]
        assert not failed, failed
        assert all(c.name.startswith(f"{name}: ") for c in checks)

    def test_chain_suite(self, ctx):
        checks = run_suites(["chain"], ctx)
        failed = [(c.name, c.residual) for c in checks if not c.passed and not c.informative]
        assert not failed, failed
        derivative = [c for c in checks if "d2t/du2" in c.name]
        assert {c.name.rsplit("(", 1)[1] for c in derivative if not c.informative} == {"b/b)"}

    def test_casimir_suite_at_large_q(self, large_point, tol):
        checks = run_suites(["casimir"], SuiteContext(p=large_point, tol=tol, sampling=SMALL_SAMPLING))
        failed = [(c.name, c.residual) for c in checks if not c.passed and not c.informative]
        assert not failed, failed
        assert any(c.name.endswith("Q+Q-=0") for c in checks)

    def test_braid_suite_at_tl_point(self, tl_point, tol):
        checks = run_suites(["braid"], SuiteContext(p=tl_point, tol=tol, sampling=SMALL_SAMPLING))
        assert any("cubic in b" in c.name for c in checks)
        assert all(c.passed or c.informative for c in checks)

    def test_informative_entries_present(self, ctx):
        checks = run_suites(["ybe"], ctx)
        informative = [c.name for c in checks if c.informative]
        assert "ybe: crossing scalar vs printed xi" in informative
        assert "ybe: printed zeta deviation at u=0.5" in informative
