#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import numpy as np
import pytest

from uqsl21chain.reports import (
    CheckReport,
    RelationReport,
    Report,
    match_eigenvalues,
    off_identity,
    product_residual,
    rel_residual,
    traceless_residual,
)


class TestResiduals:
    def test_relative_scale(self):
        a = 1e3 * np.eye(2)
        assert rel_residual(a, a + 1e-7 * np.eye(2)) == pytest.approx(1e-7 * np.sqrt(2) / np.linalg.norm(a + 1e-7 * np.eye(2)))

    def test_scalar_zero(self):
        assert rel_residual(np.zeros((3, 3)), 0) == 0.0

    def test_vanishing_product_scaled_by_factors(self):
        a = np.diag([1e5, 0.0])
        b = np.diag([0.0, 1e5])
        b[0, 0] = 1e-4
        assert rel_residual(a @ b, 0) == pytest.approx(1.0)
        assert product_residual((a, b)) < 1e-8

    def test_product_against_target(self):
        a = 2 * np.eye(3)
        assert product_residual((a, a), 4 * np.eye(3)) == 0.0
        assert product_residual((a, a), 0) == pytest.approx(4 * np.sqrt(3) / 12)

    def test_off_identity(self):
        split = off_identity(2.5 * np.eye(4))
        assert split["offset"] == pytest.approx(2.5)
        assert split["residual"] == pytest.approx(0.0)

    def test_traceless(self):
        a = np.diag([1.0, 2.0, 3.0])
        out = traceless_residual(a + 4 * np.eye(3), a)
        assert out["residual"] < 1e-14
        assert out["offset"] == pytest.approx(4)

    def test_match_eigenvalues(self):
        assert match_eigenvalues([1, 2, 3j], [3j, 1, 2]) == pytest.approx(0.0)
        assert match_eigenvalues([1, 2], [1, 2.5]) == pytest.approx(0.5)
        with pytest.raises(ValueError):
            match_eigenvalues([1], [1, 2])


class TestReportModels:
    def test_expect_failure(self):
        assert CheckReport.make("fails", 0.5, 1e-3, expect_failure=True).passed
        assert not CheckReport.make("fails", 1e-6, 1e-3, expect_failure=True).passed

    def test_complex_detail_is_serialized(self):
        entry = CheckReport.make("x", 0.0, 1e-10, value=1 + 2j)
        assert entry.detail["value"] == [1.0, 2.0]

    def test_informative_entries_do_not_fail(self):
        report = RelationReport()
        report.add(CheckReport.make("ok", 0.0, 1e-10))
        report.add(CheckReport.make("info", 1.0, 1e-10, informative=True))
        assert report.passed
        assert report.max_residual == 0.0
        overall = Report.build({"seed": 7}, report.entries)
        assert overall.passed

    def test_failures(self):
        report = RelationReport().extend([CheckReport.make("bad", 1.0, 1e-10)])
        assert not report.passed
        assert [e.name for e in report.failures()] == ["bad"]
        assert report.get("missing") is None
