#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import numpy as np
import pytest
import scipy.linalg

from uqsl21chain import fermions
from uqsl21chain.braid import explicit_braid
from uqsl21chain.errors import InvalidChainSpec
from uqsl21chain.fermions import N_DOWN, N_UP, fermion_ops, h_two_site, two_site_report
from uqsl21chain.uqsl21 import elementary


class TestFermionOps:
    def test_selected_signs(self, std_point, tol):
        ops = fermion_ops(std_point, tol)
        E = elementary
        assert np.allclose(ops.cD_dag, E(2, 4) + E(1, 3))
        assert np.allclose(ops.cU_dag, E(3, 4) + E(1, 2))

    def test_selection_is_cached_and_bounded(self, std_point, tol):
        assert fermion_ops(std_point, tol) is fermion_ops(std_point, tol)
        assert fermions._select_ops.cache_info().maxsize is not None

    def test_on_site_relations(self, any_point, tol):
        report = fermion_ops(any_point, tol).check(tol)
        assert report.passed, [e.name for e in report.failures()]

    def test_number_operators(self, std_point, tol):
        ops = fermion_ops(std_point, tol)
        assert np.allclose(ops.nU, N_UP)
        assert np.allclose(ops.nD, N_DOWN)
        assert np.allclose(np.diag(ops.parity), [1, -1, -1, 1])


class TestTwoSiteHamiltonian:
    def test_dist_is_braid_difference(self, any_point, tol):
        pair = explicit_braid(any_point)
        target = (pair.b - pair.binv) / any_point.qdiff
        assert np.allclose(h_two_site("dist", any_point, tol), target, atol=1e-10)

    def test_report(self, any_point, tol):
        report = two_site_report(any_point, tol)
        assert report.passed, [e.name for e in report.failures()]
        entry = report.get("H^dist = (b - b^-1)/(q - q^-1)")
        assert abs(complex(*entry.detail["identity_offset"])) < 1e-10

    def test_three_level_spectrum(self, std_point, tol):
        H = std_point.qdiff * h_two_site("dist", std_point, tol)
        ev = np.sort_complex(scipy.linalg.eigvals(H))
        q, lam = std_point.q, std_point.lam
        levels = {
            -q + 1 / q: 8,
            q * lam ** 2 - 1 / (q * lam ** 2): 4,
            1 / (q * lam ** 2) - q * lam ** 2: 4,
        }
        for value, count in levels.items():
            assert np.sum(np.abs(ev - value) < 1e-8) == count

    def test_unknown_model(self, std_point, tol):
        with pytest.raises(InvalidChainSpec):
            h_two_site("tj", std_point, tol)
