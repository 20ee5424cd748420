#!/usr/bin/env python3
# -*- coding: utf-8 -*-

from types import SimpleNamespace

import numpy as np
import pytest

from uqsl21chain.boundary import Family, KMatrixSpec, Side, c_plus_raw
from uqsl21chain.braid import braid_pair
from uqsl21chain.chains import (
    ChainSpec,
    Model,
    c_plus_sol_check,
    closed_chain_check,
    cyclic_shift,
    derivative_construction_check,
    double_row_transfer,
    h_open,
    h_periodic,
    hdiff_check,
    invariance_check,
    match_spectra,
    monodromy_and_transfer,
    open_chain_check,
    spectrum,
    twist_equivalence_check,
)
from uqsl21chain.config import settings
from uqsl21chain.coproduct import ChainOperator, embed
from uqsl21chain.errors import InvalidChainSpec, SizeLimit
from uqsl21chain.spectral import CrossingData, sample_pairs
from uqsl21chain.uqsl21 import build_rep

C = 0.5


def _boundary(family: Family):
    if family == Family.TRIVIAL:
        return KMatrixSpec(Side.MINUS), KMatrixSpec(Side.PLUS)
    return KMatrixSpec(Side.MINUS, family, C), KMatrixSpec(Side.PLUS, family, C)


class TestHamiltonians:
    def test_open_chain_dimension(self, std_point, tol):
        H = h_open(ChainSpec(3, Model.FERM), std_point, tol)
        assert H.mat.shape == (64, 64)
        assert H.sites == 3

    def test_periodic_wrap_term(self, std_point, std_pair):
        H = h_periodic(3, std_pair, std_point).mat
        U = cyclic_shift(3).mat
        bulk = sum(embed(std_pair.b - std_pair.binv, j, 3).mat for j in (1, 2))
        assert np.allclose(U @ H @ U.conj().T, H)
        assert not np.allclose(H, bulk)

    def test_cyclic_shift_order(self):
        U = cyclic_shift(3).mat
        assert np.allclose(np.linalg.matrix_power(U, 3), np.eye(64))

    def test_tl_model_needs_trivial_boundary(self):
        spec = ChainSpec(3, Model.TL, KMatrixSpec(Side.MINUS, Family.B, C), KMatrixSpec(Side.PLUS))
        with pytest.raises(InvalidChainSpec):
            spec.validate()

    def test_too_short(self):
        with pytest.raises(InvalidChainSpec):
            ChainSpec(1).validate()

    def test_too_long(self):
        with pytest.raises(SizeLimit):
            ChainSpec(settings.max_sites + 1).validate()


class TestClosedChain:
    def test_transfer_at_zero_is_shift(self, std_point, std_pair):
        _, t0 = monodromy_and_transfer(0.0, 3, std_pair, std_point)
        assert np.allclose(t0.mat, cyclic_shift(3).mat, atol=1e-12)

    def test_commuting_family(self, std_point, std_pair, tol):
        points = list(sample_pairs(3, tol.seed))
        report = closed_chain_check(3, std_pair, std_point, points, tol)
        assert report.passed, [e.name for e in report.failures()]


class TestOpenChain:
    @pytest.mark.parametrize("minus", [Family.TRIVIAL, Family.A, Family.B])
    @pytest.mark.parametrize("plus", [Family.TRIVIAL, Family.A, Family.B])
    def test_commuting_family(self, std_point, std_pair, tol, minus, plus):
        spec = ChainSpec(3, Model.DIST, _boundary(minus)[0], _boundary(plus)[1])
        points = list(sample_pairs(2, tol.seed))
        report = open_chain_check(spec, std_pair, std_point, points, CrossingData.from_params(std_point), tol)
        assert report.passed, [e.name for e in report.failures()]

    def test_double_row_shape(self, std_point, std_pair):
        t = double_row_transfer(0.3, 2, _boundary(Family.B), std_pair, std_point)
        assert isinstance(t, ChainOperator)
        assert t.mat.shape == (16, 16)

    def test_quantum_group_invariance(self, std_point, tol):
        report = invariance_check(4, std_point, tol)
        assert report.passed, [e.name for e in report.failures()]
        assert report.get("[H_per, Delta(e2)] != 0").residual > 1e-3

    @pytest.mark.parametrize("family", [Family.B, Family.TRIVIAL])
    def test_derivative_construction(self, std_point, std_pair, tol, family):
        report = derivative_construction_check(2, _boundary(family), std_pair, std_point, tol=tol)
        assert report.passed, [(e.name, e.residual) for e in report.failures()]

    def test_derivative_construction_at_large_q(self, large_point, tol):
        pair = braid_pair(build_rep(large_point), large_point, tol)
        specs = (KMatrixSpec(Side.MINUS, Family.B, 0.5),
                 KMatrixSpec(Side.PLUS, Family.B, c_plus_raw(0.5, large_point)))
        report = derivative_construction_check(2, specs, pair, large_point, tol=tol)
        assert report.passed, [(e.name, e.residual) for e in report.failures()]

    def test_derivative_construction_length(self, std_point, std_pair, tol):
        with pytest.raises(InvalidChainSpec):
            derivative_construction_check(5, _boundary(Family.B), std_pair, std_point, tol=tol)


class TestExactIdentities:
    @pytest.mark.parametrize("L", [2, 3, 4])
    def test_hdiff(self, any_point, tol, L):
        assert hdiff_check(L, any_point, tol).residual <= 1e-12

    def test_special_boundary(self, any_point, tol):
        report = c_plus_sol_check(3, any_point, tol)
        assert report.passed, [e.name for e in report.failures()]


class TestSpectrum:
    def test_two_sites_three_levels(self, std_point, tol):
        H = h_open(ChainSpec(2, Model.DIST), std_point, tol) * std_point.qdiff
        groups = spectrum(H, tol).groups()
        assert sorted(m for _, m in groups) == [4, 4, 8]

    @pytest.mark.parametrize("L", [2, 3])
    def test_twist_equivalence(self, any_point, tol, L):
        assert twist_equivalence_check(L, any_point, tol).passed

    def test_twist_equivalence_four_sites(self, std_point, tol):
        assert twist_equivalence_check(4, std_point, tol).passed

    def test_sorted_and_serializable(self, std_point, tol):
        result = spectrum(h_open(ChainSpec(3, Model.FERM), std_point, tol), tol)
        re = [ev.real for ev in result.eigenvalues]
        assert re == sorted(re)
        data = result.to_dict()
        assert data["count"] == 64
        assert sum(g["multiplicity"] for g in data["groups"]) == 64

    def test_match_is_zero_for_identical(self, std_point, tol):
        result = spectrum(h_open(ChainSpec(2, Model.FERM), std_point, tol), tol)
        assert match_spectra(result, result) == 0.0

    def test_size_limit(self, std_point, tol):
        H = SimpleNamespace(sites=settings.spectrum_max_sites + 1, mat=None)
        with pytest.raises(SizeLimit):
            spectrum(H, tol)
