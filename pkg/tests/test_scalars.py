#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import numpy as np
import pytest

from uqsl21chain.errors import DegenerateQ, DegenerateRepresentation, ParameterError, SingularCartan
from uqsl21chain.scalars import cartan_qbracket, derive_params, qbracket, tl_params


class TestDeriveParams:
    def test_standard_point(self, std_point):
        assert std_point.lam == pytest.approx(1.056220, rel=1e-5)
        assert std_point.x == pytest.approx(0.052370, rel=1e-4)
        assert not std_point.tl_mode

    def test_x_identity(self, any_point):
        p = any_point
        alt = p.q * p.lam ** 2 + 1 / (p.q * p.lam ** 2) - p.q - 1 / p.q
        assert abs(p.x - alt) < 1e-12

    def test_y_and_sqrt(self, complex_point):
        p = complex_point
        assert abs(p.sqrt_x ** 2 - p.x) < 1e-12
        assert abs(p.y * p.qdiff - p.sqrt_x) < 1e-12

    def test_q_equal_one(self):
        with pytest.raises(DegenerateQ):
            derive_params(1, 0.3)

    def test_root_of_unity(self):
        with pytest.raises(DegenerateQ):
            derive_params(np.exp(2j * np.pi / 3), 0.3)

    def test_mu_zero(self):
        with pytest.raises(DegenerateRepresentation):
            derive_params(1.2, 0)

    def test_bad_omega(self):
        with pytest.raises(ParameterError):
            derive_params(1.2, 0.3, 2)

    def test_tl_point(self, tl_point):
        assert tl_point.tl_mode
        assert abs(tl_point.lam ** 2 * tl_point.q - 1) < 1e-12

    def test_to_dict(self, std_point):
        d = std_point.to_dict()
        assert d["omega"] == 1
        assert d["q"] == [1.2, 0.0]
        assert d["tl_mode"] is False


class TestQBracket:
    def test_two_at_q_two(self):
        p = derive_params(2, 0.3)
        assert qbracket(2, p) == pytest.approx(2.5)

    def test_mubr_matches_qbracket(self, std_point):
        assert std_point.mubr(2, 1) == pytest.approx(qbracket(2 * 0.3 + 1, std_point))

    def test_cartan_bracket_diagonal(self, std_point):
        K = np.diag([1, 1.2, 1 / 1.2, 1]).astype(complex)
        out = np.diag(cartan_qbracket(K, 0, std_point))
        assert out[0] == pytest.approx(0)
        assert out[1] == pytest.approx(1)
        assert out[2] == pytest.approx(-1)

    def test_singular_cartan(self, std_point):
        with pytest.raises(SingularCartan):
            cartan_qbracket(np.diag([1, 0, 1, 1]), 0, std_point)

    def test_tl_params_is_minus_half(self):
        assert tl_params(1.4).mu == -0.5
