#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import numpy as np
import pytest

from uqsl21chain.errors import WrongBasis
from uqsl21chain.reports import off_identity
from uqsl21chain.uqsl21 import (
    Basis,
    build_rep,
    casimir_C,
    casimir_Q,
    check_casimir_relations,
    check_defining_relations,
    fermionic_basis,
    printed_rep,
    printed_rep_dictionary,
    scasimir_parity,
)


class TestRepresentation:
    def test_defining_relations(self, any_point, tol):
        report = check_defining_relations(build_rep(any_point), tol)
        assert report.passed, [e.name for e in report.failures()]

    def test_fermionic_basis_relations(self, any_point, tol):
        fg = fermionic_basis(build_rep(any_point))
        assert fg.basis is Basis.FERMIONIC
        report = check_defining_relations(fg, tol)
        assert report.passed, [e.name for e in report.failures()]

    def test_fermionic_basis_requires_distinguished(self, std_point):
        fg = fermionic_basis(build_rep(std_point))
        with pytest.raises(WrongBasis):
            fermionic_basis(fg)

    def test_gauge_parameter_keeps_relations(self, std_point, tol):
        assert check_defining_relations(build_rep(std_point, gamma=2.5), tol).passed

    def test_inverse_lookup(self, std_point):
        g = build_rep(std_point)
        assert np.allclose(g.get("k2inv") @ g.k2, np.eye(4))
        assert np.allclose(g.get("id"), np.eye(4))

    def test_printed_matrices_fail_relations(self, std_point, tol):
        report = check_defining_relations(printed_rep(std_point), tol)
        assert not report.passed

    def test_printed_dictionary(self, any_point, tol):
        report = printed_rep_dictionary(any_point, tol)
        assert report.passed
        assert report.get("printed matrices: defining relations").informative


class TestCasimirs:
    def test_all_relations(self, any_point, tol):
        report = check_casimir_relations(build_rep(any_point), any_point, tol=tol)
        assert report.passed, [e.name for e in report.failures()]

    @pytest.mark.parametrize("pp", [-1, 0, 1, 2, 3])
    def test_schur_scalar(self, std_point, pp):
        C = casimir_C(pp, build_rep(std_point), std_point)
        assert off_identity(C)["residual"] < 1e-11
        assert abs(off_identity(C)["offset"]) > 1e-6

    def test_q_plus_q_minus_vanishes(self, std_point):
        g = build_rep(std_point)
        prod = casimir_Q(1, "+", g, std_point) @ casimir_Q(2, "-", g, std_point)
        assert np.linalg.norm(prod) < 1e-10

    def test_scasimir_parity_squares_to_identity(self, std_point):
        g = build_rep(std_point)
        par = scasimir_parity(0, g, std_point)
        assert np.allclose(par @ par, np.eye(4), atol=1e-10)
        assert np.allclose(par @ g.e2, -g.e2 @ par, atol=1e-10)
        assert np.allclose(par @ g.e1, g.e1 @ par, atol=1e-10)

    def test_casimir_requires_distinguished(self, std_point):
        with pytest.raises(WrongBasis):
            casimir_C(0, fermionic_basis(build_rep(std_point)), std_point)
