#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import numpy as np
import pytest

from uqsl21chain.config import settings
from uqsl21chain.coproduct import (
    ChainOperator,
    coproduct_element,
    coproduct_generator,
    coproduct_generators,
    coproduct_L,
    coproduct_string_form,
    embed,
    embed_legs,
)
from uqsl21chain.errors import SiteOutOfRange, SizeLimit, UnknownToken
from uqsl21chain.uqsl21 import (
    GENERATOR_NAMES,
    build_rep,
    casimir_C,
    check_defining_relations,
    fermionic_basis,
)


class TestTwoSiteCoproduct:
    @pytest.mark.parametrize("name", GENERATOR_NAMES)
    def test_mask_matches_string_form(self, std_point, name):
        g = build_rep(std_point)
        assert np.allclose(coproduct_generator(name, g, std_point), coproduct_string_form(name, g), atol=1e-12)

    def test_homomorphism(self, any_point, tol):
        g = build_rep(any_point)
        report = check_defining_relations(coproduct_generators(g, any_point), tol)
        assert report.passed, [e.name for e in report.failures()]

    def test_homomorphism_fermionic(self, std_point, tol):
        fg = fermionic_basis(build_rep(std_point))
        assert check_defining_relations(coproduct_generators(fg, std_point), tol).passed

    def test_cartan_is_group_like(self, std_point):
        g = build_rep(std_point)
        assert np.allclose(coproduct_generator("k1", g, std_point), np.kron(g.k1, g.k1))

    def test_casimir_token(self, std_point):
        g = build_rep(std_point)
        dg = coproduct_generators(g, std_point)
        assert np.allclose(coproduct_element("C0", g, std_point), casimir_C(0, dg, std_point))

    def test_word_product(self, std_point):
        g = build_rep(std_point)
        dg = coproduct_generators(g, std_point)
        assert np.allclose(coproduct_element("e1 f2", g, std_point), dg.e1 @ dg.f2)

    def test_unknown_token(self, std_point):
        with pytest.raises(UnknownToken):
            coproduct_element("x7", build_rep(std_point), std_point)


class TestIteratedCoproduct:
    @pytest.mark.parametrize("name", GENERATOR_NAMES)
    def test_coassociativity(self, std_point, name):
        g = build_rep(std_point)
        left = coproduct_L(name, 3, g, std_point, "left").mat
        right = coproduct_L(name, 3, g, std_point, "right").mat
        assert np.allclose(left, right, atol=1e-12)

    def test_two_sites_equals_coproduct(self, std_point):
        g = build_rep(std_point)
        assert np.allclose(coproduct_L("e2", 2, g, std_point).mat, coproduct_generator("e2", g, std_point))

    def test_one_site_is_generator(self, std_point):
        g = build_rep(std_point)
        assert np.allclose(coproduct_L("f1", 1, g, std_point).mat, g.f1)

    def test_relations_on_three_sites(self, std_point, tol):
        g = build_rep(std_point)
        L3 = {name: coproduct_L(name, 3, g, std_point).mat for name in GENERATOR_NAMES}
        anti = L3["e2"] @ L3["f2"] + L3["f2"] @ L3["e2"]
        k2 = L3["k2"]
        assert np.allclose(anti, (k2 - np.linalg.inv(k2)) / std_point.qdiff, atol=1e-10)

    def test_size_limit(self, std_point):
        with pytest.raises(SizeLimit):
            coproduct_L("e1", settings.max_sites + 1, build_rep(std_point), std_point)


class TestEmbedding:
    def test_embed_single_site(self):
        op = np.diag([1, 2, 3, 4]).astype(complex)
        assert np.allclose(embed(op, 2, 3).mat, np.kron(np.kron(np.eye(4), op), np.eye(4)))

    def test_embed_legs_matches_embed(self, std_pair):
        assert np.allclose(embed_legs(std_pair.b, (2, 3), 3).mat, embed(std_pair.b, 2, 3).mat)

    def test_embed_legs_reversed_is_swapped(self, std_pair):
        P = np.eye(16)[[4 * (k % 4) + k // 4 for k in range(16)]]
        assert np.allclose(embed_legs(std_pair.b, (2, 1), 2).mat, P @ std_pair.b @ P)

    def test_out_of_range(self, std_pair):
        with pytest.raises(SiteOutOfRange):
            embed(std_pair.b, 3, 3)
        with pytest.raises(SiteOutOfRange):
            embed_legs(std_pair.b, (1, 1), 3)

    def test_chain_operator_shape(self):
        with pytest.raises(ValueError):
            ChainOperator(2, np.eye(4))
        op = ChainOperator(1, np.eye(4)) * 2 + np.eye(4)
        assert np.allclose(op.mat, 3 * np.eye(4))
