#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import numpy as np
import pytest

from uqsl21chain.chains import ChainSpec, Model, h_open
from uqsl21chain.coproduct import embed
from uqsl21chain.errors import NotTLMode
from uqsl21chain.fermions import fermion_ops
from uqsl21chain.tl import h_tl, tl_from_braid, tl_suite


class TestTemperleyLieb:
    def test_requires_tl_point(self, std_point, tol):
        with pytest.raises(NotTLMode):
            h_tl(std_point, tol)

    def test_nilpotent(self, tl_point, tol):
        e = h_tl(tl_point, tol)
        assert np.linalg.norm(e @ e) < 1e-10 * max(1.0, np.linalg.norm(e))

    def test_tl_relations(self, tl_point, tol):
        e = h_tl(tl_point, tol)
        e1, e2 = embed(e, 1, 3).mat, embed(e, 2, 3).mat
        assert np.allclose(e1 @ e2 @ e1, e1, atol=1e-10)
        assert np.allclose(e2 @ e1 @ e2, e2, atol=1e-10)

    def test_braid_route(self, tl_point):
        eb = tl_from_braid(tl_point)
        assert np.linalg.norm(eb @ eb) < 1e-10 * max(1.0, np.linalg.norm(eb))

    def test_gauge_invariants(self, tl_point, tol):
        e = h_tl(tl_point, tol)
        eb = tl_from_braid(tl_point)
        assert np.allclose(np.diag(e), np.diag(eb), atol=1e-10)
        assert np.allclose(e * e.T, eb * eb.T, atol=1e-10)

    def test_suite(self, tl_point, tol):
        report = tl_suite(3, tl_point, tol)
        assert report.passed, [e.name for e in report.failures()]

    def test_parity_multiplied_square(self, tl_point, tol):
        report = tl_suite(3, tl_point, tol)
        entry = report.get("parity-multiplied: (Pe)^2 = alpha Pe")
        q = tl_point.q
        assert complex(*entry.detail["alpha"]) == pytest.approx(2 * (q + 1 / q))

    def test_parity_multiplied_tl_relation(self, tl_point, tol):
        parity = fermion_ops(tl_point, tol).parity
        f = np.kron(parity, np.eye(4)) @ h_tl(tl_point, tol)
        f1, f2 = embed(f, 1, 3).mat, embed(f, 2, 3).mat
        assert np.allclose(f1 @ f2 @ f1, f1, atol=1e-9)
        assert np.allclose(f2 @ f1 @ f2, f2, atol=1e-9)
        assert np.allclose(f, f.conj().T, atol=1e-10)

    def test_parity_multiplied_entries_are_hard(self, tl_point, tol):
        report = tl_suite(3, tl_point, tol)
        for name in ("parity-multiplied: f1 f2 f1 = f1", "parity-multiplied: f2 f1 f2 = f2",
                     "parity-multiplied: Pe hermitian (real q)"):
            entry = report.get(name)
            assert entry is not None and entry.passed and not entry.informative

    def test_printed_form_is_informative(self, tl_point, tol):
        report = tl_suite(3, tl_point, tol)
        printed = [e for e in report.entries if e.name.startswith("printed H_TL")]
        assert printed and all(e.informative for e in printed)

    def test_open_tl_chain(self, tl_point, tol):
        H = h_open(ChainSpec(3, Model.TL), tl_point, tol)
        assert H.mat.shape == (64, 64)
