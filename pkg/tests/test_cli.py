#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import json

import numpy as np
import pytest

from uqsl21chain import cli

CONFIG = """
tolerances:
  seed: 7
parameters:
  grid:
    - {q: "1.2", mu: "0.3", omega: 1}
boundary:
  c_values: ["0.5"]
sampling: {ybe: 2, inversion: 2, pt: 2, crossing: 2, reflection: 2, chain: 1}
tl:
  q: "1.4"
"""


@pytest.fixture
def config_path(tmp_path, monkeypatch):
    monkeypatch.setattr(cli, "_LOGGING_READY", True)
    path = tmp_path / "config.yaml"
    path.write_text(CONFIG, encoding="utf-8")
    return str(path)


def run(config_path, *argv):
    return cli.main(["--config", config_path, *argv])


def read_matrix(path):
    payload = json.loads(path.read_text(encoding="utf-8"))
    data = np.array(payload["data"])
    return payload, (data[:, 0] + 1j * data[:, 1]).reshape(payload["dim"], payload["dim"])


class TestVerify:
    def test_passing_suite(self, config_path, tmp_path):
        out = tmp_path / "report.json"
        code = run(config_path, "verify", "--suite", "algebra", "--q", "1.2", "--mu", "0.3", "--out", str(out))
        assert code == 0
        report = json.loads(out.read_text(encoding="utf-8"))
        assert report["passed"] is True
        assert report["metadata"]["seed"] == 7
        assert all("residual" in c for c in report["checks"])

    def test_tl_forces_mu(self, config_path, tmp_path):
        out = tmp_path / "tl.json"
        assert run(config_path, "verify", "--suite", "tl", "--q", "1.4", "--out", str(out)) == 0
        report = json.loads(out.read_text(encoding="utf-8"))
        assert report["metadata"]["points"][0]["tl_mode"] is True

    def test_tl_sites_from_config(self, tmp_path, monkeypatch):
        monkeypatch.setattr(cli, "_LOGGING_READY", True)
        path = tmp_path / "config.yaml"
        path.write_text(CONFIG.replace('  q: "1.4"', '  q: "1.4"\n  sites: 4'), encoding="utf-8")
        seen = []

        def capture(names, ctx):
            seen.append(ctx.sites)
            return []

        monkeypatch.setattr(cli, "run_suites", capture)
        assert run(str(path), "verify", "--suite", "tl") == 0
        assert run(str(path), "verify", "--suite", "tl", "--sites", "3") == 0
        assert seen == [4, 3]

    def test_degenerate_q(self, config_path):
        assert run(config_path, "verify", "--suite", "ybe", "--q", "1", "--mu", "0.3") == 2

    def test_unknown_suite(self, config_path):
        assert run(config_path, "verify", "--suite", "bogus", "--q", "1.2", "--mu", "0.3") == 2

    def test_missing_mu(self, config_path):
        assert run(config_path, "verify", "--suite", "algebra", "--q", "1.2") == 2

    def test_grid_from_config(self, config_path, tmp_path):
        out = tmp_path / "grid.json"
        assert run(config_path, "verify", "--suite", "coproduct", "--out", str(out)) == 0
        assert len(json.loads(out.read_text(encoding="utf-8"))["metadata"]["points"]) == 1

    def test_deterministic(self, config_path, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        for out in (a, b):
            run(config_path, "verify", "--suite", "ybe", "--q", "1.2", "--mu", "0.3", "--out", str(out))
        assert a.read_bytes() == b.read_bytes()

    def test_text_format(self, config_path, tmp_path):
        out = tmp_path / "report.txt"
        run(config_path, "verify", "--suite", "algebra", "--q", "1.2", "--mu", "0.3",
            "--format", "text", "--out", str(out))
        assert "[PASS]" in out.read_text(encoding="utf-8")

    def test_missing_config(self, tmp_path, monkeypatch):
        monkeypatch.setattr(cli, "_LOGGING_READY", True)
        assert cli.main(["--config", str(tmp_path / "none.yaml"), "verify"]) == 2


class TestBuild:
    def test_braid(self, config_path, tmp_path):
        out = tmp_path / "b.json"
        assert run(config_path, "build", "--object", "b", "--q", "1.2", "--mu", "0.3", "--out", str(out)) == 0
        payload, mat = read_matrix(out)
        assert payload["dim"] == 16
        assert payload["format"] == "dense-complex-rowmajor"
        assert len(payload["data"]) == 256

    def test_trivial_kplus_is_m(self, config_path, tmp_path):
        out = tmp_path / "k.json"
        assert run(config_path, "build", "--object", "kplus", "--family", "trivial",
                   "--q", "1.2", "--mu", "0.3", "--out", str(out)) == 0
        _, mat = read_matrix(out)
        assert np.allclose(mat, np.diag([1, -1, -1.44, 1.44]))

    def test_open_ferm_chain(self, config_path, tmp_path):
        out = tmp_path / "h.json"
        assert run(config_path, "build", "--object", "h-open", "--model", "ferm", "--sites", "3",
                   "--q", "1.2", "--mu", "0.3", "--out", str(out)) == 0
        payload, _ = read_matrix(out)
        assert payload["dim"] == 64 and payload["sites"] == 3

    def test_rcheck_at_zero(self, config_path, tmp_path):
        out = tmp_path / "r.json"
        assert run(config_path, "build", "--object", "rcheck@0", "--q", "1.2", "--mu", "0.3", "--out", str(out)) == 0
        _, mat = read_matrix(out)
        assert np.allclose(mat, np.eye(16))

    def test_invalid_object(self, config_path):
        assert run(config_path, "build", "--object", "nothing", "--q", "1.2", "--mu", "0.3") == 2


class TestSpectrumCommand:
    def test_two_sites(self, config_path, tmp_path):
        out = tmp_path / "s.json"
        assert run(config_path, "spectrum", "--model", "dist", "--sites", "2",
                   "--q", "1.2", "--mu", "0.3", "--out", str(out)) == 0
        data = json.loads(out.read_text(encoding="utf-8"))
        assert sorted(g["multiplicity"] for g in data["groups"]) == [4, 4, 8]

    def test_dist_and_ferm_match(self, config_path, tmp_path):
        spectra = []
        for model in ("dist", "ferm"):
            out = tmp_path / f"{model}.json"
            run(config_path, "spectrum", "--model", model, "--sites", "3", "--q", "1.2", "--mu", "0.3",
                "--out", str(out))
            values = json.loads(out.read_text(encoding="utf-8"))["eigenvalues"]
            spectra.append(np.array([complex(*v) for v in values]))
        assert np.max(np.abs(spectra[0] - spectra[1])) < 1e-8

    def test_size_limit(self, config_path):
        assert run(config_path, "spectrum", "--sites", "9", "--q", "1.2", "--mu", "0.3") == 2
