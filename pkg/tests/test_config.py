#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import pytest
from pydantic import ValidationError

from uqsl21chain.config import Constants, Settings, ToleranceConfig, check_sites
from uqsl21chain.errors import SizeLimit
from uqsl21chain.utils.config_loader import ConfigLoader, parse_complex

CONFIG = """
tolerances:
  identity_tol: 1.0e-9
  seed: 3
parameters:
  grid:
    - {q: "1.2", mu: "0.3", omega: 1}
    - {q: "0.7+0.2i", mu: "-0.45", omega: -1}
boundary:
  c_values: ["0.5", "-2.3+0.4i"]
sampling:
  ybe: 4
tl:
  q: "1.5"
"""


@pytest.fixture
def loader(tmp_path):
    path = tmp_path / "config.yaml"
    path.write_text(CONFIG, encoding="utf-8")
    return ConfigLoader(str(path))


class TestParseComplex:
    @pytest.mark.parametrize("text, value", [
        ("1.2", 1.2),
        ("0.7+0.2i", complex(0.7, 0.2)),
        ("-2.3-0.4j", complex(-2.3, -0.4)),
        (" 1 + 1i ", complex(1, 1)),
        (3, 3),
    ])
    def test_forms(self, text, value):
        assert parse_complex(text) == value

    def test_garbage(self):
        with pytest.raises(ValueError):
            parse_complex("abc")


class TestConfigLoader:
    def test_tolerances_and_overrides(self, loader):
        tol = loader.get_tolerances()
        assert tol.identity_tol == 1e-9
        assert tol.seed == 3
        assert tol.fd_step == 1e-3
        assert loader.get_tolerances(seed=11, fd_tol=None).seed == 11

    def test_grid(self, loader):
        grid = loader.get_parameter_grid()
        assert grid[1] == {"q": complex(0.7, 0.2), "mu": -0.45, "omega": -1}

    def test_boundary_and_sampling(self, loader):
        assert loader.get_boundary_grid() == [0.5, complex(-2.3, 0.4)]
        sampling = loader.get_sampling()
        assert sampling["ybe"] == 4
        assert sampling["chain"] == 5

    def test_tl_point(self, loader):
        assert loader.get_tl_point() == {"q": 1.5, "sites": 3}

    def test_dotted_get(self, loader):
        assert loader.get("tolerances.seed") == 3
        assert loader.get("missing.key", "x") == "x"

    def test_missing_file(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            ConfigLoader(str(tmp_path / "nope.yaml"))


class TestSettings:
    def test_environment_override(self, monkeypatch):
        monkeypatch.setenv("UQCHAIN_MAX_SITES", "4")
        assert Settings().max_sites == 4

    def test_negative_tolerance(self):
        with pytest.raises(ValidationError):
            ToleranceConfig(identity_tol=-1)

    def test_check_sites(self):
        check_sites(3, limit=3)
        with pytest.raises(SizeLimit):
            check_sites(4, limit=3)

    def test_suite_names(self):
        assert "tl" in Constants.SUITES and len(Constants.SUITES) == 9
