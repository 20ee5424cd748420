#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
单格点费米子算子与两格点 Hamiltonian 的费米子形式

态的约定: |1> = c†↓c†↑|∅>，|2> = c†↓|∅>，|3> = c†↑|∅>，|4> = |∅>。
不同格点上的算子直接张量积，彼此对易。
"""

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Tuple

import numpy as np
from loguru import logger

from .braid import explicit_braid
from .config import ToleranceConfig, default_tolerances
from .errors import ConventionUnresolvable, InvalidChainSpec
from .reports import CheckReport, RelationReport, commutator_residual, off_identity, product_residual, rel_residual
from .scalars import DeformParams
from .uqsl21 import elementary

E = elementary
N_UP = E(1, 1) + E(3, 3)
N_DOWN = E(1, 1) + E(2, 2)
IDENTITY = np.eye(4, dtype=complex)

MODELS = ("dist", "ferm")


@dataclass(frozen=True)
class FermionOps:
    """单格点的产生湮灭算子、粒子数、自旋升降与宇称"""
    cU_dag: np.ndarray
    cU: np.ndarray
    cD_dag: np.ndarray
    cD: np.ndarray
    nU: np.ndarray
    nD: np.ndarray
    n: np.ndarray
    Sp: np.ndarray
    Sm: np.ndarray
    parity: np.ndarray
    signs: Tuple[int, int, int, int]  # (s12, s13, s24, s34)

    def check(self, tol: Optional[ToleranceConfig] = None) -> RelationReport:
        """
        单格点关系

        同种粒子反对易；两种粒子在同一格点上对易(报告反对易子的大小)。
        """
        tol = tol or default_tolerances
        t = tol.identity_tol
        report = RelationReport()
        for name, c, cd, num in (("up", self.cU, self.cU_dag, self.nU),
                                 ("down", self.cD, self.cD_dag, self.nD)):
            report.add(CheckReport.make(f"{{c_{name}, c_{name}^+}} = Id", rel_residual(c @ cd + cd @ c, IDENTITY), t))
            report.add(CheckReport.make(f"c_{name}^2 = 0", product_residual((c, c)), t))
            report.add(CheckReport.make(f"n_{name} = c^+ c", rel_residual(cd @ c, num), t))
        report.add(CheckReport.make(
            "[c_up, c_down^+] = 0", commutator_residual(self.cU, self.cD_dag), t))
        report.add(CheckReport.make(
            "[c_up, c_down] = 0", commutator_residual(self.cU, self.cD), t))
        report.add(CheckReport.make(
            "{c_up, c_down^+} (species commute on site)",
            float(np.linalg.norm(self.cU @ self.cD_dag + self.cD_dag @ self.cU)), t, informative=True))
        report.add(CheckReport.make(
            "parity = 1 - 2n + 4 nU nD",
            rel_residual(self.parity, IDENTITY - 2 * self.n + 4 * self.nU @ self.nD), t))
        return report


def _build_ops(signs: Tuple[int, int, int, int]) -> FermionOps:
    s12, s13, s24, s34 = signs
    cD_dag = s24 * E(2, 4) + s13 * E(1, 3)
    cU_dag = s34 * E(3, 4) + s12 * E(1, 2)
    cD, cU = cD_dag.T.copy(), cU_dag.T.copy()
    nU = cU_dag @ cU
    nD = cD_dag @ cD
    n = nU + nD
    return FermionOps(
        cU_dag=cU_dag, cU=cU, cD_dag=cD_dag, cD=cD, nU=nU, nD=nD, n=n,
        Sp=cU_dag @ cD, Sm=cD_dag @ cU,
        parity=IDENTITY - 2 * n + 4 * nU @ nD,
        signs=signs,
    )


def _respects_state_labels(ops: FermionOps) -> bool:
    vac = np.zeros(4, dtype=complex)
    vac[3] = 1.0
    unit = np.eye(4, dtype=complex)
    return (np.allclose(ops.cD_dag @ vac, unit[1])
            and np.allclose(ops.cU_dag @ vac, unit[2])
            and np.allclose(ops.cD_dag @ ops.cU_dag @ vac, unit[0])
            and np.allclose(ops.nU, N_UP) and np.allclose(ops.nD, N_DOWN))


def _site(op: np.ndarray, site: int) -> np.ndarray:
    return np.kron(op, IDENTITY) if site == 1 else np.kron(IDENTITY, op)


def h_two_site_with(model: str, p: DeformParams, ops: FermionOps) -> np.ndarray:
    """按给定的费米子算子组装两格点 Hamiltonian"""
    if model not in MODELS:
        raise InvalidChainSpec(f"未知模型: {model}")
    q, lam, w, y = p.q, p.lam, p.omega, p.y
    sq = p.qpow(0.5)
    m, m1, m21 = p.mubr(1, 0), p.mubr(1, 1), p.mubr(2, 1)
    one = np.eye(16, dtype=complex)

    cu1d, cu2d = _site(ops.cU_dag, 1), _site(ops.cU_dag, 2)
    cu1, cu2 = _site(ops.cU, 1), _site(ops.cU, 2)
    cd1d, cd2d = _site(ops.cD_dag, 1), _site(ops.cD_dag, 2)
    cd1, cd2 = _site(ops.cD, 1), _site(ops.cD, 2)
    nU1, nU2 = _site(ops.nU, 1), _site(ops.nU, 2)
    nD1, nD2 = _site(ops.nD, 1), _site(ops.nD, 2)

    both = -m + m1 + (sq - 1 / sq) * y
    pair = w * (cu2d @ cd2d @ cd1 @ cu1 + cu1d @ cd1d @ cd2 @ cu2)
    up = (cu2d @ cu1 + cu1d @ cu2) @ (
        -m * one + (m + y / sq) * nD1 + (m - sq * y) * nD2 + both * nD1 @ nD2)
    down = w * (cd2d @ cd1 + cd1d @ cd2) @ (
        -m * one + (m - sq * y) * nU1 + (m + y / sq) * nU2 + both * nU1 @ nU2)
    diag = nU1 @ nD1 + nU2 @ nD2 - m21 * one
    if model == "dist":
        diag = diag + q * lam * m * (nU1 + nD1) + m / (q * lam) * (nU2 + nD2)
    else:
        diag = diag + q * lam * m * (nU1 + nD2) + m / (q * lam) * (nU2 + nD1)
    return pair + up + down + diag


def fermion_ops(p: DeformParams, tol: Optional[ToleranceConfig] = None) -> FermionOps:
    """
    确定产生湮灭算子的符号约定

    枚举与态标记相容的符号组合，选出使 H^dist = (b - b^-1)/(q - q^-1) 的那一组。

    Raises:
        ConventionUnresolvable: 没有任何组合满足
    """
    tol = tol or default_tolerances
    return _select_ops(p, tol.identity_tol)


@lru_cache(maxsize=64)
def _select_ops(p: DeformParams, identity_tol: float) -> FermionOps:
    pair = explicit_braid(p)
    target = (pair.b - pair.binv) / p.qdiff
    for signs in itertools.product((1, -1), repeat=4):
        ops = _build_ops(signs)
        if not _respects_state_labels(ops):
            continue
        res = rel_residual(h_two_site_with("dist", p, ops), target)
        logger.debug(f"符号组合 {signs}: 残差 {res:.3e}")
        if res <= identity_tol:
            return ops
    raise ConventionUnresolvable("没有符号组合能复现 (b - b^-1)/(q - q^-1)")


def h_two_site(model: str, p: DeformParams, tol: Optional[ToleranceConfig] = None) -> np.ndarray:
    """
    两格点 Hamiltonian，model 为 "dist" 或 "ferm"

    dist 等于 (b - b^-1)/(q - q^-1)；ferm 与 dist 相差 x/(q-q^-1) (n↓2 - n↓1)。
    """
    return h_two_site_with(model, p, fermion_ops(p, tol))


def two_site_report(p: DeformParams, tol: Optional[ToleranceConfig] = None) -> RelationReport:
    """两格点 Hamiltonian 与辫子算子的比对，单位阵分量总是报告"""
    tol = tol or default_tolerances
    t = tol.identity_tol
    pair = explicit_braid(p)
    dist = h_two_site("dist", p, tol)
    ferm = h_two_site("ferm", p, tol)
    target = (pair.b - pair.binv) / p.qdiff
    offset = off_identity(dist - target)
    scale = complex(np.vdot(target, dist) / np.vdot(target, target))
    report = fermion_ops(p, tol).check(tol)
    report.add(CheckReport.make(
        "H^dist = (b - b^-1)/(q - q^-1)", rel_residual(dist, target), t,
        identity_offset=offset["offset"], scale=scale))
    w = p.x / p.qdiff
    report.add(CheckReport.make(
        "H^ferm - H^dist = w (nD_2 - nD_1)",
        rel_residual(ferm - dist, w * (_site(N_DOWN, 2) - _site(N_DOWN, 1))), t))
    return report


__all__ = [
    "N_UP", "N_DOWN", "MODELS", "FermionOps", "fermion_ops", "h_two_site",
    "h_two_site_with", "two_site_report",
]
