#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
对角 K 矩阵族、反射方程残差与边界项闭式
"""

import cmath
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

import numpy as np

from .braid import BraidPair
from .config import ToleranceConfig, default_tolerances
from .errors import InvalidChainSpec, PoleAtC
from .fermions import N_DOWN, N_UP
from .reports import CheckReport, RelationReport, rel_residual
from .scalars import DeformParams
from .spectral import CrossingData, r21_matrix, r_matrix
from .uqsl21 import elementary


class Family(str, Enum):
    """K 矩阵解族"""
    TRIVIAL = "trivial"
    A = "a"
    B = "b"


class Side(str, Enum):
    MINUS = "minus"
    PLUS = "plus"


@dataclass(frozen=True)
class KMatrixSpec:
    """K 矩阵规格；C 为 K 矩阵自身的参数(平凡族忽略)"""
    side: Side
    family: Family = Family.TRIVIAL
    C: complex = 0.0

    def validate(self, p: DeformParams, tol: Optional[ToleranceConfig] = None) -> None:
        """
        Raises:
            PoleAtC: C 落在分母零点
        """
        tol = tol or default_tolerances
        eps = tol.genericity_tol
        if self.family == Family.TRIVIAL:
            return
        if abs(1 + self.C) <= eps:
            raise PoleAtC(f"{self.family.value} 族要求 C ≠ -1: C={self.C}")
        if self.family == Family.A and abs(1 + p.q ** 2 * self.C) <= eps:
            raise PoleAtC(f"a 族要求 C ≠ -q^-2: C={self.C}")


def trivial_specs() -> Tuple[KMatrixSpec, KMatrixSpec]:
    return KMatrixSpec(Side.MINUS), KMatrixSpec(Side.PLUS)


def _k_diagonal(family: Family, C: complex, u: complex, p: DeformParams) -> np.ndarray:
    if family == Family.TRIVIAL:
        return np.eye(4, dtype=complex)
    z = cmath.exp(u)
    if family == Family.A:
        q2C = p.q ** 2 * C
        diag = [(1 / z + C) * (1 / z + q2C), (z + C) * (1 / z + q2C),
                (z + C) * (1 / z + q2C), (z + C) * (z + q2C)]
        return np.diag(diag).astype(complex) / ((1 + C) * (1 + q2C))
    diag = [1 / z + C, 1 / z + C, z + C, z + C]
    return np.diag(diag).astype(complex) / (1 + C)


def k_minus(spec: KMatrixSpec, u: complex, p: DeformParams) -> np.ndarray:
    """
    K^-(u)，K^-(0) = Id

    Args:
        spec: side 必须为 minus
        u: 谱参数
        p: 参数点

    Returns:
        4×4 对角矩阵
    """
    if spec.side != Side.MINUS:
        raise InvalidChainSpec("k_minus 需要 minus 侧的规格")
    spec.validate(p)
    return _k_diagonal(spec.family, spec.C, u, p)


def k_plus(spec: KMatrixSpec, u: complex, p: DeformParams, cd: Optional[CrossingData] = None) -> np.ndarray:
    """K^+(u) = K^-(-u-ρ)^t M；平凡族给出 M"""
    if spec.side != Side.PLUS:
        raise InvalidChainSpec("k_plus 需要 plus 侧的规格")
    spec.validate(p)
    cd = cd or CrossingData.from_params(p)
    return _k_diagonal(spec.family, spec.C, -u - cd.rho_shift, p).T @ cd.M


def reflection_residual_minus(
    spec: KMatrixSpec,
    u: complex,
    v: complex,
    pair: BraidPair,
    p: DeformParams,
    tol: Optional[ToleranceConfig] = None,
) -> CheckReport:
    """R12(u-v) K1(u) R21(u+v) K2(v) = K2(v) R12(u+v) K1(u) R21(u-v)"""
    tol = tol or default_tolerances
    ident = np.eye(4, dtype=complex)
    K1 = np.kron(k_minus(spec, u, p), ident)
    K2 = np.kron(ident, k_minus(spec, v, p))
    lhs = r_matrix(u - v, pair, p) @ K1 @ r21_matrix(u + v, pair, p) @ K2
    rhs = K2 @ r_matrix(u + v, pair, p) @ K1 @ r21_matrix(u - v, pair, p)
    return CheckReport.make(
        f"reflection minus ({spec.family.value})", rel_residual(lhs, rhs), tol.identity_tol,
        u=u, v=v, C=spec.C)


def reflection_residual_plus(
    spec: KMatrixSpec,
    u: complex,
    v: complex,
    pair: BraidPair,
    p: DeformParams,
    cd: Optional[CrossingData] = None,
    tol: Optional[ToleranceConfig] = None,
) -> CheckReport:
    """对偶反射方程，带 2ρ 平移和 M 插入"""
    tol = tol or default_tolerances
    cd = cd or CrossingData.from_params(p)
    ident = np.eye(4, dtype=complex)
    # K^+ 为对角阵，部分转置不改变它
    K1 = np.kron(k_plus(spec, u, p, cd).T, ident)
    K2 = np.kron(ident, k_plus(spec, v, p, cd).T)
    M1 = np.kron(cd.M, ident)
    M1_inv = np.kron(cd.M_inv, ident)
    shift = -u - v - 2 * cd.rho_shift
    lhs = r_matrix(-u + v, pair, p) @ K1 @ M1_inv @ r21_matrix(shift, pair, p) @ M1 @ K2
    rhs = K2 @ M1 @ r_matrix(shift, pair, p) @ M1_inv @ K1 @ r21_matrix(-u + v, pair, p)
    return CheckReport.make(
        f"reflection plus ({spec.family.value})", rel_residual(lhs, rhs), tol.identity_tol,
        u=u, v=v, C=spec.C)


def c_plus_prime(c_plus: complex, p: DeformParams) -> complex:
    """C'+ = C+/(qλ²)"""
    return c_plus / (p.q * p.lam ** 2)


def c_plus_raw(c_prime: complex, p: DeformParams) -> complex:
    """C+ = qλ² C'+"""
    return p.q * p.lam ** 2 * c_prime


def boundary_weight(p: DeformParams) -> complex:
    """开链中边界项相对于 H^dist 体项的权重 x/(q - q^-1)"""
    return p.x / p.qdiff


def c_plus_sol(p: DeformParams) -> Tuple[complex, complex]:
    """使 dist 开链等于 ferm 开链的参数 C- = C'+ = (q - q^-1)/x - 1"""
    c = p.qdiff / p.x - 1
    return c, c


def _pole(value: complex, what: str, tol: ToleranceConfig) -> None:
    if abs(value) <= tol.genericity_tol:
        raise PoleAtC(f"边界项分母为零: {what}")


def boundary_term_first(family: Family, c_minus: complex, p: DeformParams,
                        tol: Optional[ToleranceConfig] = None) -> np.ndarray:
    """第 1 格点的边界项(粒子数形式)"""
    tol = tol or default_tolerances
    nU, nD = N_UP, N_DOWN
    if family == Family.TRIVIAL:
        return np.zeros((4, 4), dtype=complex)
    C = c_minus
    _pole(1 + C, "1 + C-", tol)
    if family == Family.B:
        return -nD / (1 + C)
    _pole(1 + p.q ** 2 * C, "1 + q^2 C-", tol)
    return -((p.q ** 2 - 1) * C * nU @ nD + (1 + C) * (nU + nD)) / ((1 + C) * (1 + p.q ** 2 * C))


def boundary_term_last(family: Family, c_plus_p: complex, p: DeformParams,
                       tol: Optional[ToleranceConfig] = None) -> np.ndarray:
    """第 L 格点的边界项(粒子数形式，参数为 C'+)"""
    tol = tol or default_tolerances
    nU, nD = N_UP, N_DOWN
    if family == Family.TRIVIAL:
        return np.zeros((4, 4), dtype=complex)
    C = c_plus_p
    _pole(1 + C, "1 + C'+", tol)
    if family == Family.B:
        return nD / (1 + C)
    _pole(1 + p.q ** 2 * C, "1 + q^2 C'+", tol)
    return ((1 - p.q ** 2) * C * nU @ nD + (1 + p.q ** 2 * C) * (nU + nD)) / ((1 + C) * (1 + p.q ** 2 * C))


def boundary_terms(
    fam_minus: Family,
    c_minus: complex,
    fam_plus: Family,
    c_plus_p: complex,
    p: DeformParams,
    tol: Optional[ToleranceConfig] = None,
) -> Tuple[np.ndarray, np.ndarray]:
    """
    边界项 (B1, BL)

    Args:
        fam_minus: K^- 的族
        c_minus: C-
        fam_plus: K^+ 的族
        c_plus_p: 重新定义后的参数 C'+ = C+/(qλ²)
        p: 参数点

    Returns:
        两个 4×4 矩阵
    """
    return (boundary_term_first(fam_minus, c_minus, p, tol),
            boundary_term_last(fam_plus, c_plus_p, p, tol))


def boundary_terms_raw(
    fam_minus: Family,
    c_minus: complex,
    fam_plus: Family,
    c_plus: complex,
    p: DeformParams,
) -> Tuple[np.ndarray, np.ndarray]:
    """矩阵单位形式的边界项，B_L 直接用 K^+ 的参数 C+"""
    E = elementary
    q, lam = p.q, p.lam
    B1 = np.zeros((4, 4), dtype=complex)
    BL = np.zeros((4, 4), dtype=complex)
    C = c_minus
    if fam_minus == Family.A:
        B1 = -((2 + C + q ** 2 * C) * E(1, 1) + (1 + C) * (E(2, 2) + E(3, 3))) / ((1 + C) * (1 + q ** 2 * C))
    elif fam_minus == Family.B:
        B1 = -(E(1, 1) + E(2, 2)) / (1 + C)
    a = c_plus / (q * lam ** 2)
    c = q * c_plus / lam ** 2
    if fam_plus == Family.A:
        BL = ((2 + a + c) * E(1, 1) + (1 + c) * (E(2, 2) + E(3, 3))) / ((1 + a) * (1 + c))
    elif fam_plus == Family.B:
        BL = (E(1, 1) + E(2, 2)) / (1 + a)
    return B1, BL


def check_boundary_forms(
    c_minus: complex,
    c_plus: complex,
    p: DeformParams,
    tol: Optional[ToleranceConfig] = None,
) -> RelationReport:
    """矩阵单位形式与粒子数形式一致(经 C+ = qλ² C'+ 换算)"""
    tol = tol or default_tolerances
    report = RelationReport()
    for fam in (Family.A, Family.B):
        raw = boundary_terms_raw(fam, c_minus, fam, c_plus, p)
        n_form = boundary_terms(fam, c_minus, fam, c_plus_prime(c_plus, p), p, tol)
        report.add(CheckReport.make(f"B1 forms ({fam.value})", rel_residual(raw[0], n_form[0]), tol.identity_tol))
        report.add(CheckReport.make(f"BL forms ({fam.value})", rel_residual(raw[1], n_form[1]), tol.identity_tol))
    return report


def check_k_at_zero(spec: KMatrixSpec, p: DeformParams, tol: Optional[ToleranceConfig] = None) -> CheckReport:
    """K^-(0) = Id 或 tr K^+(0) = 0"""
    tol = tol or default_tolerances
    if spec.side == Side.MINUS:
        return CheckReport.make(
            f"K-(0) = Id ({spec.family.value})", rel_residual(k_minus(spec, 0, p), np.eye(4)), tol.identity_tol)
    return CheckReport.make(
        f"tr K+(0) = 0 ({spec.family.value})", abs(np.trace(k_plus(spec, 0, p))), tol.identity_tol)


__all__ = [
    "Family", "Side", "KMatrixSpec", "trivial_specs", "k_minus", "k_plus",
    "reflection_residual_minus", "reflection_residual_plus", "c_plus_prime", "c_plus_raw",
    "boundary_weight", "c_plus_sol", "boundary_term_first", "boundary_term_last",
    "boundary_terms", "boundary_terms_raw", "check_boundary_forms", "check_k_at_zero",
]
