#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
投影算子 O0/O1/O2、辫子算子 (b, b^-1) 与三次代数检查

b 有两条构造路径：显式矩阵元表与 Casimir 投影算子公式，两者必须逐项一致。
"""

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import scipy.linalg
from loguru import logger

from .config import ToleranceConfig, default_tolerances
from .coproduct import coproduct_generators, embed
from .errors import DegenerateRepresentation, FormulaMismatch
from .reports import (
    CheckReport, RelationReport, commutator_residual, match_eigenvalues, product_residual, rel_residual,
)
from .scalars import DeformParams
from .uqsl21 import GeneratorSet, casimir_C, elementary

# (i, j, k, l) 表示 E_ij ⊗ E_kl
_Index = Tuple[int, int, int, int]

PROJECTOR_RANKS = (4, 8, 4)


@dataclass(frozen=True)
class ProjectorTriple:
    """ρ⊗ρ 分解成 4、8、4 维不可约分量的投影算子"""
    O0: np.ndarray
    O1: np.ndarray
    O2: np.ndarray

    def as_list(self) -> List[np.ndarray]:
        return [self.O0, self.O1, self.O2]

    def ranks(self, tol: Optional[ToleranceConfig] = None) -> Tuple[int, ...]:
        """按本征值 1 的个数计秩"""
        tol = tol or default_tolerances
        return tuple(
            int(np.sum(np.abs(scipy.linalg.eigvals(O) - 1) <= tol.spectrum_tol))
            for O in self.as_list()
        )

    def check(self, tol: Optional[ToleranceConfig] = None, prefix: str = "") -> RelationReport:
        """O_a O_b = δ_ab O_a，和为单位阵，秩为 (4, 8, 4)"""
        tol = tol or default_tolerances
        t = tol.identity_tol
        ops = self.as_list()
        report = RelationReport()
        worst = 0.0
        for a in range(3):
            for b in range(3):
                target = ops[a] if a == b else 0
                worst = max(worst, rel_residual(ops[a] @ ops[b], target))
        report.add(CheckReport.make(f"{prefix}O_a O_b = delta_ab O_a", worst, t))
        report.add(CheckReport.make(
            f"{prefix}O0+O1+O2 = Id", rel_residual(sum(ops), np.eye(ops[0].shape[0])), t))
        ranks = self.ranks(tol)
        report.add(CheckReport.make(
            f"{prefix}ranks (4,8,4)", 0.0 if ranks == PROJECTOR_RANKS else 1.0, t, ranks=list(ranks)))
        return report


@dataclass(frozen=True)
class BraidPair:
    """辫子算子及其逆"""
    b: np.ndarray
    binv: np.ndarray


def braid_eigenvalues(p: DeformParams) -> Tuple[complex, complex, complex]:
    """b 在 O0、O1、O2 上的本征值 (qλ², -q, q^-1λ^-2)"""
    q, lam = p.q, p.lam
    return q * lam ** 2, -q, 1 / (q * lam ** 2)


def _tensor_sum(entries: Sequence[Tuple[complex, Sequence[_Index]]]) -> np.ndarray:
    E = elementary
    mat = np.zeros((16, 16), dtype=complex)
    for coef, indices in entries:
        for i, j, k, l in indices:
            mat += coef * np.kron(E(i, j), E(k, l))
    return mat


def explicit_braid(p: DeformParams) -> BraidPair:
    """
    按显式矩阵元表构造 b 与 b^-1

    x^(1/2) 与 q^(1/2) 取 DeformParams 中的主值。
    """
    q, lam, w, x = p.q, p.lam, p.omega, p.x
    sq = p.qpow(0.5)
    sx = p.sqrt_x
    qi = 1 / q
    b = _tensor_sum([
        (q * lam ** 2, [(1, 1, 1, 1)]),
        (q * lam ** 2 - q, [(1, 1, 2, 2), (1, 1, 3, 3)]),
        (x, [(1, 1, 4, 4)]),
        (q * lam, [(1, 2, 2, 1), (2, 1, 1, 2)]),
        (sx / sq, [(1, 2, 4, 3), (2, 1, 3, 4)]),
        (q * lam * w, [(1, 3, 3, 1), (3, 1, 1, 3)]),
        (-sq * sx * w, [(1, 3, 4, 2), (3, 1, 2, 4)]),
        (q * w, [(1, 4, 4, 1), (4, 1, 1, 4)]),
        (-q, [(2, 2, 2, 2), (3, 3, 3, 3)]),
        (qi - q, [(2, 2, 3, 3)]),
        (qi / lam ** 2 - q, [(2, 2, 4, 4), (3, 3, 4, 4)]),
        (-w, [(2, 3, 3, 2), (3, 2, 2, 3)]),
        (w / lam, [(2, 4, 4, 2), (4, 2, 2, 4)]),
        (1 / lam, [(3, 4, 4, 3), (4, 3, 3, 4)]),
        (qi / lam ** 2, [(4, 4, 4, 4)]),
    ])
    binv = _tensor_sum([
        (qi / lam ** 2, [(1, 1, 1, 1)]),
        (qi / lam, [(1, 2, 2, 1), (2, 1, 1, 2)]),
        (qi * w / lam, [(1, 3, 3, 1), (3, 1, 1, 3)]),
        (qi * w, [(1, 4, 4, 1), (4, 1, 1, 4)]),
        (qi / lam ** 2 - qi, [(2, 2, 1, 1), (3, 3, 1, 1)]),
        (-qi, [(2, 2, 2, 2), (3, 3, 3, 3)]),
        (-w, [(2, 3, 3, 2), (3, 2, 2, 3)]),
        (-sx * w / sq, [(2, 4, 3, 1), (4, 2, 1, 3)]),
        (lam * w, [(2, 4, 4, 2), (4, 2, 2, 4)]),
        (q - qi, [(3, 3, 2, 2)]),
        (sq * sx, [(3, 4, 2, 1), (4, 3, 1, 2)]),
        (lam, [(3, 4, 4, 3), (4, 3, 3, 4)]),
        (x, [(4, 4, 1, 1)]),
        (q * lam ** 2 - qi, [(4, 4, 2, 2), (4, 4, 3, 3)]),
        (q * lam ** 2, [(4, 4, 4, 4)]),
    ])
    return BraidPair(b=b, binv=binv)


def _require_generic(p: DeformParams, what: str) -> None:
    if p.tl_mode:
        raise DegenerateRepresentation(f"{what} 在 Temperley-Lieb 点不可用: [2μ+1] = 0")


def projectors_from_casimirs(
    g: GeneratorSet,
    p: DeformParams,
    base_p: int = 0,
    tol: Optional[ToleranceConfig] = None,
) -> ProjectorTriple:
    """
    用 C_p、C_(p+1)、C_(p+2) 在 ρ⊗ρ 上的像线性组合出投影算子

    印刷的组合再乘以 -q^-1，与本表示中 ΔC_p 的归一化一致。

    Args:
        g: 区分基四维表示
        p: 参数点
        base_p: 组合起点 p
        tol: 容差配置

    Returns:
        ProjectorTriple
    """
    _require_generic(p, "Casimir 投影算子")
    tol = tol or default_tolerances
    dg = coproduct_generators(g, p)
    q, lam, pp = p.q, p.lam, base_p
    C0, C1, C2 = (casimir_C(base_p + k, dg, p, tol) for k in range(3))
    l8 = lam ** 8
    norm = -1 / q
    head = lam ** (-8 * pp - 4)
    O0 = (q ** 4 * head / (p.mubr(2, 0) * p.mubr(2, 1) * (q ** 4 - 1) * (q ** 2 - 1))
          * (-q ** 3 * l8 * C0 + (q + 1 / q) * C1 - C2 / (q ** 3 * l8)))
    O1 = (p.qpow(-2 * pp + 4) * head / (p.mubr(2, 0) * p.mubr(2, 2) * (q ** 4 - q ** 2) * (q ** 2 - 1))
          * (q ** 2 * l8 * C0 - (q ** 2 + q ** -2) * C1 + C2 / (q ** 2 * l8)))
    O2 = (p.qpow(-4 * pp + 4) * head / (p.mubr(2, 1) * p.mubr(2, 2) * (q ** 4 - q ** 2) * (q ** 4 - 1))
          * (-q * l8 * C0 + (q + 1 / q) * C1 - C2 / (q * l8)))
    logger.debug(f"Casimir 投影算子: base_p={base_p}")
    return ProjectorTriple(O0=norm * O0, O1=norm * O1, O2=norm * O2)


def decomposition_coefficients(pp: int, p: DeformParams) -> Tuple[complex, complex, complex]:
    """ΔC_p = Σ c_a O_a 中的系数(归一化因子取 1)"""
    q, lam = p.q, p.lam
    head = lam ** (8 * pp - 4)
    return (
        head * p.mubr(2, 0) * p.mubr(2, 1),
        head * p.qpow(2 * pp - 1) * p.mubr(2, 0) * p.mubr(2, 2),
        head * p.qpow(4 * pp - 2) * p.mubr(2, 1) * p.mubr(2, 2),
    )


def check_decomposition(
    g: GeneratorSet,
    p: DeformParams,
    pp: int,
    triple: ProjectorTriple,
    tol: Optional[ToleranceConfig] = None,
) -> RelationReport:
    """
    检查 (ρ⊗ρ)ΔC_p 按投影算子的分解

    归一化因子按 1 断言；由 O0 分量测得的因子与印刷值 -q^-1 并列报告。
    """
    _require_generic(p, "ΔC_p 分解")
    tol = tol or default_tolerances
    t = tol.identity_tol
    dg = coproduct_generators(g, p)
    dC = casimir_C(pp, dg, p, tol)
    c0, c1, c2 = decomposition_coefficients(pp, p)
    rhs = c0 * triple.O0 + c1 * triple.O1 + c2 * triple.O2
    report = RelationReport()
    report.add(CheckReport.make(f"Delta C_{pp} decomposition", rel_residual(dC, rhs), t))
    measured = complex(np.trace(dC @ triple.O0) / PROJECTOR_RANKS[0]) / c0
    report.add(CheckReport.make(
        f"Delta C_{pp} normalization vs printed -1/q", abs(measured - (-1 / p.q)), t,
        informative=True, measured=measured, printed=-1 / p.q))
    return report


def braid_from_projectors(triple: ProjectorTriple, p: DeformParams) -> BraidPair:
    """b = -q Id + qλ([2μ]/[μ])O0 + λ^-1([2μ+2]/[μ+1])O2，b^-1 类似"""
    _require_generic(p, "投影算子构造 b")
    q, lam = p.q, p.lam
    r0 = p.mubr(2, 0) / p.mubr(1, 0)
    r2 = p.mubr(2, 2) / p.mubr(1, 1)
    ident = np.eye(triple.O0.shape[0], dtype=complex)
    b = -q * ident + q * lam * r0 * triple.O0 + r2 / lam * triple.O2
    binv = -ident / q + r0 / (q * lam) * triple.O0 + lam * r2 * triple.O2
    return BraidPair(b=b, binv=binv)


def braid_pair(
    g: GeneratorSet,
    p: DeformParams,
    tol: Optional[ToleranceConfig] = None,
) -> BraidPair:
    """
    辫子算子对

    显式矩阵元表总是可用；非 TL 点时再用 Casimir 投影算子构造一遍并逐项比对。

    Raises:
        FormulaMismatch: 两条路径不一致
    """
    tol = tol or default_tolerances
    pair = explicit_braid(p)
    if p.tl_mode:
        logger.debug("TL 点: 只使用显式矩阵元")
        return pair
    built = braid_from_projectors(projectors_from_casimirs(g, p, 0, tol), p)
    res = max(rel_residual(pair.b, built.b), rel_residual(pair.binv, built.binv))
    if res > tol.identity_tol:
        logger.error(f"显式 b 与投影算子构造的 b 不一致: 残差 {res:.3e}")
        raise FormulaMismatch(f"b 的两条构造路径残差 {res:.3e}")
    return pair


def projectors_from_braid(pair: BraidPair, p: DeformParams) -> ProjectorTriple:
    """由 b、b^-1 反解投影算子"""
    _require_generic(p, "由 b 反解投影算子")
    q, lam = p.q, p.lam
    m, m1 = p.mubr(1, 0), p.mubr(1, 1)
    m2, m21, m22 = p.mubr(2, 0), p.mubr(2, 1), p.mubr(2, 2)
    ident = np.eye(pair.b.shape[0], dtype=complex)
    b, binv = pair.b, pair.binv
    O0 = m / (m2 * m21) * (m1 * ident + (lam * b - binv / lam) / p.qdiff)
    O1 = m * m1 / (m2 * m22) * ((q * lam ** 2 + 1 / (q * lam ** 2)) * ident - b - binv)
    O2 = m1 / (m21 * m22) * (m * ident + (-b / (q * lam) + q * lam * binv) / p.qdiff)
    return ProjectorTriple(O0=O0, O1=O1, O2=O2)


def _cubic_factors(b: np.ndarray, roots: Sequence[complex]) -> List[np.ndarray]:
    ident = np.eye(b.shape[0], dtype=complex)
    return [b - r * ident for r in roots]


def _relsuppl(bi, bj, bi_inv, bj_inv, x, q):
    """展开形式的附加关系，左边应为零"""
    return (bi @ bj_inv @ bi - bj @ bi_inv @ bj - bi_inv @ bj @ bi_inv + bj_inv @ bi @ bj_inv
            - x * (bi @ bj_inv - bi_inv @ bj - bj @ bi_inv + bj_inv @ bi)
            - x * ((bi - bj) / q - q * (bi_inv - bj_inv)))


def check_cubic_algebra(
    pair: BraidPair,
    p: DeformParams,
    tol: Optional[ToleranceConfig] = None,
    triple: Optional[ProjectorTriple] = None,
) -> RelationReport:
    """
    三次特征方程、辫群关系、远距交换与附加关系

    Args:
        pair: 辫子算子对
        p: 参数点
        tol: 容差配置
        triple: 投影算子；给出时额外检查 b O_a = β_a O_a

    Returns:
        RelationReport
    """
    tol = tol or default_tolerances
    t = tol.identity_tol
    q, x = p.q, p.x
    b, binv = pair.b, pair.binv
    beta = braid_eigenvalues(p)
    report = RelationReport()

    report.add(CheckReport.make("b b^-1 = Id", rel_residual(b @ binv, np.eye(16)), t))
    report.add(CheckReport.make("cubic in b", product_residual(_cubic_factors(b, beta)), t))
    report.add(CheckReport.make("cubic in b^-1", product_residual(_cubic_factors(binv, [1 / r for r in beta])), t))

    b1, b2 = embed(b, 1, 3).mat, embed(b, 2, 3).mat
    i1, i2 = embed(binv, 1, 3).mat, embed(binv, 2, 3).mat
    report.add(CheckReport.make("braid b1 b2 b1 = b2 b1 b2", rel_residual(b1 @ b2 @ b1, b2 @ b1 @ b2), t))
    report.add(CheckReport.make(
        "far commutation b1 b3", commutator_residual(embed(b, 1, 4).mat, embed(b, 3, 4).mat), t))

    ident = np.eye(b1.shape[0], dtype=complex)
    lhs = (b1 - x * ident) @ i2 @ (b1 - x * ident) - i1 @ (b2 - x * ident) @ i1
    rhs = (b2 - x * ident) @ i1 @ (b2 - x * ident) - i2 @ (b1 - x * ident) @ i2
    report.add(CheckReport.make("supplementary relation", rel_residual(lhs, rhs), t))
    scale = max(1.0, float(np.linalg.norm(b1 @ i2 @ b1)))
    report.add(CheckReport.make(
        "supplementary relation (expanded)",
        float(np.linalg.norm(_relsuppl(b1, b2, i1, i2, x, q))) / scale, t))

    if triple is not None:
        for a, O in enumerate(triple.as_list()):
            report.add(CheckReport.make(f"b O{a} = beta_{a} O{a}", rel_residual(b @ O, beta[a] * O), t))

    expected = [beta[1]] * 8 + [beta[0]] * 4 + [beta[2]] * 4
    dist = match_eigenvalues(scipy.linalg.eigvals(b), expected)
    # TL 点 qλ² = q^-1λ^-2，b 不可对角化，本征值只有 sqrt(eps) 精度
    report.add(CheckReport.make(
        "eigenvalues of b", dist, tol.spectrum_tol, informative=p.tl_mode,
        expected=[beta[1], beta[0], beta[2]], multiplicities=[8, 4, 4]))
    logger.info(f"三次代数检查: 最大残差 {report.max_residual:.3e}")
    return report


def _fit(target: np.ndarray, basis: np.ndarray) -> Tuple[complex, float]:
    """最小二乘 target ≈ α basis，返回 (α, 拟合后相对残差)"""
    denom = np.vdot(basis, basis)
    alpha = complex(np.vdot(basis, target) / denom) if abs(denom) > 0 else 0.0
    norm = float(np.linalg.norm(target))
    res = float(np.linalg.norm(target - alpha * basis)) / norm if norm > 0 else 0.0
    return alpha, res


def bwm_failure_probe(
    pair: BraidPair,
    p: DeformParams,
    tol: Optional[ToleranceConfig] = None,
    threshold: float = 1e-3,
) -> RelationReport:
    """
    检查 BWM 商关系在本实现中不成立

    候选 e 取 span{Id, b, b^-1} 中的幂等元 O0 与 O2；e² = αe 必须成立，
    e_i e_(i±1) e_i = α'e_i 与 e_i b_(i±1) e_i = α''e_i 拟合后的残差必须超过 threshold。
    """
    tol = tol or default_tolerances
    triple = projectors_from_braid(pair, p)
    report = RelationReport()
    b1, b2 = embed(pair.b, 1, 3).mat, embed(pair.b, 2, 3).mat
    candidates: Dict[str, np.ndarray] = {"O0": triple.O0, "O2": triple.O2}
    for name, O in candidates.items():
        e1, e2 = embed(O, 1, 3).mat, embed(O, 2, 3).mat
        alpha, res = _fit(e1 @ e1, e1)
        report.add(CheckReport.make(f"{name}: e^2 = alpha e", res, tol.identity_tol, alpha=alpha))
        for label, (ea, eb, bb) in (("i+1", (e1, e2, b2)), ("i-1", (e2, e1, b1))):
            alpha1, res1 = _fit(ea @ eb @ ea, ea)
            report.add(CheckReport.make(
                f"{name}: e_i e_{label} e_i = alpha' e_i fails", res1, threshold,
                expect_failure=True, alpha=alpha1))
            alpha2, res2 = _fit(ea @ bb @ ea, ea)
            report.add(CheckReport.make(
                f"{name}: e_i b_{label} e_i = alpha'' e_i fails", res2, threshold,
                expect_failure=True, alpha=alpha2))
    return report


__all__ = [
    "ProjectorTriple", "BraidPair", "PROJECTOR_RANKS", "braid_eigenvalues", "explicit_braid",
    "projectors_from_casimirs", "decomposition_coefficients", "check_decomposition",
    "braid_from_projectors", "braid_pair", "projectors_from_braid", "check_cubic_algebra",
    "bwm_failure_probe",
]
