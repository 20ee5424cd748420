#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
λ = q^(-1/2) 处的 Temperley-Lieb 特化

此时 [2μ+1] = 0，投影算子路线退化，两格点算子直接由费米子表达式给出；
另一条路线由辫子算子 e = (b - 1)(b + q)/(q - 1) 构造，二者只差对角规范变换。
"""

import itertools
from typing import Dict, List, Optional, Tuple

import numpy as np
from loguru import logger

from .braid import explicit_braid
from .config import ToleranceConfig, default_tolerances
from .coproduct import coproduct_generators, embed
from .errors import NotTLMode, UqChainError
from .fermions import FermionOps, fermion_ops
from .reports import CheckReport, RelationReport, commutator_residual, product_residual, rel_residual
from .scalars import DeformParams
from .uqsl21 import build_rep, casimir_Q

IDENTITY = np.eye(4, dtype=complex)


def _require_tl(p: DeformParams) -> None:
    if not p.tl_mode:
        raise NotTLMode(f"需要 λ² = q^-1: q={p.q}, mu={p.mu}")


def _site(op: np.ndarray, site: int) -> np.ndarray:
    return np.kron(op, IDENTITY) if site == 1 else np.kron(IDENTITY, op)


def _h_tl_terms(p: DeformParams, ops: FermionOps, pair_coef: complex, exchange_coef: complex,
                nn_coef: complex) -> np.ndarray:
    q, w = p.q, p.omega
    cu1d, cu2d = _site(ops.cU_dag, 1), _site(ops.cU_dag, 2)
    cu1, cu2 = _site(ops.cU, 1), _site(ops.cU, 2)
    cd1d, cd2d = _site(ops.cD_dag, 1), _site(ops.cD_dag, 2)
    cd1, cd2 = _site(ops.cD, 1), _site(ops.cD, 2)
    nU1, nU2 = _site(ops.nU, 1), _site(ops.nU, 2)
    nD1, nD2 = _site(ops.nD, 1), _site(ops.nD, 2)
    sp1, sp2 = _site(ops.Sp, 1), _site(ops.Sp, 2)
    sm1, sm2 = _site(ops.Sm, 1), _site(ops.Sm, 2)

    pair = pair_coef * (cu2d @ cd2d @ cd1 @ cu1 + cu1d @ cd1d @ cd2 @ cu2)
    exchange = exchange_coef * (sp1 @ sm2 + sm1 @ sp2)
    up = w * (cu2d @ cu1 - cu1d @ cu2) @ (nD1 / q + q * nD2 - (q + 1 / q) * nD1 @ nD2)
    down = (-cd2d @ cd1 + cd1d @ cd2) @ (nU1 + nU2 - 2 * nU1 @ nU2)
    diag = (nU1 - nU2) @ (nD1 / q - q * nD2 + nn_coef * nD1 @ nD2)
    return pair + exchange + up + down + diag


def h_tl(p: DeformParams, tol: Optional[ToleranceConfig] = None) -> np.ndarray:
    """
    Temperley-Lieb 两格点算子，e² = 0

    配对跃迁与自旋交换系数为 +ω，n↓n↓ 对角项系数为 +(q - q^-1)。

    Raises:
        NotTLMode: 参数点不在特化点
    """
    _require_tl(p)
    return _h_tl_terms(p, fermion_ops(p, tol), p.omega, p.omega, p.qdiff)


def h_tl_printed(p: DeformParams, tol: Optional[ToleranceConfig] = None) -> np.ndarray:
    """逐字转录的印刷表达式(配对系数 1，自旋交换 -1，n↓n↓ 系数 -(q - q^-1))"""
    _require_tl(p)
    return _h_tl_terms(p, fermion_ops(p, tol), 1.0, -1.0, -p.qdiff)


def tl_from_braid(p: DeformParams) -> np.ndarray:
    """e = (b - 1)(b + q)/(q - 1)"""
    _require_tl(p)
    b = explicit_braid(p).b
    one = np.eye(16, dtype=complex)
    return (b - one) @ (b + p.q * one) / (p.q - 1)


def _fit(target: np.ndarray, basis: np.ndarray) -> Tuple[complex, float]:
    denom = np.vdot(basis, basis)
    alpha = complex(np.vdot(basis, target) / denom) if abs(denom) > 0 else 0.0
    return alpha, rel_residual(target, alpha * basis)


def _tl_relations(e: np.ndarray, L: int, label: str, tol: float,
                  informative: bool = False) -> List[CheckReport]:
    e1, e2 = embed(e, 1, L).mat, embed(e, 2, L).mat
    entries = [
        CheckReport.make(f"{label}: e^2 = 0", product_residual((e1, e1)), tol, informative=informative),
        CheckReport.make(f"{label}: e1 e2 e1 = e1", rel_residual(e1 @ e2 @ e1, e1), tol, informative=informative),
        CheckReport.make(f"{label}: e2 e1 e2 = e2", rel_residual(e2 @ e1 @ e2, e2), tol, informative=informative),
    ]
    far = commutator_residual(embed(e, 1, 4).mat, embed(e, 3, 4).mat)
    entries.append(CheckReport.make(f"{label}: far commutation", far, tol, informative=informative))
    return entries


def q_plus_span_residual(h: np.ndarray, p: DeformParams, p_range=range(4)) -> float:
    """h 到 span{Id, ΔQ+_p, ΔQ+_p ΔQ+_r} 的最小二乘距离(相对)"""
    g = build_rep(p)
    dg = coproduct_generators(g, p)
    Q: Dict[int, np.ndarray] = {pp: casimir_Q(pp, "+", dg, p) for pp in p_range}
    basis = [np.eye(16, dtype=complex)] + list(Q.values())
    basis += [Q[a] @ Q[b] for a, b in itertools.combinations_with_replacement(sorted(Q), 2)]
    A = np.stack([m.ravel() for m in basis], axis=1)
    coef, *_ = np.linalg.lstsq(A, h.ravel(), rcond=None)
    return rel_residual(A @ coef, h.ravel())


def tl_suite(L: int, p: DeformParams, tol: Optional[ToleranceConfig] = None) -> RelationReport:
    """
    Temperley-Lieb 关系、规范不变量、宇称乘积与 Q+ 生成检查

    Args:
        L: 链长(至少 3)
        p: 特化点参数
        tol: 容差配置

    Returns:
        RelationReport
    """
    _require_tl(p)
    tol = tol or default_tolerances
    t = tol.identity_tol
    L = max(L, 3)
    report = RelationReport()
    e = h_tl(p, tol)
    report.extend(_tl_relations(e, L, "H_TL", t))

    eb = tl_from_braid(p)
    report.extend(_tl_relations(eb, L, "braid route", t))
    report.add(CheckReport.make("gauge: diag(H_TL) = diag(e_b)", rel_residual(np.diag(e), np.diag(eb)), t))
    report.add(CheckReport.make("gauge: H_TL o H_TL^T = e_b o e_b^T", rel_residual(e * e.T, eb * eb.T), t))

    parity = fermion_ops(p, tol).parity
    f = np.kron(parity, IDENTITY) @ e
    alpha, res = _fit(f @ f, f)
    report.add(CheckReport.make("parity-multiplied: (Pe)^2 = alpha Pe", res, t, alpha=alpha))
    f1, f2 = embed(f, 1, L).mat, embed(f, 2, L).mat
    report.add(CheckReport.make("parity-multiplied: f1 f2 f1 = f1", rel_residual(f1 @ f2 @ f1, f1), t))
    report.add(CheckReport.make("parity-multiplied: f2 f1 f2 = f2", rel_residual(f2 @ f1 @ f2, f2), t))
    if abs(np.imag(p.q)) <= tol.genericity_tol:
        report.add(CheckReport.make("parity-multiplied: Pe hermitian (real q)", rel_residual(f, f.conj().T), t))

    try:
        span = q_plus_span_residual(e, p)
        report.add(CheckReport.make("H_TL in Q+ polynomial span", span, t, informative=True))
    except UqChainError as exc:
        logger.warning(f"Q+ 张成检查跳过: {exc}")

    report.extend(_tl_relations(h_tl_printed(p, tol), L, "printed H_TL", t, informative=True))
    logger.info(f"TL 检查: q={p.q}, 最大残差 {report.max_residual:.3e}")
    return report


__all__ = ["h_tl", "h_tl_printed", "tl_from_braid", "q_plus_span_residual", "tl_suite"]
