#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
U_q(sl(2|1)) 的四维典型表示、定义关系检查与 Casimir/Scasimir 算子

生成元矩阵可以是 4×4 的表示矩阵，也可以是余乘像(16×16 等)；
Casimir 公式和关系检查只用普通矩阵乘法，对两者同样适用。
"""

import itertools
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
from loguru import logger

from .config import Constants, ToleranceConfig, default_tolerances
from .errors import FormulaMismatch, ScalarCasimirZero, WrongBasis
from .reports import (
    CheckReport, RelationReport, commutator_residual, norm_product, off_identity, product_residual, rel_residual,
)
from .scalars import DeformParams, cartan_qbracket


class Basis(str, Enum):
    """单根系的选择"""
    DISTINGUISHED = "distinguished"  # 区分基，仅 e2、f2 为奇
    FERMIONIC = "fermionic"          # 费米基，全部单根为奇


# Cartan 矩阵 a_ij
CARTAN = {
    Basis.DISTINGUISHED: np.array([[2, -1], [-1, 0]]),
    Basis.FERMIONIC: np.array([[0, -1], [-1, 0]]),
}

GRADING = {
    Basis.DISTINGUISHED: {"e1": 0, "f1": 0, "e2": 1, "f2": 1, "k1": 0, "k2": 0},
    Basis.FERMIONIC: {"e1": 1, "f1": 1, "e2": 1, "f2": 1, "k1": 0, "k2": 0},
}

GENERATOR_NAMES = ("e1", "e2", "f1", "f2", "k1", "k2")


def elementary(i: int, j: int, n: int = 4) -> np.ndarray:
    """基本矩阵 E_ij，下标从 1 开始"""
    mat = np.zeros((n, n), dtype=complex)
    mat[i - 1, j - 1] = 1.0
    return mat


def site_parity() -> np.ndarray:
    """单格点分级算子 g = diag(1,-1,-1,1)"""
    return np.diag([(-1.0) ** d for d in Constants.SITE_DEGREES]).astype(complex)


@dataclass(frozen=True)
class GeneratorSet:
    """六个生成元的矩阵实现"""
    e1: np.ndarray
    e2: np.ndarray
    f1: np.ndarray
    f2: np.ndarray
    k1: np.ndarray
    k2: np.ndarray
    q: complex
    basis: Basis = Basis.DISTINGUISHED
    grading: Dict[str, int] = field(default_factory=lambda: dict(GRADING[Basis.DISTINGUISHED]))

    @property
    def dim(self) -> int:
        return self.e1.shape[0]

    def get(self, name: str) -> np.ndarray:
        """按名称取矩阵，支持 k1inv、k2inv 和 id"""
        if name == "id":
            return np.eye(self.dim, dtype=complex)
        if name.endswith("inv"):
            return np.linalg.inv(getattr(self, name[:-3]))
        return getattr(self, name)

    def items(self) -> List[Tuple[str, np.ndarray]]:
        return [(name, getattr(self, name)) for name in GENERATOR_NAMES]

    def degree(self, name: str) -> int:
        return self.grading.get(name, 0)


def build_rep(p: DeformParams, gamma: Optional[complex] = None) -> GeneratorSet:
    """
    四维表示(区分基)

    奇生成元含规范参数 γ；缺省值 γ = sqrt(x)/(q^(1/2)(λ-λ^-1)) 使 Casimir 构造出的
    辫子算子与显式矩阵元逐项一致。

    Args:
        p: 参数点
        gamma: 规范参数

    Returns:
        GeneratorSet
    """
    q, lam, w = p.q, p.lam, p.omega
    if gamma is None:
        gamma = p.sqrt_x / (p.qpow(0.5) * (lam - 1 / lam))
    E = elementary
    return GeneratorSet(
        e1=-w * q * E(2, 3),
        e2=p.mubr(1, 0) * E(1, 2) + p.mubr(1, 1) / gamma * E(3, 4),
        f1=-(1 / q) * E(3, 2),
        f2=E(2, 1) + gamma * E(4, 3),
        k1=w * np.diag([1, q, 1 / q, 1]).astype(complex),
        k2=lam * np.diag([1, 1, q, q]).astype(complex),
        q=q,
    )


def printed_rep(p: DeformParams) -> GeneratorSet:
    """按印刷形式逐字转录的六个矩阵(不满足定义关系，仅作对照)"""
    q, lam, w = p.q, p.lam, p.omega
    E = elementary
    return GeneratorSet(
        e1=-w * q * E(2, 3),
        e2=(lam - 1 / lam) * E(1, 2) + (q * lam - 1 / (q * lam)) * E(3, 4),
        f1=-(1 / q) * E(3, 2),
        f2=E(2, 1) + E(4, 3),
        k1=(1 / lam) * np.diag([1, 1, 1 / q, 1 / q]).astype(complex),
        k2=w * lam ** -2 * np.diag([1, 1 / q, 1 / q, q ** -2]).astype(complex),
        q=q,
    )


def _graded_bracket(a: np.ndarray, b: np.ndarray, sign: int) -> np.ndarray:
    return a @ b - sign * (b @ a)


def check_defining_relations(
    g: GeneratorSet,
    tol: Optional[ToleranceConfig] = None,
    prefix: str = "",
) -> RelationReport:
    """
    检查定义关系，每条关系一项

    Args:
        g: 生成元集合(任意维数)
        tol: 容差配置
        prefix: 报告项名称前缀

    Returns:
        RelationReport
    """
    tol = tol or default_tolerances
    t = tol.identity_tol
    q = g.q
    qd = q - 1 / q
    A = CARTAN[g.basis]
    report = RelationReport()
    k = {1: g.k1, 2: g.k2}
    e = {1: g.e1, 2: g.e2}
    f = {1: g.f1, 2: g.f2}
    deg = {1: g.degree("e1"), 2: g.degree("e2")}
    kinv = {i: np.linalg.inv(k[i]) for i in (1, 2)}

    report.add(CheckReport.make(f"{prefix}k1k2=k2k1", commutator_residual(g.k1, g.k2), t))
    for i, j in itertools.product((1, 2), repeat=2):
        a = int(A[j - 1, i - 1])
        report.add(CheckReport.make(
            f"{prefix}k{i}e{j}k{i}^-1=q^{a}e{j}", rel_residual(k[i] @ e[j] @ kinv[i], q ** a * e[j]), t))
        report.add(CheckReport.make(
            f"{prefix}k{i}f{j}k{i}^-1=q^{-a}f{j}", rel_residual(k[i] @ f[j] @ kinv[i], q ** (-a) * f[j]), t))
    for i in (1, 2):
        sign = (-1) ** deg[i]
        kind = "anticommutator" if deg[i] else "commutator"
        report.add(CheckReport.make(
            f"{prefix}{kind}(e{i},f{i})=[k{i}]",
            rel_residual(_graded_bracket(e[i], f[i], sign), (k[i] - kinv[i]) / qd), t))
    for i, j in ((1, 2), (2, 1)):
        sign = (-1) ** (deg[i] * deg[j])
        report.add(CheckReport.make(
            f"{prefix}[e{i},f{j}]=0",
            rel_residual(_graded_bracket(e[i], f[j], sign), 0, scale=2 * norm_product(e[i], f[j])), t))
    for i in (1, 2):
        if deg[i]:
            report.add(CheckReport.make(f"{prefix}e{i}^2=0", product_residual((e[i], e[i])), t))
            report.add(CheckReport.make(f"{prefix}f{i}^2=0", product_residual((f[i], f[i])), t))
    if g.basis is Basis.DISTINGUISHED:
        qq = q + 1 / q
        for name, x1, x2 in (("e", g.e1, g.e2), ("f", g.f1, g.f2)):
            serre = x1 @ x1 @ x2 - qq * x1 @ x2 @ x1 + x2 @ x1 @ x1
            scale = (2 + abs(qq)) * norm_product(x1, x1, x2)
            report.add(CheckReport.make(f"{prefix}serre({name})", rel_residual(serre, 0, scale=scale), t))
    return report


def build_e3f3(g: GeneratorSet) -> Tuple[np.ndarray, np.ndarray]:
    """复合根向量 e3 = e1e2 - q^-1 e2e1, f3 = f2f1 - q f1f2"""
    if g.basis is not Basis.DISTINGUISHED:
        raise WrongBasis("e3/f3 只在区分基中定义")
    q = g.q
    e3 = g.e1 @ g.e2 - (1 / q) * g.e2 @ g.e1
    f3 = g.f2 @ g.f1 - q * g.f1 @ g.f2
    return e3, f3


def fermionic_basis(g: GeneratorSet) -> GeneratorSet:
    """由区分基生成元构造费米基生成元"""
    if g.basis is not Basis.DISTINGUISHED:
        raise WrongBasis("输入必须是区分基")
    e3, f3 = build_e3f3(g)
    k2inv = np.linalg.inv(g.k2)
    return GeneratorSet(
        e1=e3,
        e2=g.f2 @ k2inv,
        f1=-f3,
        f2=g.k2 @ g.e2,
        k1=np.linalg.inv(g.k1 @ g.k2),
        k2=g.k2,
        q=g.q,
        basis=Basis.FERMIONIC,
        grading=dict(GRADING[Basis.FERMIONIC]),
    )


def _require_distinguished(g: GeneratorSet) -> None:
    if g.basis is not Basis.DISTINGUISHED:
        raise WrongBasis("Casimir 公式写在区分基中")


def _prefactor(g: GeneratorSet, pp: int) -> np.ndarray:
    mp = np.linalg.matrix_power
    return mp(g.k1, 2 * pp - 1) @ mp(g.k2, 4 * pp - 2)


def casimir_Q(pp: int, sign: Union[str, int], g: GeneratorSet, p: DeformParams) -> np.ndarray:
    """
    Q^±_p

    Args:
        pp: 整数指标 p
        sign: "+"/"-" 或 ±1
        g: 区分基生成元(表示矩阵或余乘像)
        p: 参数点

    Returns:
        矩阵
    """
    _require_distinguished(g)
    plus = sign in ("+", 1, +1)
    q = p.q
    e1, e2, f1, f2, k2 = g.e1, g.e2, g.f1, g.f2, g.k2
    e3, f3 = build_e3f3(g)
    k12 = g.k1 @ g.k2
    k2inv = np.linalg.inv(k2)

    def br(K, n):
        return cartan_qbracket(K, n, p)

    if plus:
        body = (
            br(k12, 1) @ br(k2, 0)
            - f1 @ e1
            - f2 @ e2 @ br(k12, 1)
            - f3 @ e3 @ br(k2, -1)
            + (1 / q) * f3 @ e2 @ e1 @ k2
            + q * f1 @ f2 @ e3 @ k2inv
            + (1 + p.qpow(2 - 4 * pp)) * f2 @ f3 @ e3 @ e2
        )
        return _prefactor(g, pp) @ body
    body = (
        q * f2 @ e2 @ br(k12, 0)
        + q * f3 @ e3 @ br(k2, -2)
        - (1 / q) * f3 @ e2 @ e1 @ k2
        - q ** 3 * f1 @ f2 @ e3 @ k2inv
        - (1 + q ** 2) * f2 @ f3 @ e3 @ e2
    )
    return p.qpow(-2 * pp) * _prefactor(g, pp) @ body


def _casimir_closed_form(pp: int, g: GeneratorSet, p: DeformParams) -> np.ndarray:
    q = p.q
    qd = p.qdiff
    e1, e2, f1, f2, k2 = g.e1, g.e2, g.f1, g.f2, g.k2
    e3, f3 = build_e3f3(g)
    k12 = g.k1 @ g.k2
    k2inv = np.linalg.inv(k2)
    c = p.qpow(1 - 2 * pp)
    brp = (p.qpow(pp) - p.qpow(-pp)) / qd
    brp1 = (p.qpow(pp - 1) - p.qpow(1 - pp)) / qd

    def br(K, n):
        return cartan_qbracket(K, n, p)

    body = (
        br(k12, 1) @ br(k2, 0)
        - f1 @ e1
        + f2 @ e2 @ (c * br(k12, 0) - br(k12, 1))
        + f3 @ e3 @ (c * br(k2, -2) - br(k2, -1))
        + qd * p.qpow(-1 - pp) * brp * f3 @ e2 @ e1 @ k2
        + qd * p.qpow(2 - pp) * brp1 * f1 @ f2 @ e3 @ k2inv
        + qd ** 2 * c * brp * brp1 * f2 @ f3 @ e3 @ e2
    )
    return _prefactor(g, pp) @ body


def casimir_C(
    pp: int,
    g: GeneratorSet,
    p: DeformParams,
    tol: Optional[ToleranceConfig] = None,
) -> np.ndarray:
    """
    Casimir C_p，闭式与 Q^+ + Q^- 两条路径交叉验证后返回闭式结果

    Raises:
        FormulaMismatch: 两条路径不一致
    """
    _require_distinguished(g)
    tol = tol or default_tolerances
    closed = _casimir_closed_form(pp, g, p)
    summed = casimir_Q(pp, "+", g, p) + casimir_Q(pp, "-", g, p)
    res = rel_residual(closed, summed)
    if res > tol.identity_tol:
        logger.error(f"C_{pp} 闭式与 Q+ + Q- 不一致: 残差 {res:.3e}")
        raise FormulaMismatch(f"C_{pp}: 闭式与 Q+ + Q- 残差 {res:.3e}")
    return closed


def scasimir_S(pp: int, g: GeneratorSet, p: DeformParams) -> np.ndarray:
    """Scasimir S_p = Q^+_p - Q^-_p"""
    return casimir_Q(pp, "+", g, p) - casimir_Q(pp, "-", g, p)


def _sum_quadruples(p_range: Sequence[int]) -> Iterable[Tuple[int, int, int, int]]:
    for p1, p2, p3, p4 in itertools.product(p_range, repeat=4):
        if p1 + p2 == p3 + p4 and (p1, p2) != (p3, p4):
            yield p1, p2, p3, p4


def _family_entry(name: str, items: Iterable[Tuple[str, float]], tol: float) -> CheckReport:
    """把一族关系汇总为一项，记录最差的实例"""
    worst_label, worst = "", 0.0
    count = 0
    for label, res in items:
        count += 1
        if res >= worst:
            worst_label, worst = label, res
    return CheckReport.make(name, worst, tol, worst_case=worst_label, count=count)


def check_casimir_relations(
    g: GeneratorSet,
    p: DeformParams,
    p_range: Optional[Sequence[int]] = None,
    tol: Optional[ToleranceConfig] = None,
) -> RelationReport:
    """
    Casimir/Scasimir 的全部关系

    Args:
        g: 区分基四维表示
        p: 参数点
        p_range: p 的取值，默认 {-1,...,3}
        tol: 容差配置

    Returns:
        RelationReport
    """
    _require_distinguished(g)
    tol = tol or default_tolerances
    t = tol.identity_tol
    p_range = list(Constants.CASIMIR_P_RANGE if p_range is None else p_range)
    report = RelationReport()

    Qp = {pp: casimir_Q(pp, "+", g, p) for pp in p_range}
    Qm = {pp: casimir_Q(pp, "-", g, p) for pp in p_range}
    C = {pp: Qp[pp] + Qm[pp] for pp in p_range}
    S = {pp: Qp[pp] - Qm[pp] for pp in p_range}

    report.add(_family_entry("closed_form_C=Q++Q-", (
        (f"p={pp}", rel_residual(_casimir_closed_form(pp, g, p), C[pp])) for pp in p_range), t))
    report.add(_family_entry("Q+Q-=0", (
        (f"({a},{b})", max(product_residual((Qp[a], Qm[b])), product_residual((Qm[b], Qp[a]))))
        for a, b in itertools.product(p_range, repeat=2)), t))
    quads = list(_sum_quadruples(p_range))
    for name, X, Y in (("Q+Q+=Q+Q+", Qp, Qp), ("Q-Q-=Q-Q-", Qm, Qm), ("CC=CC", C, C)):
        report.add(_family_entry(name, (
            (f"{a},{b};{c},{d}", rel_residual(X[a] @ Y[b], X[c] @ Y[d], scale=norm_product(X[a], Y[b])))
            for a, b, c, d in quads), t))
    report.add(_family_entry("CC=SS", (
        (f"{a},{b};{c},{d}", rel_residual(C[a] @ C[b], S[c] @ S[d], scale=norm_product(C[a], C[b])))
        for a, b, c, d in itertools.product(p_range, repeat=4) if a + b == c + d), t))
    report.add(_family_entry("CS=SC", (
        (f"{a},{b};{c},{d}", rel_residual(C[a] @ S[b], S[c] @ C[d], scale=norm_product(C[a], S[b])))
        for a, b, c, d in itertools.product(p_range, repeat=4) if a + b == c + d), t))

    report.add(_family_entry("[x,C_p]=0", (
        (f"{name},p={pp}", commutator_residual(x, C[pp]))
        for pp in p_range for name, x in g.items()), t))
    report.add(_family_entry("S_p x=(-1)^deg x S_p", (
        (f"{name},p={pp}", rel_residual(S[pp] @ x, (-1) ** g.degree(name) * x @ S[pp]))
        for pp in p_range for name, x in g.items()), t))

    if g.dim == Constants.SITE_DIM:
        schur = [(f"p={pp}", off_identity(C[pp])["residual"]) for pp in p_range]
        report.add(_family_entry("C_p scalar on rho", schur, t))
        for pp in p_range:
            c_p = complex(np.trace(C[pp]) / g.dim)
            try:
                parity = scasimir_parity(pp, g, p, tol)
            except ScalarCasimirZero:
                report.add(CheckReport.make(
                    f"(S_{pp}/c_{pp})^2=Id", float("nan"), t, informative=True,
                    skipped="ScalarCasimirZero", c_p=c_p))
                continue
            report.add(CheckReport.make(
                f"(S_{pp}/c_{pp})^2=Id", rel_residual(parity @ parity, np.eye(g.dim)), t, c_p=c_p))
            report.add(_family_entry(f"S_{pp}/c_{pp} graded", (
                (name, rel_residual(parity @ x, (-1) ** g.degree(name) * x @ parity))
                for name, x in g.items()), t))
    return report


def scasimir_parity(
    pp: int,
    g: GeneratorSet,
    p: DeformParams,
    tol: Optional[ToleranceConfig] = None,
) -> np.ndarray:
    """
    S_p / c_p，在不可约表示上充当 (-1)^F

    Raises:
        ScalarCasimirZero: c_p 为零
    """
    tol = tol or default_tolerances
    c_p = complex(np.trace(casimir_C(pp, g, p, tol)) / g.dim)
    if abs(c_p) <= tol.genericity_tol:
        raise ScalarCasimirZero(f"c_{pp} = 0")
    return scasimir_S(pp, g, p) / c_p


def casimir_scalar(pp: int, p: DeformParams) -> complex:
    """C_p 在四维表示上的值 λ^(4p-2)[μ][μ+1]"""
    return p.lam ** (4 * pp - 2) * p.mubr(1, 0) * p.mubr(1, 1)


def printed_rep_dictionary(p: DeformParams, tol: Optional[ToleranceConfig] = None) -> RelationReport:
    """
    印刷矩阵与 build_rep 之间的变量替换关系

    印刷 k1 = k2^-1，印刷 k2 = (k1 k2^2)^-1，印刷 e2 = (q-q^-1) e2|γ=1，印刷 f2 = f2|γ=1。
    """
    tol = tol or default_tolerances
    t = tol.identity_tol
    printed = printed_rep(p)
    g1 = build_rep(p, gamma=1.0)
    inv = np.linalg.inv
    report = RelationReport()
    report.add(CheckReport.make("printed k1 = k2^-1", rel_residual(printed.k1, inv(g1.k2)), t))
    report.add(CheckReport.make(
        "printed k2 = (k1 k2^2)^-1", rel_residual(printed.k2, inv(g1.k1 @ g1.k2 @ g1.k2)), t))
    report.add(CheckReport.make("printed e2 = (q-q^-1) e2", rel_residual(printed.e2, p.qdiff * g1.e2), t))
    report.add(CheckReport.make("printed f2 = f2", rel_residual(printed.f2, g1.f2), t))
    report.add(CheckReport.make("printed e1 = e1", rel_residual(printed.e1, g1.e1), t))
    report.add(CheckReport.make("printed f1 = f1", rel_residual(printed.f1, g1.f1), t))
    literal = check_defining_relations(printed, tol)
    report.add(CheckReport.make(
        "printed matrices: defining relations", literal.max_residual, t, informative=True,
        failing=[e.name for e in literal.failures()]))
    return report


__all__ = [
    "Basis", "CARTAN", "GRADING", "GENERATOR_NAMES", "elementary", "site_parity",
    "GeneratorSet", "build_rep", "printed_rep", "check_defining_relations",
    "build_e3f3", "fermionic_basis", "casimir_Q", "casimir_C", "scasimir_S",
    "check_casimir_relations", "casimir_scalar", "printed_rep_dictionary", "scasimir_parity",
]
