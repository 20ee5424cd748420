#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
链的组装: 闭链与开链 Hamiltonian、转移矩阵、导数构造、对称性与谱

所有链算子都是普通矩阵(不带分级符号)，辅助空间作为第 L+1 个格点处理。
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
import scipy.linalg
from loguru import logger

from .boundary import (
    Family,
    KMatrixSpec,
    Side,
    boundary_terms,
    boundary_weight,
    c_plus_prime,
    c_plus_sol,
    k_minus,
    k_plus,
)
from .braid import BraidPair, explicit_braid
from .config import ToleranceConfig, check_sites, default_tolerances, settings
from .coproduct import ChainOperator, coproduct_L, embed, embed_legs
from .errors import ConvergenceFailure, InvalidChainSpec, SizeLimit
from .fermions import N_DOWN, h_two_site
from .reports import (
    CheckReport,
    RelationReport,
    commutator_residual,
    match_eigenvalues,
    off_identity,
    rel_residual,
    traceless_residual,
)
from .scalars import DeformParams
from .spectral import CrossingData, r_matrix, rcheck
from .tl import h_tl
from .uqsl21 import GENERATOR_NAMES, build_rep

D = 4

KFunction = Callable[[complex], np.ndarray]


class Model(str, Enum):
    DIST = "dist"
    FERM = "ferm"
    TL = "tl"


@dataclass(frozen=True)
class ChainSpec:
    """链长、体项模型与两端 K 矩阵"""
    L: int
    model: Model = Model.DIST
    minus: KMatrixSpec = field(default_factory=lambda: KMatrixSpec(Side.MINUS))
    plus: KMatrixSpec = field(default_factory=lambda: KMatrixSpec(Side.PLUS))

    def validate(self) -> None:
        if self.L < 2:
            raise InvalidChainSpec(f"开链至少需要 2 个格点: L={self.L}")
        check_sites(self.L)
        if self.minus.side != Side.MINUS or self.plus.side != Side.PLUS:
            raise InvalidChainSpec("K 矩阵规格的 side 与位置不符")
        if self.model == Model.TL and (self.minus.family != Family.TRIVIAL or self.plus.family != Family.TRIVIAL):
            raise InvalidChainSpec("TL 模型只支持平凡边界")


@dataclass
class SpectrumResult:
    """排序后的本征值与简并分组"""
    eigenvalues: List[complex]
    tol: float

    def groups(self) -> List[Tuple[complex, int]]:
        """按 tol 合并相邻本征值，返回 (代表值, 简并度)"""
        out: List[Tuple[complex, int]] = []
        for ev in self.eigenvalues:
            if out and abs(ev - out[-1][0]) <= self.tol * max(1.0, abs(ev)):
                rep, count = out[-1]
                out[-1] = (rep, count + 1)
            else:
                out.append((ev, 1))
        return out

    def to_dict(self) -> Dict[str, object]:
        return {
            "count": len(self.eigenvalues),
            "eigenvalues": [[ev.real, ev.imag] for ev in self.eigenvalues],
            "groups": [{"value": [rep.real, rep.imag], "multiplicity": m} for rep, m in self.groups()],
        }


# ==================== Hamiltonian ====================

def bulk_term(model: Model, p: DeformParams, tol: Optional[ToleranceConfig] = None) -> np.ndarray:
    """两格点体项"""
    model = Model(model)
    if model == Model.TL:
        return h_tl(p, tol)
    return h_two_site(model.value, p, tol)


def h_open(spec: ChainSpec, p: DeformParams, tol: Optional[ToleranceConfig] = None) -> ChainOperator:
    """
    开链 Hamiltonian Σ H_(j,j+1) + w (B1 + BL)，w = x/(q - q^-1)

    Args:
        spec: 链规格，plus 侧的 C 为 K^+ 自身的参数
        p: 参数点
        tol: 容差配置

    Returns:
        ChainOperator
    """
    spec.validate()
    L = spec.L
    h = bulk_term(spec.model, p, tol)
    total = sum((embed(h, j, L) for j in range(1, L)), ChainOperator(L, np.zeros((D ** L, D ** L), dtype=complex)))
    if spec.minus.family != Family.TRIVIAL or spec.plus.family != Family.TRIVIAL:
        spec.minus.validate(p)
        spec.plus.validate(p)
        B1, BL = boundary_terms(spec.minus.family, spec.minus.C,
                                spec.plus.family, c_plus_prime(spec.plus.C, p), p, tol)
        w = boundary_weight(p)
        total = total + w * (embed(B1, 1, L) + embed(BL, L, L))
    logger.debug(f"开链 Hamiltonian: L={L}, model={Model(spec.model).value}")
    return total


def h_periodic(L: int, pair: BraidPair, p: DeformParams) -> ChainOperator:
    """闭链 Σ_(j<L) (b - b^-1)_(j,j+1) + (b - b^-1)_(L,1)"""
    if L < 2:
        raise InvalidChainSpec(f"闭链至少需要 2 个格点: L={L}")
    check_sites(L)
    X = pair.b - pair.binv
    total = embed_legs(X, (L, 1), L)
    for j in range(1, L):
        total = total + embed(X, j, L)
    return total


def cyclic_shift(L: int) -> ChainOperator:
    """U|a1 ... aL> = |aL a1 ... a(L-1)>"""
    check_sites(L)
    n = D ** L
    ident = np.eye(n, dtype=complex).reshape([D] * L + [n])
    return ChainOperator(L, np.moveaxis(ident, L - 1, 0).reshape(n, n))


def _trace_last(mat: np.ndarray, L: int) -> np.ndarray:
    """对 L+1 个格点中的最后一个求偏迹"""
    n = D ** L
    return np.trace(mat.reshape(n, D, n, D), axis1=1, axis2=3)


# ==================== 转移矩阵 ====================

def monodromy_and_transfer(
    u: complex,
    L: int,
    pair: BraidPair,
    p: DeformParams,
) -> Tuple[ChainOperator, ChainOperator]:
    """
    单行单值矩阵 T(u) = R_0L(u) ... R_01(u) 与闭链转移矩阵 tr_0 T(u)

    辅助空间是第 L+1 个格点。
    """
    if L < 1:
        raise InvalidChainSpec(f"格点数必须为正: {L}")
    check_sites(L + 1)
    R = r_matrix(u, pair, p)
    T = embed_legs(R, (L + 1, 1), L + 1)
    for j in range(2, L + 1):
        T = embed_legs(R, (L + 1, j), L + 1) @ T
    return T, ChainOperator(L, _trace_last(T.mat, L))


def _double_row(
    u: complex,
    L: int,
    kminus: KFunction,
    kplus: KFunction,
    pair: BraidPair,
    p: DeformParams,
) -> np.ndarray:
    check_sites(L + 1)
    n = L + 1
    rc = rcheck(u, pair, p)
    steps = [embed(rc, j, n).mat for j in range(1, n)]  # R̆_12 ... R̆_(L,0)
    mat = embed(kminus(u), 1, n).mat
    for s in steps:
        mat = mat @ s
    for s in steps:
        mat = s @ mat
    mat = embed(kplus(u), n, n).mat @ mat
    return _trace_last(mat, L)


def _k_functions(specs: Tuple[KMatrixSpec, KMatrixSpec], p: DeformParams,
                 cd: Optional[CrossingData] = None) -> Tuple[KFunction, KFunction]:
    minus, plus = specs
    minus.validate(p)
    plus.validate(p)
    cd = cd or CrossingData.from_params(p)
    return (lambda u: k_minus(minus, u, p)), (lambda u: k_plus(plus, u, p, cd))


def double_row_transfer(
    u: complex,
    L: int,
    specs: Tuple[KMatrixSpec, KMatrixSpec],
    pair: BraidPair,
    p: DeformParams,
    cd: Optional[CrossingData] = None,
) -> ChainOperator:
    """
    双行转移矩阵
    t(u) = tr_0 K0+(u) R̆_L0(u) ... R̆_12(u) K1-(u) R̆_12(u) ... R̆_L0(u)
    """
    kminus, kplus = _k_functions(specs, p, cd)
    return ChainOperator(L, _double_row(u, L, kminus, kplus, pair, p))


# ==================== 导数构造 ====================

def _central(func: Callable[[complex], np.ndarray], f0: np.ndarray, h: float) -> Tuple[np.ndarray, np.ndarray]:
    fp, fm = func(h), func(-h)
    return (fp - fm) / (2 * h), (fp - 2 * f0 + fm) / h ** 2


def _derivatives(func: Callable[[complex], np.ndarray], h: float) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    中心差分加一次 Richardson 外推: (f(0), f'(0), f''(0))

    步长 h 与 h/2 的截断误差都是 O(h^2)，组合后为 O(h^4)。
    """
    f0 = np.asarray(func(0.0))
    d1_h, d2_h = _central(func, f0, h)
    d1_half, d2_half = _central(func, f0, h / 2)
    return f0, (4 * d1_half - d1_h) / 3, (4 * d2_half - d2_h) / 3


def _boundary_function(kplus: KFunction, pair: BraidPair, p: DeformParams) -> Callable[[complex], np.ndarray]:
    """F(u) = tr_0 K0+(u) R̆_L0(u)²，作用在第 L 个格点上"""

    def F(u: complex) -> np.ndarray:
        rc = rcheck(u, pair, p)
        return _trace_last(np.kron(np.eye(D), kplus(u)) @ rc @ rc, 1)

    return F


def _normalized_hamiltonian(
    L: int,
    kminus: KFunction,
    kplus: KFunction,
    pair: BraidPair,
    p: DeformParams,
    h: float,
) -> Tuple[np.ndarray, complex, float]:
    """t''(0) / (4 F'(0))，并返回 F'(0) 的标量值与其偏离单位阵的程度"""
    _, _, t2 = _derivatives(lambda u: _double_row(u, L, kminus, kplus, pair, p), h)
    _, F1, _ = _derivatives(_boundary_function(kplus, pair, p), h)
    split = off_identity(F1)
    return t2 / (4 * split["offset"]), split["offset"], split["residual"]


def derivative_construction_check(
    L: int,
    specs: Tuple[KMatrixSpec, KMatrixSpec],
    pair: BraidPair,
    p: DeformParams,
    cd: Optional[CrossingData] = None,
    tol: Optional[ToleranceConfig] = None,
) -> RelationReport:
    """
    由双行转移矩阵的导数重建开链 Hamiltonian

    检查一阶导数公式、二阶导数归一化后与 h_open 相差单位阵倍数、
    A1+A2+A3+A4 的紧凑形式，以及 K 乘以标量函数 1 + u/2 后结果不变。
    """
    tol = tol or default_tolerances
    if L not in (2, 3):
        raise InvalidChainSpec(f"导数构造只在 L = 2, 3 上检查: L={L}")
    t = tol.fd_tol
    step = tol.fd_step
    cd = cd or CrossingData.from_params(p)
    kminus, kplus = _k_functions(specs, p, cd)
    report = RelationReport()
    n = L + 1
    H = (pair.b - pair.binv) / p.x

    # 一阶导数: dt/du|0 = (d/du tr K+) Id + 2 tr_0 K0+(0) H_L0 (tr K+(0) = 0)
    _, t1, _ = _derivatives(lambda u: _double_row(u, L, kminus, kplus, pair, p), step)
    _, dtrK, _ = _derivatives(lambda u: np.trace(kplus(u)), step)
    K0 = kplus(0.0)
    rhs = dtrK * np.eye(D ** L) + 2 * _trace_last(embed(K0, n, n).mat @ embed(H, L, n).mat, L)
    report.add(CheckReport.make("tr K+(0) = 0", abs(np.trace(K0)), tol.identity_tol))
    report.add(CheckReport.make("first derivative of t(u)", rel_residual(t1, rhs), t))

    # 二阶导数归一化
    normalized, f1, f1_spread = _normalized_hamiltonian(L, kminus, kplus, pair, p, step)
    spec = ChainSpec(L, Model.DIST, specs[0], specs[1])
    target = h_open(spec, p, tol).mat
    cmp = traceless_residual(boundary_weight(p) * normalized, target)
    report.add(CheckReport.make("F'(0) proportional to Id", f1_spread, t, F1=f1))
    report.add(CheckReport.make(
        "normalized d2t/du2 = h_open (up to Id)", cmp["residual"], t, identity_offset=cmp["offset"]))

    # A1 + A2 + A3 + A4 = F''(0)
    _, _, F2 = _derivatives(_boundary_function(kplus, pair, p), step)
    _, dK, d2K = _derivatives(kplus, step)
    ident = np.eye(D, dtype=complex)

    def tr0(mat: np.ndarray) -> np.ndarray:
        return _trace_last(mat, 1)

    R2 = (pair.b + pair.binv) / p.x
    A1 = np.trace(d2K) * ident
    A2 = 4 * tr0(np.kron(ident, dK) @ H)
    A3 = 2 * tr0(np.kron(ident, K0) @ R2)
    A4 = 2 * tr0(np.kron(ident, K0) @ H @ H)
    report.add(CheckReport.make("A1+A2+A3+A4 = F''(0)", rel_residual(A1 + A2 + A3 + A4, F2), t))

    # K 乘以标量函数，Hamiltonian 只差单位阵倍数
    def scaled(func: KFunction) -> KFunction:
        return lambda u: (1 + u / 2) * func(u)

    rescaled, _, _ = _normalized_hamiltonian(L, scaled(kminus), scaled(kplus), pair, p, step)
    cmp2 = traceless_residual(rescaled, normalized)
    report.add(CheckReport.make(
        "rescaled K: same Hamiltonian (up to Id)", cmp2["residual"], t, identity_offset=cmp2["offset"]))
    logger.info(f"导数构造检查: L={L}, 最大残差 {report.max_residual:.3e}")
    return report


# ==================== 对易检查 ====================

def closed_chain_check(
    L: int,
    pair: BraidPair,
    p: DeformParams,
    points: Sequence[Tuple[complex, complex]],
    tol: Optional[ToleranceConfig] = None,
) -> RelationReport:
    """闭链: 转移矩阵两两对易、与 H_per 对易，T(0) 给出循环平移"""
    tol = tol or default_tolerances
    H = h_periodic(L, pair, p).mat
    report = RelationReport()
    worst_tt, worst_ht = 0.0, 0.0
    for u, v in points:
        tu = monodromy_and_transfer(u, L, pair, p)[1].mat
        tv = monodromy_and_transfer(v, L, pair, p)[1].mat
        worst_tt = max(worst_tt, commutator_residual(tu, tv))
        worst_ht = max(worst_ht, commutator_residual(H, tu))
    report.add(CheckReport.make("[t(u), t(v)] = 0 (closed)", worst_tt, tol.identity_tol * 10))
    report.add(CheckReport.make("[H_per, t(u)] = 0", worst_ht, tol.identity_tol * 100))
    t0 = monodromy_and_transfer(0.0, L, pair, p)[1].mat
    report.add(CheckReport.make("t(0) = cyclic shift", rel_residual(t0, cyclic_shift(L).mat), tol.identity_tol))
    return report


def open_chain_check(
    spec: ChainSpec,
    pair: BraidPair,
    p: DeformParams,
    points: Sequence[Tuple[complex, complex]],
    cd: Optional[CrossingData] = None,
    tol: Optional[ToleranceConfig] = None,
) -> RelationReport:
    """开链: 双行转移矩阵两两对易、与 h_open 对易"""
    tol = tol or default_tolerances
    spec.validate()
    H = h_open(spec, p, tol).mat
    specs = (spec.minus, spec.plus)
    label = f"{spec.minus.family.value}/{spec.plus.family.value}"
    worst_tt, worst_ht = 0.0, 0.0
    for u, v in points:
        tu = double_row_transfer(u, spec.L, specs, pair, p, cd).mat
        tv = double_row_transfer(v, spec.L, specs, pair, p, cd).mat
        worst_tt = max(worst_tt, commutator_residual(tu, tv))
        worst_ht = max(worst_ht, commutator_residual(H, tu))
    report = RelationReport()
    report.add(CheckReport.make(f"[t(u), t(v)] = 0 ({label})", worst_tt, tol.identity_tol * 10))
    report.add(CheckReport.make(f"[H_open, t(u)] = 0 ({label})", worst_ht, tol.identity_tol * 100))
    return report


def invariance_check(
    L: int,
    p: DeformParams,
    tol: Optional[ToleranceConfig] = None,
    threshold: float = 1e-3,
) -> RelationReport:
    """
    平凡边界开链与全部生成元的迭代余乘对易；闭链则不对易

    闭链项只要求与 Δ(e2) 的对易子超过 threshold。
    """
    tol = tol or default_tolerances
    g = build_rep(p)
    H = h_open(ChainSpec(L), p, tol).mat
    report = RelationReport()
    for name in GENERATOR_NAMES:
        G = coproduct_L(name, L, g, p).mat
        report.add(CheckReport.make(f"[H_open, Delta({name})] = 0", commutator_residual(H, G), tol.identity_tol * 10))
    Hp = h_periodic(L, explicit_braid(p), p).mat
    e2 = coproduct_L("e2", L, g, p).mat
    norm = float(np.linalg.norm(Hp @ e2 - e2 @ Hp)) / max(1.0, float(np.linalg.norm(Hp @ e2)))
    report.add(CheckReport.make("[H_per, Delta(e2)] != 0", norm, threshold, expect_failure=True))
    return report


# ==================== 谱 ====================

def spectrum(H: ChainOperator, tol: Optional[ToleranceConfig] = None) -> SpectrumResult:
    """
    一般复矩阵的全部本征值，按 (实部, 虚部) 排序

    Raises:
        SizeLimit: 格点数超过对角化上限
        ConvergenceFailure: 本征值求解失败
    """
    tol = tol or default_tolerances
    if H.sites > settings.spectrum_max_sites:
        raise SizeLimit(f"对角化格点数 {H.sites} 超过上限 {settings.spectrum_max_sites}")
    try:
        ev = scipy.linalg.eigvals(H.mat)
    except (np.linalg.LinAlgError, ValueError) as exc:
        logger.error(f"本征值求解失败: {exc}")
        raise ConvergenceFailure(str(exc)) from exc
    order = np.lexsort((ev.imag, ev.real))
    return SpectrumResult(eigenvalues=[complex(v) for v in ev[order]], tol=tol.spectrum_tol)


def match_spectra(left: SpectrumResult, right: SpectrumResult) -> float:
    """最优配对后的最大本征值差(相对于谱的尺度)"""
    scale = max([1.0] + [abs(v) for v in left.eigenvalues])
    return match_eigenvalues(left.eigenvalues, right.eigenvalues) / scale


def twist_equivalence_check(L: int, p: DeformParams, tol: Optional[ToleranceConfig] = None) -> CheckReport:
    """dist 与 ferm 开链(无边界项)的谱相同"""
    tol = tol or default_tolerances
    if not 2 <= L <= 4:
        raise InvalidChainSpec(f"扭变等价只在 L = 2..4 上检查: L={L}")
    dist = spectrum(h_open(ChainSpec(L, Model.DIST), p, tol), tol)
    ferm = spectrum(h_open(ChainSpec(L, Model.FERM), p, tol), tol)
    return CheckReport.make(f"spectra dist = ferm (L={L})", match_spectra(dist, ferm), tol.spectrum_tol)


def hdiff_check(L: int, p: DeformParams, tol: Optional[ToleranceConfig] = None) -> CheckReport:
    """H_open^ferm - H_open^dist = x/(q - q^-1) (nD_L - nD_1)"""
    tol = tol or default_tolerances
    diff = h_open(ChainSpec(L, Model.FERM), p, tol).mat - h_open(ChainSpec(L, Model.DIST), p, tol).mat
    target = boundary_weight(p) * (embed(N_DOWN, L, L).mat - embed(N_DOWN, 1, L).mat)
    return CheckReport.make(f"H_ferm - H_dist = w (nD_L - nD_1) (L={L})", rel_residual(diff, target), tol.identity_tol)


def c_plus_sol_check(L: int, p: DeformParams, tol: Optional[ToleranceConfig] = None) -> RelationReport:
    """
    特殊边界参数下 dist 开链等于 ferm 开链

    逐字形式: Σ H^dist + B1b(C-) + BLb(C'+)，边界项权重为 1；
    K 参数形式: h_open(dist, b(C=0), b(C=0)) = h_open(ferm, 平凡边界)。
    """
    tol = tol or default_tolerances
    t = tol.identity_tol
    ferm = h_open(ChainSpec(L, Model.FERM), p, tol).mat
    c_minus, c_prime = c_plus_sol(p)
    B1, BL = boundary_terms(Family.B, c_minus, Family.B, c_prime, p, tol)
    literal = h_open(ChainSpec(L, Model.DIST), p, tol).mat + embed(B1, 1, L).mat + embed(BL, L, L).mat
    report = RelationReport()
    report.add(CheckReport.make(f"dist + B1b + BLb at special C = ferm (L={L})", rel_residual(literal, ferm), t,
                                C_minus=c_minus, C_plus_prime=c_prime))
    spec = ChainSpec(L, Model.DIST, KMatrixSpec(Side.MINUS, Family.B, 0.0), KMatrixSpec(Side.PLUS, Family.B, 0.0))
    report.add(CheckReport.make(f"h_open(dist, b(0), b(0)) = h_open(ferm) (L={L})",
                                rel_residual(h_open(spec, p, tol).mat, ferm), t))
    return report


__all__ = [
    "Model", "ChainSpec", "SpectrumResult", "bulk_term", "h_open", "h_periodic", "cyclic_shift",
    "monodromy_and_transfer", "double_row_transfer", "derivative_construction_check",
    "closed_chain_check", "open_chain_check", "invariance_check", "spectrum", "match_spectra",
    "twist_equivalence_check", "hdiff_check", "c_plus_sol_check",
]
