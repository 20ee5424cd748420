#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
验证套件

每个套件在一个参数点上运行一组检查，返回 CheckReport 列表；
检查失败只写进报告，参数非法时抛出 UqChainError 由命令行处理。
"""

from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List

import numpy as np
from loguru import logger

from .boundary import (
    Family,
    KMatrixSpec,
    Side,
    c_plus_raw,
    check_boundary_forms,
    check_k_at_zero,
    reflection_residual_minus,
    reflection_residual_plus,
)
from .braid import (
    braid_pair,
    bwm_failure_probe,
    check_cubic_algebra,
    check_decomposition,
    projectors_from_braid,
    projectors_from_casimirs,
)
from .chains import (
    ChainSpec,
    Model,
    c_plus_sol_check,
    closed_chain_check,
    derivative_construction_check,
    hdiff_check,
    invariance_check,
    open_chain_check,
    twist_equivalence_check,
)
from .config import Constants, ToleranceConfig
from .coproduct import coproduct_generator, coproduct_generators, coproduct_L, coproduct_string_form
from .errors import InvalidChainSpec
from .fermions import two_site_report
from .reports import CheckReport, rel_residual
from .scalars import DeformParams, tl_params
from .spectral import (
    CrossingData,
    commutativity_check,
    crossing_check,
    inversion_check,
    pt_check,
    sample_pairs,
    ybe_check,
    zeta,
    zeta_printed,
)
from .tl import tl_suite
from .uqsl21 import (
    GENERATOR_NAMES,
    build_rep,
    check_casimir_relations,
    check_defining_relations,
    fermionic_basis,
    printed_rep_dictionary,
)


@dataclass
class SuiteContext:
    """一次运行的参数点、容差和采样设置"""
    p: DeformParams
    tol: ToleranceConfig
    sampling: Dict[str, int] = field(default_factory=dict)
    c_values: List[complex] = field(default_factory=lambda: [0.5, complex(-2.3, 0.4)])
    sites: int = 3

    def samples(self, kind: str, default: int = 10) -> int:
        return int(self.sampling.get(kind, default))


def _worst(name: str, reports: Iterable[CheckReport]) -> CheckReport:
    """把同类检查合并为一项，保留最差实例的细节"""
    reports = list(reports)
    worst = max(reports, key=lambda r: r.residual)
    detail = dict(worst.detail)
    detail["count"] = len(reports)
    return CheckReport(name=name, residual=worst.residual, tolerance=worst.tolerance,
                       passed=all(r.passed for r in reports), informative=worst.informative, detail=detail)


def suite_algebra(ctx: SuiteContext) -> List[CheckReport]:
    """定义关系(区分基、费米基)与印刷矩阵的对照"""
    g = build_rep(ctx.p)
    checks = check_defining_relations(g, ctx.tol, "dist: ").entries
    checks += check_defining_relations(fermionic_basis(g), ctx.tol, "ferm: ").entries
    checks += printed_rep_dictionary(ctx.p, ctx.tol).entries
    return checks


def suite_casimir(ctx: SuiteContext) -> List[CheckReport]:
    """Casimir/Scasimir 关系，单格点与两格点余乘像"""
    g = build_rep(ctx.p)
    checks = check_casimir_relations(g, ctx.p, tol=ctx.tol).entries
    dg = coproduct_generators(g, ctx.p)
    checks += [
        CheckReport(**{**e.model_dump(), "name": f"coproduct: {e.name}"})
        for e in check_casimir_relations(dg, ctx.p, p_range=[0, 1, 2], tol=ctx.tol).entries
    ]
    return checks


def suite_coproduct(ctx: SuiteContext) -> List[CheckReport]:
    """符号掩码与 g 串形式一致、余乘保持定义关系、迭代余乘的余结合性"""
    p, t = ctx.p, ctx.tol.identity_tol
    g = build_rep(p)
    checks = [
        _worst("Jordan-Wigner mask = g-string form", (
            CheckReport.make(name, rel_residual(coproduct_generator(name, g, p), coproduct_string_form(name, g)), t)
            for name in GENERATOR_NAMES)),
    ]
    checks += check_defining_relations(coproduct_generators(g, p), ctx.tol, "Delta dist: ").entries
    fg = fermionic_basis(g)
    checks += check_defining_relations(coproduct_generators(fg, p), ctx.tol, "Delta ferm: ").entries
    checks.append(_worst("coassociativity (L=3)", (
        CheckReport.make(name, rel_residual(coproduct_L(name, 3, g, p, "left").mat,
                                            coproduct_L(name, 3, g, p, "right").mat), t)
        for name in GENERATOR_NAMES)))
    checks.append(_worst("Delta^(2) = Delta", (
        CheckReport.make(name, rel_residual(coproduct_L(name, 2, g, p).mat, coproduct_generator(name, g, p)), t)
        for name in GENERATOR_NAMES)))
    return checks


def suite_braid(ctx: SuiteContext) -> List[CheckReport]:
    """投影算子、ΔC_p 分解、辫子算子的两条构造路径、三次代数与 BWM 探测"""
    p, tol = ctx.p, ctx.tol
    g = build_rep(p)
    pair = braid_pair(g, p, tol)
    if p.tl_mode:
        logger.info("TL 点: 只检查三次代数")
        return check_cubic_algebra(pair, p, tol).entries
    triple = projectors_from_casimirs(g, p, 0, tol)
    triple1 = projectors_from_casimirs(g, p, 1, tol)
    checks = triple.check(tol, "Casimir route: ").entries
    checks.append(CheckReport.make(
        "projectors independent of base p",
        max(rel_residual(a, b) for a, b in zip(triple.as_list(), triple1.as_list())), tol.identity_tol))
    for pp in (-1, 0, 1, 2):
        checks += check_decomposition(g, p, pp, triple, tol).entries
    from_braid = projectors_from_braid(pair, p)
    checks += from_braid.check(tol, "braid route: ").entries
    checks.append(CheckReport.make(
        "projectors: braid route = Casimir route",
        max(rel_residual(a, b) for a, b in zip(triple.as_list(), from_braid.as_list())), tol.identity_tol))
    checks += check_cubic_algebra(pair, p, tol, triple).entries
    checks += bwm_failure_probe(pair, p, tol).entries
    checks += two_site_report(p, tol).entries
    return checks


def suite_ybe(ctx: SuiteContext) -> List[CheckReport]:
    """Yang-Baxter、逆关系、自 Baxter 化、PT 对称与交叉幺正性"""
    p, tol = ctx.p, ctx.tol
    pair = braid_pair(build_rep(p), p, tol)
    seed = tol.seed
    cd = CrossingData.from_params(p)
    checks = [
        _worst("Yang-Baxter", (ybe_check(u, v, pair, p, tol)
                               for u, v in sample_pairs(ctx.samples("ybe", 20), seed))),
        CheckReport.make("Yang-Baxter at u=v=0", ybe_check(0, 0, pair, p, tol).residual, tol.identity_tol),
        _worst("inversion", (inversion_check(u, pair, p, tol)
                             for u, _ in sample_pairs(ctx.samples("inversion", 10), seed + 1))),
        CheckReport.make("zeta(0) = 1", abs(zeta(0, p) - 1), 1e-12),
        CheckReport.make("printed zeta deviation at u=0.5",
                         abs(zeta_printed(0.5, p) - zeta(0.5, p)) / max(1.0, abs(zeta(0.5, p))),
                         tol.identity_tol, informative=True),
        _worst("self-Baxterisation", (commutativity_check(u, v, pair, p, tol)
                                      for u, v in sample_pairs(ctx.samples("inversion", 10), seed + 2))),
        _worst("PT symmetry", (pt_check(u, pair, p, tol)
                               for u, _ in sample_pairs(ctx.samples("pt", 10), seed + 3))),
    ]
    crossing = [crossing_check(u, pair, p, cd, tol)
                for u, _ in sample_pairs(ctx.samples("crossing", 10), seed + 4)]
    checks.append(_worst("crossing unitarity (scalar)", crossing))
    checks.append(CheckReport.make(
        "crossing scalar vs printed xi", max(_ratio_deviation(c.detail["ratio_to_printed"]) for c in crossing),
        tol.identity_tol, informative=True,
        ratios=[c.detail["ratio_to_printed"] for c in crossing]))
    checks.append(CheckReport.make("tr M = 0", abs(np.trace(cd.M)), 1e-12))
    return checks


def _ratio_deviation(ratio) -> float:
    if isinstance(ratio, (list, tuple)):
        return abs(complex(ratio[0], ratio[1]) - 1)
    return abs(complex(ratio) - 1)


def _k_specs(c_values: List[complex]) -> List[KMatrixSpec]:
    specs = [KMatrixSpec(Side.MINUS)]
    for family in (Family.A, Family.B):
        specs += [KMatrixSpec(Side.MINUS, family, c) for c in c_values]
    return specs


def _as_plus(spec: KMatrixSpec) -> KMatrixSpec:
    return KMatrixSpec(Side.PLUS, spec.family, spec.C)


def suite_reflection(ctx: SuiteContext) -> List[CheckReport]:
    """两个反射方程、K 在 u = 0 处的性质与边界项两种写法"""
    p, tol = ctx.p, ctx.tol
    pair = braid_pair(build_rep(p), p, tol)
    cd = CrossingData.from_params(p)
    n = ctx.samples("reflection", 20)
    checks: List[CheckReport] = []
    for minus in _k_specs(ctx.c_values):
        plus = _as_plus(minus)
        label = f"{minus.family.value}, C={minus.C}"
        points = list(sample_pairs(n, tol.seed + 5))
        checks.append(_worst(f"reflection minus ({label})",
                             (reflection_residual_minus(minus, u, v, pair, p, tol) for u, v in points)))
        checks.append(_worst(f"reflection plus ({label})",
                             (reflection_residual_plus(plus, u, v, pair, p, cd, tol) for u, v in points)))
        checks.append(check_k_at_zero(minus, p, tol))
        checks.append(check_k_at_zero(plus, p, tol))
    for c in ctx.c_values:
        checks += check_boundary_forms(c, c, p, tol).entries
    return checks


def suite_chain(ctx: SuiteContext) -> List[CheckReport]:
    """闭链与开链的对易性、量子群不变性、精确恒等式与导数构造"""
    p, tol = ctx.p, ctx.tol
    L = ctx.sites
    pair = braid_pair(build_rep(p), p, tol)
    cd = CrossingData.from_params(p)
    points = list(sample_pairs(ctx.samples("chain", 5), tol.seed + 6))
    checks = closed_chain_check(L, pair, p, points, tol).entries
    c = ctx.c_values[0]
    minus_specs = [KMatrixSpec(Side.MINUS)] + [KMatrixSpec(Side.MINUS, f, c) for f in (Family.A, Family.B)]
    for minus in minus_specs:
        for plus in (_as_plus(s) for s in minus_specs):
            checks += open_chain_check(ChainSpec(L, Model.DIST, minus, plus), pair, p, points, cd, tol).entries
    checks += invariance_check(max(L, 4), p, tol).entries
    for n in (2, 3, 4):
        checks.append(hdiff_check(n, p, tol))
    checks += c_plus_sol_check(L, p, tol).entries
    # b 族取 C'+ = 0.5；其余两族的差分结果只报告
    for specs in ((KMatrixSpec(Side.MINUS, Family.B, 0.5),
                   KMatrixSpec(Side.PLUS, Family.B, c_plus_raw(0.5, p))),
                  (KMatrixSpec(Side.MINUS, Family.A, 0.5), KMatrixSpec(Side.PLUS, Family.A, 0.5)),
                  (KMatrixSpec(Side.MINUS), KMatrixSpec(Side.PLUS))):
        label = f"{specs[0].family.value}/{specs[1].family.value}"
        soft = specs[0].family != Family.B
        for entry in derivative_construction_check(2, specs, pair, p, cd, tol).entries:
            informative = entry.informative or (soft and entry.tolerance == tol.fd_tol)
            checks.append(CheckReport(**{**entry.model_dump(), "name": f"{entry.name} ({label})",
                                         "informative": informative}))
    return checks


def suite_twist(ctx: SuiteContext) -> List[CheckReport]:
    """dist 与 ferm 开链的谱相同"""
    return [twist_equivalence_check(L, ctx.p, ctx.tol) for L in (2, 3, 4)]


def suite_tl(ctx: SuiteContext) -> List[CheckReport]:
    """Temperley-Lieb 特化；参数点不在特化点时取同一 q 的特化点"""
    p = ctx.p if ctx.p.tl_mode else tl_params(ctx.p.q, ctx.p.omega, ctx.tol)
    return tl_suite(max(ctx.sites, 3), p, ctx.tol).entries


SUITES: Dict[str, Callable[[SuiteContext], List[CheckReport]]] = {
    "algebra": suite_algebra,
    "casimir": suite_casimir,
    "coproduct": suite_coproduct,
    "braid": suite_braid,
    "ybe": suite_ybe,
    "reflection": suite_reflection,
    "chain": suite_chain,
    "twist": suite_twist,
    "tl": suite_tl,
}


def resolve_suites(names: Iterable[str]) -> List[str]:
    """展开 "all" 并检查套件名"""
    out: List[str] = []
    for name in names:
        if name == "all":
            out.extend(s for s in Constants.SUITES if s not in out)
        elif name in SUITES:
            if name not in out:
                out.append(name)
        else:
            raise InvalidChainSpec(f"{Constants.ERROR_MESSAGES['invalid_suite']}: {name}")
    return out


def run_suites(names: Iterable[str], ctx: SuiteContext) -> List[CheckReport]:
    """依次运行套件，检查项名称加上套件前缀"""
    results: List[CheckReport] = []
    for name in resolve_suites(names):
        entries = SUITES[name](ctx)
        failed = [e.name for e in entries if not e.passed and not e.informative]
        logger.info(f"套件 {name}: {len(entries)} 项检查, 失败 {len(failed)} 项")
        for entry in entries:
            results.append(CheckReport(**{**entry.model_dump(), "name": f"{name}: {entry.name}"}))
    return results


__all__ = [
    "SuiteContext", "SUITES", "resolve_suites", "run_suites",
    "suite_algebra", "suite_casimir", "suite_coproduct", "suite_braid", "suite_ybe",
    "suite_reflection", "suite_chain", "suite_twist", "suite_tl",
]
