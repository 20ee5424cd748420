#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
命令行入口

    uqchain verify --suite all --q 1.2 --mu 0.3 --omega 1 --seed 7
    uqchain build --object b --q 1.2 --mu 0.3 --out b.json
    uqchain spectrum --model dist --sites 3

退出码: 0 全部通过，1 有检查失败，2 参数或配置错误。
"""

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
import yaml
from loguru import logger

from . import __version__
from .boundary import Family, KMatrixSpec, Side, k_minus, k_plus
from .braid import braid_pair
from .chains import ChainSpec, Model, h_open, h_periodic, spectrum
from .config import Constants, ToleranceConfig, settings
from .coproduct import coproduct_generators
from .errors import SizeLimit, UqChainError
from .fermions import h_two_site
from .reports import CheckReport, Report
from .scalars import DeformParams, derive_params
from .spectral import rcheck
from .suites import SuiteContext, resolve_suites, run_suites
from .tl import h_tl
from .uqsl21 import build_rep, casimir_C
from .utils.config_loader import ConfigLoader, get_config_loader, parse_complex

BUILD_OBJECTS = (
    "b", "binv", "rcheck", "kminus", "kplus", "h-dist", "h-ferm",
    "h-open", "h-periodic", "h-tl", "casimir",
)

_LOGGING_READY = False


class UsageError(Exception):
    """命令行参数组合非法"""


def setup_logging(level: Optional[str] = None, log_file: Optional[str] = None,
                  loader: Optional[ConfigLoader] = None) -> None:
    """配置 stderr 与按天轮转的文件日志"""
    global _LOGGING_READY
    if _LOGGING_READY:
        return
    cfg = loader.get_logging_config() if loader else {}
    level = level or settings.log_level
    logger.remove()
    logger.add(sys.stderr, level=level)
    logger.add(
        log_file or settings.log_file,
        rotation=cfg.get("rotation", "1 day"),
        retention=cfg.get("retention", "7 days"),
        level=level,
        encoding="utf-8",
    )
    _LOGGING_READY = True


# ==================== 参数解析 ====================

def _add_point_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--q", help='形变参数 q，如 "1.2" 或 "0.7+0.2i"')
    parser.add_argument("--mu", help="表示参数 μ (λ = q^μ)")
    parser.add_argument("--omega", type=int, choices=(1, -1), default=None, help="表示符号 ω")
    parser.add_argument("--sites", type=int, default=None, help="链长 L")
    parser.add_argument("--identity-tol", type=float, default=None)
    parser.add_argument("--fd-tol", type=float, default=None)
    parser.add_argument("--spectrum-tol", type=float, default=None)
    parser.add_argument("--genericity-tol", type=float, default=None)
    parser.add_argument("--fd-step", type=float, default=None)
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--out", help="输出文件，缺省写到标准输出")
    parser.add_argument("--format", choices=("json", "text"), default="json")


def _add_chain_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--model", choices=[m.value for m in Model], default=Model.DIST.value)
    parser.add_argument("--family", choices=[f.value for f in Family], default=None,
                        help="两端共用的 K 矩阵族")
    parser.add_argument("--family-minus", choices=[f.value for f in Family], default=None)
    parser.add_argument("--family-plus", choices=[f.value for f in Family], default=None)
    parser.add_argument("--c-minus", default="0.5", help="K^- 的参数 C-")
    parser.add_argument("--c-plus", default="0.5", help="K^+ 的参数 C+")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="uqchain", description="U_q(sl(2|1)) 可积链的构造与数值验证")
    parser.add_argument("--config", default=None, help="配置文件路径")
    parser.add_argument("--log-level", default=None)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="运行验证套件")
    _add_point_args(verify)
    verify.add_argument("--suite", action="append", default=None,
                        help=f"套件名，可重复: {', '.join(Constants.SUITES)}, all")

    build = sub.add_parser("build", help="导出算子矩阵")
    _add_point_args(build)
    _add_chain_args(build)
    build.add_argument("--object", required=True, help=f"对象: {', '.join(BUILD_OBJECTS)}；可写作 rcheck@u、casimir@p")
    build.add_argument("--u", default="0", help="谱参数 u")
    build.add_argument("--p", type=int, default=0, help="Casimir 指标 p")

    spec = sub.add_parser("spectrum", help="开链精确对角化")
    _add_point_args(spec)
    _add_chain_args(spec)
    return parser


def _tolerances(args: argparse.Namespace, loader: ConfigLoader) -> ToleranceConfig:
    return loader.get_tolerances(
        identity_tol=args.identity_tol, fd_tol=args.fd_tol, spectrum_tol=args.spectrum_tol,
        genericity_tol=args.genericity_tol, fd_step=args.fd_step, seed=args.seed,
    )


def _sites(args: argparse.Namespace, loader: ConfigLoader, tl_only: bool, fallback: int) -> int:
    """链长：命令行优先，TL 模式取配置中的 tl.sites"""
    if args.sites is not None:
        return args.sites
    return loader.get_tl_point()["sites"] if tl_only else fallback


def _points(args: argparse.Namespace, loader: ConfigLoader, tl_only: bool = False) -> List[Dict[str, Any]]:
    """命令行指定 q 时只用这一个点，否则用配置文件的参数网格"""
    if args.q is not None:
        if tl_only:
            mu = -0.5
        elif args.mu is None:
            raise UsageError(f"{Constants.ERROR_MESSAGES['missing_parameter']}: --mu")
        else:
            mu = parse_complex(args.mu)
        return [{"q": parse_complex(args.q), "mu": mu, "omega": args.omega or 1}]
    if tl_only:
        tl = loader.get_tl_point()
        return [{"q": tl["q"], "mu": -0.5, "omega": args.omega or 1}]
    grid = loader.get_parameter_grid()
    if not grid:
        raise UsageError(f"{Constants.ERROR_MESSAGES['missing_parameter']}: --q")
    if args.omega is not None:
        grid = [pt for pt in grid if pt["omega"] == args.omega] or [dict(grid[0], omega=args.omega)]
    return grid


def _family(value: Optional[str], fallback: Optional[str]) -> Family:
    return Family(value or fallback or Family.TRIVIAL.value)


def _chain_spec(args: argparse.Namespace, L: int) -> ChainSpec:
    minus = KMatrixSpec(Side.MINUS, _family(args.family_minus, args.family), parse_complex(args.c_minus))
    plus = KMatrixSpec(Side.PLUS, _family(args.family_plus, args.family), parse_complex(args.c_plus))
    return ChainSpec(L, Model(args.model), minus, plus)


# ==================== 输出 ====================

def _emit(text: str, out: Optional[str]) -> None:
    if out:
        path = Path(out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
        logger.info(f"已写入 {path}")
    else:
        sys.stdout.write(text)


def _report_text(report: Report) -> str:
    lines = [f"uqchain {report.metadata.get('version')}  passed={report.passed}"]
    for check in report.checks:
        if check.informative:
            flag = "INFO"
        else:
            flag = "PASS" if check.passed else "FAIL"
        lines.append(f"[{flag}] {check.name}: residual={check.residual:.3e} tol={check.tolerance:.1e}")
    return "\n".join(lines) + "\n"


def matrix_payload(mat: np.ndarray, sites: Optional[int], p: DeformParams) -> Dict[str, Any]:
    """稠密复矩阵的 JSON 结构，按行展开为 [re, im] 对"""
    mat = np.asarray(mat, dtype=complex)
    return {
        "dim": int(mat.shape[0]),
        "sites": sites,
        "format": "dense-complex-rowmajor",
        "params": p.to_dict(),
        "data": [[float(z.real), float(z.imag)] for z in mat.ravel()],
    }


# ==================== 子命令 ====================

def cmd_verify(args: argparse.Namespace, loader: ConfigLoader) -> int:
    names = resolve_suites(args.suite or ["all"])
    tol = _tolerances(args, loader)
    tl_only = names == ["tl"]
    checks: List[CheckReport] = []
    metadata: Dict[str, Any] = {"version": __version__, "seed": tol.seed, "suites": names, "points": []}
    for point in _points(args, loader, tl_only):
        p = derive_params(point["q"], point["mu"], point["omega"], tol)
        ctx = SuiteContext(
            p=p, tol=tol, sampling=loader.get_sampling(),
            c_values=loader.get_boundary_grid() or [0.5],
            sites=_sites(args, loader, tl_only, 3),
        )
        logger.info(f"参数点 q={p.q}, mu={p.mu}, omega={p.omega}")
        label = f"q={point['q']}, mu={point['mu']}, omega={point['omega']}"
        for entry in run_suites(names, ctx):
            checks.append(CheckReport(**{**entry.model_dump(), "name": f"[{label}] {entry.name}"}))
        metadata["points"].append(p.to_dict())
    metadata["tolerances"] = tol.model_dump()
    report = Report.build(metadata, checks)
    if args.format == "json":
        text = json.dumps(report.model_dump(), ensure_ascii=False, indent=2) + "\n"
    else:
        text = _report_text(report)
    _emit(text, args.out)
    failed = [c.name for c in checks if not c.passed and not c.informative]
    for name in failed:
        logger.warning(f"检查失败: {name}")
    logger.info(f"共 {len(checks)} 项检查，失败 {len(failed)} 项")
    return 0 if report.passed else 1


def build_object(args: argparse.Namespace, p: DeformParams, tol: ToleranceConfig) -> Dict[str, Any]:
    """
    构造 --object 指定的矩阵

    Raises:
        UsageError: 未知对象
    """
    name, _, inline = args.object.partition("@")
    if name not in BUILD_OBJECTS:
        raise UsageError(f"{Constants.ERROR_MESSAGES['invalid_object']}: {args.object}")
    u = parse_complex(inline) if inline and name != "casimir" else parse_complex(args.u)
    L = args.sites or 2
    family = Family(args.family or Family.TRIVIAL.value)

    if name in ("b", "binv", "rcheck"):
        pair = braid_pair(build_rep(p), p, tol)
        mat = {"b": pair.b, "binv": pair.binv}.get(name)
        if mat is None:
            mat = rcheck(u, pair, p)
        return matrix_payload(mat, 2, p)
    if name == "kminus":
        return matrix_payload(k_minus(KMatrixSpec(Side.MINUS, family, parse_complex(args.c_minus)), u, p), 1, p)
    if name == "kplus":
        return matrix_payload(k_plus(KMatrixSpec(Side.PLUS, family, parse_complex(args.c_plus)), u, p), 1, p)
    if name in ("h-dist", "h-ferm"):
        return matrix_payload(h_two_site(name[2:], p, tol), 2, p)
    if name == "h-tl":
        return matrix_payload(h_tl(p, tol), 2, p)
    if name == "h-open":
        return matrix_payload(h_open(_chain_spec(args, L), p, tol).mat, L, p)
    if name == "h-periodic":
        return matrix_payload(h_periodic(L, braid_pair(build_rep(p), p, tol), p).mat, L, p)
    # casimir: --sites 2 时为两格点余乘像
    pp = int(inline) if inline else args.p
    g = build_rep(p)
    if L >= 2:
        return matrix_payload(casimir_C(pp, coproduct_generators(g, p), p, tol), 2, p)
    return matrix_payload(casimir_C(pp, g, p, tol), 1, p)


def cmd_build(args: argparse.Namespace, loader: ConfigLoader) -> int:
    tol = _tolerances(args, loader)
    point = _points(args, loader, tl_only=args.object == "h-tl")[0]
    p = derive_params(point["q"], point["mu"], point["omega"], tol)
    payload = build_object(args, p, tol)
    _emit(json.dumps(payload) + "\n", args.out)
    return 0


def cmd_spectrum(args: argparse.Namespace, loader: ConfigLoader) -> int:
    tol = _tolerances(args, loader)
    point = _points(args, loader, tl_only=args.model == Model.TL.value)[0]
    p = derive_params(point["q"], point["mu"], point["omega"], tol)
    L = _sites(args, loader, args.model == Model.TL.value, 3)
    if L > settings.spectrum_max_sites:
        raise SizeLimit(f"对角化格点数 {L} 超过上限 {settings.spectrum_max_sites}")
    result = spectrum(h_open(_chain_spec(args, L), p, tol), tol)
    payload = {"sites": L, "model": args.model, "params": p.to_dict(), **result.to_dict()}
    if args.format == "json":
        text = json.dumps(payload, indent=2) + "\n"
    else:
        text = "".join(f"{rep.real:.12g} {rep.imag:+.12g}i  x{m}\n" for rep, m in result.groups())
    _emit(text, args.out)
    return 0


COMMANDS = {"verify": cmd_verify, "build": cmd_build, "spectrum": cmd_spectrum}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        loader = get_config_loader(args.config)
    except (FileNotFoundError, yaml.YAMLError) as exc:
        setup_logging(args.log_level)
        logger.error(f"配置加载失败: {exc}")
        return 2
    setup_logging(args.log_level, loader=loader)
    try:
        return COMMANDS[args.command](args, loader)
    except (UqChainError, UsageError, ValueError) as exc:
        logger.error(f"{type(exc).__name__}: {exc}")
        return 2


__all__ = ["build_parser", "main", "matrix_payload", "build_object", "setup_logging",
           "cmd_verify", "cmd_build", "cmd_spectrum", "BUILD_OBJECTS"]
