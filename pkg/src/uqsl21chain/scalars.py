#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
形变参数与 q-数运算

所有幂和对数取主值；y 的符号自由度统一取主平方根，下游模块共用同一个值。
"""

import cmath
from dataclasses import dataclass
from typing import Any, Dict, Optional, Union

import numpy as np
from loguru import logger

from .config import Constants, ToleranceConfig, default_tolerances
from .errors import (
    DegenerateQ,
    DegenerateRepresentation,
    DegenerateX,
    FormulaMismatch,
    ParameterError,
    SingularCartan,
)

Number = Union[int, float, complex]


@dataclass(frozen=True)
class DeformParams:
    """参数点 (q, μ, ω) 及其导出量"""
    q: complex
    mu: complex
    omega: int
    lam: complex        # λ = q^μ
    x: complex          # (λ-λ^-1)(qλ-q^-1λ^-1)
    sqrt_x: complex     # 主平方根
    y: complex          # sqrt(x)/(q-q^-1)
    tl_mode: bool       # λ^2 = q^-1

    def qpow(self, n: Number) -> complex:
        """q^n，整数幂直接相乘，其余走主对数"""
        if isinstance(n, (int, np.integer)):
            return complex(self.q) ** int(n)
        n = complex(n)
        if n.imag == 0 and float(n.real).is_integer():
            return complex(self.q) ** int(n.real)
        return cmath.exp(n * cmath.log(self.q))

    @property
    def qdiff(self) -> complex:
        """q - q^-1"""
        return self.q - 1 / self.q

    def mubr(self, a: int, k: int = 0) -> complex:
        """[aμ + k]，用 λ 计算以保证与矩阵元一致"""
        num = self.lam ** a * self.qpow(k) - self.lam ** (-a) * self.qpow(-k)
        return num / self.qdiff

    def to_dict(self) -> Dict[str, Any]:
        """序列化为报告元数据"""
        def pair(z: complex):
            return [float(z.real), float(z.imag)]

        return {
            "q": pair(self.q),
            "mu": pair(self.mu),
            "omega": int(self.omega),
            "lambda": pair(self.lam),
            "x": pair(self.x),
            "y": pair(self.y),
            "tl_mode": bool(self.tl_mode),
        }


def qbracket(n: Number, p: DeformParams) -> complex:
    """
    q-整数 [n] = (q^n - q^-n)/(q - q^-1)

    Args:
        n: 可为复数
        p: 参数点

    Returns:
        复数
    """
    if abs(p.qdiff) < default_tolerances.genericity_tol:
        raise DegenerateQ(f"q - q^-1 过小: q={p.q}")
    return (p.qpow(n) - p.qpow(-n)) / p.qdiff


def _check_generic_q(q: complex, tol: float) -> None:
    if abs(q) < tol:
        raise DegenerateQ(f"q 过小: {q}")
    for k in range(1, Constants.GENERICITY_MAX_POWER + 1):
        qk = q ** k
        if abs(qk - 1) <= tol or abs(1 / qk - 1) <= tol:
            raise DegenerateQ(f"q 接近 {k} 次单位根: q={q}")


def derive_params(
    q: Number,
    mu: Number,
    omega: int = 1,
    tol: Optional[ToleranceConfig] = None,
) -> DeformParams:
    """
    由 (q, μ, ω) 构造参数点

    Args:
        q: 形变参数
        mu: 表示参数，λ = q^μ
        omega: 表示的符号 ±1
        tol: 容差配置

    Returns:
        DeformParams
    """
    tol = tol or default_tolerances
    q = complex(q)
    mu = complex(mu)
    if omega not in (1, -1):
        raise ParameterError(f"ω 只能取 ±1: {omega}")
    _check_generic_q(q, tol.genericity_tol)

    lam = cmath.exp(mu * cmath.log(q))
    tl_mode = abs(lam ** 2 - 1 / q) <= tol.genericity_tol
    if tl_mode:
        lam = cmath.exp(-0.5 * cmath.log(q))

    x = (lam - 1 / lam) * (q * lam - 1 / (q * lam))
    sqrt_x = cmath.sqrt(x)
    p = DeformParams(
        q=q, mu=mu, omega=int(omega), lam=lam, x=x,
        sqrt_x=sqrt_x, y=sqrt_x / (q - 1 / q), tl_mode=tl_mode,
    )

    x_alt = q * lam ** 2 + 1 / (q * lam ** 2) - q - 1 / q
    if abs(x - x_alt) > tol.identity_tol * max(1.0, abs(x)):
        raise FormulaMismatch(f"x 的两种表达式不一致: {x} vs {x_alt}")

    if not tl_mode:
        for a, k, name in ((1, 0, "[μ]"), (1, 1, "[μ+1]"), (2, 0, "[2μ]"),
                           (2, 1, "[2μ+1]"), (2, 2, "[2μ+2]")):
            if abs(p.mubr(a, k)) <= tol.genericity_tol:
                raise DegenerateRepresentation(f"{name} = 0: q={q}, mu={mu}")
    if abs(x) <= tol.genericity_tol:
        raise DegenerateX(f"x = 0: q={q}, mu={mu}")

    logger.debug(f"参数点: q={q}, mu={mu}, omega={omega}, lambda={lam:.6g}, x={x:.6g}, tl={tl_mode}")
    return p


def tl_params(q: Number, omega: int = 1, tol: Optional[ToleranceConfig] = None) -> DeformParams:
    """Temperley-Lieb 特化点 μ = -1/2"""
    return derive_params(q, -0.5, omega, tol)


def cartan_qbracket(K: np.ndarray, shift: int, p: DeformParams) -> np.ndarray:
    """
    [h + shift] = (q^shift K - q^-shift K^-1)/(q - q^-1)，K 为实现 q^h 的对角阵

    Args:
        K: 对角可逆矩阵
        shift: 整数平移
        p: 参数点

    Returns:
        对角矩阵
    """
    d = np.diag(np.asarray(K)).astype(complex)
    if np.any(d == 0):
        raise SingularCartan("Cartan 对角阵含零元")
    return np.diag((p.qpow(shift) * d - p.qpow(-shift) / d) / p.qdiff)


__all__ = [
    "DeformParams", "qbracket", "derive_params", "tl_params", "cartan_qbracket",
]
