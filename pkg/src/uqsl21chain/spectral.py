#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Baxter 化的 R̆(u)、R(u) = P R̆(u) 以及 Yang-Baxter、逆关系、PT 对称与交叉幺正性检查
"""

import cmath
from dataclasses import dataclass
from typing import Iterator, List, Optional, Tuple

import numpy as np
from loguru import logger

from .braid import BraidPair, braid_eigenvalues
from .config import ToleranceConfig, default_tolerances
from .coproduct import embed
from .errors import DegenerateX
from .reports import CheckReport, commutator_residual, off_identity, rel_residual
from .scalars import DeformParams
from .uqsl21 import elementary


@dataclass(frozen=True)
class SpectralEvaluable:
    """z = e^u 的 Laurent 多项式 z^-1 A + B + z C，按系数矩阵精确求值"""
    c_minus: np.ndarray
    c0: np.ndarray
    c_plus: np.ndarray

    def __call__(self, u: complex) -> np.ndarray:
        z = cmath.exp(u)
        return self.c_minus / z + self.c0 + z * self.c_plus


@dataclass(frozen=True)
class CrossingData:
    """交叉矩阵 M = diag(1, -1, -q², q²) 与平移 ρ = ln q"""
    M: np.ndarray
    rho_shift: complex

    @classmethod
    def from_params(cls, p: DeformParams) -> "CrossingData":
        q = p.q
        return cls(M=np.diag([1, -1, -q ** 2, q ** 2]).astype(complex), rho_shift=cmath.log(q))

    @property
    def M_inv(self) -> np.ndarray:
        return np.diag(1 / np.diag(self.M))


def _require_x(p: DeformParams, tol: Optional[ToleranceConfig] = None) -> None:
    tol = tol or default_tolerances
    if abs(p.x) <= tol.genericity_tol:
        raise DegenerateX(f"x = 0，R̆(u) 无定义: q={p.q}, mu={p.mu}")


def permutation() -> np.ndarray:
    """两格点置换 P = Σ E_ij ⊗ E_ji"""
    return sum(np.kron(elementary(i, j), elementary(j, i)) for i in range(1, 5) for j in range(1, 5))


def rcheck_laurent(pair: BraidPair, p: DeformParams) -> SpectralEvaluable:
    """R̆(u) 的系数矩阵"""
    _require_x(p)
    ident = np.eye(pair.b.shape[0], dtype=complex)
    return SpectralEvaluable(
        c_minus=pair.binv / p.x,
        c0=ident - (pair.b + pair.binv) / p.x,
        c_plus=pair.b / p.x,
    )


def rcheck(u: complex, pair: BraidPair, p: DeformParams) -> np.ndarray:
    """
    R̆(u) = Id + ((e^u - 1) b + (e^-u - 1) b^-1)/x

    Raises:
        DegenerateX: x 为零
    """
    _require_x(p)
    z = cmath.exp(u)
    ident = np.eye(pair.b.shape[0], dtype=complex)
    return ident + ((z - 1) * pair.b + (1 / z - 1) * pair.binv) / p.x


def r_matrix(u: complex, pair: BraidPair, p: DeformParams) -> np.ndarray:
    """R(u) = P R̆(u)"""
    return permutation() @ rcheck(u, pair, p)


def r21_matrix(u: complex, pair: BraidPair, p: DeformParams) -> np.ndarray:
    """R21(u) = P R(u) P = R̆(u) P"""
    return rcheck(u, pair, p) @ permutation()


def sample_pairs(n: int, seed: int) -> Iterator[Tuple[complex, complex]]:
    """可复现的复谱参数样本，实部与虚部均在 [-1, 1]"""
    rng = np.random.default_rng(seed)
    for _ in range(n):
        re = rng.uniform(-1, 1, size=2)
        im = rng.uniform(-1, 1, size=2)
        yield complex(re[0], im[0]), complex(re[1], im[1])


def sample_points(n: int, seed: int) -> List[complex]:
    return [u for u, _ in sample_pairs(n, seed)]


def ybe_check(
    u: complex,
    v: complex,
    pair: BraidPair,
    p: DeformParams,
    tol: Optional[ToleranceConfig] = None,
) -> CheckReport:
    """
    三格点 Yang-Baxter 代数与四格点远距交换

    R̆12(u) R̆23(u+v) R̆12(v) = R̆23(v) R̆12(u+v) R̆23(u)
    """
    tol = tol or default_tolerances

    def r(w: complex, site: int, L: int) -> np.ndarray:
        return embed(rcheck(w, pair, p), site, L).mat

    lhs = r(u, 1, 3) @ r(u + v, 2, 3) @ r(v, 1, 3)
    rhs = r(v, 2, 3) @ r(u + v, 1, 3) @ r(u, 2, 3)
    res = rel_residual(lhs, rhs)
    far = commutator_residual(r(u, 1, 4), r(v, 3, 4))
    return CheckReport.make("Yang-Baxter", max(res, far), tol.identity_tol,
                            u=u, v=v, braid=res, far=far)


def zeta(u: complex, p: DeformParams) -> complex:
    """逆关系标量 ζ(u) = z^-2 (z-λ²)(z-λ^-2)(z-q²λ²)(z-q^-2λ^-2)/x²，ζ(0) = 1"""
    _require_x(p)
    z = cmath.exp(u)
    q, lam = p.q, p.lam
    num = (z - lam ** 2) * (z - lam ** -2) * (z - q ** 2 * lam ** 2) * (z - q ** -2 * lam ** -2)
    return num / (z ** 2 * p.x ** 2)


def zeta_printed(u: complex, p: DeformParams) -> complex:
    """印刷形式的 ζ(u)，λ^±2 在含 q 的因子中位置互换；ζ(0) ≠ 1"""
    _require_x(p)
    z = cmath.exp(u)
    q, lam = p.q, p.lam
    num = (z - lam ** -2) * (z - lam ** 2) * (z - q ** 2 * lam ** -2) * (z - q ** -2 * lam ** 2)
    return num / (z ** 2 * p.x ** 2)


def zeta_eigen(u: complex, p: DeformParams) -> List[complex]:
    """每个本征子空间上 r(u) r(-u)，应彼此相同"""
    z = cmath.exp(u)

    def r(zz: complex, beta: complex) -> complex:
        return 1 + ((zz - 1) * beta + (1 / zz - 1) / beta) / p.x

    return [r(z, beta) * r(1 / z, beta) for beta in braid_eigenvalues(p)]


def xi(u: complex, p: DeformParams) -> complex:
    """印刷形式的交叉幺正标量 ξ(u)"""
    _require_x(p)
    z = cmath.exp(u)
    q = p.q
    return -(z / q - 1) * (1 - q / z) * (q * z - 1) * (1 - 1 / (q * z)) / p.x ** 2


def inversion_check(
    u: complex,
    pair: BraidPair,
    p: DeformParams,
    tol: Optional[ToleranceConfig] = None,
) -> CheckReport:
    """R̆(u) R̆(-u) = ζ(u) Id，同时报告印刷 ζ 的相对偏差"""
    tol = tol or default_tolerances
    prod = rcheck(u, pair, p) @ rcheck(-u, pair, p)
    zv = zeta(u, p)
    printed = zeta_printed(u, p)
    return CheckReport.make(
        "inversion", rel_residual(prod, zv * np.eye(prod.shape[0])), tol.identity_tol,
        u=u, zeta=zv, zeta_printed=printed,
        printed_deviation=abs(printed - zv) / max(1.0, abs(zv)),
        eigenspace_spread=max(abs(w - zv) for w in zeta_eigen(u, p)),
    )


def commutativity_check(
    u: complex,
    v: complex,
    pair: BraidPair,
    p: DeformParams,
    tol: Optional[ToleranceConfig] = None,
) -> CheckReport:
    """[R̆(u), R̆(v)] = 0"""
    tol = tol or default_tolerances
    return CheckReport.make(
        "self-Baxterisation [R(u),R(v)]=0",
        commutator_residual(rcheck(u, pair, p), rcheck(v, pair, p)), tol.identity_tol, u=u, v=v)


def partial_transpose(mat: np.ndarray, leg: int) -> np.ndarray:
    """两格点算子对第 leg (1 或 2) 条腿转置"""
    t = np.asarray(mat).reshape(4, 4, 4, 4)  # (i, k, j, l)
    t = t.transpose(2, 1, 0, 3) if leg == 1 else t.transpose(0, 3, 2, 1)
    return t.reshape(16, 16)


def pt_check(
    u: complex,
    pair: BraidPair,
    p: DeformParams,
    tol: Optional[ToleranceConfig] = None,
) -> CheckReport:
    """PT 对称 P R12(u) P = R12(u)^(t1 t2)"""
    tol = tol or default_tolerances
    R = r_matrix(u, pair, p)
    P = permutation()
    return CheckReport.make("PT symmetry", rel_residual(P @ R @ P, R.T), tol.identity_tol, u=u)


def crossing_check(
    u: complex,
    pair: BraidPair,
    p: DeformParams,
    cd: Optional[CrossingData] = None,
    tol: Optional[ToleranceConfig] = None,
) -> CheckReport:
    """
    交叉幺正性 R12(u)^t1 M1 R21(-u-2ρ)^t1 M1^-1 ∝ Id

    只断言左边是单位阵的倍数；测得的标量与印刷 ξ(u+ρ) 的比值写入 detail。
    """
    tol = tol or default_tolerances
    cd = cd or CrossingData.from_params(p)
    ident = np.eye(4, dtype=complex)
    M1 = np.kron(cd.M, ident)
    M1_inv = np.kron(cd.M_inv, ident)
    lhs = (partial_transpose(r_matrix(u, pair, p), 1) @ M1
           @ partial_transpose(r21_matrix(-u - 2 * cd.rho_shift, pair, p), 1) @ M1_inv)
    split = off_identity(lhs)
    scalar = split["offset"]
    printed = xi(u + cd.rho_shift, p)
    ratio = scalar / printed if abs(printed) > 0 else float("nan")
    if abs(ratio - 1) > tol.identity_tol:
        logger.debug(f"交叉幺正标量与印刷 ξ 之比 {ratio:.6g} (u={u})")
    return CheckReport.make(
        "crossing unitarity (scalar)", split["residual"], tol.identity_tol,
        u=u, scalar=scalar, xi_printed=printed, ratio_to_printed=ratio)


__all__ = [
    "SpectralEvaluable", "CrossingData", "permutation", "rcheck_laurent", "rcheck",
    "r_matrix", "r21_matrix", "sample_pairs", "sample_points", "ybe_check", "zeta",
    "zeta_printed", "zeta_eigen", "xi", "inversion_check", "commutativity_check",
    "partial_transpose", "pt_check", "crossing_check",
]
