#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
余乘、Jordan-Wigner 符号变换、迭代余乘与格点嵌入

符号变换只在余乘求值时施加一次；此后所有链上对象都是普通矩阵，
乘法不再带任何分级符号。
"""

import re
from dataclasses import dataclass
from functools import reduce
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from loguru import logger

from .config import Constants, ToleranceConfig, check_sites, default_tolerances
from .errors import SiteOutOfRange, UnknownToken
from .scalars import DeformParams, cartan_qbracket
from .uqsl21 import GeneratorSet, casimir_C, casimir_Q, scasimir_S, site_parity

D = Constants.SITE_DIM


@dataclass(frozen=True)
class ChainOperator:
    """4^L 维链算子"""
    sites: int
    mat: np.ndarray

    def __post_init__(self):
        n = D ** self.sites
        if self.mat.shape != (n, n):
            raise ValueError(f"维数 {self.mat.shape} 与格点数 {self.sites} 不符")

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    def _other(self, other: Union["ChainOperator", np.ndarray]) -> np.ndarray:
        return other.mat if isinstance(other, ChainOperator) else np.asarray(other)

    def __matmul__(self, other):
        return ChainOperator(self.sites, self.mat @ self._other(other))

    def __add__(self, other):
        return ChainOperator(self.sites, self.mat + self._other(other))

    def __sub__(self, other):
        return ChainOperator(self.sites, self.mat - self._other(other))

    def __mul__(self, scalar: complex):
        return ChainOperator(self.sites, scalar * self.mat)

    __rmul__ = __mul__


def jw_mask() -> np.ndarray:
    """
    Jordan-Wigner 符号掩码

    E_ij ⊗ E_kl 的系数乘以 (-1)^(deg(j)(deg(k)+deg(l)))，行下标 (i,k)，列下标 (j,l)。
    """
    deg = np.array(Constants.SITE_DEGREES)
    i, k, j, l = np.meshgrid(range(D), range(D), range(D), range(D), indexing="ij")
    signs = (-1.0) ** (deg[j] * (deg[k] + deg[l]))
    # 轴顺序 (i,k,j,l) 对应 16×16 的 (行, 列)
    return signs.reshape(D * D, D * D)


_MASK = jw_mask()


def _graded_terms(name: str, g: GeneratorSet) -> List[Tuple[str, str, int]]:
    """分级余乘 Δ(name) = Σ A ⊗ B，返回 (A, B, deg B)"""
    if name in ("id", "k1", "k2", "k1inv", "k2inv"):
        return [(name, name, 0)]
    m = re.fullmatch(r"([ef])([12])", name)
    if not m:
        raise UnknownToken(f"未知生成元: {name}")
    kind, i = m.groups()
    deg = g.degree(name)
    if kind == "e":
        return [(name, "id", 0), (f"k{i}", name, deg)]
    return [(name, f"k{i}inv", 0), ("id", name, deg)]


def coproduct_generator(name: str, g: GeneratorSet, p: DeformParams) -> np.ndarray:
    """
    (ρ⊗ρ)Δ(生成元)，已施加 Jordan-Wigner 符号变换

    Args:
        name: e1/e2/f1/f2/k1/k2/k1inv/k2inv/id
        g: 四维表示(区分基或费米基)
        p: 参数点

    Returns:
        16×16 矩阵
    """
    if g.dim != D:
        raise ValueError("余乘需要单格点表示矩阵")
    graded = sum(np.kron(g.get(a), g.get(b)) for a, b, _ in _graded_terms(name, g))
    return _MASK * graded


def coproduct_string_form(name: str, g: GeneratorSet) -> np.ndarray:
    """不分级写法 Δ(e) = e⊗1 + K g^|e| ⊗ e, Δ(f) = f⊗K^-1 + g^|f| ⊗ f"""
    par = site_parity()
    return sum(
        np.kron(g.get(a) @ np.linalg.matrix_power(par, d), g.get(b))
        for a, b, d in _graded_terms(name, g)
    )


def coproduct_generators(g: GeneratorSet, p: DeformParams) -> GeneratorSet:
    """六个生成元的余乘像，保留基与分级"""
    return GeneratorSet(
        e1=coproduct_generator("e1", g, p),
        e2=coproduct_generator("e2", g, p),
        f1=coproduct_generator("f1", g, p),
        f2=coproduct_generator("f2", g, p),
        k1=coproduct_generator("k1", g, p),
        k2=coproduct_generator("k2", g, p),
        q=g.q,
        basis=g.basis,
        grading=dict(g.grading),
    )


# 符号项: 每条腿一个 (生成元名, g 的幂次)
_Term = Tuple[Tuple[str, int], ...]


def _expand_leg(terms: List[_Term], leg: int, g: GeneratorSet) -> List[_Term]:
    """对第 leg 条腿施加一次 Δ；Δ(X g^s) = Σ A g^(deg B + s) ⊗ B g^s"""
    out: List[_Term] = []
    for term in terms:
        name, s = term[leg]
        for a, b, d in _graded_terms(name, g):
            new = ((a, (d + s) % 2), (b, s))
            out.append(term[:leg] + new + term[leg + 1:])
    return out


def _evaluate(terms: List[_Term], g: GeneratorSet) -> np.ndarray:
    par = site_parity()
    cache: Dict[Tuple[str, int], np.ndarray] = {}

    def factor(key):
        if key not in cache:
            name, s = key
            cache[key] = g.get(name) @ np.linalg.matrix_power(par, s)
        return cache[key]

    return sum(reduce(np.kron, [factor(f) for f in term]) for term in terms)


def coproduct_L(
    name: str,
    L: int,
    g: GeneratorSet,
    p: DeformParams,
    nesting: str = "left",
) -> ChainOperator:
    """
    迭代余乘 Δ^(L)

    Args:
        name: 生成元名
        L: 格点数
        g: 四维表示
        p: 参数点
        nesting: "left" 为 (Δ⊗1)∘…∘Δ，"right" 为 (1⊗Δ)∘…∘Δ

    Returns:
        ChainOperator
    """
    if L < 1:
        raise SiteOutOfRange(f"格点数必须为正: {L}")
    check_sites(L)
    terms: List[_Term] = [((name, 0),)]
    for step in range(L - 1):
        leg = 0 if nesting == "left" else step
        terms = _expand_leg(terms, leg, g)
    return ChainOperator(L, _evaluate(terms, g))


_TOKEN_PATTERNS = (
    ("generator", re.compile(r"^(id|[ef][12]|k[12](inv)?)$")),
    ("casimir", re.compile(r"^([CS])(-?\d+)$")),
    ("q", re.compile(r"^Q([+-])(-?\d+)$")),
    ("bracket", re.compile(r"^\[(h1\+h2|h1|h2)([+-]\d+)?\]$")),
)


def coproduct_element(
    word: Union[str, Sequence[str]],
    g: GeneratorSet,
    p: DeformParams,
    tol: Optional[ToleranceConfig] = None,
) -> np.ndarray:
    """
    把由生成元、Casimir 与 Cartan 括号组成的字按代数同态映到 16×16 矩阵

    记号: id, e1, f2, k1inv, C1, S-1, Q+2, Q-0, [h1+h2+1], [h2-1]
    """
    tol = tol or default_tolerances
    tokens = word.split() if isinstance(word, str) else list(word)
    dg = coproduct_generators(g, p)
    result = np.eye(D * D, dtype=complex)
    for token in tokens:
        result = result @ _token_matrix(token, g, dg, p, tol)
    return result


def _token_matrix(token: str, g: GeneratorSet, dg: GeneratorSet, p: DeformParams,
                  tol: ToleranceConfig) -> np.ndarray:
    for kind, pattern in _TOKEN_PATTERNS:
        m = pattern.match(token)
        if not m:
            continue
        if kind == "generator":
            return dg.get(token)
        if kind == "casimir":
            pp = int(m.group(2))
            return casimir_C(pp, dg, p, tol) if m.group(1) == "C" else scasimir_S(pp, dg, p)
        if kind == "q":
            return casimir_Q(int(m.group(2)), m.group(1), dg, p)
        word, shift = m.group(1), int(m.group(2) or 0)
        K = {"h1": dg.k1, "h2": dg.k2, "h1+h2": dg.k1 @ dg.k2}[word]
        return cartan_qbracket(K, shift, p)
    logger.warning(f"无法识别的记号: {token}")
    raise UnknownToken(f"无法识别的记号: {token}")


def _op_sites(op: np.ndarray) -> int:
    n = op.shape[0]
    k = int(round(np.log(n) / np.log(D)))
    if D ** k != n:
        raise ValueError(f"算子维数 {n} 不是 4 的幂")
    return k


def embed(op: np.ndarray, site: int, L: int) -> ChainOperator:
    """
    把单格点或相邻多格点算子放到第 site 个格点起，其余位置为单位阵

    Args:
        op: 4^k 维算子
        site: 起始格点，从 1 开始
        L: 链长
    """
    op = np.asarray(op)
    k = _op_sites(op)
    if not 1 <= site <= L - k + 1:
        raise SiteOutOfRange(f"格点 {site} 超出范围 (L={L}, 算子跨 {k} 个格点)")
    check_sites(L)
    left = np.eye(D ** (site - 1), dtype=complex)
    right = np.eye(D ** (L - site - k + 1), dtype=complex)
    return ChainOperator(L, np.kron(np.kron(left, op), right))


def embed_legs(op: np.ndarray, legs: Sequence[int], L: int) -> ChainOperator:
    """
    把 k 格点算子按给定的腿顺序嵌入，例如 legs=(L, 1) 表示算子的第一条腿落在格点 L

    Args:
        op: 4^k 维算子
        legs: 长度为 k 的格点编号序列(互不相同)
        L: 链长
    """
    op = np.asarray(op)
    k = _op_sites(op)
    legs = list(legs)
    if len(legs) != k or len(set(legs)) != k or not all(1 <= s <= L for s in legs):
        raise SiteOutOfRange(f"腿 {legs} 与链长 {L} 不符")
    check_sites(L)
    rest = [s for s in range(1, L + 1) if s not in legs]
    full = np.kron(op, np.eye(D ** len(rest), dtype=complex))
    order = legs + rest  # full 的第 a 条腿位于格点 order[a]
    perm = [order.index(s) for s in range(1, L + 1)]
    tensor = full.reshape([D] * (2 * L))
    tensor = tensor.transpose(perm + [L + a for a in perm])
    return ChainOperator(L, tensor.reshape(D ** L, D ** L))


__all__ = [
    "ChainOperator", "jw_mask", "coproduct_generator", "coproduct_string_form",
    "coproduct_generators", "coproduct_L", "coproduct_element", "embed", "embed_legs",
]
