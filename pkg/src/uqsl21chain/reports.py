#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
验证报告模型

残差统一定义为 ||LHS - RHS||_F / max(1, ||LHS||_F, ||RHS||_F, scale)。
乘积形式的关系(尤其是右边为 0 的)用各因子范数之积作为 scale。
"""

from typing import Any, Dict, Iterable, List, Optional, Sequence

import numpy as np
from pydantic import BaseModel, Field
from scipy.optimize import linear_sum_assignment


def rel_residual(lhs: np.ndarray, rhs: Any, scale: float = 0.0) -> float:
    """
    两矩阵之差的相对 Frobenius 残差，rhs 可为标量 0

    Args:
        lhs: 左边
        rhs: 右边
        scale: 额外的量级下限，乘积关系传入因子范数之积
    """
    lhs = np.asarray(lhs)
    rhs = np.broadcast_to(np.asarray(rhs, dtype=complex), lhs.shape)
    denom = max(1.0, float(np.linalg.norm(lhs)), float(np.linalg.norm(rhs)), float(scale))
    return float(np.linalg.norm(lhs - rhs)) / denom


def norm_product(*factors: np.ndarray) -> float:
    """各因子 Frobenius 范数之积"""
    return float(np.prod([np.linalg.norm(f) for f in factors]))


def product_residual(factors: Sequence[np.ndarray], rhs: Any = 0) -> float:
    """factors 依次相乘后与 rhs 比较，以因子范数之积定标"""
    out = factors[0]
    for f in factors[1:]:
        out = out @ f
    return rel_residual(out, rhs, scale=norm_product(*factors))


def commutator_residual(a: np.ndarray, b: np.ndarray) -> float:
    """[a, b] 的相对残差"""
    return rel_residual(a @ b, b @ a, scale=norm_product(a, b))


def off_identity(mat: np.ndarray) -> Dict[str, Any]:
    """
    拆出单位阵分量

    Returns:
        offset: 单位阵系数；residual: 无迹部分相对于矩阵范数的大小
    """
    mat = np.asarray(mat)
    n = mat.shape[0]
    offset = np.trace(mat) / n
    traceless = mat - offset * np.eye(n)
    return {
        "offset": complex(offset),
        "residual": float(np.linalg.norm(traceless)) / max(1.0, float(np.linalg.norm(mat))),
    }


def traceless_residual(lhs: np.ndarray, rhs: np.ndarray) -> Dict[str, Any]:
    """相差单位阵倍数意义下的比较，返回残差和单位阵系数"""
    diff = np.asarray(lhs) - np.asarray(rhs)
    n = diff.shape[0]
    offset = np.trace(diff) / n
    lhs0 = lhs - np.trace(lhs) / n * np.eye(n)
    rhs0 = rhs - np.trace(rhs) / n * np.eye(n)
    return {"residual": rel_residual(lhs0, rhs0), "offset": complex(offset)}


def match_eigenvalues(left: Iterable[complex], right: Iterable[complex]) -> float:
    """
    两组本征值的最优一一配对(匈牙利算法)，返回配对后的最大距离

    Raises:
        ValueError: 个数不同
    """
    a = np.asarray(list(left), dtype=complex)
    b = np.asarray(list(right), dtype=complex)
    if a.shape != b.shape:
        raise ValueError(f"本征值个数不同: {a.size} vs {b.size}")
    if a.size == 0:
        return 0.0
    cost = np.abs(a[:, None] - b[None, :])
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].max())


def _jsonable(value: Any) -> Any:
    if isinstance(value, (complex, np.complexfloating)):
        return [float(value.real), float(value.imag)]
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


class CheckReport(BaseModel):
    """单项检查：残差、容差与结论"""
    name: str
    residual: float
    tolerance: float
    passed: bool
    informative: bool = False
    detail: Dict[str, Any] = Field(default_factory=dict)

    @classmethod
    def make(
        cls,
        name: str,
        residual: float,
        tolerance: float,
        informative: bool = False,
        expect_failure: bool = False,
        **detail: Any,
    ) -> "CheckReport":
        """
        构造检查项

        Args:
            expect_failure: 为 True 时残差必须超过容差才算通过(用于关系不成立的探测)
        """
        residual = float(residual)
        ok = residual > tolerance if expect_failure else residual <= tolerance
        if expect_failure:
            detail["expect_failure"] = True
        return cls(
            name=name, residual=residual, tolerance=float(tolerance),
            passed=bool(ok), informative=informative, detail=_jsonable(detail),
        )


class RelationReport(BaseModel):
    """一组关系的检查结果"""
    entries: List[CheckReport] = Field(default_factory=list)

    def add(self, entry: CheckReport) -> CheckReport:
        self.entries.append(entry)
        return entry

    def extend(self, entries: Iterable[CheckReport]) -> "RelationReport":
        self.entries.extend(entries)
        return self

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries if not e.informative)

    @property
    def max_residual(self) -> float:
        hard = [e.residual for e in self.entries if not e.informative and not e.detail.get("expect_failure")]
        return max(hard) if hard else 0.0

    def get(self, name: str) -> Optional[CheckReport]:
        for entry in self.entries:
            if entry.name == name:
                return entry
        return None

    def failures(self) -> List[CheckReport]:
        return [e for e in self.entries if not e.passed and not e.informative]


class Report(BaseModel):
    """命令行输出的完整报告"""
    metadata: Dict[str, Any]
    checks: List[CheckReport]
    passed: bool

    @classmethod
    def build(cls, metadata: Dict[str, Any], checks: List[CheckReport]) -> "Report":
        ok = all(c.passed for c in checks if not c.informative)
        return cls(metadata=_jsonable(metadata), checks=checks, passed=ok)


__all__ = [
    "rel_residual", "norm_product", "product_residual", "commutator_residual", "off_identity",
    "traceless_residual", "match_eigenvalues",
    "CheckReport", "RelationReport", "Report",
]
