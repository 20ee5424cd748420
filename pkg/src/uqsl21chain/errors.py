#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
异常定义

参数或结构非法时抛出异常；数值验证失败只写入报告，不抛异常。
"""


class UqChainError(Exception):
    """所有库异常的基类"""


# 参数类异常
class ParameterError(UqChainError):
    """形变参数不满足前置条件"""


class DegenerateQ(ParameterError):
    """q 过于接近小阶单位根，q - q^-1 或 q^k - 1 低于容差"""


class DegenerateRepresentation(ParameterError):
    """表示或投影算子所需的 q-括号为零"""


class DegenerateX(ParameterError):
    """x 为零，谱参数化无法定义"""


class NotTLMode(ParameterError):
    """需要 Temperley-Lieb 特化点 λ = q^(-1/2)"""


class PoleAtC(ParameterError):
    """K 矩阵参数 C 位于分母零点"""


# 结构类异常
class StructureError(UqChainError):
    """输入对象的结构不符合要求"""


class SingularCartan(StructureError):
    """Cartan 对角阵不可逆"""


class WrongBasis(StructureError):
    """生成元集合所处的基不符合要求"""


class UnknownToken(StructureError):
    """无法识别的字母表记号"""


class SiteOutOfRange(StructureError):
    """格点编号超出链长"""


class SizeLimit(StructureError):
    """链长超过配置上限"""


class InvalidChainSpec(StructureError):
    """链规格组合非法"""


# 内部一致性异常（两条独立计算路径不一致时触发）
class FormulaMismatch(UqChainError):
    """两条构造路径结果不一致"""


class ConventionUnresolvable(UqChainError):
    """没有任何符号约定能复现目标算子"""


class ConvergenceFailure(UqChainError):
    """本征值求解失败"""


class ScalarCasimirZero(ParameterError):
    """Casimir 在不可约表示上的标量值为零"""


__all__ = [
    "UqChainError",
    "ParameterError", "DegenerateQ", "DegenerateRepresentation", "DegenerateX",
    "NotTLMode", "PoleAtC",
    "StructureError", "SingularCartan", "WrongBasis", "UnknownToken",
    "SiteOutOfRange", "SizeLimit", "InvalidChainSpec",
    "FormulaMismatch", "ConventionUnresolvable", "ConvergenceFailure",
    "ScalarCasimirZero",
]
