#!/usr/bin/env python3
# -*- coding: utf-8 -*-

from typing import List, Optional

try:
    from pydantic_settings import BaseSettings
except ImportError:
    from pydantic import BaseSettings

from pydantic import BaseModel, Field, field_validator


class Settings(BaseSettings):
    """进程级配置，仅尺寸上限和日志可由环境变量覆盖"""
    # 尺寸上限
    max_sites: int = Field(default=6, description="链算子的最大格点数")
    spectrum_max_sites: int = Field(default=5, description="对角化的最大格点数")

    # 统一配置文件路径
    config_file: str = Field(default="config.yaml", description="统一配置文件路径")

    # 日志配置
    log_level: str = Field(default="INFO", description="日志级别")
    log_file: str = Field(default="logs/uqchain.log", description="日志文件路径")

    class Config:
        env_prefix = "UQCHAIN_"
        env_file = ".env"
        env_file_encoding = "utf-8"
        extra = "ignore"
        case_sensitive = False


class ToleranceConfig(BaseModel):
    """数值容差与采样种子"""
    identity_tol: float = Field(default=1e-10, description="恒等式相对残差容差(Frobenius 范数)")
    fd_tol: float = Field(default=1e-5, description="有限差分检查容差")
    spectrum_tol: float = Field(default=1e-8, description="本征值匹配容差")
    genericity_tol: float = Field(default=1e-6, description="参数一般性判定容差")
    fd_step: float = Field(default=1e-3, description="中心差分步长(Richardson 外推取 h 与 h/2)")
    seed: int = Field(default=0, ge=0, description="可复现采样的随机种子")

    @field_validator("identity_tol", "fd_tol", "spectrum_tol", "genericity_tol", "fd_step")
    @classmethod
    def _positive(cls, value: float) -> float:
        if not value > 0:
            raise ValueError(f"容差必须为正数: {value}")
        return value


# 全局配置实例
settings = Settings()
default_tolerances = ToleranceConfig()


def check_sites(L: int, limit: Optional[int] = None) -> None:
    """检查链长是否在配置上限之内"""
    from .errors import SizeLimit

    limit = settings.max_sites if limit is None else limit
    if L > limit:
        raise SizeLimit(f"格点数 {L} 超过上限 {limit} (维数 4^{L})")


# 常量定义
class Constants:
    """常量定义"""

    # 单格点状态的 Z2 分级: deg(1)=deg(4)=0, deg(2)=deg(3)=1
    SITE_DEGREES = (0, 1, 1, 0)

    # 单格点维数
    SITE_DIM = 4

    # 一般性检查覆盖的 q 幂次
    GENERICITY_MAX_POWER = 8

    # Casimir 套件默认的 p 取值
    CASIMIR_P_RANGE: List[int] = [-1, 0, 1, 2, 3]

    # 验证套件名称
    SUITES: List[str] = [
        "algebra", "casimir", "coproduct", "braid", "ybe",
        "reflection", "chain", "twist", "tl",
    ]

    # 标记为仅供参考的检查不影响总结果
    INFORMATIVE_NOTE = "informative"

    # 错误消息
    ERROR_MESSAGES = {
        "invalid_suite": "未知的验证套件",
        "invalid_object": "未知的构造对象",
        "invalid_complex": "无法解析的复数",
        "missing_parameter": "缺少必需参数",
    }


__all__ = [
    "Settings", "settings", "ToleranceConfig", "default_tolerances",
    "check_sites", "Constants",
]
