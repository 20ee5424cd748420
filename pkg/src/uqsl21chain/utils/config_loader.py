"""
统一配置文件加载器
负责加载 config.yaml 中的参数网格、容差和采样设置
"""

from pathlib import Path
from typing import Any, Dict, List, Optional

import yaml
from loguru import logger

from ..config import ToleranceConfig, settings


def parse_complex(value: Any) -> complex:
    """
    解析复数，支持数值和 "a"、"a+bi"、"a-bj" 形式的字符串

    Args:
        value: 数值或字符串

    Returns:
        复数
    """
    if isinstance(value, (int, float, complex)):
        return complex(value)
    text = str(value).strip().replace(" ", "").replace("i", "j")
    try:
        return complex(text)
    except ValueError as e:
        logger.error(f"无法解析的复数: {value}")
        raise ValueError(f"无法解析的复数: {value}") from e


class ConfigLoader:
    """统一配置加载器"""

    def __init__(self, config_path: Optional[str] = None):
        """
        初始化配置加载器

        Args:
            config_path: 配置文件路径，缺省时使用 Settings.config_file
        """
        self.config_path = Path(config_path or settings.config_file)
        self._config: Dict[str, Any] = {}
        self._load_config()

    def _load_config(self) -> None:
        """加载配置文件"""
        if not self.config_path.exists():
            logger.error(f"配置文件不存在: {self.config_path}")
            raise FileNotFoundError(f"配置文件不存在: {self.config_path}")

        try:
            with open(self.config_path, "r", encoding="utf-8") as f:
                self._config = yaml.safe_load(f) or {}
        except yaml.YAMLError as e:
            logger.error(f"配置文件格式错误: {e}")
            raise

        logger.debug(f"成功加载配置文件: {self.config_path}")

    def reload(self) -> None:
        """重新加载配置文件"""
        self._load_config()

    def get(self, key: str, default: Any = None) -> Any:
        """
        获取配置值，支持点号分隔的嵌套键

        Args:
            key: 配置键，支持 'section.subsection.key' 格式
            default: 默认值

        Returns:
            配置值
        """
        value: Any = self._config
        for k in key.split("."):
            if isinstance(value, dict) and k in value:
                value = value[k]
            else:
                return default
        return value

    def get_tolerances(self, **overrides: Any) -> ToleranceConfig:
        """
        获取容差配置，命令行覆盖项优先

        Args:
            **overrides: 非 None 的覆盖值

        Returns:
            ToleranceConfig
        """
        values = dict(self.get("tolerances", {}) or {})
        values.update({k: v for k, v in overrides.items() if v is not None})
        return ToleranceConfig(**values)

    def get_parameter_grid(self) -> List[Dict[str, Any]]:
        """获取验证用参数点列表，每项含 q、mu、omega"""
        grid = self.get("parameters.grid", []) or []
        return [
            {
                "q": parse_complex(item["q"]),
                "mu": parse_complex(item["mu"]),
                "omega": int(item.get("omega", 1)),
            }
            for item in grid
        ]

    def get_boundary_grid(self) -> List[complex]:
        """获取 K 矩阵参数 C 的取值"""
        return [parse_complex(c) for c in self.get("boundary.c_values", [0.5]) or []]

    def get_sampling(self) -> Dict[str, int]:
        """获取各套件的采样数量"""
        defaults = {"ybe": 20, "inversion": 10, "pt": 10, "crossing": 10,
                    "reflection": 20, "chain": 5}
        defaults.update(self.get("sampling", {}) or {})
        return {k: int(v) for k, v in defaults.items()}

    def get_tl_point(self) -> Dict[str, Any]:
        """获取 Temperley-Lieb 特化点的 q 与链长"""
        tl = self.get("tl", {}) or {}
        return {"q": parse_complex(tl.get("q", 1.4)), "sites": int(tl.get("sites", 3))}

    def get_logging_config(self) -> Dict[str, Any]:
        """获取日志配置"""
        return self.get("logging", {}) or {}


_loader: Optional[ConfigLoader] = None


def get_config_loader(config_path: Optional[str] = None) -> ConfigLoader:
    """获取全局配置实例，指定路径时重新创建"""
    global _loader
    if _loader is None or (config_path and Path(config_path) != _loader.config_path):
        _loader = ConfigLoader(config_path)
    return _loader
