"""
U_q(sl(2|1)) 四维典型表示上的辫子群算子、R 矩阵、K 矩阵与可积链

数值构造全部算子，并逐条验证代数恒等式。
"""

__version__ = "1.0.0"

from .errors import UqChainError
from .scalars import DeformParams, derive_params, tl_params
from .uqsl21 import GeneratorSet, build_rep
from .braid import BraidPair, braid_pair
from .chains import ChainSpec, Model, h_open, spectrum

__all__ = [
    "__version__", "UqChainError", "DeformParams", "derive_params", "tl_params",
    "GeneratorSet", "build_rep", "BraidPair", "braid_pair",
    "ChainSpec", "Model", "h_open", "spectrum",
]
