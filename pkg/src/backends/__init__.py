from src.backends.base import CosetBackend, Token
from src.backends.cyclic import TrivialEdgeBackend
from src.backends.finite_table import FiniteGroup, FiniteTableBackend
from src.backends.gbs import GBSBackend

__all__ = [
    "CosetBackend",
    "Token",
    "GBSBackend",
    "TrivialEdgeBackend",
    "FiniteGroup",
    "FiniteTableBackend",
]
