"""Cluster words of omega-terms over finite aperiodic semigroups."""
from .kernels import BACKEND
from .semigroup import FiniteSemigroup, from_table, from_transformations, green
from .omegaterm import evaluate, normalize, parse, show
from .cluster import build, order_type

__all__ = ["BACKEND", "FiniteSemigroup", "from_table", "from_transformations", "green",
           "evaluate", "normalize", "parse", "show", "build", "order_type"]
__version__ = "0.1.0"
