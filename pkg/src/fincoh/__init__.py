"""Exact (co)homology of finite groups."""
from .engine import CohomologyEngine, TheoryTag, compute
from .groups import parse_group
from .linalg import BACKEND
from .modules import parse_module

__version__ = "0.1.0"

__all__ = ["BACKEND", "CohomologyEngine", "TheoryTag", "compute", "parse_group", "parse_module"]
