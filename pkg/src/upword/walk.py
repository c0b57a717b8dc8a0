"""Kernel selection: the compiled walk when built, else the pure-Python one.

Set ``UPWORD_PURE_PYTHON=1`` to force the fallback.
"""
import os

from . import _walk_py
from ._walk_py import BUDGET, EXHAUSTED, STAT_KEYS, WITNESS

walk_python = _walk_py.walk

try:
    if os.environ.get("UPWORD_PURE_PYTHON"):
        raise ImportError("pure Python requested")
    from ._walk import walk as walk_compiled
except ImportError:
    walk_compiled = None

BACKEND = "cython" if walk_compiled is not None else "python"
walk = walk_compiled or walk_python

__all__ = ["walk", "walk_python", "walk_compiled", "BACKEND", "EXHAUSTED", "WITNESS", "BUDGET", "STAT_KEYS"]
