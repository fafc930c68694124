"""Exact workbench for polynomial diffusion models built from finite subgroups of O(3)."""

from .kernels import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "__version__"]
