"""Exact and Monte Carlo laboratory for the warp-transpose top with random shuffle."""

from .kernels import BACKEND

__version__ = "0.1.0"
__all__ = ["BACKEND", "__version__"]
