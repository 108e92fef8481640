"""Linear algebra over semirings: spans, kernels, exactness checks, complements
over Z/nZ, residuation for anti-involutive semirings, group semirings and
Green's relations on matrices."""

from __future__ import annotations

__version__ = "0.1.0"

from .kernels import BACKEND
from .matrix import Mat, col_space, row_space
from .semiring import boolean, gmax, parse_semiring, tropical, tropical_complete, zmod

__all__ = [
    "BACKEND",
    "Mat",
    "__version__",
    "boolean",
    "col_space",
    "gmax",
    "parse_semiring",
    "row_space",
    "tropical",
    "tropical_complete",
    "zmod",
]
