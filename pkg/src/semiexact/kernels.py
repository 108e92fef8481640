"""Kernel selection.

The compiled extension is used when it imports; otherwise, or when the
environment variable ``SEMIEXACT_PURE_PYTHON`` is set to a non-empty value,
the pure-Python implementation is used.  ``BACKEND`` records the choice.
"""

import os

from . import _pykernels

if os.environ.get("SEMIEXACT_PURE_PYTHON"):
    _impl = _pykernels
else:
    try:
        from . import _kernels as _impl
    except ImportError:  # extension not built
        _impl = _pykernels

BACKEND = "python" if _impl is _pykernels else "cython"

image_codes = _impl.image_codes
matmul = _impl.matmul
