"""Kernel backend selection.

The compiled extension is used when it was built; set
``POLYMODELS_PURE_PYTHON=1`` to force the pure-Python kernels.
"""

from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("POLYMODELS_PURE_PYTHON", "") not in ("", "0"):
    _impl = _kernels_py
else:
    try:
        from . import _ckernels as _impl  # type: ignore[attr-defined]
    except ImportError:  # extension not built
        _impl = _kernels_py

BACKEND: str = _impl.BACKEND
mul_packed = _impl.mul_packed

python_mul_packed = _kernels_py.mul_packed


def compiled_available() -> bool:
    try:
        from . import _ckernels  # noqa: F401
    except ImportError:
        return False
    return True
