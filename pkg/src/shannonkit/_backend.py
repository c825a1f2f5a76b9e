"""Select the compiled kernels when available, else the numpy fallback.

Set ``SHANNONKIT_BACKEND=python`` to force the fallback.
"""
import os

from . import _pykernels

if os.environ.get("SHANNONKIT_BACKEND", "").lower() == "python":
    kernels = _pykernels
else:
    try:
        from . import _kernels as kernels
    except ImportError:
        kernels = _pykernels

BACKEND = "python" if kernels is _pykernels else "cython"
