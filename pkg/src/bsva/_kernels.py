"""Kernel selection: the compiled extension when importable, else pure Python.

Set ``BSVA_PURE_PYTHON=1`` to force the fallback.
"""
import os

from bsva import _pykernels

if os.environ.get("BSVA_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pykernels
else:
    try:
        from bsva import _ckernels as _impl
    except ImportError:
        _impl = _pykernels

BACKEND = _impl.BACKEND
britton_left = _impl.britton_left
britton_right = _impl.britton_right
sweep = _impl.sweep
normal_form = _impl.normal_form
affine = _impl.affine
forward_neighbors = _impl.forward_neighbors
backward_neighbors = _impl.backward_neighbors
