"""Kernel backend selection.

The compiled extension is used when it was built; otherwise the pure-Python
fallback is loaded.  Setting ``HASSE_JETS_PURE=1`` forces the fallback.
"""
from __future__ import annotations

import os

if os.environ.get("HASSE_JETS_PURE", "") not in ("", "0"):
    from ._kernels_py import BACKEND, poly_mul_mod_p, rref_mod_p
else:
    try:
        from ._kernels import BACKEND, poly_mul_mod_p, rref_mod_p
    except ImportError:  # extension not built
        from ._kernels_py import BACKEND, poly_mul_mod_p, rref_mod_p

__all__ = ["BACKEND", "poly_mul_mod_p", "rref_mod_p"]
