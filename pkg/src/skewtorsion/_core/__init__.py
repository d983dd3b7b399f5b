"""Kernel backend selection.

The compiled extension is optional: when it is missing, or when the
SKEWTORSION_PURE environment variable is set, the pure-Python kernels are
used.  Both expose the same API and are tested against each other.
"""

import os

from . import kernels_py

BACKEND = "python"
IntEchelon = kernels_py.IntEchelon
mat_mul_int = kernels_py.mat_mul_int
mat_comm_int = kernels_py.mat_comm_int

if not os.environ.get("SKEWTORSION_PURE"):
    try:
        from . import _kernels_c

        IntEchelon = _kernels_c.IntEchelon
        mat_mul_int = _kernels_c.mat_mul_int
        mat_comm_int = _kernels_c.mat_comm_int
        BACKEND = "compiled"
    except ImportError:
        pass

__all__ = ["BACKEND", "IntEchelon", "mat_mul_int", "mat_comm_int", "kernels_py"]
