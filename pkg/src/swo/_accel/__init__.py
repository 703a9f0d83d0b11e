"""Kernel dispatch for the two hot loops.

The jitted implementations in kernels_numba are the default; set SWO_NUMBA=0
(or uninstall numba) to run the pure numpy versions instead.  Both backends
compute identical results; benchmarks/bench_kernels.py times them side by
side.
"""

from __future__ import annotations

import os

from .partitions import ordered_partition_table

__all__ = ["BACKEND", "verdict_run", "find_extension", "ordered_partition_table"]


def _numba_enabled() -> bool:
    flag = os.environ.get("SWO_NUMBA", "1").strip().lower()
    if flag in ("0", "false", "off", "no"):
        return False
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


if _numba_enabled():
    from .kernels_numba import find_extension, verdict_run

    BACKEND = "numba"
else:
    from .kernels_numpy import find_extension, verdict_run

    BACKEND = "numpy"
