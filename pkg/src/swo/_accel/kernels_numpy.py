"""Pure numpy fallbacks for the jitted kernels.

Same contracts as kernels_numba; these vectorize across rows instead of
short-circuiting, which costs a constant factor but needs no compilation.
"""

from __future__ import annotations

import numpy as np


def verdict_run(ex: np.ndarray, ey: np.ndarray, nsyms: int) -> np.ndarray:
    n = ex.shape[0]
    sym = np.arange(nsyms, dtype=np.int64)
    cx = np.cumsum(ex[:, None] == sym[None, :], axis=0)
    cy = np.cumsum(ey[:, None] == sym[None, :], axis=0)
    diff = cx - cy
    nonzero = diff != 0
    has = nonzero.any(axis=1)
    first = np.where(has, np.argmax(nonzero, axis=1), 0)
    lead = diff[np.arange(n), first]
    return np.where(has, -np.sign(lead), 0).astype(np.int8)


def find_extension(
    table: np.ndarray, leq: np.ndarray, pblk: np.ndarray, qblk: np.ndarray
) -> int:
    nrows, n = table.shape
    ok = np.ones(nrows, dtype=bool)
    a = table.astype(np.int16)
    for i in range(n):
        ai = a[:, i]
        for j in range(i + 1, n):
            aj = a[:, j]
            same = ai == aj
            ok &= same == bool(leq[i, j] and leq[j, i])
            if leq[i, j] and not leq[j, i]:
                ok &= ai < aj
            elif leq[j, i] and not leq[i, j]:
                ok &= aj < ai
            for blk in (pblk, qblk):
                bi, bj = blk[i], blk[j]
                if bi >= 0 and bj >= 0:
                    if bi == bj:
                        ok &= same
                    elif bi < bj:
                        ok &= ai < aj
                    else:
                        ok &= aj < ai
    hits = np.flatnonzero(ok)
    return int(hits[0]) if hits.size else -1
