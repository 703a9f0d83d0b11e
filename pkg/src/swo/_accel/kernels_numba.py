"""Jitted kernels.  Signatures and semantics match kernels_numpy exactly."""

from __future__ import annotations

import numba
import numpy as np

_OPTS = {"cache": True, "nogil": True}


@numba.njit(**_OPTS)
def verdict_run(ex, ey, nsyms):  # pragma: no cover - exercised via dispatch
    """Sorted-prefix comparison verdict at every prefix length 1..len(ex).

    out[i] is -1 / 0 / +1 when the first stream's length-(i+1) sorted prefix
    is lexicographically below / equal to / above the second's.  The verdict
    is the sign at the smallest symbol whose prefix multiplicities differ;
    holding more copies of that smaller symbol means the sorted word is
    smaller.
    """
    n = ex.shape[0]
    out = np.zeros(n, dtype=np.int8)
    diff = np.zeros(nsyms, dtype=np.int64)
    for i in range(n):
        diff[ex[i]] += 1
        diff[ey[i]] -= 1
        v = 0
        for s in range(nsyms):
            if diff[s] != 0:
                v = -1 if diff[s] > 0 else 1
                break
        out[i] = v
    return out


@numba.njit(**_OPTS)
def find_extension(table, leq, pblk, qblk):  # pragma: no cover
    """Index of the first ordered partition that is a valid common extension.

    table holds block assignments (one partition per row), leq the base
    preorder as a boolean matrix, pblk/qblk each element's block position in
    the two conditions (-1 when the element is outside that domain).
    Returns -1 when no row passes.  A row passes when block membership
    matches base equivalence, block order respects strict base order, and
    the row's restriction to each condition's domain reproduces that
    condition exactly.
    """
    nrows, n = table.shape
    for row in range(nrows):
        good = True
        for i in range(n):
            if not good:
                break
            ai = table[row, i]
            for j in range(i + 1, n):
                aj = table[row, j]
                same = ai == aj
                if same != (leq[i, j] and leq[j, i]):
                    good = False
                    break
                if leq[i, j] and not leq[j, i] and ai >= aj:
                    good = False
                    break
                if leq[j, i] and not leq[i, j] and aj >= ai:
                    good = False
                    break
                pi, pj = pblk[i], pblk[j]
                if pi >= 0 and pj >= 0:
                    if pi == pj:
                        if not same:
                            good = False
                            break
                    elif pi < pj:
                        if ai >= aj:
                            good = False
                            break
                    elif aj >= ai:
                        good = False
                        break
                qi, qj = qblk[i], qblk[j]
                if qi >= 0 and qj >= 0:
                    if qi == qj:
                        if not same:
                            good = False
                            break
                    elif qi < qj:
                        if ai >= aj:
                            good = False
                            break
                    elif aj >= ai:
                        good = False
                        break
        if good:
            return row
    return -1
