"""Exhaustive tables of ordered set partitions, used by the brute-force
common-extension oracle."""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations

import numpy as np


@lru_cache(maxsize=None)
def ordered_partition_table(n: int) -> np.ndarray:
    """Every ordered set partition of {0..n-1} as a block-assignment row.

    Row r assigns element i to the block at position table[r, i] of the
    ordered partition.  Rows are produced by enumerating the unordered
    partitions as restricted growth strings and then permuting block labels,
    so the row count follows the ordered Bell numbers: 1, 1, 3, 13, 75, 541,
    4683, 47293 for n = 0..7.
    """
    if n == 0:
        return np.zeros((1, 0), dtype=np.int8)
    growth: list[tuple[list[int], int]] = []
    cur = [0] * n

    def rec(i: int, used: int) -> None:
        if i == n:
            growth.append((cur.copy(), used))
            return
        for b in range(used):
            cur[i] = b
            rec(i + 1, used)
        cur[i] = used
        rec(i + 1, used + 1)

    rec(1, 1)
    rows = []
    for assign, k in growth:
        for sigma in permutations(range(k)):
            rows.append([sigma[b] for b in assign])
    return np.array(rows, dtype=np.int8)
