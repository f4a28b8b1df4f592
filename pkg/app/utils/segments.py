from typing import Iterable, List, Sequence, Tuple

import numpy as np

Interval = Tuple[int, int]


def decompose_segments(indices: Iterable[int]) -> List[Interval]:
    """Maximal runs of consecutive integers as sorted closed intervals."""
    values = np.unique(np.fromiter((int(i) for i in indices), dtype=np.int64))
    if values.size == 0:
        return []
    breaks = np.flatnonzero(np.diff(values) != 1)
    starts = np.concatenate(([values[0]], values[breaks + 1]))
    ends = np.concatenate((values[breaks], [values[-1]]))
    return [(int(lo), int(hi)) for lo, hi in zip(starts, ends)]


def merge_intervals(intervals: Sequence[Interval]) -> List[Interval]:
    """Sort intervals and merge the overlapping or adjacent ones."""
    res: List[Interval] = []
    for lo, hi in sorted((int(lo), int(hi)) for lo, hi in intervals):
        if res and lo <= res[-1][1] + 1:
            res[-1] = (res[-1][0], max(res[-1][1], hi))
        else:
            res.append((lo, hi))
    return res


def mask_runs(mask: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """0-based start and end (inclusive) positions of the True runs of a boolean mask."""
    padded = np.concatenate(([False], mask, [False])).astype(np.int8)
    edges = np.diff(padded)
    starts = np.flatnonzero(edges == 1)
    ends = np.flatnonzero(edges == -1) - 1
    return starts, ends
