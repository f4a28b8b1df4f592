from typing import Iterable, List, Tuple

import numpy as np
from pydantic.v1 import BaseModel, root_validator

from app.utils.segments import decompose_segments, merge_intervals


class GroundTruth(BaseModel):
    """Drift executions of a dataset as sorted, disjoint, non-adjacent 1-based closed intervals."""
    T: int
    segments: List[Tuple[int, int]] = []

    @root_validator
    def normalize(cls, values):
        T, segments = values.get('T'), values.get('segments')
        if T is None or segments is None:
            return values
        if T < 1:
            raise ValueError('T must be positive')
        for lo, hi in segments:
            if not 1 <= lo <= hi <= T:
                raise ValueError(f'segment [{lo}, {hi}] outside [1, {T}]')
        values['segments'] = merge_intervals(segments)
        return values

    @property
    def k(self) -> int:
        return len(self.segments)

    @property
    def drift_count(self) -> int:
        return sum(hi - lo + 1 for lo, hi in self.segments)

    @property
    def portion(self) -> float:
        return self.drift_count / self.T

    def mask(self) -> np.ndarray:
        res = np.zeros(self.T, dtype=bool)
        for lo, hi in self.segments:
            res[lo - 1:hi] = True
        return res

    @staticmethod
    def from_indices(T: int, indices: Iterable[int]) -> "GroundTruth":
        return GroundTruth(T=T, segments=decompose_segments(indices))

    @staticmethod
    def from_mask(mask: np.ndarray) -> "GroundTruth":
        return GroundTruth.from_indices(len(mask), np.flatnonzero(mask) + 1)
