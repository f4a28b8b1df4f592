from enum import Enum
from typing import List

from pydantic.v1 import BaseModel, validator, root_validator


class SupportCondition(BaseModel):
    """Target for the order-th x-derivative: d^order/dx^order f(w, x) = y."""
    order: int
    x: float
    y: float

    class Config:
        allow_mutation = False

    @validator('order')
    def non_negative(cls, v):
        if v < 0:
            raise ValueError('order must be non-negative')
        return v


class DriftSpec(BaseModel):
    t0: int
    t1: int
    a: float
    b: float

    @root_validator
    def ordered(cls, values):
        t0, t1 = values.get('t0'), values.get('t1')
        if t0 is not None and t1 is not None and not 1 <= t0 < t1:
            raise ValueError(f'drift needs 1 <= t0 < t1, got [{t0}, {t1}]')
        return values


class DriftingCoordinate(str, Enum):
    x = 'x'
    y = 'y'
    none = 'none'


class SupportSchedule(BaseModel):
    condition: SupportCondition
    drifting_coordinate: DriftingCoordinate = DriftingCoordinate.none
    drifts: List[DriftSpec] = []
    noise_sigma: float = 0.0

    class Config:
        use_enum_values = True

    @validator('noise_sigma')
    def sigma_non_negative(cls, v):
        if v < 0:
            raise ValueError('noise_sigma must be non-negative')
        return v

    @validator('drifts')
    def disjoint_sorted(cls, drifts):
        for prev, cur in zip(drifts, drifts[1:]):
            if cur.t0 <= prev.t1:
                raise ValueError(f'drifts [{prev.t0}, {prev.t1}] and [{cur.t0}, {cur.t1}] overlap or are unsorted')
        return drifts

    @root_validator
    def drifts_need_coordinate(cls, values):
        if values.get('drifts') and values.get('drifting_coordinate') == DriftingCoordinate.none:
            raise ValueError('a schedule with drifts needs drifting_coordinate x or y')
        return values
