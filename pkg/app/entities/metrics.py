from enum import Enum
from typing import List, Tuple

from pydantic.v1 import BaseModel, validator


class CurveKind(str, Enum):
    ols = 'OLS'
    sols = 'sOLS'
    tpr = 'TPR'


class IntegrationRule(str, Enum):
    step = 'step'
    trapezoid = 'trapezoid'


class ThresholdCurve(BaseModel):
    """(fpr, value) points of a threshold sweep, strictly increasing in fpr from 0 to 1."""
    points: List[Tuple[float, float]]
    kind: CurveKind

    @validator('points')
    def spans_unit_interval(cls, v):
        if len(v) < 2:
            raise ValueError('a curve needs at least the fpr=0 and fpr=1 points')
        if v[0][0] != 0.0 or v[-1][0] != 1.0:
            raise ValueError('curve must start at fpr=0 and end at fpr=1')
        for (a, _), (b, _) in zip(v, v[1:]):
            if not a < b:
                raise ValueError('fpr values must be strictly increasing')
        return v

    @property
    def fpr(self) -> List[float]:
        return [p[0] for p in self.points]

    @property
    def values(self) -> List[float]:
        return [p[1] for p in self.points]


class MetricReport(BaseModel):
    tauc_step: float
    tauc_trapezoid: float
    stauc_step: float
    stauc_trapezoid: float
    auc: float
