from typing import Dict, List, Optional

import numpy as np
from pydantic.v1 import BaseModel, validator, root_validator

from app import constants
from app.entities.family import FunctionFamily
from app.entities.ground_truth import GroundTruth
from app.entities.support import SupportSchedule


class SolverSettings(BaseModel):
    max_iters: int = constants.SOLVER_MAX_ITERS
    residual_tol: float = constants.SOLVER_RESIDUAL_TOL
    damping_init: float = constants.SOLVER_DAMPING_INIT
    warm_start: bool = True

    @validator('max_iters')
    def positive_iters(cls, v):
        if v < 1:
            raise ValueError('max_iters must be positive')
        return v

    @validator('residual_tol', 'damping_init')
    def positive(cls, v):
        if v <= 0:
            raise ValueError('must be positive')
        return v


class GridSpec(BaseModel):
    x_bar: float = 0.0
    dx: float = 0.04
    m: int = 100

    @validator('dx')
    def positive_step(cls, v):
        if v <= 0:
            raise ValueError('dx must be positive')
        return v

    @validator('m')
    def enough_samples(cls, v):
        if v < 2:
            raise ValueError('m must be at least 2')
        return v

    def base(self) -> np.ndarray:
        return self.x_bar + self.dx * np.arange(1, self.m + 1)


class NoiseSpec(BaseModel):
    sigma_x: float = 0.0
    # None means RELATIVE_SIGMA_Y times the value range of the noiseless curves
    sigma_y: Optional[float] = None

    @validator('sigma_x', 'sigma_y')
    def non_negative(cls, v):
        if v is not None and v < 0:
            raise ValueError('noise sigma must be non-negative')
        return v


class DatasetSpec(BaseModel):
    family: FunctionFamily
    schedules: List[SupportSchedule]
    weights: Dict[int, float] = {}
    T: int
    grid: GridSpec = GridSpec()
    noise: NoiseSpec = NoiseSpec()
    seed: int = 0
    solver: SolverSettings = SolverSettings()
    init: Optional[List[float]] = None
    name: Optional[str] = None

    @validator('T')
    def positive_T(cls, v):
        if v < 1:
            raise ValueError('T must be at least 1')
        return v

    @validator('weights')
    def positive_weights(cls, v):
        for order, weight in v.items():
            if weight <= 0:
                raise ValueError(f'weight of order {order} must be positive')
        return v

    @validator('seed')
    def seed_64bit(cls, v):
        if not 0 <= v < 2 ** 64:
            raise ValueError('seed must be an unsigned 64-bit integer')
        return v

    @root_validator
    def consistent(cls, values):
        family, schedules, T = values.get('family'), values.get('schedules'), values.get('T')
        if family is None or schedules is None or T is None:
            return values
        if not schedules:
            raise ValueError('at least one support schedule is needed')
        for schedule in schedules:
            if schedule.condition.order > family.max_order:
                raise ValueError(f'condition order {schedule.condition.order} exceeds max_order {family.max_order}')
            for drift in schedule.drifts:
                if drift.t1 > T:
                    raise ValueError(f'drift [{drift.t0}, {drift.t1}] exceeds T={T}')
        init = values.get('init')
        if init is not None and len(init) != family.param_dim:
            raise ValueError(f'init needs {family.param_dim} entries, got {len(init)}')
        return values

    def weight_vector(self) -> Dict[int, float]:
        return {order: self.weights.get(order, 1.0) for order in range(self.family.max_order + 1)}


class CurveView(BaseModel):
    """What a detector may see of a dataset: curves and their sample grids, never the ground truth."""
    curves: np.ndarray
    sample_grids: np.ndarray

    class Config:
        arbitrary_types_allowed = True
        allow_mutation = False

    @property
    def T(self) -> int:
        return self.curves.shape[0]


class ProcessCurveDataset(BaseModel):
    curves: np.ndarray
    sample_grids: np.ndarray
    latents: np.ndarray
    ground_truth: GroundTruth
    spec: DatasetSpec
    solver_report: np.ndarray

    class Config:
        arbitrary_types_allowed = True

    @property
    def T(self) -> int:
        return self.curves.shape[0]

    @property
    def m(self) -> int:
        return self.curves.shape[1]

    def view(self) -> CurveView:
        return CurveView(curves=self.curves, sample_grids=self.sample_grids)
