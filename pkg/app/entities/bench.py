from typing import Dict, List, Optional, Tuple

import numpy as np
import pandas as pd
from pydantic.v1 import BaseModel, validator

from app import constants
from app.entities.detectors import DetectorSpec
from app.entities.ground_truth import GroundTruth
from app.entities.metrics import IntegrationRule

RESULT_COLUMNS = ['dataset', 'seed', 'detector', 'tauc_step', 'tauc_trap', 'stauc_step', 'stauc_trap', 'auc',
                  'wall_time_ms']
METRIC_COLUMNS = RESULT_COLUMNS[3:8]
FAILURE_COLUMNS = ['dataset', 'seed', 'detector', 'stage', 'error', 'message']


class DatasetRef(BaseModel):
    name: str
    scale: float = 1.0

    @validator('scale')
    def unit_scale(cls, v):
        if not 0 < v <= 1:
            raise ValueError('scale must be in (0, 1]')
        return v

    @property
    def label(self) -> str:
        return self.name if self.scale == 1.0 else f'{self.name}@{self.scale:g}'


class BenchSpec(BaseModel):
    datasets: List[DatasetRef]
    detectors: List[DetectorSpec]
    seeds: List[int] = constants.DEFAULT_SEEDS
    rules: List[IntegrationRule] = [IntegrationRule.step, IntegrationRule.trapezoid]
    out_dir: Optional[str] = None
    workers: Optional[int] = None
    record_wall_time: Optional[bool] = None

    @validator('datasets', 'detectors', 'seeds', 'rules')
    def not_empty(cls, v):
        if not v:
            raise ValueError('at least one entry is needed')
        return v

    @validator('datasets')
    def unique_datasets(cls, v):
        labels = [d.label for d in v]
        if len(set(labels)) != len(labels):
            raise ValueError('datasets must be distinct')
        return v

    @validator('detectors')
    def unique_labels(cls, v):
        labels = [d.label for d in v]
        duplicated = sorted({label for label in labels if labels.count(label) > 1})
        if duplicated:
            raise ValueError(f'duplicated detectors: {", ".join(duplicated)}')
        return v

    @validator('seeds')
    def unique_seeds(cls, v):
        if len(set(v)) != len(v) or min(v) < 0:
            raise ValueError('seeds must be distinct non-negative integers')
        return v


class BenchRow(BaseModel):
    dataset: str
    seed: int
    detector: str
    tauc_step: float
    tauc_trap: float
    stauc_step: float
    stauc_trap: float
    auc: float
    wall_time_ms: float = 0.0

    @property
    def key(self) -> Tuple[str, int, str]:
        return self.dataset, self.seed, self.detector


class BenchFailure(BaseModel):
    dataset: str
    seed: int
    detector: str
    stage: str
    error: str
    message: str


class BenchResult(BaseModel):
    rows: List[BenchRow] = []
    failures: List[BenchFailure] = []
    # first-seed score series and ground truths kept for the trace plots
    scores: Dict[Tuple[str, int, str], np.ndarray] = {}
    ground_truths: Dict[Tuple[str, int], GroundTruth] = {}

    class Config:
        arbitrary_types_allowed = True

    def frame(self) -> pd.DataFrame:
        rows = sorted(self.rows, key=lambda r: r.key)
        return pd.DataFrame([r.dict() for r in rows], columns=RESULT_COLUMNS)

    def failure_frame(self) -> pd.DataFrame:
        failures = sorted(self.failures, key=lambda f: (f.dataset, f.seed, f.detector))
        return pd.DataFrame([f.dict() for f in failures], columns=FAILURE_COLUMNS)

    def summary(self) -> pd.DataFrame:
        """Mean and standard deviation over seeds per dataset and detector."""
        frame = self.frame()
        grouped = frame.groupby(['dataset', 'detector'], sort=True)[METRIC_COLUMNS]
        means = grouped.mean().add_suffix('_mean')
        stds = grouped.std(ddof=1).fillna(0.0).add_suffix('_std')
        counts = grouped.size().rename('runs')
        return pd.concat([means, stds, counts], axis=1).reset_index()

    def datasets(self) -> List[str]:
        return sorted({r.dataset for r in self.rows})

    @staticmethod
    def from_frame(frame: pd.DataFrame) -> "BenchResult":
        return BenchResult(rows=[BenchRow(**record) for record in frame.to_dict(orient='records')])
