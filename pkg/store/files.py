import json
import logging
from pathlib import Path
from typing import List, Sequence

import numpy as np
import pandas as pd
from pydantic.v1 import ValidationError

from app.entities.ground_truth import GroundTruth
from app.entities.metrics import MetricReport, ThresholdCurve
from store.config import StoreConfig
from store.errors import MalformedFile, NotFound

log = logging.getLogger(__name__)


def _existing(path) -> Path:
    path = Path(path)
    if not path.is_file():
        raise NotFound(f'{path} does not exist')
    return path


class FileStore:
    """Readers and writers for the plain-text files shared by all commands."""

    def __init__(self, cfg: StoreConfig = None):
        self.config = cfg or StoreConfig()

    def write_matrix(self, path, values: np.ndarray) -> Path:
        path = Path(path)
        pd.DataFrame(np.atleast_2d(values)).to_csv(path, header=False, index=False,
                                                   float_format=self.config.float_format, lineterminator='\n')
        return path

    def read_matrix(self, path, columns: int = None) -> np.ndarray:
        path = _existing(path)
        try:
            frame = pd.read_csv(path, header=None, dtype=float, float_precision='round_trip')
        except (ValueError, pd.errors.ParserError, pd.errors.EmptyDataError) as exc:
            raise MalformedFile(f'{path}: {exc}') from exc
        values = frame.to_numpy()
        if columns is not None and values.shape[1] != columns:
            raise MalformedFile(f'{path}: expected {columns} columns, found {values.shape[1]}')
        if not np.all(np.isfinite(values)):
            raise MalformedFile(f'{path}: non-finite or missing values')
        return values

    def write_scores(self, path, scores: Sequence[float]) -> Path:
        return self.write_matrix(path, np.asarray(scores, dtype=float).reshape(-1, 1))

    def read_scores(self, path, length: int = None) -> np.ndarray:
        scores = self.read_matrix(path, columns=1)[:, 0]
        if length is not None and len(scores) != length:
            raise MalformedFile(f'{path}: {len(scores)} scores for T={length}')
        return scores

    def write_json(self, path, data) -> Path:
        path = Path(path)
        path.write_text(json.dumps(data, indent=2) + '\n', encoding='utf-8')
        return path

    def read_json(self, path):
        path = _existing(path)
        try:
            return json.loads(path.read_text(encoding='utf-8'))
        except json.JSONDecodeError as exc:
            raise MalformedFile(f'{path}: {exc}') from exc

    def write_ground_truth(self, path, gt: GroundTruth) -> Path:
        return self.write_json(path, {'T': gt.T, 'segments': [list(seg) for seg in gt.segments]})

    def read_ground_truth(self, path) -> GroundTruth:
        data = self.read_json(path)
        try:
            return GroundTruth.parse_obj(data)
        except ValidationError as exc:
            raise MalformedFile(f'{path}: {exc}') from exc

    def write_report(self, path, report: MetricReport) -> Path:
        return self.write_json(path, report.dict())

    def write_curve_points(self, path, curve: ThresholdCurve) -> Path:
        path = Path(path)
        frame = pd.DataFrame(curve.points, columns=['fpr', 'value'])
        frame.to_csv(path, index=False, float_format=self.config.float_format, lineterminator='\n')
        return path

    def write_table(self, path, frame: pd.DataFrame) -> Path:
        path = Path(path)
        frame.to_csv(path, index=False, float_format=self.config.float_format, lineterminator='\n')
        log.info('wrote %s', path)
        return path

    def read_table(self, path, columns: List[str] = None) -> pd.DataFrame:
        path = _existing(path)
        try:
            frame = pd.read_csv(path, float_precision='round_trip')
        except (ValueError, pd.errors.ParserError, pd.errors.EmptyDataError) as exc:
            raise MalformedFile(f'{path}: {exc}') from exc
        if columns is not None and list(frame.columns) != list(columns):
            raise MalformedFile(f'{path}: header {list(frame.columns)} is not {columns}')
        return frame
