"""Dataset directories: curves, grids, latents, ground truth and the spec echo.

Curves and grids are CSV by default; the packed format stores them as a
20-byte little-endian header (magic, version, T, m) followed by float64 rows.
"""
import logging
import struct
from pathlib import Path

import numpy as np
from pydantic.v1 import ValidationError

from app.entities.dataset import DatasetSpec, ProcessCurveDataset
from store.config import StoreConfig
from store.errors import MalformedFile, NotFound
from store.files import FileStore

log = logging.getLogger(__name__)

CURVES, GRID, LATENTS = 'curves', 'grid', 'latents'
GROUND_TRUTH, SPEC = 'ground_truth.json', 'spec.json'
HEADER = struct.Struct('<8sIII')


class DatasetStore(FileStore):

    def __init__(self, cfg: StoreConfig = None):
        super().__init__(cfg)
        self.magic = self.config.packed_magic.encode('ascii')

    def write_packed(self, path, values: np.ndarray) -> Path:
        path = Path(path)
        T, m = values.shape
        with path.open('wb') as fh:
            fh.write(HEADER.pack(self.magic, self.config.packed_version, T, m))
            fh.write(np.ascontiguousarray(values, dtype='<f8').tobytes())
        return path

    def read_packed(self, path) -> np.ndarray:
        path = Path(path)
        if not path.is_file():
            raise NotFound(f'{path} does not exist')
        raw = path.read_bytes()
        if len(raw) < HEADER.size:
            raise MalformedFile(f'{path}: truncated header')
        magic, version, T, m = HEADER.unpack_from(raw)
        if magic != self.magic or version != self.config.packed_version:
            raise MalformedFile(f'{path}: not a version {self.config.packed_version} packed file')
        if len(raw) != HEADER.size + 8 * T * m:
            raise MalformedFile(f'{path}: expected {T}x{m} values')
        return np.frombuffer(raw, dtype='<f8', offset=HEADER.size).reshape(T, m).astype(float)

    def _matrix_path(self, directory: Path, name: str) -> Path:
        packed = directory / f'{name}.bin'
        return packed if packed.is_file() else directory / f'{name}.csv'

    def _read_any(self, path: Path) -> np.ndarray:
        return self.read_packed(path) if path.suffix == '.bin' else self.read_matrix(path)

    def write(self, directory, dataset: ProcessCurveDataset, fmt: str = 'csv') -> Path:
        directory = Path(directory)
        if not directory.parent.is_dir():
            raise NotFound(f'parent directory of {directory} does not exist')
        directory.mkdir(exist_ok=True)
        if fmt == 'packed':
            self.write_packed(directory / f'{CURVES}.bin', dataset.curves)
            self.write_packed(directory / f'{GRID}.bin', dataset.sample_grids)
        elif fmt == 'csv':
            self.write_matrix(directory / f'{CURVES}.csv', dataset.curves)
            self.write_matrix(directory / f'{GRID}.csv', dataset.sample_grids)
        else:
            raise ValueError(f'unknown dataset format {fmt!r}')
        self.write_matrix(directory / f'{LATENTS}.csv', dataset.latents)
        self.write_ground_truth(directory / GROUND_TRUTH, dataset.ground_truth)
        (directory / SPEC).write_text(dataset.spec.json(indent=2) + '\n', encoding='utf-8')
        log.info('dataset written to %s (%s)', directory, fmt)
        return directory

    def read(self, directory) -> ProcessCurveDataset:
        directory = Path(directory)
        if not directory.is_dir():
            raise NotFound(f'{directory} is not a dataset directory')
        curves = self._read_any(self._matrix_path(directory, CURVES))
        grids = self._read_any(self._matrix_path(directory, GRID))
        latents = self.read_matrix(directory / f'{LATENTS}.csv')
        gt = self.read_ground_truth(directory / GROUND_TRUTH)
        try:
            spec = DatasetSpec.parse_obj(self.read_json(directory / SPEC))
        except ValidationError as exc:
            raise MalformedFile(f'{directory / SPEC}: {exc}') from exc
        if grids.shape != curves.shape or latents.shape[0] != curves.shape[0] or gt.T != curves.shape[0]:
            raise MalformedFile(f'{directory}: curves {curves.shape}, grid {grids.shape}, '
                                f'latents {latents.shape} and T={gt.T} disagree')
        return ProcessCurveDataset(curves=curves, sample_grids=grids, latents=latents, ground_truth=gt,
                                   spec=spec, solver_report=np.full(gt.T, np.nan))
