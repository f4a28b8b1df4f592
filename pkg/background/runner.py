import logging
import time
import traceback
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, Optional, Tuple

from app.DriftLab.context import RunContext
from app.controllers.detectors import DetectorsController
from app.controllers.generator import GeneratorController
from app.controllers.metrics import MetricsController
from app.controllers.presets import PresetsController
from app.entities.bench import BenchFailure, BenchResult, BenchRow, BenchSpec, DatasetRef
from app.entities.dataset import ProcessCurveDataset
from app.entities.detectors import AnyDetector, detector_seed, seeded

log = logging.getLogger(__name__)

Generated = Tuple[Optional[ProcessCurveDataset], Optional[BaseException]]


def _failure(ref: DatasetRef, seed: int, detector: str, stage: str, exc: BaseException) -> BenchFailure:
    logging.log(logging.ERROR, f'{ref.label} seed={seed} {detector} failed during {stage}: {exc}')
    traceback.print_exception(type(exc), exc, exc.__traceback__)
    return BenchFailure(dataset=ref.label, seed=seed, detector=detector, stage=stage,
                        error=type(exc).__name__, message=str(exc))


class BenchRunner:
    """Executes (dataset, seed, detector) triples on a thread pool; rows are keyed by triple."""

    def __init__(self, workers: int = 1, record_wall_time: bool = False):
        self.workers = max(int(workers), 1)
        self.record_wall_time = record_wall_time

    def run(self, spec: BenchSpec) -> BenchResult:
        pairs = [(ref, seed) for ref in spec.datasets for seed in spec.seeds]
        first_seed = min(spec.seeds)
        result = BenchResult()
        with ThreadPoolExecutor(max_workers=self.workers) as pool:
            generated: Dict[Tuple[str, int], Generated] = dict(zip(
                [(ref.label, seed) for ref, seed in pairs],
                pool.map(lambda pair: self.generate(*pair), pairs)))
            triples = [(ref, seed, det) for ref, seed in pairs for det in spec.detectors]
            outcomes = list(pool.map(lambda triple: self.evaluate(generated[(triple[0].label, triple[1])], *triple),
                                     triples))

        for ref, seed in pairs:
            dataset, _ = generated[(ref.label, seed)]
            if dataset is not None:
                result.ground_truths[(ref.label, seed)] = dataset.ground_truth
        for (ref, seed, det), (row, failure, scores) in zip(triples, outcomes):
            if row is not None:
                result.rows.append(row)
                if seed == first_seed:
                    result.scores[row.key] = scores
            else:
                result.failures.append(failure)
        log.info('bench finished: %d rows, %d failures', len(result.rows), len(result.failures))
        return result

    @staticmethod
    def generate(ref: DatasetRef, seed: int) -> Generated:
        try:
            spec = PresetsController.preset(ref.name, ref.scale, seed)
            return GeneratorController.generate(spec), None
        except Exception as exc:
            return None, exc

    def evaluate(self, generated: Generated, ref: DatasetRef, seed: int, det: AnyDetector):
        dataset, error = generated
        if dataset is None:
            return None, _failure(ref, seed, det.label, 'generate', error), None

        own_seed = detector_seed(det)
        if own_seed is not None:
            det = seeded(det, RunContext(own_seed).child_seed(seed))
        started = time.perf_counter()
        try:
            scores = DetectorsController.score(det, dataset.view())
        except Exception as exc:
            return None, _failure(ref, seed, det.label, 'score', exc), None
        try:
            report = MetricsController.report(dataset.ground_truth, scores)
        except Exception as exc:
            return None, _failure(ref, seed, det.label, 'metrics', exc), None
        elapsed = (time.perf_counter() - started) * 1000.0 if self.record_wall_time else 0.0

        row = BenchRow(dataset=ref.label, seed=seed, detector=det.label,
                       tauc_step=report.tauc_step, tauc_trap=report.tauc_trapezoid,
                       stauc_step=report.stauc_step, stauc_trap=report.stauc_trapezoid,
                       auc=report.auc, wall_time_ms=elapsed)
        log.info('%s seed=%d %s: tauc=%.4f/%.4f stauc=%.4f/%.4f auc=%.4f (%.0f ms)', row.dataset, seed, row.detector,
                 row.tauc_step, row.tauc_trap, row.stauc_step, row.stauc_trap, row.auc, elapsed)
        return row, None, scores
