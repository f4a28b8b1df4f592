import logging
import re
from pathlib import Path
from typing import Dict, List, Optional, Sequence

import numpy as np
import pandas as pd

from app.controllers.presets import PresetsController
from app.entities.bench import BenchResult, BenchSpec
from app.entities.metrics import IntegrationRule
from app.errors import EmptyResultError, UndefinedCorrelation, UnknownPresetError
from app.utils import svg
from background.runner import BenchRunner
from store.files import FileStore

log = logging.getLogger(__name__)

RULE_COLUMNS = {
    IntegrationRule.step: ['tauc_step', 'stauc_step'],
    IntegrationRule.trapezoid: ['tauc_trap', 'stauc_trap'],
}


def _slug(text: str) -> str:
    return re.sub(r'[^A-Za-z0-9._-]+', '_', text).strip('_')


class BenchController:

    @staticmethod
    def run_bench(spec: BenchSpec, workers: Optional[int] = None, record_wall_time: bool = False) -> BenchResult:
        """`workers` comes from the caller and wins over the spec; callers apply the DRIFTLAB_WORKERS cap."""
        names = set(PresetsController.names())
        for ref in spec.datasets:
            if ref.name not in names:
                raise UnknownPresetError(f'unknown preset {ref.name!r}, expected one of {", ".join(sorted(names))}')
        runner = BenchRunner(workers=workers if workers is not None else spec.workers or 1,
                             record_wall_time=record_wall_time if spec.record_wall_time is None
                             else spec.record_wall_time)
        log.info('bench: %d datasets x %d seeds x %d detectors on %d workers', len(spec.datasets), len(spec.seeds),
                 len(spec.detectors), runner.workers)
        return runner.run(spec)

    @staticmethod
    def correlate(results: BenchResult, dataset: str) -> float:
        """Pearson r between per-detector mean trapezoid TAUC and mean AUC."""
        frame = results.frame()
        frame = frame[frame['dataset'] == dataset]
        means = frame.groupby('detector', sort=True)[['tauc_trap', 'auc']].mean()
        if len(means) < 3:
            raise UndefinedCorrelation(f'{dataset}: correlation needs at least 3 detectors, got {len(means)}')
        x, y = means['tauc_trap'].to_numpy(), means['auc'].to_numpy()
        if np.ptp(x) == 0 or np.ptp(y) == 0:
            raise UndefinedCorrelation(f'{dataset}: zero variance across detectors')
        return float(np.corrcoef(x, y)[0, 1])

    @staticmethod
    def correlations(results: BenchResult) -> Dict[str, Optional[float]]:
        res = {}
        for dataset in results.datasets():
            try:
                res[dataset] = BenchController.correlate(results, dataset)
            except UndefinedCorrelation as exc:
                log.warning('correlation skipped: %s', exc)
                res[dataset] = None
        return res

    @staticmethod
    def emit_report(results: BenchResult, out_dir, store: FileStore = None,
                    rules: Sequence[IntegrationRule] = tuple(IntegrationRule)) -> List[Path]:
        if not results.rows:
            raise EmptyResultError('no benchmark rows to report')
        store = store or FileStore()
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)

        written = [store.write_table(out / 'results.csv', results.frame())]
        summary = results.summary()
        written.append(store.write_table(out / 'summary.csv', summary))
        correlations = BenchController.correlations(results)
        written.append(store.write_table(out / 'correlations.csv', pd.DataFrame(
            {'dataset': list(correlations), 'pearson_r': [np.nan if r is None else r for r in correlations.values()]})))
        written.append(store.write_table(out / 'failures.csv', results.failure_frame()))

        metric_columns = [c for rule in rules for c in RULE_COLUMNS[IntegrationRule(rule)]] + ['auc']
        for dataset in results.datasets():
            part = summary[summary['dataset'] == dataset]
            series = {c: part[f'{c}_mean'].tolist() for c in metric_columns}
            chart = svg.bar_chart(f'{dataset}: mean over seeds', part['detector'].tolist(), series)
            written.append(svg.write_svg(out / f'bars_{_slug(dataset)}.svg', chart))
            written.extend(BenchController._traces(results, part, dataset, out))

        groups = {}
        for dataset in results.datasets():
            part = summary[summary['dataset'] == dataset]
            groups[dataset] = list(zip(part['detector'], part['tauc_trap_mean'], part['auc_mean']))
        chart = svg.scatter_chart('TAUC against AUC per detector', 'TAUC (trapezoid)', 'AUC', groups)
        written.append(svg.write_svg(out / 'correlation.svg', chart))
        log.info('report: %d files in %s', len(written), out)
        return written

    @staticmethod
    def _traces(results: BenchResult, part: pd.DataFrame, dataset: str, out: Path) -> List[Path]:
        written = []
        for metric in ('tauc_trap', 'auc'):
            best = part.sort_values([f'{metric}_mean', 'detector'], ascending=[False, True]).iloc[0]['detector']
            key = next((k for k in sorted(results.scores) if k[0] == dataset and k[2] == best), None)
            if key is None:
                continue
            gt = results.ground_truths[(dataset, key[1])]
            chart = svg.trace_chart(f'{dataset} seed {key[1]}: {best} (best {metric})', results.scores[key],
                                    gt.segments)
            written.append(svg.write_svg(out / f'trace_{_slug(dataset)}_{metric}.svg', chart))
        return written
