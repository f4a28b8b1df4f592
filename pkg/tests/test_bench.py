import numpy as np
import pytest
from pydantic.v1 import ValidationError

from app.controllers.bench import BenchController
from app.controllers.detectors import DetectorsController
from app.controllers.metrics import MetricsController
from app.entities.bench import RESULT_COLUMNS, BenchResult, BenchRow, BenchSpec
from app.entities.detectors import Always, Never, RandomGuess, RollingMeanDifference
from app.entities.ground_truth import GroundTruth
from app.errors import EmptyResultError, UndefinedCorrelation, UnknownPresetError
from background.runner import BenchRunner
from store.files import FileStore

SMOKE = {
    'datasets': [{'name': 'dataset-1', 'scale': 0.02}],
    'seeds': [1],
    'detectors': [{'kind': 'Always'}, {'kind': 'Never'}, {'kind': 'RandomGuess', 'seed': 7}],
}


def _row(dataset, detector, tauc, auc, seed=1):
    return BenchRow(dataset=dataset, seed=seed, detector=detector, tauc_step=tauc / 2, tauc_trap=tauc,
                    stauc_step=tauc, stauc_trap=min(1.0, tauc * 1.5), auc=auc)


@pytest.fixture(scope='module')
def smoke_result():
    return BenchController.run_bench(BenchSpec.parse_obj(SMOKE))


def test_one_row_per_triple(smoke_result):
    assert len(smoke_result.rows) == 3
    assert not smoke_result.failures
    assert {r.detector for r in smoke_result.rows} == {'Always', 'Never', 'RandomGuess'}
    assert list(smoke_result.frame().columns) == RESULT_COLUMNS


def test_trivial_detector_closed_forms(smoke_result):
    gt = smoke_result.ground_truths[('dataset-1@0.02', 1)]
    rows = {r.detector: r for r in smoke_result.rows}
    assert rows['Never'].tauc_step == 0.0 and rows['Never'].tauc_trap == 0.0
    assert rows['Always'].tauc_step == 0.0
    assert rows['Always'].tauc_trap == pytest.approx(gt.portion / (2 * gt.k), abs=1e-12)
    assert rows['Always'].wall_time_ms == 0.0


def test_bench_is_deterministic(smoke_result):
    again = BenchController.run_bench(BenchSpec.parse_obj(SMOKE), workers=3)
    assert again.frame().equals(smoke_result.frame())


def test_detector_seeds_differ_per_dataset_seed():
    spec = BenchSpec.parse_obj({**SMOKE, 'seeds': [1, 2], 'detectors': [{'kind': 'RandomGuess', 'seed': 7}]})
    result = BenchController.run_bench(spec)
    assert len(result.rows) == 2
    assert len(result.scores) == 1
    assert result.rows[0].auc != result.rows[1].auc


def test_ground_truth_isolation(preset_dataset):
    spec = RollingMeanDifference(m_r=3)
    scores = DetectorsController.score(spec, preset_dataset.view())
    T = preset_dataset.T
    permuted = GroundTruth(T=T, segments=[(1, 20)])
    moved = preset_dataset.copy(update={'ground_truth': permuted})
    np.testing.assert_array_equal(DetectorsController.score(spec, moved.view()), scores)
    assert MetricsController.report(permuted, scores) != MetricsController.report(preset_dataset.ground_truth, scores)


def test_failures_are_tagged_and_others_complete(preset_dataset):
    runner = BenchRunner()
    ref = BenchSpec.parse_obj(SMOKE).datasets[0]
    row, failure, _ = runner.evaluate((preset_dataset, None), ref, 1, RollingMeanDifference(m_r=preset_dataset.T))
    assert row is None
    assert (failure.stage, failure.error) == ('score', 'DetectorConfigError')
    row, failure, scores = runner.evaluate((preset_dataset, None), ref, 1, Always())
    assert failure is None and len(scores) == preset_dataset.T
    _, failure, _ = runner.evaluate((None, RuntimeError('boom')), ref, 1, Never())
    assert failure.stage == 'generate'


def test_wall_time_is_recorded_on_request(preset_dataset):
    ref = BenchSpec.parse_obj(SMOKE).datasets[0]
    row, _, _ = BenchRunner(record_wall_time=True).evaluate((preset_dataset, None), ref, 1, RandomGuess())
    assert row.wall_time_ms > 0.0


def test_spec_validation():
    with pytest.raises(ValidationError):
        BenchSpec.parse_obj({**SMOKE, 'detectors': []})
    with pytest.raises(ValidationError):
        BenchSpec.parse_obj({**SMOKE, 'seeds': [1, 1]})
    with pytest.raises(ValidationError):
        BenchSpec.parse_obj({**SMOKE, 'detectors': [{'kind': 'Always'}, {'kind': 'Always'}]})
    with pytest.raises(ValidationError):
        BenchSpec.parse_obj({**SMOKE, 'datasets': [{'name': 'dataset-1', 'scale': 2.0}]})
    assert BenchSpec.parse_obj({k: v for k, v in SMOKE.items() if k != 'seeds'}).seeds == [1, 2, 3, 4, 5]


def test_unknown_preset_fails_up_front():
    with pytest.raises(UnknownPresetError):
        BenchController.run_bench(BenchSpec.parse_obj({**SMOKE, 'datasets': [{'name': 'dataset-9'}]}))


def test_correlation_of_collinear_means():
    rows = [_row('a', f'd{i}', 0.1 * i, 0.5 + 0.1 * i) for i in range(1, 5)]
    assert BenchController.correlate(BenchResult(rows=rows), 'a') == pytest.approx(1.0)


def test_correlation_hand_fixture():
    rows = [_row('a', name, x, y) for name, x, y in [('p', 0.1, 0.2), ('q', 0.2, 0.1), ('r', 0.3, 0.4),
                                                      ('s', 0.4, 0.3)]]
    # deviations (-1.5, -.5, .5, 1.5) and (-.5, -1.5, 1.5, .5) in tenths: r = 3 / 5
    assert BenchController.correlate(BenchResult(rows=rows), 'a') == pytest.approx(0.6)


def test_correlation_uses_means_over_seeds():
    rows = [_row('a', 'p', 0.0, 0.1, seed=1), _row('a', 'p', 0.2, 0.3, seed=2),
            _row('a', 'q', 0.2, 0.1), _row('a', 'r', 0.3, 0.4), _row('a', 's', 0.4, 0.3)]
    assert BenchController.correlate(BenchResult(rows=rows), 'a') == pytest.approx(0.6)


def test_correlation_needs_variance_and_detectors():
    flat = [_row('a', f'd{i}', 0.3, 0.5) for i in range(4)]
    with pytest.raises(UndefinedCorrelation):
        BenchController.correlate(BenchResult(rows=flat), 'a')
    with pytest.raises(UndefinedCorrelation):
        BenchController.correlate(BenchResult(rows=flat[:2]), 'a')


def test_summary_reports_spread_over_seeds():
    rows = [_row('a', 'p', 0.2, 0.5, seed=1), _row('a', 'p', 0.4, 0.7, seed=2)]
    summary = BenchResult(rows=rows).summary()
    assert summary.loc[0, 'tauc_trap_mean'] == pytest.approx(0.3)
    assert summary.loc[0, 'tauc_trap_std'] == pytest.approx(np.sqrt(0.02))
    assert summary.loc[0, 'runs'] == 2


def _report_fixture():
    result = BenchResult()
    rng = np.random.default_rng(4)
    for dataset in ('a', 'b'):
        gt = GroundTruth(T=30, segments=[(10, 14)])
        result.ground_truths[(dataset, 1)] = gt
        for detector in ('Always', 'RandomGuess(seed=1)', 'SlidingKSWIN(m_r=5, m_o=5, delta=0)'):
            result.rows.append(_row(dataset, detector, float(rng.random()), float(rng.random())))
            result.scores[(dataset, 1, detector)] = rng.random(30)
    return result


def test_emit_report_files(tmp_path):
    written = BenchController.emit_report(_report_fixture(), tmp_path)
    names = {p.name for p in written}
    assert {'results.csv', 'summary.csv', 'correlations.csv', 'failures.csv', 'correlation.svg'} <= names
    assert {'bars_a.svg', 'bars_b.svg'} <= names
    assert len([n for n in names if n.startswith('trace_')]) >= 2
    assert (tmp_path / 'bars_a.svg').read_text().startswith('<?xml')


def test_results_csv_round_trips(tmp_path):
    result = _report_fixture()
    BenchController.emit_report(result, tmp_path)
    frame = FileStore().read_table(tmp_path / 'results.csv', RESULT_COLUMNS)
    assert BenchResult.from_frame(frame).rows == sorted(result.rows, key=lambda r: r.key)


def test_emit_report_needs_rows(tmp_path):
    with pytest.raises(EmptyResultError):
        BenchController.emit_report(BenchResult(), tmp_path)
