import json

import pytest

from app.main import apply_overrides, main, parse_overrides


@pytest.fixture(scope='module')
def dataset_dir(tmp_path_factory):
    out = tmp_path_factory.mktemp('cli') / 'ds'
    assert main(['generate', str(out), '--preset', 'dataset-1', '--scale', '0.02', '--seed', '1']) == 0
    return out


def _write_json(path, data):
    path.write_text(json.dumps(data))
    return str(path)


def test_generate_writes_dataset(dataset_dir, capsys):
    assert (dataset_dir / 'curves.csv').is_file()
    assert json.loads((dataset_dir / 'ground_truth.json').read_text())['T'] == 200


def test_generate_is_byte_identical(dataset_dir, tmp_path):
    assert main(['generate', str(tmp_path / 'again'), '--preset', 'dataset-1', '--scale', '0.02', '--seed', '1']) == 0
    assert (tmp_path / 'again' / 'curves.csv').read_bytes() == (dataset_dir / 'curves.csv').read_bytes()


def test_generate_from_spec_with_overrides(tmp_path):
    spec = _write_json(tmp_path / 'spec.json', {
        'family': {'kind': 'polynomial', 'degree': 1},
        'schedules': [{'condition': {'order': 0, 'x': 0.0, 'y': 1.0}},
                      {'condition': {'order': 1, 'x': 0.0, 'y': 2.0}}],
        'T': 10,
    })
    code = main(['generate', str(tmp_path / 'ds'), '--spec', spec, '--format', 'packed',
                 '--set', 'T=12', '--set', 'grid.m=5', '--set', 'schedules.0.condition.y=3.5'])
    assert code == 0
    assert (tmp_path / 'ds' / 'curves.bin').stat().st_size == 20 + 8 * 12 * 5
    echoed = json.loads((tmp_path / 'ds' / 'spec.json').read_text())
    assert echoed['T'] == 12 and echoed['schedules'][0]['condition']['y'] == 3.5


def test_generate_needs_existing_parent(tmp_path):
    assert main(['generate', str(tmp_path / 'a' / 'b'), '--preset', 'dataset-1', '--scale', '0.02']) == 2


def test_generate_needs_a_source(tmp_path):
    assert main(['generate', str(tmp_path / 'ds')]) == 2


def test_detect_and_score(dataset_dir, tmp_path):
    detector = _write_json(tmp_path / 'det.json', {'kind': 'RollingMeanDifference', 'm_r': 5})
    scores = tmp_path / 'scores.csv'
    assert main(['detect', str(dataset_dir), detector, str(scores)]) == 0
    assert len(scores.read_text().splitlines()) == 200
    report = tmp_path / 'report.json'
    assert main(['score', str(dataset_dir / 'ground_truth.json'), str(scores), str(report),
                 '--curves', str(tmp_path / 'curves')]) == 0
    assert set(json.loads(report.read_text())) == {'tauc_step', 'tauc_trapezoid', 'stauc_step', 'stauc_trapezoid',
                                                   'auc'}
    assert sorted(p.name for p in (tmp_path / 'curves').iterdir()) == ['curve_ols.csv', 'curve_sols.csv',
                                                                      'curve_tpr.csv']


def test_detect_window_larger_than_T(dataset_dir, tmp_path):
    detector = _write_json(tmp_path / 'det.json', {'kind': 'SlidingKSWIN', 'm_r': 150, 'm_o': 100})
    assert main(['detect', str(dataset_dir), detector, str(tmp_path / 's.csv')]) == 2


def test_score_indicator_and_constant(tmp_path):
    gt = _write_json(tmp_path / 'gt.json', {'T': 10, 'segments': [[3, 5]]})
    (tmp_path / 'ind.csv').write_text('\n'.join(['0', '0', '1', '1', '1', '0', '0', '0', '0', '0']) + '\n')
    (tmp_path / 'const.csv').write_text('0.7\n' * 10)
    assert main(['score', gt, str(tmp_path / 'ind.csv'), str(tmp_path / 'ind.json')]) == 0
    assert json.loads((tmp_path / 'ind.json').read_text())['stauc_trapezoid'] == pytest.approx(1.0)
    assert main(['score', gt, str(tmp_path / 'const.csv'), str(tmp_path / 'const.json')]) == 0
    assert json.loads((tmp_path / 'const.json').read_text())['tauc_step'] == 0.0


def test_score_input_errors(tmp_path):
    scores = tmp_path / 's.csv'
    scores.write_text('0.5\n' * 10)
    empty = _write_json(tmp_path / 'empty.json', {'T': 10, 'segments': []})
    assert main(['score', empty, str(scores), str(tmp_path / 'r.json')]) == 2
    short = _write_json(tmp_path / 'short.json', {'T': 12, 'segments': [[2, 3]]})
    assert main(['score', short, str(scores), str(tmp_path / 'r.json')]) == 2
    assert main(['score', str(tmp_path / 'missing.json'), str(scores), str(tmp_path / 'r.json')]) == 2


def test_bench_input_errors(tmp_path):
    (tmp_path / 'bad.json').write_text('{"datasets": [')
    assert main(['bench', str(tmp_path / 'bad.json'), str(tmp_path / 'out')]) == 2
    invalid = _write_json(tmp_path / 'invalid.json', {'datasets': [], 'detectors': [{'kind': 'Always'}]})
    assert main(['bench', invalid, str(tmp_path / 'out')]) == 2
    no_out = _write_json(tmp_path / 'no_out.json', {'datasets': [{'name': 'dataset-1', 'scale': 0.02}],
                                                    'detectors': [{'kind': 'Always'}]})
    assert main(['bench', no_out]) == 2


def test_bench_smoke(tmp_path):
    spec = _write_json(tmp_path / 'bench.json', {'datasets': [{'name': 'dataset-1', 'scale': 0.02}], 'seeds': [1],
                                                 'detectors': [{'kind': 'Always'}, {'kind': 'Never'},
                                                               {'kind': 'RandomGuess', 'seed': 7}]})
    assert main(['bench', spec, str(tmp_path / 'out')]) == 0
    first = (tmp_path / 'out' / 'results.csv').read_bytes()
    assert main(['bench', spec, str(tmp_path / 'out2'), '--workers', '2']) == 0
    assert (tmp_path / 'out2' / 'results.csv').read_bytes() == first
    assert first.splitlines()[0] == b'dataset,seed,detector,tauc_step,tauc_trap,stauc_step,stauc_trap,auc,wall_time_ms'


def test_overrides():
    assert parse_overrides(['a.b=3', 'c=text', 'd=[1, 2]']) == {'a.b': 3, 'c': 'text', 'd': [1, 2]}
    with pytest.raises(ValueError):
        parse_overrides(['novalue'])
    data = apply_overrides({'a': [{'b': 1}]}, {'a.0.b': 2, 'x.y': True})
    assert data == {'a': [{'b': 2}], 'x': {'y': True}}
