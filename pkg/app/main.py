"""Command-line entry point: generate, detect, score and bench.

Exit codes: 0 success, 2 usage or input error, 3 numeric failure (and bench
runs with failed triples).
"""
import argparse
import json
import logging
import logging.config
import sys
from pathlib import Path
from typing import Dict, List, Optional

from pydantic.v1 import ValidationError

from app.DriftLab import DriftLab, get_app, get_controllers, set_app
from app.config.config import Config
from app.entities.bench import BenchSpec
from app.entities.dataset import DatasetSpec
from app.entities.detectors import parse_detector
from app.entities.metrics import CurveKind
from app.errors import GenerationError, NumericFailure, TrainingFailure
from store.errors import MalformedFile, NotFound

log = logging.getLogger(__name__)

EXIT_OK, EXIT_INPUT, EXIT_NUMERIC = 0, 2, 3


def parse_overrides(items: List[str]) -> Dict[str, object]:
    """`key.path=value` pairs; values are parsed as JSON and fall back to plain strings."""
    res = {}
    for item in items or []:
        key, sep, raw = item.partition('=')
        if not sep or not key:
            raise ValueError(f'override {item!r} is not key.path=value')
        try:
            res[key] = json.loads(raw)
        except json.JSONDecodeError:
            res[key] = raw
    return res


def apply_overrides(data: dict, overrides: Dict[str, object]) -> dict:
    for path, value in overrides.items():
        node = data
        parts = path.split('.')
        for part in parts[:-1]:
            node = node[int(part)] if isinstance(node, list) else node.setdefault(part, {})
        last = parts[-1]
        if isinstance(node, list):
            node[int(last)] = value
        else:
            node[last] = value
    return data


def cmd_generate(args) -> int:
    controllers = get_controllers()
    if not Path(args.out_dir).resolve().parent.is_dir():
        raise NotFound(f'parent directory of {args.out_dir} does not exist')
    if args.spec:
        data = get_app().store.read_json(args.spec)
    elif args.preset:
        data = json.loads(controllers.presets_controller.preset(args.preset, args.scale, args.seed).json())
    else:
        raise ValueError('either a spec file or --preset is needed')
    try:
        spec = DatasetSpec.parse_obj(apply_overrides(data, parse_overrides(args.set)))
    except (KeyError, IndexError, TypeError) as exc:
        raise ValueError(f'override does not match the spec layout: {exc}') from exc
    dataset = controllers.generator_controller.generate(spec, workers=get_app().workers)
    get_app().store.write(args.out_dir, dataset, fmt=args.format)
    print(f'T={dataset.T} m={dataset.m} segments={dataset.ground_truth.k} '
          f'max_residual={dataset.solver_report.max():.3e}')
    return EXIT_OK


def cmd_detect(args) -> int:
    store = get_app().store
    dataset = store.read(args.dataset_dir)
    spec = parse_detector(store.read_json(args.detector_spec))
    scores = get_controllers().detectors_controller.score(spec, dataset.view())
    store.write_scores(args.scores, scores)
    print(f'{spec.label}: {len(scores)} scores written to {args.scores}')
    return EXIT_OK


def cmd_score(args) -> int:
    store = get_app().store
    metrics = get_controllers().metrics_controller
    gt = store.read_ground_truth(args.ground_truth)
    scores = store.read_scores(args.scores, length=gt.T)
    report = metrics.report(gt, scores)
    store.write_report(args.report, report)
    if args.curves:
        out = Path(args.curves)
        out.mkdir(parents=True, exist_ok=True)
        for kind in CurveKind:
            store.write_curve_points(out / f'curve_{kind.value.lower()}.csv', metrics.threshold_curve(gt, scores, kind))
    print(' '.join(f'{name}={value:.6f}' for name, value in report.dict().items()))
    return EXIT_OK


def cmd_bench(args) -> int:
    app = get_app()
    bench = get_controllers().bench_controller
    spec = BenchSpec.parse_obj(app.store.read_json(args.bench_spec))
    out_dir = args.out_dir or spec.out_dir
    if not out_dir:
        raise ValueError('no output directory given on the command line or in the bench spec')
    record = True if args.record_wall_time else app.config.record_wall_time
    workers = app.bench_workers(args.workers or spec.workers)
    result = bench.run_bench(spec, workers=workers, record_wall_time=record)
    bench.emit_report(result, out_dir, store=app.store, rules=spec.rules)
    print(f'{len(result.rows)} rows, {len(result.failures)} failures, report in {out_dir}')
    return EXIT_NUMERIC if result.failures else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='driftlab', description='Process drift benchmark toolkit.')
    sub = parser.add_subparsers(dest='command', required=True)

    gen = sub.add_parser('generate', help='generate a process curve dataset directory')
    gen.add_argument('out_dir', help='dataset directory to create (its parent must exist)')
    gen.add_argument('--spec', help='dataset spec JSON file')
    gen.add_argument('--preset', help='preset name: dataset-1, dataset-2 or dataset-3')
    gen.add_argument('--scale', type=float, default=1.0, help='multiplies the preset T, in (0, 1]')
    gen.add_argument('--seed', type=int, default=0, help='preset seed')
    gen.add_argument('--format', choices=['csv', 'packed'], default='csv', help='curve and grid file format')
    gen.add_argument('--set', action='append', metavar='KEY.PATH=VALUE',
                     help='override a spec field, value parsed as JSON; may be repeated')
    gen.set_defaults(func=cmd_generate)

    det = sub.add_parser('detect', help='score every execution of a dataset with one detector')
    det.add_argument('dataset_dir')
    det.add_argument('detector_spec', help='detector spec JSON file')
    det.add_argument('scores', help='scores CSV to write (one value per line)')
    det.set_defaults(func=cmd_detect)

    score = sub.add_parser('score', help='evaluate a score series against a ground truth')
    score.add_argument('ground_truth', help='ground_truth.json')
    score.add_argument('scores', help='scores CSV')
    score.add_argument('report', help='JSON metric report to write')
    score.add_argument('--curves', metavar='DIR', help='also write the OLS, sOLS and TPR curve points to DIR')
    score.set_defaults(func=cmd_score)

    bench = sub.add_parser('bench', help='run datasets x seeds x detectors and write the report')
    bench.add_argument('bench_spec', help='bench spec JSON file')
    bench.add_argument('out_dir', nargs='?', help='report directory, overrides out_dir of the spec')
    bench.add_argument('--workers', type=int, help='worker threads, capped by DRIFTLAB_WORKERS (default)')
    bench.add_argument('--record-wall-time', action='store_true', help='write measured times into results.csv')
    bench.set_defaults(func=cmd_bench)
    return parser


def setup_logging(config: Config):
    if Path(config.log_config).is_file():
        logging.config.fileConfig(config.log_config, disable_existing_loggers=False)
    else:
        logging.basicConfig(level=config.log_level, format='%(levelname)-5.5s [%(name)s] %(message)s')


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    config = Config()
    setup_logging(config)
    set_app(DriftLab(config))
    try:
        return args.func(args)
    except (NumericFailure, GenerationError, TrainingFailure) as exc:
        print(f'error: {exc}', file=sys.stderr)
        return EXIT_NUMERIC
    except (ValidationError, NotFound, MalformedFile, ValueError, KeyError, OSError) as exc:
        print(f'error: {exc}', file=sys.stderr)
        return EXIT_INPUT


if __name__ == '__main__':
    sys.exit(main())
