import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Sequence, Tuple

import numpy as np

from app import constants
from app.DriftLab.context import RunContext
from app.entities.dataset import DatasetSpec, ProcessCurveDataset, SolverSettings
from app.entities.family import FunctionFamily
from app.entities.ground_truth import GroundTruth
from app.entities.support import DriftingCoordinate, SupportCondition, SupportSchedule
from app.errors import DimensionError, GenerationError
from app.models import curve
from app.utils.solver import levenberg_marquardt

log = logging.getLogger(__name__)


class GeneratorController:

    @staticmethod
    def drift_mean(schedule: SupportSchedule, t: int) -> float:
        cond = schedule.condition
        base = cond.y if schedule.drifting_coordinate == DriftingCoordinate.y else cond.x
        if schedule.drifting_coordinate == DriftingCoordinate.none or not schedule.drifts:
            return base
        plateau = schedule.drifts[0].a
        for drift in schedule.drifts:
            if t < drift.t0:
                break
            if t <= drift.t1:
                return drift.a + (drift.b - drift.a) * (t - drift.t0) / (drift.t1 - drift.t0)
            plateau = drift.b
        return plateau

    @staticmethod
    def schedule_value(schedule: SupportSchedule, t: int, rng: np.random.Generator) -> SupportCondition:
        """Materialize the condition of execution t; noise lands on the drifting coordinate (y if none)."""
        noise = rng.normal(0.0, schedule.noise_sigma)
        cond = schedule.condition
        if schedule.drifting_coordinate == DriftingCoordinate.x:
            return SupportCondition(order=cond.order, x=GeneratorController.drift_mean(schedule, t) + noise, y=cond.y)
        if schedule.drifting_coordinate == DriftingCoordinate.y:
            return SupportCondition(order=cond.order, x=cond.x, y=GeneratorController.drift_mean(schedule, t) + noise)
        return SupportCondition(order=cond.order, x=cond.x, y=cond.y + noise)

    @staticmethod
    def solve_support(family: FunctionFamily, conditions: Sequence[SupportCondition],
                      weights: Dict[int, float], init, settings: SolverSettings = None,
                      t: int = None) -> Tuple[np.ndarray, float]:
        if not conditions:
            raise ValueError('at least one support condition is needed')
        init = np.asarray(init, dtype=float)
        if init.shape != (family.param_dim,):
            raise DimensionError(f'init needs {family.param_dim} entries, got shape {init.shape}')
        settings = settings or SolverSettings()
        for cond in conditions:
            # raises UnsupportedOrderError before any iteration
            curve.eval_deriv(family, init, cond.x, cond.order)
        res = levenberg_marquardt(
            lambda w: curve.residuals(family, w, conditions, weights),
            lambda w: curve.jacobian(family, w, conditions, weights),
            init,
            max_iters=settings.max_iters,
            residual_tol=settings.residual_tol,
            damping_init=settings.damping_init,
            t=t,
        )
        log.debug('t=%s solved in %d iterations, residual %.3e', t, res.iterations, res.residual_norm)
        return res.x, res.residual_norm

    @staticmethod
    def ground_truth(spec: DatasetSpec) -> GroundTruth:
        segments = [(d.t0, d.t1) for schedule in spec.schedules for d in schedule.drifts]
        return GroundTruth(T=spec.T, segments=segments)

    @staticmethod
    def generate(spec: DatasetSpec, workers: int = 1) -> ProcessCurveDataset:
        ctx = RunContext(spec.seed)
        family = spec.family
        k, T, m = family.param_dim, spec.T, spec.grid.m
        weights = spec.weight_vector()
        base_init = np.zeros(k) if spec.init is None else np.asarray(spec.init, dtype=float)

        def conditions_at(t: int) -> List[SupportCondition]:
            rng = ctx.rng(t, constants.STREAM_SCHEDULE)
            return [GeneratorController.schedule_value(s, t, rng) for s in spec.schedules]

        def init_at(t: int) -> np.ndarray:
            return base_init + ctx.rng(t, constants.STREAM_INIT).normal(0.0, constants.SOLVER_INIT_SIGMA, k)

        def solve_at(t: int, init: np.ndarray) -> Tuple[np.ndarray, float]:
            return GeneratorController.solve_support(family, conditions_at(t), weights, init, spec.solver, t=t)

        latents = np.empty((T, k))
        report = np.empty(T)
        if spec.solver.warm_start:
            w = init_at(1)
            for t in range(1, T + 1):
                w, report[t - 1] = solve_at(t, w)
                latents[t - 1] = w
        else:
            with ThreadPoolExecutor(max_workers=max(workers, 1)) as pool:
                solved = pool.map(lambda t: solve_at(t, init_at(t)), range(1, T + 1))
                for t, (w, norm) in enumerate(solved, start=1):
                    latents[t - 1], report[t - 1] = w, norm

        base_grid = spec.grid.base()
        grids = np.empty((T, m))
        clean = np.empty((T, m))
        for t in range(1, T + 1):
            grids[t - 1] = base_grid + ctx.rng(t, constants.STREAM_GRID).normal(0.0, spec.noise.sigma_x, m)
            clean[t - 1] = curve.eval_deriv(family, latents[t - 1], grids[t - 1], 0)
            if not np.all(np.isfinite(clean[t - 1])):
                raise GenerationError('non-finite curve value', t=t)

        sigma_y = spec.noise.sigma_y
        if sigma_y is None:
            sigma_y = constants.RELATIVE_SIGMA_Y * float(clean.max() - clean.min())
        curves = np.empty((T, m))
        for t in range(1, T + 1):
            curves[t - 1] = clean[t - 1] + sigma_y * ctx.rng(t, constants.STREAM_CURVE).standard_normal(m)
        if not np.all(np.isfinite(curves)):
            bad = int(np.flatnonzero(~np.all(np.isfinite(curves), axis=1))[0]) + 1
            raise GenerationError('non-finite curve value after noise', t=bad)

        unconverged = int(np.sum(report >= spec.solver.residual_tol))
        if unconverged:
            log.warning('%d of %d executions did not reach residual_tol=%g (max residual %.3e)',
                        unconverged, T, spec.solver.residual_tol, report.max())
        gt = GeneratorController.ground_truth(spec)
        log.info('generated %s: T=%d m=%d k=%d segments max residual %.3e',
                 spec.name or family.kind, T, m, gt.k, report.max())
        return ProcessCurveDataset(curves=curves, sample_grids=grids, latents=latents,
                                   ground_truth=gt, spec=spec, solver_report=report)

    @staticmethod
    def generate_multivariate(specs: Sequence[DatasetSpec], workers: int = 1) -> List[ProcessCurveDataset]:
        """One dataset per signal dimension without shared latents; all share the merged ground truth."""
        if not specs:
            raise ValueError('at least one dimension spec is needed')
        if len({s.T for s in specs}) != 1:
            raise ValueError('all dimensions need the same T')
        datasets = [GeneratorController.generate(s, workers) for s in specs]
        merged = GroundTruth(T=specs[0].T,
                             segments=[seg for d in datasets for seg in d.ground_truth.segments])
        return [d.copy(update={'ground_truth': merged}) for d in datasets]
