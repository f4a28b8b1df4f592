import logging

import numpy as np

from app.entities.dataset import CurveView
from app.entities.detectors import (AEMMD, AEMeanKS, AnyDetector, Always, Cluster, Never, RandomGuess,
                                    RollingMeanDifference, RollingMeanStdDev, SlidingKSWIN)
from app.errors import DetectorConfigError
from app.models.autoencoder import ae_encode, ae_train
from app.utils import kmeans, rolling, stats

log = logging.getLogger(__name__)


def _check_windows(T: int, needed: int, spec: AnyDetector):
    if needed > T:
        raise DetectorConfigError(f'{spec.label} needs {needed} executions, dataset has T={T}')


def _no_warmup(values: np.ndarray) -> np.ndarray:
    return np.nan_to_num(values, nan=0.0)


class DetectorsController:

    @staticmethod
    def score(spec: AnyDetector, view: CurveView) -> np.ndarray:
        """Score series of length T; positions without a full window history score 0."""
        if not isinstance(view, CurveView):
            raise TypeError('detectors score a CurveView, not a dataset with ground truth')
        curves = np.asarray(view.curves, dtype=float)
        T = curves.shape[0]
        if T == 0:
            raise DetectorConfigError('cannot score an empty dataset')

        if isinstance(spec, Always):
            s = np.ones(T)
        elif isinstance(spec, Never):
            s = np.zeros(T)
        elif isinstance(spec, RandomGuess):
            s = np.random.default_rng(spec.seed).random(T)
        elif isinstance(spec, RollingMeanDifference):
            _check_windows(T, spec.m_r + 1, spec)
            s = DetectorsController.rolling_mean_difference(curves, spec.m_r)
        elif isinstance(spec, RollingMeanStdDev):
            _check_windows(T, 2 * spec.m_r - 1, spec)
            s = DetectorsController.rolling_mean_std(curves, spec.m_r)
        elif isinstance(spec, SlidingKSWIN):
            _check_windows(T, spec.history, spec)
            s = DetectorsController.kswin_score(curves.mean(axis=1), spec.m_r, spec.m_o, spec.delta)
        elif isinstance(spec, Cluster):
            if spec.n_c > T:
                raise DetectorConfigError(f'{spec.label} needs at least {spec.n_c} curves, dataset has T={T}')
            centers = kmeans.kmeans_fit(curves, spec.n_c, seed=spec.seed)
            s = kmeans.kmeans_score(curves, centers)
        elif isinstance(spec, AEMeanKS):
            _check_windows(T, spec.history, spec)
            latents = DetectorsController.latents(spec, curves)
            s = DetectorsController.latent_kswin(latents, spec)
        elif isinstance(spec, AEMMD):
            _check_windows(T, spec.history, spec)
            latents = DetectorsController.latents(spec, curves)
            s = DetectorsController.mmd_score(latents, spec.m_r, spec.m_o, spec.delta)
        else:
            raise DetectorConfigError(f'unknown detector {spec!r}')

        log.debug('%s scored %d executions', spec.label, T)
        return s

    @staticmethod
    def curve_maxima(curves: np.ndarray, m_r: int) -> np.ndarray:
        """Per-execution maximum of the rolling mean curve; NaN during warm-up."""
        return rolling.rolling_mean(curves, m_r).max(axis=1)

    @staticmethod
    def rolling_mean_difference(curves: np.ndarray, m_r: int) -> np.ndarray:
        a = DetectorsController.curve_maxima(curves, m_r)
        s = np.zeros(len(a))
        s[1:] = np.abs(np.diff(a))
        return _no_warmup(s)

    @staticmethod
    def rolling_mean_std(curves: np.ndarray, m_r: int) -> np.ndarray:
        a = DetectorsController.curve_maxima(curves, m_r)
        s = np.zeros(len(a))
        s[m_r - 1:] = rolling.rolling_std(a[m_r - 1:], m_r)
        return _no_warmup(s)

    @staticmethod
    def kswin_score(values: np.ndarray, m_r: int, m_o: int, delta: int) -> np.ndarray:
        """log(1 + 1/p) of the KS test between a reference window and the latest m_o values."""
        values = np.asarray(values, dtype=float)
        T = len(values)
        if m_r + delta + m_o > T:
            raise DetectorConfigError(f'windows m_r={m_r} m_o={m_o} delta={delta} do not fit into T={T}')
        s = np.zeros(T)
        for t in range(m_r + delta + m_o, T + 1):
            reference = values[t - m_o - delta - m_r:t - m_o - delta]
            observation = values[t - m_o:t]
            _, p = stats.ks_two_sample(reference, observation)
            s[t - 1] = np.log1p(1.0 / p)
        return s

    @staticmethod
    def mmd_score(latents: np.ndarray, m_r: int, m_o: int, delta: int) -> np.ndarray:
        T = len(latents)
        if m_r + delta + m_o > T:
            raise DetectorConfigError(f'windows m_r={m_r} m_o={m_o} delta={delta} do not fit into T={T}')
        s = np.zeros(T)
        for t in range(m_r + delta + m_o, T + 1):
            reference = latents[t - m_o - delta - m_r:t - m_o - delta]
            observation = latents[t - m_o:t]
            s[t - 1] = stats.mmd(reference, observation, stats.median_bandwidth(reference, observation))
        return s

    @staticmethod
    def latents(spec, curves: np.ndarray) -> np.ndarray:
        if len(curves) < spec.ae.batch_size:
            raise DetectorConfigError(f'{spec.label} needs at least batch_size={spec.ae.batch_size} curves')
        model = ae_train(curves, spec.ae)
        log.info('%s trained, final reconstruction loss %.6f', spec.label, model.history[-1])
        return ae_encode(model, curves)

    @staticmethod
    def latent_kswin(latents: np.ndarray, spec: AEMeanKS) -> np.ndarray:
        if spec.aggregation == 'mean':
            return DetectorsController.kswin_score(latents.mean(axis=1), spec.m_r, spec.m_o, spec.delta)
        # max over coordinates of the rolling latent mean, windows start after its warm-up
        a = rolling.rolling_mean(latents, spec.m_o).max(axis=1)[spec.m_o - 1:]
        s = np.zeros(len(latents))
        if len(a) >= spec.history:
            s[spec.m_o - 1:] = DetectorsController.kswin_score(a, spec.m_r, spec.m_o, spec.delta)
        return s
