"""Segment-aware evaluation of drift score series.

Indices and intervals are 1-based and closed. A threshold sweep flags
{t : s_t >= tau} for tau over every score value; a constant series with no
positive score never signals a drift and gets an empty OLS/sOLS curve.
"""
import logging
from typing import Iterable, List, Sequence, Tuple

import numpy as np

from app.entities.ground_truth import GroundTruth
from app.entities.metrics import CurveKind, IntegrationRule, MetricReport, ThresholdCurve
from app.errors import DegenerateGroundTruth, DimensionError, UndefinedGroundTruth
from app.utils.segments import Interval, decompose_segments, mask_runs

log = logging.getLogger(__name__)


def _scores(gt: GroundTruth, s) -> np.ndarray:
    s = np.asarray(s, dtype=float)
    if s.ndim != 1 or len(s) != gt.T:
        raise DimensionError(f'score series of shape {s.shape} does not match T={gt.T}')
    if not np.all(np.isfinite(s)):
        raise ValueError('score series contains non-finite values')
    return s


def _overlap_parts(gt: GroundTruth, predicted: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Per true segment: |T_i & D_i|, |T_i| and the extent of T_i | D_i (zeros when T_i is empty)."""
    if gt.k == 0:
        raise UndefinedGroundTruth('ground truth has no drift segment')
    bounds = np.asarray(gt.segments)
    lo, hi = bounds[:, 0], bounds[:, 1]
    starts, ends = mask_runs(predicted)
    if starts.size == 0:
        zeros = np.zeros(gt.k)
        return zeros, zeros, np.ones(gt.k)
    starts, ends = starts + 1, ends + 1
    flagged = np.concatenate(([0], np.cumsum(predicted)))
    covered = np.concatenate(([0], np.cumsum(ends - starts + 1)))

    first = np.searchsorted(ends, lo, side='left')
    last = np.searchsorted(starts, hi, side='right') - 1
    hit = first <= last
    first_c = np.clip(first, 0, len(starts) - 1)
    last_c = np.clip(last, 0, len(starts) - 1)

    inter = np.where(hit, flagged[hi] - flagged[lo - 1], 0)
    cover = np.where(hit, covered[last_c + 1] - covered[first_c], 0)
    extent = np.where(hit, np.maximum(ends[last_c], hi) - np.minimum(starts[first_c], lo) + 1, 1)
    return inter.astype(float), cover.astype(float), extent.astype(float)


def _ols_from_mask(gt: GroundTruth, predicted: np.ndarray) -> float:
    inter, _, extent = _overlap_parts(gt, predicted)
    return float(np.mean(inter / extent))


def _sols_from_mask(gt: GroundTruth, predicted: np.ndarray) -> float:
    _, cover, extent = _overlap_parts(gt, predicted)
    return float(np.mean(cover / extent))


def _class_sizes(gt: GroundTruth) -> Tuple[int, int]:
    positives = gt.drift_count
    return positives, gt.T - positives


class MetricsController:

    @staticmethod
    def decompose_segments(indices: Iterable[int]) -> List[Interval]:
        return decompose_segments(indices)

    @staticmethod
    def predicted_segments(s, tau: float) -> List[Interval]:
        """Drift segments predicted by thresholding s at tau."""
        return decompose_segments(np.flatnonzero(np.asarray(s) >= tau) + 1)

    @staticmethod
    def ols(gt: GroundTruth, s, tau: float) -> float:
        s = _scores(gt, s)
        return _ols_from_mask(gt, s >= tau)

    @staticmethod
    def sols(gt: GroundTruth, s, tau: float) -> float:
        s = _scores(gt, s)
        return _sols_from_mask(gt, s >= tau)

    @staticmethod
    def fpr(gt: GroundTruth, s, tau: float) -> float:
        s = _scores(gt, s)
        _, negatives = _class_sizes(gt)
        if negatives == 0:
            raise DegenerateGroundTruth('every execution is a drift, false positive rate is undefined')
        return float(np.sum((s >= tau) & ~gt.mask()) / negatives)

    @staticmethod
    def tpr(gt: GroundTruth, s, tau: float) -> float:
        s = _scores(gt, s)
        positives, _ = _class_sizes(gt)
        if positives == 0:
            raise DegenerateGroundTruth('no drift execution, true positive rate is undefined')
        return float(np.sum((s >= tau) & gt.mask()) / positives)

    @staticmethod
    def thresholds(s) -> np.ndarray:
        """Sentinel above the maximum followed by the unique score values, descending."""
        return np.concatenate(([np.inf], np.unique(np.asarray(s, dtype=float))[::-1]))

    @staticmethod
    def sweep(gt: GroundTruth, s, kind: CurveKind) -> Tuple[np.ndarray, np.ndarray]:
        """(fpr, value) per threshold, uncollapsed, fpr non-decreasing."""
        kind = CurveKind(kind)
        s = _scores(gt, s)
        positives, negatives = _class_sizes(gt)
        if positives == 0 or negatives == 0:
            raise DegenerateGroundTruth(
                f'ground truth needs drift and non-drift executions, got {positives} of {gt.T} drifting')
        if kind != CurveKind.tpr and np.ptp(s) == 0 and s[0] <= 0:
            # constant non-positive series: nothing is ever signalled as drift
            return np.array([0.0, 1.0]), np.array([0.0, 0.0])

        taus = MetricsController.thresholds(s)
        truth = gt.mask()
        fprs = (negatives - np.searchsorted(np.sort(s[~truth]), taus, side='left')) / negatives
        if kind == CurveKind.tpr:
            values = (positives - np.searchsorted(np.sort(s[truth]), taus, side='left')) / positives
        else:
            measure = _ols_from_mask if kind == CurveKind.ols else _sols_from_mask
            values = np.array([measure(gt, s >= tau) for tau in taus])
        return fprs, values

    @staticmethod
    def threshold_curve(gt: GroundTruth, s, kind: CurveKind) -> ThresholdCurve:
        fprs, values = MetricsController.sweep(gt, s, kind)
        # equal fpr keeps the best value
        uniq, first = np.unique(fprs, return_index=True)
        best = np.maximum.reduceat(values, first)
        return ThresholdCurve(points=[(float(f), float(v)) for f, v in zip(uniq, best)], kind=kind)

    @staticmethod
    def integrate(curve: ThresholdCurve, rule: IntegrationRule) -> float:
        x = np.asarray(curve.fpr)
        y = np.asarray(curve.values)
        if IntegrationRule(rule) == IntegrationRule.step:
            return float(np.sum(np.diff(x) * y[:-1]))
        return float(np.trapezoid(y, x))

    @staticmethod
    def tauc(gt: GroundTruth, s, rule: IntegrationRule = IntegrationRule.trapezoid) -> float:
        return MetricsController.integrate(MetricsController.threshold_curve(gt, s, CurveKind.ols), rule)

    @staticmethod
    def stauc(gt: GroundTruth, s, rule: IntegrationRule = IntegrationRule.trapezoid) -> float:
        return MetricsController.integrate(MetricsController.threshold_curve(gt, s, CurveKind.sols), rule)

    @staticmethod
    def auc(gt: GroundTruth, s) -> float:
        """Trapezoid area under the uncollapsed ROC sweep; ties between classes count one half."""
        fprs, tprs = MetricsController.sweep(gt, s, CurveKind.tpr)
        return float(np.trapezoid(tprs, fprs))

    @staticmethod
    def curves(gt: GroundTruth, s) -> List[ThresholdCurve]:
        return [MetricsController.threshold_curve(gt, s, kind) for kind in CurveKind]

    @staticmethod
    def report(gt: GroundTruth, s) -> MetricReport:
        ols_curve = MetricsController.threshold_curve(gt, s, CurveKind.ols)
        sols_curve = MetricsController.threshold_curve(gt, s, CurveKind.sols)
        integrate = MetricsController.integrate
        return MetricReport(
            tauc_step=integrate(ols_curve, IntegrationRule.step),
            tauc_trapezoid=integrate(ols_curve, IntegrationRule.trapezoid),
            stauc_step=integrate(sols_curve, IntegrationRule.step),
            stauc_trapezoid=integrate(sols_curve, IntegrationRule.trapezoid),
            auc=MetricsController.auc(gt, s),
        )

    @staticmethod
    def indicator_scores(T: int, segments: Sequence[Interval]) -> np.ndarray:
        """Score 1 inside the given segments (clipped to [1, T]) and 0 elsewhere."""
        s = np.zeros(T)
        for lo, hi in segments:
            lo, hi = max(int(lo), 1), min(int(hi), T)
            if lo <= hi:
                s[lo - 1:hi] = 1.0
        return s

    @staticmethod
    def lagged_segments(gt: GroundTruth, shift: int) -> List[Interval]:
        """Every true segment shifted by `shift` executions, same length."""
        return [(lo + shift, hi + shift) for lo, hi in gt.segments]

    @staticmethod
    def boundary_segments(gt: GroundTruth, width: int) -> List[Interval]:
        """Short segments centered on the start and the end of every true segment."""
        half = width // 2
        res = []
        for lo, hi in gt.segments:
            res.append((lo - half, lo - half + width - 1))
            res.append((hi - half, hi - half + width - 1))
        return res

    @staticmethod
    def moving_segment(T: int, length: int, position: int) -> List[Interval]:
        return [(position, position + length - 1)]
