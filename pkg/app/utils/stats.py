from typing import Tuple

import numpy as np
from scipy.spatial.distance import cdist, pdist
from scipy.special import kolmogorov

from app import constants


def ks_two_sample(a: np.ndarray, b: np.ndarray) -> Tuple[float, float]:
    """Two-sided two-sample Kolmogorov-Smirnov statistic and asymptotic p-value.

    The p-value is the Kolmogorov survival function at
    (sqrt(n) + 0.12 + 0.11 / sqrt(n)) * D with n = |a||b| / (|a| + |b|),
    clamped to [KS_P_FLOOR, 1].
    """
    a = np.sort(np.asarray(a, dtype=float))
    b = np.sort(np.asarray(b, dtype=float))
    n1, n2 = len(a), len(b)
    if n1 < 2 or n2 < 2:
        raise ValueError('both samples need at least two values')
    pooled = np.concatenate([a, b])
    cdf1 = np.searchsorted(a, pooled, side='right') / n1
    cdf2 = np.searchsorted(b, pooled, side='right') / n2
    d = float(np.max(np.abs(cdf1 - cdf2)))
    en = np.sqrt(n1 * n2 / (n1 + n2))
    p = float(kolmogorov((en + 0.12 + 0.11 / en) * d))
    return d, min(max(p, constants.KS_P_FLOOR), 1.0)


def rbf_kernel(x: np.ndarray, y: np.ndarray, bandwidth: float) -> np.ndarray:
    return np.exp(-cdist(x, y, 'sqeuclidean') / (2.0 * bandwidth ** 2))


def mmd(x: np.ndarray, y: np.ndarray, bandwidth: float) -> float:
    """Biased (V-statistic) squared MMD with an RBF kernel, floored at 0."""
    if bandwidth <= 0:
        raise ValueError('bandwidth must be positive')
    x = np.atleast_2d(np.asarray(x, dtype=float))
    y = np.atleast_2d(np.asarray(y, dtype=float))
    if len(x) == 0 or len(y) == 0:
        raise ValueError('both samples need at least one point')
    value = rbf_kernel(x, x, bandwidth).mean() - 2.0 * rbf_kernel(x, y, bandwidth).mean() \
        + rbf_kernel(y, y, bandwidth).mean()
    return max(float(value), 0.0)


def median_bandwidth(x: np.ndarray, y: np.ndarray) -> float:
    """Median pairwise distance of the pooled samples; 1.0 when all points coincide."""
    pooled = np.vstack([np.atleast_2d(x), np.atleast_2d(y)])
    dists = pdist(pooled)
    if dists.size == 0:
        return 1.0
    med = float(np.median(dists))
    return med if med > 0 else 1.0
