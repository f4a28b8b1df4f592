import numpy as np
from numpy.lib.stride_tricks import sliding_window_view


def rolling_mean(values: np.ndarray, window: int) -> np.ndarray:
    """Trailing mean over `window` rows; rows before the first full window are NaN."""
    values = np.asarray(values, dtype=float)
    squeeze = values.ndim == 1
    if squeeze:
        values = values[:, None]
    T = values.shape[0]
    if not 1 <= window <= T:
        raise ValueError(f'window {window} must be in [1, {T}]')
    res = np.full(values.shape, np.nan)
    res[window - 1:] = sliding_window_view(values, window, axis=0).mean(axis=-1)
    return res[:, 0] if squeeze else res


def rolling_std(values: np.ndarray, window: int) -> np.ndarray:
    """Trailing sample standard deviation (divisor window - 1); warm-up positions are NaN."""
    values = np.asarray(values, dtype=float)
    T = values.shape[0]
    if not 2 <= window <= T:
        raise ValueError(f'window {window} must be in [2, {T}]')
    res = np.full(T, np.nan)
    res[window - 1:] = sliding_window_view(values, window).std(axis=-1, ddof=1)
    return res
