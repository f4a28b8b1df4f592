"""Dataset presets: one sine-product dataset and two polynomial force-like datasets.

The sine-product minimum moves along x; the degree-7 curves move their peak
and drift value and slope conditions only.
"""
import math
from typing import Callable, Dict, List, Tuple

from app import constants
from app.entities.dataset import DatasetSpec, GridSpec, NoiseSpec
from app.entities.family import FunctionFamily
from app.entities.support import DriftSpec, SupportCondition, SupportSchedule
from app.errors import UnknownPresetError


def _segment(T: int, position: float, share: float) -> Tuple[int, int]:
    length = min(max(constants.PRESET_MIN_SEGMENT, round(share * T)), T - 1)
    t0 = min(max(1, round(position * T)), T - length)
    return t0, t0 + length - 1


def _fixed(order: int, x: float, y: float, sigma: float = 0.0) -> SupportSchedule:
    return SupportSchedule(condition=SupportCondition(order=order, x=x, y=y), noise_sigma=sigma)


def _moving(order: int, x: float, y: float, coordinate: str, drifts: List[DriftSpec],
            sigma: float = 0.0) -> SupportSchedule:
    return SupportSchedule(condition=SupportCondition(order=order, x=x, y=y),
                           drifting_coordinate=coordinate, drifts=drifts, noise_sigma=sigma)


def _peak(x: float, drifts: List[DriftSpec]) -> List[SupportSchedule]:
    # value and slope of the maximum move along x, its curvature stays put
    return [_moving(0, x, 8.0, 'x', drifts), _moving(1, x, 0.0, 'x', drifts), _fixed(2, x, -6.0)]


def _force_curve(peak_drifts: List[DriftSpec], slope_drifts: List[DriftSpec]) -> List[SupportSchedule]:
    slope = _moving(1, 1.0, 6.0, 'y', slope_drifts, sigma=0.05) if slope_drifts else _fixed(1, 1.0, 6.0, 0.05)
    return [
        _fixed(0, 0.0, 0.0, 0.02),
        _fixed(1, 0.0, 1.0),
        *_peak(2.0, peak_drifts),
        _fixed(0, 4.0, 2.0, 0.02),
        slope,
        _fixed(0, 3.0, 5.0),
    ]


def _scaled_T(base: int, scale: float) -> int:
    if not 0 < scale <= 1:
        raise ValueError(f'scale must be in (0, 1], got {scale}')
    return max(math.ceil(round(scale * base, 6)), 2 * constants.PRESET_MIN_SEGMENT)


def dataset_1(scale: float, seed: int) -> DatasetSpec:
    T = _scaled_T(10000, scale)
    t0, t1 = _segment(T, 0.5, 0.01)
    drifts = [DriftSpec(t0=t0, t1=t1, a=3.5, b=3.2)]
    # a local minimum of x*sin(pi*x - w1) with value -3.5 and curvature 35
    schedules = [_moving(0, 3.5, -3.5, 'x', drifts), _moving(1, 3.5, 0.0, 'x', drifts),
                 _moving(2, 3.5, 35.0, 'x', drifts)]
    return DatasetSpec(name='dataset-1', family=FunctionFamily.sine_product(), schedules=schedules,
                       T=T, grid=GridSpec(x_bar=0.0, dx=0.04, m=100), seed=seed, init=[1.0, 0.0, 0.0])


def dataset_2(scale: float, seed: int) -> DatasetSpec:
    T = _scaled_T(10000, scale)
    a0, a1 = _segment(T, 0.3, 0.01)
    b0, b1 = _segment(T, 0.7, 0.01)
    schedules = _force_curve(peak_drifts=[DriftSpec(t0=a0, t1=a1, a=2.0, b=2.3)],
                             slope_drifts=[DriftSpec(t0=b0, t1=b1, a=6.0, b=8.0)])
    return DatasetSpec(name='dataset-2', family=FunctionFamily.polynomial(7), schedules=schedules,
                       T=T, grid=GridSpec(x_bar=0.0, dx=0.04, m=100), seed=seed)


def dataset_3(scale: float, seed: int) -> DatasetSpec:
    T = _scaled_T(30000, scale)
    share = 0.001 / 3
    a0, a1 = _segment(T, 0.2, share)
    b0, b1 = _segment(T, 0.5, share)
    c0, c1 = _segment(T, 0.8, share)
    schedules = _force_curve(peak_drifts=[DriftSpec(t0=a0, t1=a1, a=2.0, b=2.2),
                                          DriftSpec(t0=c0, t1=c1, a=2.2, b=2.0)],
                             slope_drifts=[DriftSpec(t0=b0, t1=b1, a=6.0, b=7.5)])
    return DatasetSpec(name='dataset-3', family=FunctionFamily.polynomial(7), schedules=schedules,
                       T=T, grid=GridSpec(x_bar=0.0, dx=0.01, m=400), seed=seed)


PRESETS: Dict[str, Callable[[float, int], DatasetSpec]] = {
    'dataset-1': dataset_1,
    'dataset-2': dataset_2,
    'dataset-3': dataset_3,
}


class PresetsController:

    @staticmethod
    def names() -> List[str]:
        return sorted(PRESETS)

    @staticmethod
    def preset(name: str, scale: float = 1.0, seed: int = 0) -> DatasetSpec:
        try:
            build = PRESETS[name]
        except KeyError:
            raise UnknownPresetError(f'unknown preset {name!r}, expected one of {", ".join(sorted(PRESETS))}')
        return build(scale, seed)

    @staticmethod
    def polynomial_example(T: int = 2000, drift: Tuple[int, int] = (1000, 1300), peak_to: float = 3.0,
                           seed: int = 0, sigma_y: float = 0.0) -> DatasetSpec:
        """Degree-5 curve with a maximum of 7 at x=2 that moves to `peak_to` during `drift`.

        Only the value and slope conditions of the peak drift; the curvature condition stays at x=2.
        """
        drifts = [DriftSpec(t0=drift[0], t1=drift[1], a=2.0, b=peak_to)] if drift else []
        coordinate = 'x' if drifts else 'none'
        schedules = [
            _moving(0, 2.0, 7.0, coordinate, drifts),
            _moving(1, 2.0, 0.0, coordinate, drifts),
            _fixed(2, 2.0, -1.0),
            _fixed(0, 0.0, 4.0),
            _fixed(0, 4.0, 5.0),
            _fixed(2, 1.0, -1.0),
        ]
        return DatasetSpec(name='polynomial-example', family=FunctionFamily.polynomial(5), schedules=schedules,
                           T=T, grid=GridSpec(x_bar=0.0, dx=0.04, m=100), noise=NoiseSpec(sigma_y=sigma_y),
                           seed=seed)
