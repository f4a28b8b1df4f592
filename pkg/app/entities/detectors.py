from typing import Annotated, Literal, Optional, Union

from pydantic.v1 import BaseModel, Field, parse_obj_as, root_validator, validator

from app import constants


class AETrainSpec(BaseModel):
    latent_dim: int = 2
    hidden_width: int = constants.AE_HIDDEN_WIDTH
    epochs: int = constants.AE_EPOCHS
    batch_size: int = constants.AE_BATCH_SIZE
    learning_rate: float = constants.AE_LEARNING_RATE
    seed: int = 0

    @validator('latent_dim', 'hidden_width', 'epochs', 'batch_size', 'learning_rate')
    def positive(cls, v):
        if v <= 0:
            raise ValueError('must be positive')
        return v

    @validator('seed')
    def non_negative_seed(cls, v):
        if v < 0:
            raise ValueError('seed must be non-negative')
        return v


class _Detector(BaseModel):

    class Config:
        allow_mutation = False
        extra = 'forbid'

    @property
    def label(self) -> str:
        params = ', '.join(f'{name}={value}' for name, value in self.params().items())
        return f'{self.kind}({params})' if params else self.kind

    def params(self) -> dict:
        return {}


def _window(v):
    if v < 2:
        raise ValueError('window sizes must be at least 2')
    return v


class RollingMeanDifference(_Detector):
    kind: Literal['RollingMeanDifference'] = 'RollingMeanDifference'
    m_r: int

    _m_r = validator('m_r', allow_reuse=True)(_window)

    def params(self):
        return {'m_r': self.m_r}


class RollingMeanStdDev(_Detector):
    kind: Literal['RollingMeanStdDev'] = 'RollingMeanStdDev'
    m_r: int

    _m_r = validator('m_r', allow_reuse=True)(_window)

    def params(self):
        return {'m_r': self.m_r}


class _SlidingWindows(_Detector):
    m_r: int
    m_o: int
    delta: int = 0

    _windows = validator('m_r', 'm_o', allow_reuse=True)(_window)

    @validator('delta')
    def non_negative_offset(cls, v):
        if v < 0:
            raise ValueError('delta must be non-negative')
        return v

    @property
    def history(self) -> int:
        """Executions needed before the first score."""
        return self.m_r + self.delta + self.m_o

    def params(self):
        return {'m_r': self.m_r, 'm_o': self.m_o, 'delta': self.delta}


class SlidingKSWIN(_SlidingWindows):
    kind: Literal['SlidingKSWIN'] = 'SlidingKSWIN'


class Cluster(_Detector):
    kind: Literal['Cluster'] = 'Cluster'
    n_c: int
    seed: int = 0

    @validator('n_c')
    def at_least_one(cls, v):
        if v < 1:
            raise ValueError('n_c must be at least 1')
        return v

    def params(self):
        return {'n_c': self.n_c}


class _Autoencoding(_SlidingWindows):
    k: int
    ae: AETrainSpec = AETrainSpec()

    @validator('k')
    def latent_positive(cls, v):
        if v < 1:
            raise ValueError('k must be at least 1')
        return v

    @root_validator
    def latent_matches(cls, values):
        k, ae = values.get('k'), values.get('ae')
        if k is not None and ae is not None and ae.latent_dim != k:
            values['ae'] = ae.copy(update={'latent_dim': k})
        return values

    def params(self):
        return {'k': self.k, **super().params()}


class AEMeanKS(_Autoencoding):
    kind: Literal['AEMeanKS'] = 'AEMeanKS'
    aggregation: Literal['mean', 'max'] = 'mean'

    @property
    def label(self) -> str:
        base = super().label
        return base if self.aggregation == 'mean' else f'{base}[max]'


class AEMMD(_Autoencoding):
    kind: Literal['AEMMD'] = 'AEMMD'


class RandomGuess(_Detector):
    kind: Literal['RandomGuess'] = 'RandomGuess'
    seed: int = 0


class Always(_Detector):
    kind: Literal['Always'] = 'Always'


class Never(_Detector):
    kind: Literal['Never'] = 'Never'


DetectorSpec = Annotated[Union[RollingMeanDifference, RollingMeanStdDev, SlidingKSWIN, Cluster, AEMeanKS, AEMMD,
                               RandomGuess, Always, Never], Field(discriminator='kind')]
AnyDetector = Union[RollingMeanDifference, RollingMeanStdDev, SlidingKSWIN, Cluster, AEMeanKS, AEMMD,
                    RandomGuess, Always, Never]


def parse_detector(data) -> AnyDetector:
    return parse_obj_as(DetectorSpec, data)


def seeded(spec: AnyDetector, seed: int) -> AnyDetector:
    """Copy of spec whose own seed (and AE seed) is replaced, for specs that carry one."""
    if isinstance(spec, _Autoencoding):
        return spec.copy(update={'ae': spec.ae.copy(update={'seed': seed})})
    if isinstance(spec, (RandomGuess, Cluster)):
        return spec.copy(update={'seed': seed})
    return spec


def detector_seed(spec: AnyDetector) -> Optional[int]:
    if isinstance(spec, _Autoencoding):
        return spec.ae.seed
    return getattr(spec, 'seed', None)
