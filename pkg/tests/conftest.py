import numpy as np
import pytest

from app.controllers.generator import GeneratorController
from app.controllers.presets import PresetsController
from app.entities.ground_truth import GroundTruth


@pytest.fixture(scope='session')
def small_dataset():
    """Noise-free degree-5 example with one drift segment, T=120."""
    spec = PresetsController.polynomial_example(T=120, drift=(60, 80))
    return GeneratorController.generate(spec)


@pytest.fixture(scope='session')
def preset_dataset():
    return GeneratorController.generate(PresetsController.preset('dataset-1', 0.02, 1))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def equal_segments(T: int, k: int, total: int) -> GroundTruth:
    """k disjoint segments with `total` executions in all, spread evenly over [1, T]."""
    lengths = [total // k + (1 if i < total % k else 0) for i in range(k)]
    stride = T // k
    return GroundTruth(T=T, segments=[(i * stride + 1, i * stride + n) for i, n in enumerate(lengths)])


def random_instance(rng: np.random.Generator, max_T: int = 12):
    """Ground truth with both classes present and a tied score series on a coarse grid."""
    T = int(rng.integers(2, max_T + 1))
    mask = rng.random(T) < rng.uniform(0.2, 0.8)
    if mask.all():
        mask[rng.integers(T)] = False
    if not mask.any():
        mask[rng.integers(T)] = True
    scores = rng.integers(0, 6, T) / 5.0
    return GroundTruth.from_mask(mask), scores
