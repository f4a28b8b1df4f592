import numpy as np
import pytest
from pydantic.v1 import ValidationError

from app.controllers.detectors import DetectorsController as D
from app.entities.dataset import CurveView
from app.entities.detectors import (AEMMD, AEMeanKS, AETrainSpec, Always, Cluster, Never, RandomGuess,
                                    RollingMeanDifference, RollingMeanStdDev, SlidingKSWIN, detector_seed,
                                    parse_detector, seeded)
from app.errors import DetectorConfigError
from app.utils import kmeans


def _view(curves):
    curves = np.asarray(curves, dtype=float)
    return CurveView(curves=curves, sample_grids=np.tile(np.arange(curves.shape[1], dtype=float), (len(curves), 1)))


def _shifted_stream(rng, T=300, change=150, shift=10.0):
    values = rng.normal(0.0, 1.0, size=(T, 4))
    values[change:] += shift
    return values


def test_trivial_detectors(rng):
    view = _view(rng.normal(size=(7, 3)))
    np.testing.assert_array_equal(D.score(Always(), view), np.ones(7))
    np.testing.assert_array_equal(D.score(Never(), view), np.zeros(7))
    a, b = D.score(RandomGuess(seed=3), view), D.score(RandomGuess(seed=3), view)
    np.testing.assert_array_equal(a, b)
    assert np.all((a >= 0) & (a < 1))


def test_rolling_mean_difference_example():
    curves = [[1, 0], [1, 0], [1, 0], [5, 0], [5, 0]]
    np.testing.assert_allclose(D.score(RollingMeanDifference(m_r=2), _view(curves)), [0, 0, 0, 2, 2])


def test_rolling_mean_std_warm_up(rng):
    s = D.score(RollingMeanStdDev(m_r=4), _view(rng.normal(size=(30, 5))))
    np.testing.assert_array_equal(s[:6], 0.0)
    assert np.all(s[6:] > 0)
    assert np.all(np.isfinite(s))


def test_kswin_warm_up_and_constant_stream():
    s = D.kswin_score(np.ones(40), 10, 5, 3)
    np.testing.assert_array_equal(s[:17], 0.0)
    np.testing.assert_allclose(s[17:], np.log(2.0))


def test_kswin_spikes_at_mean_shift(rng):
    spec = SlidingKSWIN(m_r=50, m_o=50, delta=0)
    s = D.score(spec, _view(_shifted_stream(rng)))
    assert s.max() >= np.log1p(1e10)
    assert abs(int(np.argmax(s)) + 1 - 151) <= spec.m_o + spec.delta


def test_kswin_stationary_stream(rng):
    s = D.kswin_score(rng.normal(size=2000), 50, 50, 0)
    assert 0.6 < np.median(s[99:]) < 1.8


def test_cluster_scores_distance_to_center(rng):
    curves = np.vstack([rng.normal(0, 0.1, (30, 4)), rng.normal(5, 0.1, (30, 4))])
    s = D.score(Cluster(n_c=2, seed=1), _view(curves))
    assert s.shape == (60,)
    assert s.max() < 1.0
    np.testing.assert_array_equal(s, kmeans.kmeans_score(curves, kmeans.kmeans_fit(curves, 2, seed=1)))


def test_mmd_score_warm_up(rng):
    latents = _shifted_stream(rng, T=60, change=30, shift=3.0)[:, :2]
    s = D.mmd_score(latents, 10, 5, 2)
    np.testing.assert_array_equal(s[:16], 0.0)
    assert np.all(s >= 0)
    assert 25 <= int(np.argmax(s)) + 1 <= 45


def test_windows_larger_than_T_are_rejected(rng):
    view = _view(rng.normal(size=(20, 3)))
    for spec in (SlidingKSWIN(m_r=10, m_o=10, delta=1), RollingMeanDifference(m_r=20),
                 RollingMeanStdDev(m_r=11), Cluster(n_c=21)):
        with pytest.raises(DetectorConfigError):
            D.score(spec, view)


def test_autoencoder_needs_a_full_batch(rng):
    spec = AEMMD(k=2, m_r=5, m_o=5, ae=AETrainSpec(batch_size=64))
    with pytest.raises(DetectorConfigError):
        D.score(spec, _view(rng.normal(size=(40, 8))))


def test_only_curve_views_are_scored(small_dataset):
    with pytest.raises(TypeError):
        D.score(Always(), small_dataset)
    assert len(D.score(Always(), small_dataset.view())) == small_dataset.T


def test_scores_ignore_ground_truth(small_dataset):
    spec = RollingMeanDifference(m_r=5)
    moved = small_dataset.copy(update={'ground_truth': small_dataset.ground_truth.copy(update={'segments': [(1, 3)]})})
    np.testing.assert_array_equal(D.score(spec, small_dataset.view()), D.score(spec, moved.view()))


def test_autoencoder_detectors_on_preset(small_dataset):
    ae = AETrainSpec(hidden_width=16, epochs=3, batch_size=32, seed=1)
    for spec in (AEMeanKS(k=2, m_r=20, m_o=10, delta=5, ae=ae),
                 AEMeanKS(k=2, m_r=20, m_o=10, delta=5, ae=ae, aggregation='max'),
                 AEMMD(k=2, m_r=20, m_o=10, delta=5, ae=ae)):
        s = D.score(spec, small_dataset.view())
        assert s.shape == (small_dataset.T,)
        assert np.all(np.isfinite(s))
        np.testing.assert_array_equal(s[:spec.history - 1], 0.0)
        np.testing.assert_array_equal(s, D.score(spec, small_dataset.view()))


def test_parse_detector_and_labels():
    spec = parse_detector({'kind': 'SlidingKSWIN', 'm_r': 50, 'm_o': 20, 'delta': 10})
    assert isinstance(spec, SlidingKSWIN)
    assert spec.label == 'SlidingKSWIN(m_r=50, m_o=20, delta=10)'
    assert parse_detector({'kind': 'Never'}).label == 'Never'
    ae = parse_detector({'kind': 'AEMeanKS', 'k': 3, 'm_r': 5, 'm_o': 5, 'aggregation': 'max'})
    assert ae.ae.latent_dim == 3
    assert ae.label.endswith('[max]')


def test_detector_validation():
    with pytest.raises(ValidationError):
        parse_detector({'kind': 'RollingMeanDifference', 'm_r': 1})
    with pytest.raises(ValidationError):
        parse_detector({'kind': 'SlidingKSWIN', 'm_r': 5, 'm_o': 5, 'delta': -1})
    with pytest.raises(ValidationError):
        parse_detector({'kind': 'Cluster', 'n_c': 0})
    with pytest.raises(ValidationError):
        parse_detector({'kind': 'Always', 'seed': 3})
    with pytest.raises(ValidationError):
        parse_detector({'kind': 'Sometimes'})


def test_seeded_copies():
    assert seeded(RandomGuess(seed=1), 9).seed == 9
    assert seeded(Always(), 9) == Always()
    ae = seeded(AEMMD(k=2, m_r=5, m_o=5), 4)
    assert detector_seed(ae) == 4
    assert detector_seed(Never()) is None
