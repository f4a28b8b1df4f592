import numpy as np
from scipy.spatial.distance import cdist

from app import constants


def kmeans_plus_plus(points: np.ndarray, n_clusters: int, rng: np.random.Generator) -> np.ndarray:
    n_samples = points.shape[0]
    chosen = [int(rng.integers(n_samples))]
    min_sq = np.sum((points - points[chosen[0]]) ** 2, axis=1)
    for _ in range(1, n_clusters):
        total = min_sq.sum()
        if total > 0:
            idx = int(rng.choice(n_samples, p=min_sq / total))
        else:
            # every remaining point coincides with a center
            free = np.setdiff1d(np.arange(n_samples), chosen)
            idx = int(rng.choice(free))
        chosen.append(idx)
        min_sq = np.minimum(min_sq, np.sum((points - points[idx]) ** 2, axis=1))
    return points[chosen].astype(float)


def kmeans_fit(points: np.ndarray, n_clusters: int, seed: int = 0,
               max_iters: int = constants.KMEANS_MAX_ITERS) -> np.ndarray:
    """Lloyd iterations from k-means++ seeding until the assignment stops changing."""
    points = np.asarray(points, dtype=float)
    if not 1 <= n_clusters <= len(points):
        raise ValueError(f'n_clusters must be in [1, {len(points)}]')
    rng = np.random.default_rng(seed)
    centers = kmeans_plus_plus(points, n_clusters, rng)
    labels = None
    for _ in range(max_iters):
        new_labels = np.argmin(cdist(points, centers, 'sqeuclidean'), axis=1)
        if labels is not None and np.array_equal(labels, new_labels):
            break
        labels = new_labels
        for c in range(n_clusters):
            members = points[labels == c]
            if len(members):
                centers[c] = members.mean(axis=0)
    return centers


def kmeans_score(points: np.ndarray, centers: np.ndarray) -> np.ndarray:
    """Euclidean distance from every point to its nearest center."""
    return cdist(np.asarray(points, dtype=float), centers).min(axis=1)
