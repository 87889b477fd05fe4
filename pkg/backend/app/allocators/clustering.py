"""
k-means over small dense feature vectors with deterministic k-means++ seeding.
"""
from typing import List

import numpy as np


def _sq_distances(features: np.ndarray, centroids: np.ndarray) -> np.ndarray:
    return ((features[:, None, :] - centroids[None, :, :]) ** 2).sum(axis=2)


def kmeans_pp_seeds(features: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    """Initial centroids; stops early when every point already coincides with a centroid"""
    n = len(features)
    centroids = [features[rng.integers(n)]]
    while len(centroids) < k:
        d2 = _sq_distances(features, np.asarray(centroids)).min(axis=1)
        total = d2.sum()
        if total <= 0:
            break
        centroids.append(features[rng.choice(n, p=d2 / total)])
    return np.asarray(centroids, dtype=float)


def kmeans(features: np.ndarray, k: int, seed: int = 0, max_iter: int = 100) -> List[int]:
    """Cluster label per row; labels are dense and numbered by first appearance"""
    features = np.asarray(features, dtype=float)
    if len(features) == 0:
        return []
    rng = np.random.default_rng(seed)
    centroids = kmeans_pp_seeds(features, max(1, min(k, len(features))), rng)

    labels = None
    for _ in range(max_iter):
        new_labels = _sq_distances(features, centroids).argmin(axis=1)
        if labels is not None and np.array_equal(new_labels, labels):
            break
        labels = new_labels
        for c in range(len(centroids)):
            members = features[labels == c]
            if len(members):
                centroids[c] = members.mean(axis=0)

    renumber = {}
    for label in labels.tolist():
        renumber.setdefault(label, len(renumber))
    return [renumber[label] for label in labels.tolist()]
