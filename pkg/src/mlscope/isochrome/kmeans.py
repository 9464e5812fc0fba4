"""Seeded k-means over 3D color points.

Lloyd iterations from k-means++ seeding. Ties in the nearest-centroid
assignment always break to the lowest cluster index, which makes the whole
fit deterministic for a given (points, k, seed, max_iter, tol) tuple.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from mlscope.errors import InsufficientPoints, InvalidK

DEFAULT_K = 6
DEFAULT_MAX_ITER = 100
DEFAULT_TOL = 1e-4


@dataclass(frozen=True)
class ClusterModel:
    """Result of a k-means fit over (n, 3) color points."""

    k: int
    centroids: np.ndarray          # (k, 3) float64
    assignments: np.ndarray        # (n,) int, values in [0, k)
    inertia: float                 # sum of squared point-to-centroid distances
    inertia_history: tuple = field(default=())   # one value per Lloyd iteration
    n_iter: int = 0

    def __post_init__(self):
        object.__setattr__(self, "centroids", np.asarray(self.centroids, dtype=np.float64))
        object.__setattr__(self, "assignments", np.asarray(self.assignments, dtype=np.intp))
        if self.k < 1:
            raise InvalidK(f"k must be >= 1, got {self.k}")
        if self.centroids.shape != (self.k, 3):
            raise ValueError(f"expected ({self.k}, 3) centroids, got {self.centroids.shape}")
        if self.assignments.size and (
            self.assignments.min() < 0 or self.assignments.max() >= self.k
        ):
            raise ValueError("assignment index out of range")


def _squared_distances(points: np.ndarray, centroids: np.ndarray) -> np.ndarray:
    """(n, k) matrix of squared Euclidean distances."""
    diff = points[:, None, :] - centroids[None, :, :]
    return np.einsum("nkd,nkd->nk", diff, diff)


def _plus_plus_seeds(points: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    """k-means++ seeding: each new seed drawn with probability proportional
    to its squared distance from the nearest seed chosen so far."""
    n = len(points)
    centroids = np.empty((k, 3), dtype=np.float64)
    centroids[0] = points[rng.integers(n)]
    d2 = np.sum((points - centroids[0]) ** 2, axis=1)
    for j in range(1, k):
        total = d2.sum()
        if total <= 0.0:
            # every remaining point coincides with a seed; reuse any point
            centroids[j] = points[rng.integers(n)]
            continue
        idx = rng.choice(n, p=d2 / total)
        centroids[j] = points[idx]
        d2 = np.minimum(d2, np.sum((points - centroids[j]) ** 2, axis=1))
    return centroids


def _fill_empty_clusters(
    points: np.ndarray, centroids: np.ndarray, assignments: np.ndarray, k: int
) -> np.ndarray:
    """Reassign the point farthest from its centroid to each empty cluster."""
    counts = np.bincount(assignments, minlength=k)
    empty = np.flatnonzero(counts == 0)
    if empty.size == 0:
        return assignments
    assignments = assignments.copy()
    dist = np.sum((points - centroids[assignments]) ** 2, axis=1)
    for j in empty:
        far = int(np.argmax(dist))
        assignments[far] = j
        dist[far] = -1.0  # spent; never donate the same point twice
    return assignments


def kmeans_fit(
    points: np.ndarray,
    k: int = DEFAULT_K,
    seed: int = 0,
    max_iter: int = DEFAULT_MAX_ITER,
    tol: float = DEFAULT_TOL,
) -> ClusterModel:
    """Fit k clusters to (n, 3) points.

    The loop runs assignment/mean updates until the assignment vector stops
    changing (which certifies the returned model is an exact Lloyd fixed
    point) or max_iter mean updates have been applied. `tol` bounds the
    centroid displacement considered converged; a sub-tol displacement
    makes the following assignment pass the terminating one in practice,
    so stability of assignments remains the actual exit test.
    """
    points = np.asarray(points, dtype=np.float64)
    if points.ndim != 2 or points.shape[1] != 3:
        raise ValueError(f"expected (n, 3) points, got {points.shape}")
    if k < 1:
        raise InvalidK(f"k must be >= 1, got {k}")
    n_distinct = len(np.unique(points, axis=0))
    if n_distinct < k:
        raise InsufficientPoints(f"need >= {k} distinct points, have {n_distinct}")

    rng = np.random.default_rng(seed)
    centroids = _plus_plus_seeds(points, k, rng)

    history: list[float] = []
    prev_assignments = None
    assignments = np.zeros(len(points), dtype=np.intp)
    n_iter = 0
    for _ in range(max_iter):
        d2 = _squared_distances(points, centroids)
        assignments = np.argmin(d2, axis=1)  # argmin ties -> lowest index
        assignments = _fill_empty_clusters(points, centroids, assignments, k)
        if prev_assignments is not None and np.array_equal(assignments, prev_assignments):
            break
        prev_assignments = assignments
        n_iter += 1
        for j in range(k):
            centroids[j] = points[assignments == j].mean(axis=0)
        history.append(float(np.sum((points - centroids[assignments]) ** 2)))

    total = float(np.sum((points - centroids[assignments]) ** 2))
    return ClusterModel(
        k=k,
        centroids=centroids,
        assignments=assignments,
        inertia=total,
        inertia_history=tuple(history),
        n_iter=n_iter,
    )


def assign_point(model: ClusterModel, p) -> int:
    """Index of the nearest centroid (squared Euclidean, ties to lowest index)."""
    p = np.asarray(p, dtype=np.float64)
    d2 = np.sum((model.centroids - p) ** 2, axis=1)
    return int(np.argmin(d2))


def assign_points(model: ClusterModel, points: np.ndarray) -> np.ndarray:
    """Vectorized nearest-centroid assignment for (n, 3) points."""
    points = np.asarray(points, dtype=np.float64)
    return np.argmin(_squared_distances(points, model.centroids), axis=1)


def inertia(points: np.ndarray, model: ClusterModel) -> float:
    """Sum of squared distances from each point to its assigned centroid."""
    points = np.asarray(points, dtype=np.float64)
    return float(np.sum((points - model.centroids[model.assignments]) ** 2))
