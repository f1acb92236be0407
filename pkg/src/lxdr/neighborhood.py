"""Neighborhood generation around a query instance plus distance weights.

Weights follow w(i) = exp(-2 * d(query, neighbor_i)) with Euclidean d; the
query itself always sits at position 0 of the weighted set with weight 1.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .backend import row_sq_dists


@dataclass
class Neighborhood:
    query: np.ndarray        # (n,)
    neighbors: np.ndarray    # (k, n)
    weights: np.ndarray      # (k+1,), aligned to [query; neighbors]
    generator: str           # "knn" or "perturbation"

    @property
    def k(self):
        return self.neighbors.shape[0]

    def stacked(self):
        """[query; neighbors] as one (k+1, n) matrix."""
        return np.vstack([self.query[None, :], self.neighbors])


@dataclass
class NgConfig:
    generator: str = "knn"
    k: Optional[int] = None            # None -> 10% of dataset rows
    seed: int = 0
    perturbation_scale: float = 1.0

    def __post_init__(self):
        if self.generator not in ("knn", "perturbation"):
            raise ValueError(f"unknown neighborhood generator "
                             f"{self.generator!r}")
        if self.k is not None and self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")
        if self.perturbation_scale <= 0:
            raise ValueError(f"perturbation_scale must be positive, got "
                             f"{self.perturbation_scale}")

    def resolve_k(self, rows):
        if self.k is not None:
            return self.k
        return max(1, int(round(0.10 * rows)))


def _check_inputs(data, query):
    X = np.asarray(data, dtype=np.float64)
    q = np.asarray(query, dtype=np.float64)
    if X.ndim != 2:
        raise ValueError(f"data must be 2-D, got shape {X.shape}")
    if q.shape != (X.shape[1],):
        raise ValueError(f"query shape {q.shape} does not match data with "
                         f"{X.shape[1]} features")
    if not (np.all(np.isfinite(X)) and np.all(np.isfinite(q))):
        raise ValueError("data/query contain NaN or Inf")
    return X, q


def neighbor_weights(query, neighbors):
    """(k+1)-vector [1, exp(-2*d_1), ..., exp(-2*d_k)]."""
    N, q = np.asarray(neighbors, dtype=np.float64), np.asarray(query,
                                                               dtype=np.float64)
    d = np.sqrt(row_sq_dists(N, q))
    return np.concatenate([[1.0], np.exp(-2.0 * d)])


def knn_neighbors(data, query, k):
    """The k rows of `data` closest to `query` in Euclidean distance,
    ascending, ties broken toward the lower row index. The query is
    prepended and never deduplicated against the rows."""
    X, q = _check_inputs(data, query)
    if not 1 <= k <= X.shape[0]:
        raise ValueError(f"k={k} out of range for a dataset with "
                         f"{X.shape[0]} rows")
    order = np.argsort(row_sq_dists(X, q), kind="stable")
    nb = X[order[:k]]
    return Neighborhood(query=q, neighbors=nb,
                        weights=neighbor_weights(q, nb), generator="knn")


def perturbation_neighbors(data, query, k, seed=0, scale=1.0):
    """k synthetic neighbors sampled as query + Normal(0, (scale*std_f)^2)
    per feature, using the per-feature sample std of `data`. Zero-variance
    features are left untouched."""
    X, q = _check_inputs(data, query)
    if X.shape[0] < 2:
        raise ValueError(f"need >= 2 rows to estimate feature spread, "
                         f"got {X.shape[0]}")
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if scale <= 0:
        raise ValueError(f"scale must be positive, got {scale}")
    sigma = X.std(axis=0, ddof=1)
    sigma[np.ptp(X, axis=0) == 0.0] = 0.0
    rng = np.random.default_rng(seed)
    nb = q + rng.standard_normal((k, X.shape[1])) * (scale * sigma)
    return Neighborhood(query=q, neighbors=nb,
                        weights=neighbor_weights(q, nb),
                        generator="perturbation")


def build_neighborhood(data, query, config):
    """Dispatch on the configured generator; resolves the default k."""
    X = np.asarray(data, dtype=np.float64)
    k = config.resolve_k(X.shape[0])
    if config.generator == "knn":
        return knn_neighbors(X, query, k)
    return perturbation_neighbors(X, query, k, seed=config.seed,
                                  scale=config.perturbation_scale)
