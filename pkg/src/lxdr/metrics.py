"""Fidelity metrics for surrogate explanations."""

from dataclasses import dataclass

import numpy as np

from .reducers import transform_one
from .surrogate import explanation_predict


@dataclass
class MetricResult:
    metric: str            # "instance_difference" or "weights_difference"
    value: float

    @property
    def scaled_value(self):
        """Display convention: the raw value times 100, exactly."""
        return 100.0 * self.value


def euclidean_distance(y, y_hat):
    y = np.asarray(y, dtype=np.float64)
    y_hat = np.asarray(y_hat, dtype=np.float64)
    if y.shape != y_hat.shape:
        raise ValueError(f"length mismatch: {y.shape} vs {y_hat.shape}")
    if not (np.all(np.isfinite(y)) and np.all(np.isfinite(y_hat))):
        raise ValueError("non-finite values in distance inputs")
    return float(np.sqrt(np.sum((y - y_hat) ** 2)))


def instance_difference(dr, e, x):
    """How far the surrogate's reduction of x lands from the true one."""
    d = euclidean_distance(explanation_predict(e, x), transform_one(dr, x))
    return MetricResult(metric="instance_difference", value=d)


def weights_difference(e, reference):
    """Distance between the surrogate slopes and a reference weight matrix
    (flattened; intercepts excluded)."""
    ref = np.asarray(reference, dtype=np.float64)
    if ref.shape != e.slopes.shape:
        raise ValueError(f"reference shape {ref.shape} does not match "
                         f"slopes {e.slopes.shape}")
    d = euclidean_distance(e.slopes.ravel(), ref.ravel())
    return MetricResult(metric="weights_difference", value=d)
