"""Feature attribution through a surrogate and what-if re-projection.

A downstream linear predictor over the reduced space has per-component
contributions coef * x'. The surrogate slope matrix maps such reduced-space
vectors back to original features (a plain bilinear map, no data offset:
coefficients are directional quantities). What-if tweaks always re-project
the modified instance through the true reducer, never the surrogate.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .datasets import load_bundled, standardize, train_test_split
from .neighborhood import NgConfig
from .reducers import dr_transform, kpca_fit, pca_fit, transform_one
from .surrogate import lxdr_explain, weighted_ridge


@dataclass
class RidgePredictor:
    coefficients: np.ndarray      # (n_r,)
    intercept: float
    alpha: float


@dataclass
class LocalAttribution:
    reduced_contribution: np.ndarray    # coef * x', per component
    original_contribution: np.ndarray   # propagated to original features
    model_coefficients: np.ndarray
    prediction: float

    def to_dict(self):
        return {"reduced": self.reduced_contribution.tolist(),
                "original": self.original_contribution.tolist(),
                "prediction": self.prediction}


@dataclass
class WhatIfResult:
    x_reduced_before: np.ndarray
    x_reduced_after: np.ndarray
    prediction_before: Optional[float] = None
    prediction_after: Optional[float] = None

    def to_dict(self):
        return {"before": self.x_reduced_before.tolist(),
                "after": self.x_reduced_after.tolist(),
                "prediction_before": self.prediction_before,
                "prediction_after": self.prediction_after}


def ridge_predictor_fit(X_reduced, y, alpha=1.0):
    """Unweighted ridge over reduced features, used as the downstream
    decision model."""
    X = np.asarray(X_reduced, dtype=np.float64)
    fit = weighted_ridge(X, y, np.ones(X.shape[0]), alpha)
    return RidgePredictor(coefficients=fit.slope, intercept=fit.intercept,
                          alpha=fit.alpha)


def predictor_predict(predictor, x_reduced):
    x_reduced = np.asarray(x_reduced, dtype=np.float64)
    return float(predictor.coefficients @ x_reduced + predictor.intercept)


def predictor_to_dict(predictor):
    return {"coefficients": predictor.coefficients.tolist(),
            "intercept": predictor.intercept, "alpha": predictor.alpha}


def predictor_from_dict(doc):
    return RidgePredictor(
        coefficients=np.asarray(doc["coefficients"], dtype=np.float64),
        intercept=float(doc["intercept"]), alpha=float(doc.get("alpha", 1.0)))


def local_attribution(predictor, x_reduced):
    """Per-component contribution coef * x' (element-wise)."""
    x_reduced = np.asarray(x_reduced, dtype=np.float64)
    if x_reduced.shape != predictor.coefficients.shape:
        raise ValueError(f"x_reduced shape {x_reduced.shape} does not match "
                         f"{predictor.coefficients.shape} coefficients")
    return predictor.coefficients * x_reduced


def propagate_to_original(attr, explanation):
    """Map a reduced-space vector to original-feature space: attr @ slopes.

    With attr = the predictor's coefficients this is the chain-rule gradient
    of the composed model; with attr = per-component contributions it gives
    each original feature's share summed across components.
    """
    attr = np.asarray(attr, dtype=np.float64)
    if attr.shape != (explanation.reduced_dims,):
        raise ValueError(f"attr must have shape "
                         f"({explanation.reduced_dims},), got {attr.shape}")
    return attr @ explanation.slopes


def attribution_report(predictor, explanation, x_reduced):
    """Bundle the reduced/original contribution split plus the prediction."""
    reduced = local_attribution(predictor, x_reduced)
    return LocalAttribution(
        reduced_contribution=reduced,
        original_contribution=propagate_to_original(reduced, explanation),
        model_coefficients=predictor.coefficients.copy(),
        prediction=predictor_predict(predictor, x_reduced))


def whatif_tweak(dr, predictor, x, feature, new_value):
    """Overwrite one feature and re-project through the true reducer."""
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1:
        raise ValueError(f"x must be 1-D, got shape {x.shape}")
    if not 0 <= feature < x.shape[0]:
        raise IndexError(f"feature index {feature} out of range for "
                         f"{x.shape[0]} features")
    if not np.isfinite(new_value):
        raise ValueError(f"new_value must be finite, got {new_value}")

    tweaked = x.copy()
    tweaked[feature] = new_value
    before = transform_one(dr, x)
    after = transform_one(dr, tweaked)
    res = WhatIfResult(x_reduced_before=before, x_reduced_after=after)
    if predictor is not None:
        res.prediction_before = predictor_predict(predictor, before)
        res.prediction_after = predictor_predict(predictor, after)
    return res


# ---------------------------------------------------------------------------
# End-to-end demonstration pipelines used by the CLI, service and tests.


def diabetes_regression_case(seed=42, k=150, explain_reference=None):
    """Regression walk-through on the diabetes data.

    Standardizes the features, splits 80/20, reduces the train split with an
    8-component PCA, trains a ridge predictor on the reduced train set, then
    explains one test instance locally and tweaks the feature whose
    contribution pulls the prediction down the most, setting it to its
    training mean. Since the reducer is affine and contributions are
    gradient * (x - train_mean), zeroing the most negative contribution must
    raise the prediction.
    """
    data = load_bundled("diabetes")
    std, record = standardize(data)
    train, test = train_test_split(std, 0.8, seed=seed)

    pca = pca_fit(train.features, 8)
    Z_train = dr_transform(pca, train.features)
    Z_test = dr_transform(pca, test.features)
    predictor = ridge_predictor_fit(Z_train, train.target, alpha=1.0)

    preds = Z_test @ predictor.coefficients + predictor.intercept
    mae = float(np.mean(np.abs(preds - test.target)))

    if explain_reference is None:
        # a held-out instance whose reduced coordinates sit well inside the
        # embedding: pick the test row closest to the reduced test median
        explain_reference = np.median(Z_test, axis=0)
    ref = np.asarray(explain_reference, dtype=np.float64)
    idx = int(np.argmin(np.sum((Z_test - ref) ** 2, axis=1)))

    x = test.features[idx]
    e = lxdr_explain(pca, train.features, x,
                     NgConfig(generator="knn", k=k), auto_alpha=True)
    x_reduced = transform_one(pca, x)
    report = attribution_report(predictor, e, x_reduced)

    gradient = propagate_to_original(predictor.coefficients, e)
    train_mean = train.features.mean(axis=0)
    contributions = gradient * (x - train_mean)
    target_feature = int(np.argmin(contributions))

    tweak = whatif_tweak(pca, predictor, x, target_feature,
                         float(train_mean[target_feature]))
    return {"pca": pca, "predictor": predictor, "mae": mae,
            "train": train, "test": test, "standardization": record,
            "instance_index": idx, "x": x, "x_reduced": x_reduced,
            "explanation": e, "attribution": report,
            "gradient": gradient, "contributions": contributions,
            "target_feature": target_feature, "tweak": tweak}


def kpca_outlier_case(k=150, gamma=None):
    """Visualization walk-through: 2-D RBF kernel PCA on diabetes, locate
    the most extreme point on component 1, explain it locally, and pull its
    dominant feature back to the dataset mean."""
    data = load_bundled("diabetes")
    X = data.features
    kpca = kpca_fit(X, 2, gamma=gamma)
    embedding = dr_transform(kpca, X)

    outlier = int(np.argmax(np.abs(embedding[:, 0])))
    x = X[outlier]
    e = lxdr_explain(kpca, X, x, NgConfig(generator="knn", k=k),
                     auto_alpha=True)

    c1 = e.slopes[0]
    target_feature = int(np.argmax(np.abs(c1)))
    mean_value = float(X[:, target_feature].mean())
    tweak = whatif_tweak(kpca, None, x, target_feature, mean_value)
    return {"kpca": kpca, "embedding": embedding, "outlier_index": outlier,
            "x": x, "explanation": e, "c1_weights": c1,
            "target_feature": target_feature, "tweak": tweak}
