"""Local and global linear surrogates of a fitted reducer.

The local explainer builds a weighted neighborhood around the query, reduces
it through the black-box model, and fits one distance-weighted ridge
regression per reduced dimension; stacking those fits gives a slope matrix
(reduced dims x original features) plus intercepts. The global variant fits
the same regressions over the whole dataset, unweighted.
"""

import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .backend import weighted_gram
from .neighborhood import NgConfig, build_neighborhood
from .reducers import dr_transform

DEFAULT_ALPHA_GRID = (1e-6, 1e-4, 1e-3, 1e-2, 1e-1, 1.0, 10.0)


@dataclass
class RidgeFit:
    slope: np.ndarray
    intercept: float
    alpha: float
    least_norm: bool = False      # set when a singular system was solved
                                  # by the minimum-norm solution


@dataclass
class Explanation:
    slopes: np.ndarray            # (n_r, n): row k = feature influences on
                                  # reduced dimension k
    intercepts: np.ndarray        # (n_r,)
    alpha_used: float
    generator_config: Optional[NgConfig] = None
    query: Optional[np.ndarray] = None
    least_norm: bool = False
    alpha_fallback: bool = False  # auto-alpha could not split, used default

    @property
    def reduced_dims(self):
        return self.slopes.shape[0]

    @property
    def input_dims(self):
        return self.slopes.shape[1]


def _validate_problem(X, t, sample_weights, alpha):
    X = np.asarray(X, dtype=np.float64)
    t = np.asarray(t, dtype=np.float64)
    w = np.asarray(sample_weights, dtype=np.float64)
    if X.ndim != 2:
        raise ValueError(f"X must be 2-D, got shape {X.shape}")
    m = X.shape[0]
    if m < 2:
        raise ValueError(f"need at least 2 rows to fit, got {m}")
    if t.shape[0] != m or w.shape != (m,):
        raise ValueError(f"X has {m} rows but targets/weights have shapes "
                         f"{t.shape} / {w.shape}")
    if not (np.all(np.isfinite(X)) and np.all(np.isfinite(t))
            and np.all(np.isfinite(w))):
        raise ValueError("non-finite values in regression inputs")
    if np.any(w <= 0):
        raise ValueError("all sample weights must be positive")
    if alpha < 0:
        raise ValueError(f"alpha must be non-negative, got {alpha}")
    return X, t, w


def _ridge_multi(X, T, w, alpha):
    """Weighted ridge of every column of T on X with a shared alpha.

    Centering uses the weighted means, so the intercepts absorb the affine
    part and are never penalized. Returns (slopes (n_t, n), intercepts
    (n_t,), least_norm flag).
    """
    wsum = w.sum()
    xbar = (w @ X) / wsum
    tbar = (w @ T) / wsum
    Xc = X - xbar
    Tc = T - tbar

    n = X.shape[1]
    least_norm = False
    if alpha == 0.0:
        # solve the square-root-weighted least squares directly; lstsq
        # returns the minimum-norm solution when the design is rank
        # deficient, which is the documented singular-system behavior
        sw = np.sqrt(w)[:, None]
        coefs, _, rank, _ = np.linalg.lstsq(Xc * sw, Tc * sw, rcond=None)
        least_norm = rank < n
    else:
        G, R = weighted_gram(Xc, w, Tc, alpha)
        coefs = np.linalg.solve(G, R)

    slopes = coefs.T
    intercepts = tbar - slopes @ xbar
    return slopes, intercepts, least_norm


def weighted_ridge(X, t, sample_weights, alpha):
    """Fit w, c minimizing sum_j lam_j (w.x_j + c - t_j)^2 + alpha*||w||^2."""
    X, t, w = _validate_problem(X, t, sample_weights, alpha)
    if t.ndim != 1:
        raise ValueError(f"t must be 1-D, got shape {t.shape}")
    slopes, intercepts, least_norm = _ridge_multi(X, t[:, None], w, alpha)
    return RidgeFit(slope=slopes[0], intercept=float(intercepts[0]),
                    alpha=float(alpha), least_norm=least_norm)


def auto_alpha_select(B, B_reduced, weights, grid=None, alpha_default=1.0):
    """Pick the ridge strength by held-out error on a fixed 80/20 split.

    Rows where index % 5 == 4 form the validation part, so the query (row 0)
    always stays in the training part. Each grid value is fitted on the
    training rows and scored by weight-scaled squared error summed over all
    reduced dimensions on the held-out rows; ties go to the larger alpha.
    Neighborhoods too small to yield a validation row fall back to
    `alpha_default` with a warning.
    """
    grid = sorted(DEFAULT_ALPHA_GRID if grid is None else grid)
    if not grid:
        raise ValueError("alpha grid is empty")
    B = np.asarray(B, dtype=np.float64)
    T = np.asarray(B_reduced, dtype=np.float64)
    w = np.asarray(weights, dtype=np.float64)

    m = B.shape[0]
    val = np.arange(m) % 5 == 4
    if m < 5 or not val.any() or val.sum() > m - 2:
        warnings.warn(f"neighborhood of {m} rows is too small for a held-out "
                      f"split; using alpha={alpha_default}")
        return float(alpha_default)

    train = ~val
    Bt, Tt, wt = B[train], T[train], w[train]
    Bv, Tv, wv = B[val], T[val], w[val]

    best_alpha, best_err = None, np.inf
    for alpha in grid:
        slopes, intercepts, _ = _ridge_multi(Bt, Tt, wt, float(alpha))
        resid = Bv @ slopes.T + intercepts - Tv
        err = float(wv @ np.sum(resid * resid, axis=1))
        if err <= best_err:
            best_alpha, best_err = float(alpha), err
    return best_alpha


def lxdr_explain(dr, data, query, config=None, auto_alpha=False,
                 alpha_default=1.0):
    """Explain the reducer locally around `query`.

    Builds the configured neighborhood, reduces [query; neighbors] through
    the model, and fits the per-dimension weighted ridges. With
    `auto_alpha`, the ridge strength comes from `auto_alpha_select` and the
    final fit is redone on the full neighborhood.
    """
    X = np.asarray(data, dtype=np.float64)
    q = np.asarray(query, dtype=np.float64)
    if X.ndim != 2 or q.ndim != 1:
        raise ValueError(f"expected 2-D data and 1-D query, got shapes "
                         f"{X.shape} / {q.shape}")
    if not (dr.input_dims == X.shape[1] == q.shape[0]):
        raise ValueError(
            f"dimension mismatch: model expects {dr.input_dims} features, "
            f"data has {X.shape[1]}, query has {q.shape[0]}")
    config = config or NgConfig()

    nbhd = build_neighborhood(X, q, config)
    B = nbhd.stacked()
    if B.shape[0] < 2:
        raise ValueError("neighborhood has fewer than 2 rows; increase k")
    T = dr_transform(dr, B)

    fallback = False
    if auto_alpha:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            alpha = auto_alpha_select(B, T, nbhd.weights,
                                      alpha_default=alpha_default)
        fallback = len(caught) > 0
        if fallback:
            warnings.warn(str(caught[0].message))
    else:
        alpha = float(alpha_default)

    slopes, intercepts, least_norm = _ridge_multi(B, T, nbhd.weights, alpha)
    return Explanation(slopes=slopes, intercepts=intercepts, alpha_used=alpha,
                       generator_config=config, query=q,
                       least_norm=least_norm, alpha_fallback=fallback)


def gxdr_explain(dr, data, alpha_default=1.0):
    """Global variant: unweighted ridge over the whole dataset, no query."""
    X = np.asarray(data, dtype=np.float64)
    if X.ndim != 2 or X.shape[0] < 2:
        raise ValueError(f"need a 2-D dataset with >= 2 rows, got shape "
                         f"{X.shape}")
    if dr.input_dims != X.shape[1]:
        raise ValueError(f"model expects {dr.input_dims} features, data has "
                         f"{X.shape[1]}")
    T = dr_transform(dr, X)
    slopes, intercepts, least_norm = _ridge_multi(
        X, T, np.ones(X.shape[0]), float(alpha_default))
    return Explanation(slopes=slopes, intercepts=intercepts,
                       alpha_used=float(alpha_default),
                       least_norm=least_norm)


def explanation_predict(e, x):
    """Apply the surrogate: slopes @ x + intercepts."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (e.input_dims,):
        raise ValueError(f"x must have shape ({e.input_dims},), got "
                         f"{x.shape}")
    return e.slopes @ x + e.intercepts


def explanation_to_dict(e):
    doc = {"slopes": e.slopes.tolist(),
           "intercepts": e.intercepts.tolist(),
           "alpha": e.alpha_used,
           "orientation": "components_by_features",
           "generator": None, "query": None}
    if e.generator_config is not None:
        c = e.generator_config
        doc["generator"] = {"generator": c.generator, "k": c.k,
                            "seed": c.seed,
                            "perturbation_scale": c.perturbation_scale}
    if e.query is not None:
        doc["query"] = e.query.tolist()
    return doc


def explanation_from_dict(doc):
    if doc.get("orientation") != "components_by_features":
        raise ValueError(f"unsupported slope orientation "
                         f"{doc.get('orientation')!r}")
    config = None
    if doc.get("generator"):
        g = doc["generator"]
        config = NgConfig(generator=g["generator"], k=g.get("k"),
                          seed=g.get("seed", 0),
                          perturbation_scale=g.get("perturbation_scale", 1.0))
    query = None if doc.get("query") is None else np.asarray(
        doc["query"], dtype=np.float64)
    return Explanation(slopes=np.asarray(doc["slopes"], dtype=np.float64),
                       intercepts=np.asarray(doc["intercepts"],
                                             dtype=np.float64),
                       alpha_used=float(doc["alpha"]),
                       generator_config=config, query=query)
