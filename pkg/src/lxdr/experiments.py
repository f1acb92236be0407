"""Benchmark grids: per-dataset explanation quality and synthetic scaling.

Reduced dimensionalities for the bundled datasets are pinned to the values
used throughout the benchmark tables (iris 3, diabetes 8, digits 25); the
digits grid works on a seeded 25% subset (449 rows) with pixel intensities
scaled to [0, 1]. Metric rows aggregate
to a fixed CSV schema; pass ``include_timing=False`` to zero the timing
column when byte-identical reports across runs are needed.
"""

import csv
import io
import time
from dataclasses import dataclass

import numpy as np

from .datasets import Dataset, load_bundled, subsample
from .metrics import instance_difference, weights_difference
from .neighborhood import NgConfig
from .reducers import (autoencoder_fit, components_for_variance, kpca_fit,
                       pca_fit)
from .surrogate import gxdr_explain, lxdr_explain

BENCHMARK_REDUCED_DIMS = {"iris": 3, "diabetes": 8, "digits": 25}
BENCHMARK_K = {"iris": 50, "diabetes": 150, "digits": 750}
DIGITS_FRACTION = 0.25
DIGITS_SUBSET_SEED = 0

CSV_HEADER = ("dataset,dr_method,explainer,n_features,n_reduced,k,metric,"
              "mean_value,mean_value_x100,mean_seconds,n_failures")

_METHOD_ALIASES = {"pca": "pca", "kpca": "kpca-rbf", "kpca-rbf": "kpca-rbf",
                   "ae": "autoencoder", "autoencoder": "autoencoder"}


@dataclass
class SyntheticSpec:
    n_features: int
    n_rows: int = 1000
    eigen_decay: float = 0.8
    seed: int = 0

    def __post_init__(self):
        f = self.n_features
        if f % 10 != 0 or not 10 <= f <= 250:
            raise ValueError(f"n_features must be a multiple of 10 in "
                             f"[10, 250], got {f}")
        if not 0.0 < self.eigen_decay < 1.0:
            raise ValueError(f"eigen_decay must be in (0, 1), got "
                             f"{self.eigen_decay}")
        if self.n_rows < 2:
            raise ValueError(f"n_rows must be >= 2, got {self.n_rows}")


def synthetic_dataset(spec):
    """Gaussian data with a geometrically decaying covariance spectrum.

    X = Z @ A where Z is standard normal and A = Q.T @ diag(s) @ Q' for
    seeded random orthogonal Q, Q' and s_j = eigen_decay**j, so the
    population covariance eigenvalues fall off as eigen_decay**(2j).
    """
    rng = np.random.default_rng(spec.seed)
    f = spec.n_features
    Z = rng.standard_normal((spec.n_rows, f))
    Q, _ = np.linalg.qr(rng.standard_normal((f, f)))
    Q2, _ = np.linalg.qr(rng.standard_normal((f, f)))
    s = spec.eigen_decay ** np.arange(f)
    return Z @ (Q.T @ (s[:, None] * Q2))


@dataclass
class ReportRow:
    dataset: str
    dr_method: str
    explainer: str
    n_features: int
    n_reduced: int
    k: int
    metric: str
    mean_value: float
    mean_seconds: float
    n_failures: int


@dataclass
class ExperimentReport:
    rows: list

    def mean(self, **filters):
        """mean_value of the single row matching the given column values."""
        hits = [r for r in self.rows
                if all(getattr(r, key) == val for key, val in
                       filters.items())]
        if len(hits) != 1:
            raise KeyError(f"{len(hits)} report rows match {filters}")
        return hits[0].mean_value

    def to_csv(self, include_timing=True):
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_HEADER.split(","))
        for r in self.rows:
            secs = r.mean_seconds if include_timing else 0.0
            writer.writerow([r.dataset, r.dr_method, r.explainer,
                             r.n_features, r.n_reduced, r.k, r.metric,
                             repr(float(r.mean_value)),
                             repr(100.0 * float(r.mean_value)),
                             repr(float(secs)), r.n_failures])
        return buf.getvalue()

    def save_csv(self, path, include_timing=True):
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(self.to_csv(include_timing=include_timing))


def _fit_method(method, X, n_reduced, seed, ae_epochs):
    if method == "pca":
        return pca_fit(X, n_reduced)
    if method == "kpca-rbf":
        return kpca_fit(X, n_reduced)
    if method == "autoencoder":
        return autoencoder_fit(X, n_reduced, seed=seed, epochs=ae_epochs)
    raise ValueError(f"unknown dr method {method!r}")


def _load_benchmark_dataset(name):
    d = load_bundled(name)
    if name == "digits":
        d = subsample(d, DIGITS_FRACTION, seed=DIGITS_SUBSET_SEED)
        # Raw 0..16 pixel counts put typical neighbor distances around 40,
        # where the exponential distance weights underflow and the local fit
        # degenerates to the query alone; unit-scale intensities keep the
        # weighting meaningful.
        d = Dataset(d.name, d.features / 16.0, d.feature_names, d.target)
    return d


def run_table_experiment(datasets=None, dr_methods=None, k_values=None,
                         seed=42, ae_epochs=200, instance_limit=None):
    """Per-instance local/global explanation quality on the bundled data.

    For every instance of each dataset the local explainer (KNN
    neighborhood, auto-alpha) and the global baseline are scored by instance
    difference, plus weights difference against the true component matrix
    when the reducer exposes one (PCA). Per-instance failures are counted,
    not fatal. `instance_limit` truncates the per-dataset instance loop
    (handy for quick runs).
    """
    names = list(datasets) if datasets is not None else list(
        BENCHMARK_REDUCED_DIMS)
    methods = [_METHOD_ALIASES[m] for m in
               (dr_methods if dr_methods is not None
                else ("pca", "kpca", "ae"))]
    rows = []
    for name in names:
        data = _load_benchmark_dataset(name)
        X = data.features
        n_reduced = BENCHMARK_REDUCED_DIMS.get(
            name, None) or components_for_variance(X)
        k = k_values.get(name) if k_values else BENCHMARK_K.get(name)
        if k is None:
            k = max(1, int(round(0.10 * X.shape[0])))
        k = min(k, X.shape[0])

        for method in methods:
            dr = _fit_method(method, X, n_reduced, seed, ae_epochs)
            reference = dr.components if method == "pca" else None

            t0 = time.perf_counter()
            gx = gxdr_explain(dr, X)
            gx_seconds = time.perf_counter() - t0

            queries = X if instance_limit is None else X[:instance_limit]
            sums = {}          # (explainer, metric) -> running sum
            counts = {}
            failures = 0
            lx_seconds = []
            for x in queries:
                try:
                    t0 = time.perf_counter()
                    e = lxdr_explain(dr, X, x,
                                     NgConfig(generator="knn", k=k),
                                     auto_alpha=True)
                    lx_seconds.append(time.perf_counter() - t0)
                    pairs = [("lxdr", instance_difference(dr, e, x)),
                             ("gxdr", instance_difference(dr, gx, x))]
                    if reference is not None:
                        pairs += [("lxdr", weights_difference(e, reference)),
                                  ("gxdr", weights_difference(gx, reference))]
                except Exception:
                    failures += 1
                    continue
                for explainer, res in pairs:
                    key = (explainer, res.metric)
                    sums[key] = sums.get(key, 0.0) + res.value
                    counts[key] = counts.get(key, 0) + 1

            mean_lx = float(np.mean(lx_seconds)) if lx_seconds else 0.0
            for (explainer, metric), total in sums.items():
                rows.append(ReportRow(
                    dataset=name, dr_method=method, explainer=explainer,
                    n_features=X.shape[1], n_reduced=n_reduced, k=k,
                    metric=metric,
                    mean_value=total / counts[(explainer, metric)],
                    mean_seconds=mean_lx if explainer == "lxdr"
                    else gx_seconds,
                    n_failures=failures))
    return ExperimentReport(rows=rows)


def run_scaling_experiment(k_values=(250, 500, 750), seed=42, features=None,
                           n_queries=20, n_rows=1000):
    """Local-explanation quality and cost over synthetic datasets.

    Each dataset (default: all feature counts 10, 20, ..., 250) is reduced
    with PCA at its 95%-variance dimensionality; the local explainer runs at
    every `k` over a fixed seeded sample of query rows, recording both
    metrics and the wall-clock seconds per explanation.
    """
    if features is None:
        features = tuple(range(10, 251, 10))
    rows = []
    for f in features:
        spec = SyntheticSpec(n_features=f, n_rows=n_rows, seed=seed)
        X = synthetic_dataset(spec)
        n_reduced = components_for_variance(X)
        pca = pca_fit(X, n_reduced)

        picker = np.random.default_rng([seed, f])
        queries = X[picker.choice(X.shape[0], size=min(n_queries, X.shape[0]),
                                  replace=False)]
        for k in k_values:
            k_used = min(k, X.shape[0])
            sums = {"weights_difference": 0.0, "instance_difference": 0.0}
            failures = 0
            seconds = []
            for x in queries:
                try:
                    t0 = time.perf_counter()
                    e = lxdr_explain(pca, X, x,
                                     NgConfig(generator="knn", k=k_used),
                                     auto_alpha=True)
                    seconds.append(time.perf_counter() - t0)
                    wd = weights_difference(e, pca.components)
                    idiff = instance_difference(pca, e, x)
                except Exception:
                    failures += 1
                    continue
                sums["weights_difference"] += wd.value
                sums["instance_difference"] += idiff.value

            n_ok = len(seconds)
            mean_secs = float(np.mean(seconds)) if seconds else 0.0
            for metric, total in sums.items():
                rows.append(ReportRow(
                    dataset=f"synthetic-{f}", dr_method="pca",
                    explainer="lxdr", n_features=f, n_reduced=n_reduced,
                    k=k_used, metric=metric,
                    mean_value=total / n_ok if n_ok else 0.0,
                    mean_seconds=mean_secs, n_failures=failures))
    return ExperimentReport(rows=rows)
