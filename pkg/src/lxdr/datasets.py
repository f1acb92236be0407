"""Dataset loading, sampling, splitting and optional standardization.

Three small tabular datasets ship with the package as CSV snapshots
(``iris`` 150x4, ``diabetes`` 442x10, ``digits`` 1797x64); arbitrary numeric
CSV files load through the same parser. All sampling is seed-pure.
"""

from dataclasses import dataclass, field
from importlib.resources import files
from typing import Optional

import numpy as np

BUNDLED = ("iris", "diabetes", "digits")


@dataclass
class Dataset:
    """A named feature matrix with optional target column."""

    name: str
    features: np.ndarray          # (rows, cols) float64
    feature_names: list = field(default_factory=list)
    target: Optional[np.ndarray] = None

    def __post_init__(self):
        self.features = np.asarray(self.features, dtype=np.float64)
        if self.features.ndim != 2:
            raise ValueError(f"features must be 2-D, got shape "
                             f"{self.features.shape}")
        if self.target is not None:
            self.target = np.asarray(self.target, dtype=np.float64)
            if self.target.shape != (self.rows,):
                raise ValueError(
                    f"target length {self.target.shape} does not match "
                    f"{self.rows} rows")
        if not self.feature_names:
            self.feature_names = [f"f{j}" for j in range(self.cols)]
        if len(self.feature_names) != self.cols:
            raise ValueError(f"{len(self.feature_names)} feature names for "
                             f"{self.cols} columns")

    @property
    def rows(self):
        return self.features.shape[0]

    @property
    def cols(self):
        return self.features.shape[1]


def _parse_csv(text, source, has_header=True, target_column=None):
    lines = text.replace("\r\n", "\n").split("\n")
    while lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise ValueError(f"{source}: empty CSV")

    if has_header:
        names = [c.strip() for c in lines[0].split(",")]
        body, first_row = lines[1:], 2
    else:
        names = None
        body, first_row = lines, 1
    if not body:
        raise ValueError(f"{source}: no data rows")

    width = len(names) if names is not None else len(body[0].split(","))

    target_idx = None
    if target_column is not None:
        if isinstance(target_column, str):
            if names is None:
                raise ValueError("target_column by name requires a header")
            if target_column not in names:
                raise ValueError(f"{source}: no column named "
                                 f"{target_column!r} in header")
            target_idx = names.index(target_column)
        else:
            target_idx = int(target_column)
            if not 0 <= target_idx < width:
                raise ValueError(f"target column {target_idx} out of range "
                                 f"for {width} columns")

    values = np.empty((len(body), width))
    for i, line in enumerate(body):
        cells = line.split(",")
        if len(cells) != width:
            raise ValueError(
                f"{source}: row {first_row + i} has {len(cells)} cells, "
                f"expected {width}")
        for j, cell in enumerate(cells):
            try:
                v = float(cell)
            except ValueError:
                raise ValueError(
                    f"{source}: non-numeric value {cell.strip()!r} at row "
                    f"{first_row + i}, column {j + 1}") from None
            if not np.isfinite(v):
                raise ValueError(
                    f"{source}: non-finite value at row {first_row + i}, "
                    f"column {j + 1}")
            values[i, j] = v

    if target_idx is None:
        feats, target = values, None
        feat_names = names
    else:
        keep = [j for j in range(width) if j != target_idx]
        feats, target = values[:, keep], values[:, target_idx]
        feat_names = [names[j] for j in keep] if names is not None else None
    return feats, feat_names, target


def load_csv(path, has_header=True, target_column=None, name=None):
    """Load a rectangular numeric CSV file.

    Parameters
    ----------
    path : str
        File to read (UTF-8, comma-separated, '.' decimals, LF or CRLF).
    has_header : bool
        Whether the first line carries column names.
    target_column : str | int | None
        Column to split off as the target (name requires a header).
    name : str | None
        Dataset name; defaults to the path.

    Malformed input (ragged rows, non-numeric or non-finite cells) raises
    ``ValueError`` naming the offending row and column.
    """
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    feats, feat_names, target = _parse_csv(
        text, str(path), has_header=has_header, target_column=target_column)
    return Dataset(name or str(path), feats, feat_names or [], target)


def load_bundled(name):
    """Load one of the packaged dataset snapshots by name."""
    if name not in BUNDLED:
        raise ValueError(f"unknown bundled dataset {name!r}; "
                         f"available: {', '.join(BUNDLED)}")
    resource = files(__package__) / "data" / f"{name}.csv"
    try:
        text = resource.read_text(encoding="utf-8")
    except (FileNotFoundError, OSError) as exc:
        raise FileNotFoundError(
            f"bundled snapshot missing or unreadable: {resource}") from exc
    feats, feat_names, target = _parse_csv(text, f"{name}.csv",
                                           target_column="target")
    return Dataset(name, feats, feat_names or [], target)


def subsample(d, fraction, seed=0):
    """Seeded uniform sample (without replacement) of round(fraction*rows)
    rows, keeping original row order."""
    if not 0.0 < fraction <= 1.0:
        raise ValueError(f"fraction must be in (0, 1], got {fraction}")
    if fraction == 1.0:
        return Dataset(d.name, d.features.copy(), list(d.feature_names),
                       None if d.target is None else d.target.copy())
    n = int(round(fraction * d.rows))
    n = max(n, 1)
    rng = np.random.default_rng(seed)
    idx = np.sort(rng.choice(d.rows, size=n, replace=False))
    return Dataset(d.name, d.features[idx], list(d.feature_names),
                   None if d.target is None else d.target[idx])


def train_test_split(d, train_fraction=0.8, seed=42):
    """Seeded shuffle-and-split into two disjoint datasets."""
    if not 0.0 < train_fraction < 1.0:
        raise ValueError(f"train_fraction must be in (0, 1), got "
                         f"{train_fraction}")
    n_train = int(round(train_fraction * d.rows))
    if n_train < 1 or n_train >= d.rows:
        raise ValueError(f"split leaves an empty partition "
                         f"({n_train}/{d.rows - n_train})")
    perm = np.random.default_rng(seed).permutation(d.rows)
    parts = []
    for tag, idx in (("train", perm[:n_train]), ("test", perm[n_train:])):
        parts.append(Dataset(
            f"{d.name}-{tag}", d.features[idx], list(d.feature_names),
            None if d.target is None else d.target[idx]))
    return parts[0], parts[1]


@dataclass
class Standardization:
    """Per-feature centering/scaling record, invertible."""

    mean: np.ndarray
    scale: np.ndarray             # 1.0 for constant features
    constant: np.ndarray          # bool mask of flagged constant features

    def apply(self, X):
        return (np.asarray(X, dtype=np.float64) - self.mean) / self.scale

    def inverse(self, X):
        return np.asarray(X, dtype=np.float64) * self.scale + self.mean


def standardize(d):
    """Center each feature and scale to unit (population) variance.

    Constant features become all-zero columns and are flagged in the
    returned record rather than divided by zero. Returns the transformed
    dataset and the ``Standardization`` needed to invert it.
    """
    X = d.features
    mean = X.mean(axis=0)
    scale = X.std(axis=0)
    constant = np.ptp(X, axis=0) == 0.0
    scale = np.where(constant, 1.0, scale)
    rec = Standardization(mean=mean, scale=scale, constant=constant)
    out = rec.apply(X)
    out[:, constant] = 0.0
    return Dataset(d.name, out, list(d.feature_names),
                   None if d.target is None else d.target.copy()), rec
