"""Dimensionality-reduction backends behind one uniform interface.

Every fitted reducer exposes ``kind``, ``input_dims``, ``reduced_dims`` and
is usable through :func:`dr_transform` (batch) / :func:`transform_one`
(single vector). Custom reducers participate by providing the same
attributes plus a ``transform_batch(B)`` method.
"""

import json

import numpy as np

from .pca import (PcaModel, pca_fit, pca_transform, pca_inverse,
                  components_for_variance, _check_matrix, _check_vector)
from .kpca import KpcaModel, kpca_fit, kpca_transform, kpca_transform_batch
from .autoencoder import (AutoencoderModel, autoencoder_fit, ae_encode,
                          ae_decode, ae_transform)

__all__ = [
    "PcaModel", "pca_fit", "pca_transform", "pca_inverse",
    "components_for_variance",
    "KpcaModel", "kpca_fit", "kpca_transform",
    "AutoencoderModel", "autoencoder_fit", "ae_encode", "ae_decode",
    "ae_transform",
    "dr_transform", "transform_one", "model_to_dict", "model_from_dict",
    "save_model", "load_model",
]

SERIALIZATION_VERSION = 1


def dr_transform(model, batch):
    """Row-wise reduction of a batch through any fitted reducer."""
    B = np.asarray(batch, dtype=np.float64)
    if B.ndim != 2:
        raise ValueError(f"batch must be 2-D, got shape {B.shape}")
    if B.shape[1] != model.input_dims:
        raise ValueError(f"batch has {B.shape[1]} columns, {model.kind} "
                         f"model expects {model.input_dims}")
    if not np.all(np.isfinite(B)):
        raise ValueError("batch contains NaN or Inf")

    if model.kind == "pca":
        return (B - model.mean) @ model.components.T
    if model.kind == "kpca-rbf":
        return kpca_transform_batch(model, B)
    if model.kind == "autoencoder":
        return ae_encode(model, B)
    if hasattr(model, "transform_batch"):
        out = np.asarray(model.transform_batch(B), dtype=np.float64)
        if out.shape != (B.shape[0], model.reduced_dims):
            raise ValueError(f"reducer {model.kind!r} returned shape "
                             f"{out.shape}, expected "
                             f"({B.shape[0]}, {model.reduced_dims})")
        return out
    raise TypeError(f"unknown reducer kind {getattr(model, 'kind', None)!r}")


def transform_one(model, x):
    """Reduce a single instance (convenience wrapper over dr_transform)."""
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1:
        raise ValueError(f"expected a 1-D instance, got shape {x.shape}")
    return dr_transform(model, x[None, :])[0]


def _layers_out(layers):
    return [{"weights": W.tolist(), "bias": b.tolist(), "activation": act}
            for W, b, act in layers]


def _layers_in(spec):
    return [(np.asarray(d["weights"], dtype=np.float64),
             np.asarray(d["bias"], dtype=np.float64),
             d["activation"]) for d in spec]


def model_to_dict(model):
    """Serialize a fitted reducer to a plain versioned dict."""
    doc = {"version": SERIALIZATION_VERSION, "kind": model.kind,
           "input_dims": int(model.input_dims),
           "reduced_dims": int(model.reduced_dims),
           "seed": int(model.seed)}
    if model.kind == "pca":
        doc.update(components=model.components.tolist(),
                   mean=model.mean.tolist(),
                   explained_variance_ratio=
                   model.explained_variance_ratio.tolist())
    elif model.kind == "kpca-rbf":
        doc.update(training_rows=model.training_rows.tolist(),
                   gamma=model.gamma,
                   alphas=model.alphas.tolist(),
                   kernel_row_means=model.kernel_row_means.tolist(),
                   kernel_grand_mean=model.kernel_grand_mean)
    elif model.kind == "autoencoder":
        doc.update(encoder_layers=_layers_out(model.encoder_layers),
                   decoder_layers=_layers_out(model.decoder_layers),
                   hidden_width=model.hidden_width,
                   epochs_trained=model.epochs_trained,
                   final_train_mse=model.final_train_mse)
    else:
        raise TypeError(f"cannot serialize reducer kind {model.kind!r}")
    return doc


def model_from_dict(doc):
    version = doc.get("version")
    if version != SERIALIZATION_VERSION:
        raise ValueError(f"unsupported model document version {version!r}")
    kind = doc.get("kind")
    seed = int(doc.get("seed", 0))
    if kind == "pca":
        model = PcaModel(
            components=np.asarray(doc["components"], dtype=np.float64),
            mean=np.asarray(doc["mean"], dtype=np.float64),
            explained_variance_ratio=np.asarray(
                doc["explained_variance_ratio"], dtype=np.float64),
            seed=seed)
    elif kind == "kpca-rbf":
        model = KpcaModel(
            training_rows=np.asarray(doc["training_rows"], dtype=np.float64),
            gamma=float(doc["gamma"]),
            alphas=np.asarray(doc["alphas"], dtype=np.float64),
            kernel_row_means=np.asarray(doc["kernel_row_means"],
                                        dtype=np.float64),
            kernel_grand_mean=float(doc["kernel_grand_mean"]),
            seed=seed)
    elif kind == "autoencoder":
        model = AutoencoderModel(
            encoder_layers=_layers_in(doc["encoder_layers"]),
            decoder_layers=_layers_in(doc["decoder_layers"]),
            hidden_width=int(doc["hidden_width"]),
            epochs_trained=int(doc["epochs_trained"]),
            final_train_mse=float(doc["final_train_mse"]),
            seed=seed)
    else:
        raise ValueError(f"unknown reducer kind {kind!r} in document")
    if (model.input_dims != doc["input_dims"]
            or model.reduced_dims != doc["reduced_dims"]):
        raise ValueError("model document dims do not match its arrays")
    return model


def save_model(model, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(model_to_dict(model), fh)
        fh.write("\n")


def load_model(path):
    with open(path, encoding="utf-8") as fh:
        return model_from_dict(json.load(fh))
