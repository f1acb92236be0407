"""HTTP API for the explorer UI: datasets, reducers, explanations, what-if.

State lives in one in-memory registry with counter-based ids, so replaying
the same request sequence against a fresh server reproduces identical
bodies (fits are seeded). Restarting the server intentionally forgets all
sessions. Error responses always carry {"error": message, "where": field}.
"""

import json
import os
import threading
from pathlib import Path

import numpy as np
from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .attribution import ridge_predictor_fit, whatif_tweak
from .datasets import BUNDLED, Dataset, _parse_csv, load_bundled
from .metrics import instance_difference
from .neighborhood import NgConfig
from .reducers import (autoencoder_fit, components_for_variance,
                       dr_transform, kpca_fit, pca_fit)
from .surrogate import explanation_to_dict, lxdr_explain


class ServiceError(Exception):
    def __init__(self, status, message, where):
        super().__init__(message)
        self.status = status
        self.where = where


class SessionRegistry:
    """Datasets and fitted models by id; mutations are serialized."""

    def __init__(self):
        self._lock = threading.Lock()
        self._datasets = {}
        self._models = {}
        self._counter = 0

    def _next(self, prefix):
        with self._lock:
            self._counter += 1
            return f"{prefix}{self._counter}"

    def add_dataset(self, dataset):
        did = self._next("d")
        self._datasets[did] = dataset
        return did

    def add_model(self, entry):
        mid = self._next("m")
        self._models[mid] = entry
        return mid

    def dataset(self, did):
        try:
            return self._datasets[did]
        except KeyError:
            raise ServiceError(404, f"unknown dataset id {did!r}",
                               "dataset_id")

    def model(self, mid):
        try:
            return self._models[mid]
        except KeyError:
            raise ServiceError(404, f"unknown model id {mid!r}", "model_id")


async def _json_body(request):
    raw = await request.body()
    try:
        body = json.loads(raw or b"{}")
    except json.JSONDecodeError as exc:
        raise ServiceError(400, f"invalid JSON body: {exc}", "body")
    if not isinstance(body, dict):
        raise ServiceError(400, "JSON body must be an object", "body")
    return body


def _resolve_instance(body, dataset, input_dims):
    if body.get("instance_index") is not None:
        idx = body["instance_index"]
        if not isinstance(idx, int):
            raise ServiceError(422, "instance_index must be an integer",
                               "instance_index")
        if dataset is None or not 0 <= idx < dataset.rows:
            rows = dataset.rows if dataset is not None else 0
            raise ServiceError(422, f"instance_index {idx} out of range for "
                                    f"{rows} rows", "instance_index")
        return dataset.features[idx], idx
    if body.get("instance") is not None:
        try:
            vec = np.asarray(body["instance"], dtype=np.float64)
        except (TypeError, ValueError):
            raise ServiceError(422, "instance must be a numeric vector",
                               "instance")
        if vec.shape != (input_dims,):
            raise ServiceError(422, f"instance has shape {vec.shape}, model "
                                    f"expects ({input_dims},)", "instance")
        if not np.all(np.isfinite(vec)):
            raise ServiceError(422, "instance contains NaN or Inf",
                               "instance")
        return vec, None
    raise ServiceError(422, "provide instance_index or instance", "instance")


def _frontend_dir():
    override = os.environ.get("LXDR_FRONTEND_DIST")
    if override:
        return Path(override)
    return Path(__file__).resolve().parents[2] / "frontend" / "dist"


def create_app():
    app = FastAPI(title="lxdr service", docs_url=None, redoc_url=None)
    app.add_middleware(CORSMiddleware, allow_origins=["*"],
                       allow_methods=["*"], allow_headers=["*"])
    registry = SessionRegistry()

    @app.exception_handler(ServiceError)
    async def _service_error(request, exc):
        return JSONResponse(status_code=exc.status,
                            content={"error": str(exc), "where": exc.where})

    @app.exception_handler(RequestValidationError)
    async def _validation_error(request, exc):
        return JSONResponse(status_code=422,
                            content={"error": str(exc), "where": "body"})

    @app.exception_handler(ValueError)
    async def _value_error(request, exc):
        return JSONResponse(status_code=422,
                            content={"error": str(exc), "where": "body"})

    @app.get("/api/health")
    async def health():
        return {"status": "ok"}

    @app.post("/api/datasets")
    async def post_dataset(request: Request):
        ctype = request.headers.get("content-type", "")
        if ctype.startswith("text/csv"):
            text = (await request.body()).decode("utf-8")
            lines = text.splitlines()
            header = [c.strip() for c in lines[0].split(",")] if lines else []
            try:
                feats, names, target = _parse_csv(
                    text, "upload", has_header=True,
                    target_column="target" if "target" in header else None)
            except ValueError as exc:
                raise ServiceError(400, str(exc), "csv")
            dataset = Dataset("upload", feats, names or [], target)
        else:
            body = await _json_body(request)
            if "bundled" in body:
                name = body["bundled"]
                if name not in BUNDLED:
                    raise ServiceError(400, f"unknown bundled dataset "
                                            f"{name!r}", "bundled")
                dataset = load_bundled(name)
            elif "csv" in body:
                try:
                    feats, names, target = _parse_csv(
                        body["csv"], "upload",
                        has_header=body.get("has_header", True),
                        target_column=body.get("target_column"))
                except ValueError as exc:
                    raise ServiceError(400, str(exc), "csv")
                dataset = Dataset(body.get("name", "upload"), feats,
                                  names or [], target)
            else:
                raise ServiceError(400, "provide 'bundled' or 'csv'", "body")
        did = registry.add_dataset(dataset)
        return {"dataset_id": did, "rows": dataset.rows,
                "cols": dataset.cols, "feature_names": dataset.feature_names,
                "target": (dataset.target.tolist()
                           if dataset.target is not None else None)}

    @app.post("/api/dr")
    async def post_dr(request: Request):
        body = await _json_body(request)
        did = body.get("dataset_id")
        dataset = registry.dataset(did)
        X = dataset.features
        seed = int(body.get("seed", 42))
        params = body.get("params") or {}

        method = body.get("method")
        if method not in ("pca", "kpca", "kpca-rbf", "ae", "autoencoder"):
            raise ServiceError(422, f"unknown model kind {method!r}",
                               "method")

        if body.get("n_components") is not None:
            n_reduced = body["n_components"]
            if not isinstance(n_reduced, int) or n_reduced < 1:
                raise ServiceError(422, "n_components must be a positive "
                                        "integer", "n_components")
        elif body.get("variance") is not None:
            v = body["variance"]
            if not 0.0 < v <= 1.0:
                raise ServiceError(422, f"variance must be in (0, 1], "
                                        f"got {v}", "variance")
            n_reduced = components_for_variance(X, v)
        else:
            raise ServiceError(422, "provide n_components or variance",
                               "n_components")

        try:
            if method == "pca":
                model = pca_fit(X, n_reduced)
            elif method in ("kpca", "kpca-rbf"):
                model = kpca_fit(X, n_reduced, gamma=params.get("gamma"))
            else:
                model = autoencoder_fit(
                    X, n_reduced, seed=seed,
                    epochs=int(params.get("epochs", 200)))
        except ValueError as exc:
            raise ServiceError(422, str(exc), "params")

        embedding = dr_transform(model, X)
        entry = {"model": model, "dataset_id": did, "dataset": dataset,
                 "embedding": embedding, "predictor": None}
        if body.get("fit_predictor"):
            if dataset.target is None:
                raise ServiceError(422, "dataset has no target to fit a "
                                        "predictor on", "fit_predictor")
            entry["predictor"] = ridge_predictor_fit(
                embedding, dataset.target,
                alpha=float(body.get("predictor_alpha", 1.0)))
        mid = registry.add_model(entry)
        return {"model_id": mid, "n_reduced": model.reduced_dims,
                "embedding": embedding.tolist(),
                "has_predictor": entry["predictor"] is not None}

    @app.post("/api/explain")
    async def post_explain(request: Request):
        body = await _json_body(request)
        entry = registry.model(body.get("model_id"))
        model, dataset = entry["model"], entry["dataset"]
        x, idx = _resolve_instance(body, dataset, model.input_dims)

        ng = body.get("ng", "knn")
        if ng not in ("knn", "perturbation", "perturb"):
            raise ServiceError(422, f"unknown neighborhood generator "
                                    f"{ng!r}", "ng")
        ng = "perturbation" if ng.startswith("perturb") else "knn"
        k = body.get("k")
        if k is not None and (not isinstance(k, int) or k < 1):
            raise ServiceError(422, "k must be a positive integer", "k")
        if ng == "knn" and k is not None and k > dataset.rows:
            raise ServiceError(422, f"k={k} exceeds the dataset's "
                                    f"{dataset.rows} rows", "k")

        config = NgConfig(generator=ng, k=k, seed=int(body.get("seed", 42)),
                          perturbation_scale=float(
                              body.get("perturbation_scale", 1.0)))
        e = lxdr_explain(model, dataset.features, x, config,
                         auto_alpha=bool(body.get("auto_alpha", True)),
                         alpha_default=float(body.get("alpha", 1.0)))
        return {"model_id": body["model_id"], "instance_index": idx,
                "instance": x.tolist(),
                "explanation": explanation_to_dict(e),
                "instance_difference": instance_difference(model, e,
                                                           x).value}

    @app.post("/api/whatif")
    async def post_whatif(request: Request):
        body = await _json_body(request)
        entry = registry.model(body.get("model_id"))
        model, dataset = entry["model"], entry["dataset"]
        x, _ = _resolve_instance(body, dataset, model.input_dims)

        feature = body.get("feature")
        if not isinstance(feature, int) or not 0 <= feature < model.input_dims:
            raise ServiceError(422, f"feature must be an index in "
                                    f"[0, {model.input_dims}), got "
                                    f"{feature!r}", "feature")
        if body.get("to_mean"):
            value = float(dataset.features[:, feature].mean())
        elif body.get("value") is not None:
            value = float(body["value"])
        else:
            raise ServiceError(422, "provide value or to_mean", "value")

        res = whatif_tweak(model, entry["predictor"], x, feature, value)
        out = res.to_dict()
        out["feature"] = feature
        out["value"] = value
        return out

    dist = _frontend_dir()
    if dist.is_dir():
        from fastapi.staticfiles import StaticFiles
        app.mount("/", StaticFiles(directory=str(dist), html=True),
                  name="frontend")
    return app
