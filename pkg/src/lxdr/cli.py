"""Command-line interface.

Subcommands: fit, explain, eval, whatif, serve. stdout carries only the
requested artifact (JSON or CSV); diagnostics go to stderr. Exit codes:
0 success, 1 runtime failure, 2 usage error. The default seed (42) can be
overridden globally with the LXDR_SEED environment variable; an explicit
--seed always wins.
"""

import argparse
import json
import os
import sys

import numpy as np

from . import attribution, datasets, experiments, reducers, surrogate
from .metrics import weights_difference
from .neighborhood import NgConfig


class UsageError(Exception):
    """Bad configuration that argparse could not catch itself."""


def _resolve_seed(args):
    if args.seed is not None:
        return args.seed
    try:
        return int(os.environ.get("LXDR_SEED", "42"))
    except ValueError:
        raise UsageError(f"LXDR_SEED must be an integer, got "
                         f"{os.environ['LXDR_SEED']!r}")


def _load_data(args):
    if args.data in datasets.BUNDLED:
        return datasets.load_bundled(args.data)
    return datasets.load_csv(args.data, has_header=not args.no_header,
                             target_column=args.target_column)


def _emit(args, text):
    if args.output in (None, "-"):
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
            if not text.endswith("\n"):
                fh.write("\n")


def _parse_instance(spec, data):
    """Either a row index into the dataset or an inline comma-separated
    vector of exactly the right length."""
    s = spec.strip()
    if "," not in s:
        try:
            idx = int(s)
        except ValueError:
            raise UsageError(f"--instance must be a row index or a "
                             f"comma-separated vector, got {spec!r}")
        if not 0 <= idx < data.rows:
            raise ValueError(f"instance index {idx} out of range for "
                             f"{data.rows} rows")
        return data.features[idx]
    try:
        vec = np.array([float(c) for c in s.split(",")])
    except ValueError:
        raise UsageError(f"could not parse inline instance {spec!r}")
    if vec.shape[0] != data.cols:
        raise ValueError(f"inline instance has {vec.shape[0]} values, data "
                         f"has {data.cols} features")
    return vec


def cmd_fit(args):
    seed = _resolve_seed(args)
    data = _load_data(args)
    if args.components is not None:
        if args.components < 1:
            raise UsageError(f"--components must be >= 1, got "
                             f"{args.components}")
        n_reduced = args.components
    else:
        if not 0.0 < args.variance <= 1.0:
            raise UsageError(f"--variance must be in (0, 1], got "
                             f"{args.variance}")
        # the variance rule is defined through the principal components, so
        # kpca/ae inherit the dimensionality of a pre-pass on the same data
        n_reduced = reducers.components_for_variance(data.features,
                                                     args.variance)

    if args.method == "pca":
        model = reducers.pca_fit(data.features, n_reduced)
    elif args.method == "kpca":
        model = reducers.kpca_fit(data.features, n_reduced, gamma=args.gamma)
    else:
        model = reducers.autoencoder_fit(data.features, n_reduced,
                                         seed=seed, epochs=args.epochs)
    _emit(args, json.dumps(reducers.model_to_dict(model)))
    return 0


def cmd_explain(args):
    seed = _resolve_seed(args)
    model = reducers.load_model(args.model)
    data = _load_data(args)
    x = _parse_instance(args.instance, data)

    config = NgConfig(generator="knn" if args.ng == "knn" else "perturbation",
                      k=args.k, seed=seed,
                      perturbation_scale=args.perturbation_scale)
    e = surrogate.lxdr_explain(model, data.features, x, config,
                               auto_alpha=args.auto_alpha,
                               alpha_default=args.alpha)
    doc = surrogate.explanation_to_dict(e)
    if args.reference_pca:
        if model.kind != "pca":
            raise UsageError("--reference-pca requires a pca model")
        doc["weights_difference"] = weights_difference(
            e, model.components).value
    _emit(args, json.dumps(doc))
    return 0


def cmd_eval(args):
    seed = _resolve_seed(args)
    if args.suite == "tables":
        report = experiments.run_table_experiment(
            datasets=args.datasets.split(",") if args.datasets else None,
            dr_methods=args.methods.split(",") if args.methods else None,
            seed=seed, instance_limit=args.instance_limit)
    else:
        features = (tuple(int(f) for f in args.features.split(","))
                    if args.features else None)
        report = experiments.run_scaling_experiment(
            seed=seed, features=features, n_queries=args.queries)
    _emit(args, report.to_csv(include_timing=not args.no_timing))
    return 0


def cmd_whatif(args):
    model = reducers.load_model(args.model)
    data = _load_data(args)
    x = _parse_instance(args.instance, data)
    if not 0 <= args.feature < data.cols:
        raise ValueError(f"feature index {args.feature} out of range for "
                         f"{data.cols} features")
    if args.to_mean:
        new_value = float(data.features[:, args.feature].mean())
    else:
        new_value = args.value

    predictor = None
    if args.predictor:
        with open(args.predictor, encoding="utf-8") as fh:
            predictor = attribution.predictor_from_dict(json.load(fh))
    res = attribution.whatif_tweak(model, predictor, x, args.feature,
                                   new_value)
    _emit(args, json.dumps(res.to_dict()))
    return 0


def cmd_serve(args):
    import uvicorn

    from .service import create_app
    uvicorn.run(create_app(), host=args.host, port=args.port,
                log_level="warning")
    return 0


def _add_data_opts(p):
    p.add_argument("--data", required=True,
                   help="bundled dataset name (iris/diabetes/digits) or a "
                        "CSV path")
    p.add_argument("--no-header", action="store_true",
                   help="CSV file has no header line")
    p.add_argument("--target-column", default=None,
                   help="CSV column (name or index) to treat as the target")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="lxdr",
        description="Local linear surrogate explanations of "
                    "dimensionality-reduction models.")
    parser.add_argument("--seed", type=int, default=None,
                        help="global seed (default 42, or LXDR_SEED)")
    parser.add_argument("--output", default=None,
                        help="artifact path ('-' or omit for stdout)")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("fit", help="fit a reducer and write its JSON form")
    _add_data_opts(p)
    p.add_argument("--method", required=True, choices=("pca", "kpca", "ae"))
    grp = p.add_mutually_exclusive_group(required=True)
    grp.add_argument("--components", type=int)
    grp.add_argument("--variance", type=float,
                     help="keep the smallest dimensionality reaching this "
                          "cumulative explained-variance ratio")
    p.add_argument("--gamma", type=float, default=None,
                   help="RBF width for kpca (default 1/n_features)")
    p.add_argument("--epochs", type=int, default=200,
                   help="training epochs for ae")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("explain",
                       help="fit a local surrogate around one instance")
    _add_data_opts(p)
    p.add_argument("--model", required=True, help="model JSON path")
    p.add_argument("--instance", required=True,
                   help="row index or inline comma-separated vector")
    p.add_argument("--ng", choices=("knn", "perturb"), default="knn")
    p.add_argument("--k", type=int, default=None,
                   help="neighborhood size (default 10%% of rows)")
    p.add_argument("--auto-alpha", action="store_true")
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--perturbation-scale", type=float, default=1.0)
    p.add_argument("--reference-pca", action="store_true",
                   help="also report the slope distance to the model's own "
                        "components (pca only)")
    p.set_defaults(func=cmd_explain)

    p = sub.add_parser("eval", help="run a benchmark suite, emit CSV")
    p.add_argument("--suite", required=True, choices=("tables", "scaling"))
    p.add_argument("--datasets", default=None,
                   help="comma list (tables suite)")
    p.add_argument("--methods", default=None,
                   help="comma list of pca,kpca,ae (tables suite)")
    p.add_argument("--instance-limit", type=int, default=None,
                   help="cap instances per dataset (tables suite)")
    p.add_argument("--features", default=None,
                   help="comma list of synthetic feature counts "
                        "(scaling suite)")
    p.add_argument("--queries", type=int, default=20,
                   help="queries per synthetic dataset (scaling suite)")
    p.add_argument("--no-timing", action="store_true",
                   help="zero the timing column for byte-reproducible CSV")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("whatif",
                       help="overwrite one feature and re-project")
    _add_data_opts(p)
    p.add_argument("--model", required=True)
    p.add_argument("--instance", required=True)
    p.add_argument("--feature", type=int, required=True)
    grp = p.add_mutually_exclusive_group(required=True)
    grp.add_argument("--value", type=float)
    grp.add_argument("--to-mean", action="store_true",
                     help="set the feature to its mean over --data")
    p.add_argument("--predictor", default=None,
                   help="optional ridge predictor JSON to report "
                        "predictions")
    p.set_defaults(func=cmd_whatif)

    p = sub.add_parser("serve", help="run the HTTP explanation service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8787)
    p.set_defaults(func=cmd_serve)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:            # runtime failure contract
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
