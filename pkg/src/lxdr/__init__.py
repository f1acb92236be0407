"""Local linear explanations of black-box dimensionality reduction.

Fit a reducer (PCA, RBF kernel PCA, or a small autoencoder — or bring your
own), then ask for a per-query surrogate: a distance-weighted ridge fit per
reduced dimension over a neighborhood of the query. The resulting slope
matrix reads like a component table and supports attribution propagation
and what-if re-projection.
"""

from .backend import BACKEND, available_backends
from .datasets import (Dataset, load_bundled, load_csv, standardize,
                       subsample, train_test_split)
from .reducers import (AutoencoderModel, KpcaModel, PcaModel,
                       autoencoder_fit, components_for_variance,
                       dr_transform, kpca_fit, kpca_transform, load_model,
                       model_from_dict, model_to_dict, pca_fit, pca_inverse,
                       pca_transform, save_model, transform_one)
from .neighborhood import (Neighborhood, NgConfig, build_neighborhood,
                           knn_neighbors, neighbor_weights,
                           perturbation_neighbors)
from .surrogate import (DEFAULT_ALPHA_GRID, Explanation, RidgeFit,
                        auto_alpha_select, explanation_from_dict,
                        explanation_predict, explanation_to_dict,
                        gxdr_explain, lxdr_explain, weighted_ridge)
from .metrics import (MetricResult, euclidean_distance, instance_difference,
                      weights_difference)
from .attribution import (LocalAttribution, RidgePredictor, WhatIfResult,
                          attribution_report, diabetes_regression_case,
                          kpca_outlier_case, local_attribution,
                          predictor_from_dict, predictor_predict,
                          predictor_to_dict, propagate_to_original,
                          ridge_predictor_fit, whatif_tweak)
from .experiments import (ExperimentReport, ReportRow, SyntheticSpec,
                          run_scaling_experiment, run_table_experiment,
                          synthetic_dataset)

__version__ = "0.1.0"
