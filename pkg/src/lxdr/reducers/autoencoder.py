"""A small symmetric autoencoder trained with hand-rolled backprop.

Architecture: n -> h -> n_r -> h -> n with h = max(n_r, ceil((n + n_r)/2)).
Hidden layers use tanh; the code and output layers are linear. Training is
plain minibatch SGD with adaptive moment estimates (step 1e-3,
beta1/beta2 = 0.9/0.999) on the mean squared reconstruction error. All
randomness (init, shuffling) flows from one seeded generator, so the same
data + seed reproduces bitwise-identical weights.
"""

import math
from dataclasses import dataclass

import numpy as np

from .pca import _check_matrix, _check_vector

_LR = 1e-3
_BETA1, _BETA2 = 0.9, 0.999
_EPS = 1e-8
_BATCH = 32


@dataclass
class AutoencoderModel:
    # each layer is (weights, bias, activation), activation in {tanh, linear}
    encoder_layers: list
    decoder_layers: list
    hidden_width: int
    epochs_trained: int
    final_train_mse: float
    seed: int

    kind = "autoencoder"

    @property
    def input_dims(self):
        return self.encoder_layers[0][0].shape[0]

    @property
    def reduced_dims(self):
        return self.encoder_layers[-1][0].shape[1]


def _apply_layers(layers, H):
    for W, b, act in layers:
        H = H @ W + b
        if act == "tanh":
            H = np.tanh(H)
    return H


def ae_encode(model, B):
    return _apply_layers(model.encoder_layers, np.asarray(B, dtype=np.float64))


def ae_decode(model, B_reduced):
    return _apply_layers(model.decoder_layers,
                         np.asarray(B_reduced, dtype=np.float64))


def ae_transform(model, x):
    x = _check_vector(x, model.input_dims)
    return ae_encode(model, x[None, :])[0]


def _xavier(rng, fan_in, fan_out):
    limit = math.sqrt(6.0 / (fan_in + fan_out))
    return rng.uniform(-limit, limit, size=(fan_in, fan_out))


def autoencoder_fit(data, n_components, seed=0, epochs=200):
    """Train the autoencoder; deterministic for fixed (data, params, seed)."""
    X = _check_matrix(data)
    m, n = X.shape
    if m < 1:
        raise ValueError("cannot train on an empty data matrix")
    if not 1 <= n_components <= n:
        raise ValueError(f"n_components must be in [1, {n}], "
                         f"got {n_components}")
    if epochs < 1:
        raise ValueError(f"epochs must be >= 1, got {epochs}")

    h = max(n_components, (n + n_components + 1) // 2)
    rng = np.random.default_rng(seed)

    # W1: n->h, W2: h->n_r (encoder); W3: n_r->h, W4: h->n (decoder)
    params = [_xavier(rng, n, h), np.zeros(h),
              _xavier(rng, h, n_components), np.zeros(n_components),
              _xavier(rng, n_components, h), np.zeros(h),
              _xavier(rng, h, n), np.zeros(n)]
    mom = [np.zeros_like(p) for p in params]
    vel = [np.zeros_like(p) for p in params]
    t = 0

    final_mse = math.inf
    for epoch in range(epochs):
        order = rng.permutation(m)
        sq_sum = 0.0
        for start in range(0, m, _BATCH):
            batch = X[order[start:start + _BATCH]]
            B = batch.shape[0]
            W1, b1, W2, b2, W3, b3, W4, b4 = params

            H1 = np.tanh(batch @ W1 + b1)
            Z = H1 @ W2 + b2                    # code (linear)
            H2 = np.tanh(Z @ W3 + b3)
            out = H2 @ W4 + b4
            err = out - batch
            sq_sum += float(np.sum(err * err))

            # backprop of L = sum(err^2) / (B*n)
            d_out = err * (2.0 / (B * n))
            g4 = H2.T @ d_out
            gb4 = d_out.sum(axis=0)
            d_h2 = (d_out @ W4.T) * (1.0 - H2 * H2)
            g3 = Z.T @ d_h2
            gb3 = d_h2.sum(axis=0)
            d_z = d_h2 @ W3.T
            g2 = H1.T @ d_z
            gb2 = d_z.sum(axis=0)
            d_h1 = (d_z @ W2.T) * (1.0 - H1 * H1)
            g1 = batch.T @ d_h1
            gb1 = d_h1.sum(axis=0)

            t += 1
            c1 = 1.0 - _BETA1 ** t
            c2 = 1.0 - _BETA2 ** t
            grads = [g1, gb1, g2, gb2, g3, gb3, g4, gb4]
            for p, g, mo, ve in zip(params, grads, mom, vel):
                mo *= _BETA1
                mo += (1.0 - _BETA1) * g
                ve *= _BETA2
                ve += (1.0 - _BETA2) * (g * g)
                p -= _LR * (mo / c1) / (np.sqrt(ve / c2) + _EPS)

        final_mse = sq_sum / (m * n)
        if not math.isfinite(final_mse):
            raise FloatingPointError(
                f"training diverged at epoch {epoch + 1}: loss is not finite")

    W1, b1, W2, b2, W3, b3, W4, b4 = params
    return AutoencoderModel(
        encoder_layers=[(W1, b1, "tanh"), (W2, b2, "linear")],
        decoder_layers=[(W3, b3, "tanh"), (W4, b4, "linear")],
        hidden_width=h, epochs_trained=epochs,
        final_train_mse=final_mse, seed=seed)
