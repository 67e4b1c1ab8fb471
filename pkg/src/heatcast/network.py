"""A small convolutional network with exact hand-derived gradients.

Architecture (no pooling anywhere): three same-padded 3x3 convolutions with
ReLU, a flatten, two Leaky-ReLU dense layers with dropout between them, and
a linear output layer sized to the forecast horizon.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .series import Scaler


class NetworkError(ValueError):
    """Shape mismatch or invalid network configuration."""


@dataclass(frozen=True)
class ModelConfig:
    """Architecture and training hyperparameters.

    Convolution widths and kernel size follow the published setup; dense
    widths, dropout rate, Leaky-ReLU slope, and the Adam settings are
    recorded here so experiments stay reproducible.
    """

    conv_widths: tuple[int, int, int] = (32, 64, 128)
    kernel_size: int = 3
    dense_widths: tuple[int, int] = (512, 128)
    output_size: int = 24
    input_channels: int = 5
    input_rows: int = 24
    input_cols: int = 24
    leaky_slope: float = 0.01
    dropout_rate: float = 0.2
    learning_rate: float = 1e-3
    adam_beta1: float = 0.9
    adam_beta2: float = 0.999
    adam_eps: float = 1e-8
    batch_size: int = 7
    max_epochs: int = 100
    patience: int = 20

    def __post_init__(self):
        if len(self.conv_widths) != 3:
            raise NetworkError("exactly three convolution layers are expected")
        if len(self.dense_widths) != 2:
            raise NetworkError("exactly two hidden dense layers are expected")
        if self.kernel_size < 1 or self.kernel_size % 2 == 0:
            raise NetworkError("kernel size must be odd for same padding")
        if not 0.0 <= self.dropout_rate < 1.0:
            raise NetworkError("dropout rate must be in [0, 1)")
        if min(self.conv_widths) < 1 or min(self.dense_widths) < 1 or self.output_size < 1:
            raise NetworkError("layer widths must be positive")
        if self.batch_size < 1 or self.max_epochs < 1 or self.patience < 1:
            raise NetworkError("batch size, max epochs, and patience must be positive")

    @property
    def flatten_width(self) -> int:
        return self.conv_widths[-1] * self.input_rows * self.input_cols

    def stage_names(self) -> tuple[str, ...]:
        """Ordered forward stages; pooling is deliberately absent."""
        stages = []
        for width in self.conv_widths:
            stages += [f"conv{width}", "relu"]
        stages.append("flatten")
        for width in self.dense_widths:
            stages += [f"dense{width}", "leaky_relu"]
        # dropout sits between the last two fully-connected layers only
        stages += ["dropout", f"dense{self.output_size}"]
        return tuple(stages)

    def shape_chain(self) -> tuple:
        """Intermediate activation shapes from input to output."""
        chain = [(self.input_channels, self.input_rows, self.input_cols)]
        for width in self.conv_widths:
            chain.append((width, self.input_rows, self.input_cols))
        chain.append((self.flatten_width,))
        for width in self.dense_widths:
            chain.append((width,))
        chain.append((self.output_size,))
        return tuple(chain)


@dataclass
class Model:
    """Parameter arrays plus the scaler snapshot needed to invert outputs."""

    config: ModelConfig
    conv_kernels: list[np.ndarray]
    conv_biases: list[np.ndarray]
    dense_weights: list[np.ndarray]
    dense_biases: list[np.ndarray]
    scalers: dict[str, Scaler] = field(default_factory=dict)

    def __post_init__(self):
        cfg = self.config
        k = cfg.kernel_size
        in_widths = (cfg.input_channels,) + cfg.conv_widths[:-1]
        for i, (kern, bias) in enumerate(zip(self.conv_kernels, self.conv_biases)):
            expected = (cfg.conv_widths[i], in_widths[i], k, k)
            if kern.shape != expected:
                raise NetworkError(f"conv layer {i}: kernel shape {kern.shape}, expected {expected}")
            if bias.shape != (cfg.conv_widths[i],):
                raise NetworkError(f"conv layer {i}: bias shape {bias.shape}")
        dense_dims = (cfg.flatten_width,) + cfg.dense_widths + (cfg.output_size,)
        for i, (w, b) in enumerate(zip(self.dense_weights, self.dense_biases)):
            expected = (dense_dims[i + 1], dense_dims[i])
            if w.shape != expected:
                raise NetworkError(f"dense layer {i}: weight shape {w.shape}, expected {expected}")
            if b.shape != (dense_dims[i + 1],):
                raise NetworkError(f"dense layer {i}: bias shape {b.shape}")
        if len(self.conv_kernels) != 3 or len(self.dense_weights) != 3:
            raise NetworkError("model needs 3 conv and 3 dense layers")

    def parameters(self) -> dict[str, np.ndarray]:
        """Named parameter arrays in a fixed iteration order."""
        params: dict[str, np.ndarray] = {}
        for i in range(3):
            params[f"conv{i}.kernels"] = self.conv_kernels[i]
            params[f"conv{i}.bias"] = self.conv_biases[i]
        for i in range(3):
            params[f"dense{i}.weights"] = self.dense_weights[i]
            params[f"dense{i}.bias"] = self.dense_biases[i]
        return params

    def set_parameters(self, params: Mapping[str, np.ndarray]) -> None:
        for i in range(3):
            self.conv_kernels[i] = params[f"conv{i}.kernels"].copy()
            self.conv_biases[i] = params[f"conv{i}.bias"].copy()
            self.dense_weights[i] = params[f"dense{i}.weights"].copy()
            self.dense_biases[i] = params[f"dense{i}.bias"].copy()

    def copy(self) -> "Model":
        return Model(self.config,
                     [k.copy() for k in self.conv_kernels],
                     [b.copy() for b in self.conv_biases],
                     [w.copy() for w in self.dense_weights],
                     [b.copy() for b in self.dense_biases],
                     dict(self.scalers))


def _glorot_uniform(rng: np.random.Generator, shape, fan_in, fan_out) -> np.ndarray:
    limit = np.sqrt(6.0 / (fan_in + fan_out))
    return rng.uniform(-limit, limit, size=shape)


def init_model(config: ModelConfig, rng: np.random.Generator,
               scalers: Mapping[str, Scaler] | None = None) -> Model:
    """Glorot-uniform kernels/weights, zero biases."""
    k = config.kernel_size
    in_widths = (config.input_channels,) + config.conv_widths[:-1]
    conv_kernels, conv_biases = [], []
    for out_w, in_w in zip(config.conv_widths, in_widths):
        fan = in_w * k * k, out_w * k * k
        conv_kernels.append(_glorot_uniform(rng, (out_w, in_w, k, k), *fan))
        conv_biases.append(np.zeros(out_w))
    dense_dims = (config.flatten_width,) + config.dense_widths + (config.output_size,)
    dense_weights, dense_biases = [], []
    for d_in, d_out in zip(dense_dims, dense_dims[1:]):
        dense_weights.append(_glorot_uniform(rng, (d_out, d_in), d_in, d_out))
        dense_biases.append(np.zeros(d_out))
    return Model(config, conv_kernels, conv_biases, dense_weights, dense_biases,
                 dict(scalers or {}))


# --- layer primitives (batched internally, per-example wrappers below) ---

def _conv2d_batch(x: np.ndarray, kernels: np.ndarray, biases: np.ndarray):
    """Same-padded stride-1 correlation; returns output and the im2col cache."""
    n, c, height, width = x.shape
    out_ch, in_ch, k, _ = kernels.shape
    if c != in_ch:
        raise NetworkError(f"input has {c} channels, kernels expect {in_ch}")
    pad = k // 2
    xp = np.pad(x, ((0, 0), (0, 0), (pad, pad), (pad, pad)))
    windows = sliding_window_view(xp, (k, k), axis=(2, 3))        # (n,c,H,W,k,k)
    cols = windows.transpose(0, 2, 3, 1, 4, 5).reshape(n * height * width, c * k * k)
    out = cols @ kernels.reshape(out_ch, -1).T + biases
    out = out.reshape(n, height, width, out_ch).transpose(0, 3, 1, 2)
    return out, cols


def conv2d_forward(x: np.ndarray, kernels: np.ndarray, biases: np.ndarray) -> np.ndarray:
    """out[o][r][c] = bias[o] + sum_{i,dr,dc} kernel[o][i][dr][dc] * in_padded[i][r+dr][c+dc]."""
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 3:
        raise NetworkError(f"expected a (channels, rows, cols) input, got shape {x.shape}")
    out, _ = _conv2d_batch(x[None], kernels, biases)
    return out[0]


def _conv2d_input_grad(d_out: np.ndarray, kernels: np.ndarray) -> np.ndarray:
    # Input gradient of a same-padded stride-1 correlation is the same
    # correlation of d_out with spatially flipped, channel-transposed kernels.
    flipped = kernels[:, :, ::-1, ::-1].transpose(1, 0, 2, 3)
    grad, _ = _conv2d_batch(d_out, np.ascontiguousarray(flipped),
                            np.zeros(flipped.shape[0]))
    return grad


def activation(x: np.ndarray, mode: str, slope: float = 0.01) -> np.ndarray:
    """ReLU or LeakyReLU, elementwise."""
    x = np.asarray(x, dtype=np.float64)
    if mode == "relu":
        return np.maximum(x, 0.0)
    if mode == "leaky_relu":
        return np.where(x >= 0.0, x, slope * x)
    raise NetworkError(f"unknown activation mode {mode!r}")


def dense_forward(x: np.ndarray, weights: np.ndarray, bias: np.ndarray) -> np.ndarray:
    """y = W x + b (rows of W are output units)."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape[-1] != weights.shape[1]:
        raise NetworkError(f"input length {x.shape[-1]} != weight columns {weights.shape[1]}")
    return x @ weights.T + bias


def dropout_forward(x: np.ndarray, rate: float, training: bool,
                    rng: np.random.Generator | None = None,
                    mask: np.ndarray | None = None):
    """Inverted dropout: identity at inference, survivors scaled by 1/(1-rate).

    Returns (output, mask); the mask already carries the 1/(1-rate) factor.
    """
    x = np.asarray(x, dtype=np.float64)
    if not 0.0 <= rate < 1.0:
        raise NetworkError("dropout rate must be in [0, 1)")
    if not training or rate == 0.0:
        return x, np.ones_like(x)
    if mask is None:
        if rng is None:
            raise NetworkError("training-mode dropout needs an rng or a fixed mask")
        mask = (rng.random(x.shape) >= rate) / (1.0 - rate)
    return x * mask, mask


def mse_loss(pred: np.ndarray, target: np.ndarray) -> float:
    pred = np.asarray(pred, dtype=np.float64)
    target = np.asarray(target, dtype=np.float64)
    if pred.shape != target.shape:
        raise NetworkError(f"prediction shape {pred.shape} != target shape {target.shape}")
    diff = pred - target
    return float(np.mean(diff * diff))


def forward_batch(model: Model, x: np.ndarray, training: bool = False,
                  rng: np.random.Generator | None = None,
                  dropout_mask: np.ndarray | None = None):
    """Run a (n, channels, s, h) batch through the network.

    Returns the (n, output_size) predictions, plus the cached intermediates
    needed by backward() when training.
    """
    cfg = model.config
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 4 or x.shape[1:] != (cfg.input_channels, cfg.input_rows, cfg.input_cols):
        raise NetworkError(
            f"batch shape {x.shape} does not match input "
            f"({cfg.input_channels}, {cfg.input_rows}, {cfg.input_cols})")

    cache = {"input": x, "conv_cols": [], "conv_pre": []}
    a = x
    for kern, bias in zip(model.conv_kernels, model.conv_biases):
        z, cols = _conv2d_batch(a, kern, bias)
        cache["conv_cols"].append(cols if training else None)
        cache["conv_pre"].append(z if training else None)
        a = activation(z, "relu")
    flat = a.reshape(a.shape[0], -1)

    cache["dense_in"] = []
    cache["dense_pre"] = []
    a = flat
    for i in range(2):
        cache["dense_in"].append(a if training else None)
        z = dense_forward(a, model.dense_weights[i], model.dense_biases[i])
        cache["dense_pre"].append(z if training else None)
        a = activation(z, "leaky_relu", cfg.leaky_slope)
    dropped, mask = dropout_forward(a, cfg.dropout_rate, training, rng, dropout_mask)
    cache["dense_in"].append(dropped if training else None)
    cache["dropout_mask"] = mask if training else None
    out = dense_forward(dropped, model.dense_weights[2], model.dense_biases[2])
    return (out, cache) if training else out


def forward(model: Model, input_tensor, training: bool = False,
            rng: np.random.Generator | None = None,
            dropout_mask: np.ndarray | None = None):
    """Single-example forward pass; accepts an InputTensor or a raw array."""
    x = getattr(input_tensor, "channels", input_tensor)
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 3:
        raise NetworkError(f"expected a 3-d input, got shape {x.shape}")
    mask = None if dropout_mask is None else np.asarray(dropout_mask)[None]
    result = forward_batch(model, x[None], training, rng, mask)
    if training:
        out, cache = result
        return out[0], cache
    return result[0]


def backward(model: Model, cache: dict, target: np.ndarray) -> dict[str, np.ndarray]:
    """Exact gradients of the batch-mean MSE with respect to every parameter.

    The cached dropout mask is treated as a constant.
    """
    if cache.get("dropout_mask") is None:
        raise NetworkError("backward needs a cache from forward(training=True)")
    cfg = model.config
    target = np.asarray(target, dtype=np.float64)
    if target.ndim == 1:
        target = target[None]
    n_batch = cache["input"].shape[0]
    if target.shape != (n_batch, cfg.output_size):
        raise NetworkError(f"target shape {target.shape} != ({n_batch}, {cfg.output_size})")

    pred = dense_forward(cache["dense_in"][2], model.dense_weights[2], model.dense_biases[2])
    grads: dict[str, np.ndarray] = {}

    # d(mean squared error)/d(pred); the mean runs over batch and outputs.
    delta = 2.0 * (pred - target) / (n_batch * cfg.output_size)

    # output dense layer
    grads["dense2.weights"] = delta.T @ cache["dense_in"][2]
    grads["dense2.bias"] = delta.sum(axis=0)
    d_act = delta @ model.dense_weights[2]

    # dropout (mask constant)
    d_act = d_act * cache["dropout_mask"]

    # hidden dense layers, reverse order
    for i in (1, 0):
        d_pre = d_act * np.where(cache["dense_pre"][i] >= 0.0, 1.0, cfg.leaky_slope)
        grads[f"dense{i}.weights"] = d_pre.T @ cache["dense_in"][i]
        grads[f"dense{i}.bias"] = d_pre.sum(axis=0)
        d_act = d_pre @ model.dense_weights[i]

    # unflatten into the last conv activation
    d_conv = d_act.reshape(n_batch, cfg.conv_widths[-1], cfg.input_rows, cfg.input_cols)

    for i in (2, 1, 0):
        kern = model.conv_kernels[i]
        d_pre = d_conv * (cache["conv_pre"][i] > 0.0)
        flat = d_pre.transpose(0, 2, 3, 1).reshape(-1, kern.shape[0])
        grads[f"conv{i}.kernels"] = (flat.T @ cache["conv_cols"][i]).reshape(kern.shape)
        grads[f"conv{i}.bias"] = d_pre.sum(axis=(0, 2, 3))
        if i > 0:
            d_conv = _conv2d_input_grad(d_pre, kern)
    return grads


def predict_window(model: Model, input_tensor) -> np.ndarray:
    """Inference output, inverse-scaled to kW and clamped at zero."""
    scaler = model.scalers.get("consumption")
    if scaler is None:
        raise NetworkError("model has no consumption scaler snapshot")
    out = forward(model, input_tensor, training=False)
    return np.maximum(0.0, scaler.inverse(out))


def downsized_config(**overrides) -> ModelConfig:
    """The small architecture used for gradient checking and toy runs."""
    defaults = dict(conv_widths=(2, 3, 4), dense_widths=(8, 4), output_size=4,
                    input_rows=4, input_cols=4, max_epochs=2000, patience=2000)
    defaults.update(overrides)
    return ModelConfig(**defaults)
