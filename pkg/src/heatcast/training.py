"""Adam optimizer and the validation-selected training loop."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .dataset import Example
from .network import (Model, ModelConfig, NetworkError, backward, forward_batch,
                      init_model)
from .series import Scaler

# inference chunk size; keeps conv im2col buffers modest
_EVAL_CHUNK = 32


@dataclass
class AdamState:
    """Per-parameter first/second moment accumulators and the step counter."""

    m: dict[str, np.ndarray]
    v: dict[str, np.ndarray]
    t: int = 0

    @staticmethod
    def for_params(params: Mapping[str, np.ndarray]) -> "AdamState":
        return AdamState(m={k: np.zeros_like(p) for k, p in params.items()},
                         v={k: np.zeros_like(p) for k, p in params.items()})


def adam_step(params: Mapping[str, np.ndarray], grads: Mapping[str, np.ndarray],
              state: AdamState, config: ModelConfig) -> AdamState:
    """Standard bias-corrected Adam update, applied in place to `params`."""
    state.t += 1
    b1, b2 = config.adam_beta1, config.adam_beta2
    bc1 = 1.0 - b1 ** state.t
    bc2 = 1.0 - b2 ** state.t
    for name, p in params.items():
        g = grads[name]
        if g.shape != p.shape:
            raise NetworkError(f"gradient shape {g.shape} != parameter shape {p.shape} for {name}")
        m = state.m[name]
        v = state.v[name]
        m *= b1
        m += (1.0 - b1) * g
        v *= b2
        v += (1.0 - b2) * (g * g)
        p -= config.learning_rate * (m / bc1) / (np.sqrt(v / bc2) + config.adam_eps)
    return state


@dataclass(frozen=True)
class EpochRecord:
    epoch: int
    train_mse: float
    val_mse: float


@dataclass
class TrainResult:
    model: Model
    log: list[EpochRecord]
    best_epoch: int
    best_val_mse: float


def stack_examples(examples: Sequence[Example]) -> tuple[np.ndarray, np.ndarray]:
    inputs = np.stack([ex.input.channels for ex in examples])
    targets = np.stack([ex.target for ex in examples])
    return inputs, targets


def dataset_mse(model: Model, inputs: np.ndarray, targets: np.ndarray) -> float:
    """Inference-mode MSE over a whole dataset, evaluated in fixed-order chunks."""
    total = 0.0
    for lo in range(0, inputs.shape[0], _EVAL_CHUNK):
        chunk = slice(lo, lo + _EVAL_CHUNK)
        pred = forward_batch(model, inputs[chunk], training=False)
        diff = pred - targets[chunk]
        total += float(np.sum(diff * diff))
    return total / targets.size


def train(config: ModelConfig, train_examples: Sequence[Example],
          val_examples: Sequence[Example], seed: int,
          scalers: Mapping[str, Scaler] | None = None) -> TrainResult:
    """Train with shuffled mini-batches and keep the best-validation snapshot.

    Each epoch shuffles the training set, steps Adam over batches of
    config.batch_size (the last short batch is kept), then records
    inference-mode train and validation MSE.  Training stops at max_epochs or
    after `patience` epochs without a validation improvement; the returned
    model carries the parameters of the best validation epoch.
    """
    if not train_examples or not val_examples:
        raise NetworkError("training and validation sets must be non-empty")

    rng = np.random.default_rng(seed)
    model = init_model(config, rng, scalers)
    params = model.parameters()
    state = AdamState.for_params(params)

    x_train, y_train = stack_examples(train_examples)
    x_val, y_val = stack_examples(val_examples)

    log: list[EpochRecord] = []
    best_val = np.inf
    best_epoch = 0
    best_params = {k: p.copy() for k, p in params.items()}
    epochs_since_best = 0

    for epoch in range(1, config.max_epochs + 1):
        order = rng.permutation(len(train_examples))
        for lo in range(0, len(order), config.batch_size):
            batch = order[lo:lo + config.batch_size]
            _, cache = forward_batch(model, x_train[batch], training=True, rng=rng)
            grads = backward(model, cache, y_train[batch])
            adam_step(params, grads, state, config)

        train_mse = dataset_mse(model, x_train, y_train)
        val_mse = dataset_mse(model, x_val, y_val)
        log.append(EpochRecord(epoch, train_mse, val_mse))

        if val_mse < best_val:
            best_val = val_mse
            best_epoch = epoch
            best_params = {k: p.copy() for k, p in params.items()}
            epochs_since_best = 0
        else:
            epochs_since_best += 1
            if epochs_since_best >= config.patience:
                break

    model.set_parameters(best_params)
    return TrainResult(model=model, log=log, best_epoch=best_epoch, best_val_mse=float(best_val))


def write_training_log(log: Sequence[EpochRecord], stream) -> None:
    """CSV log: epoch,train_mse,val_mse."""
    stream.write("epoch,train_mse,val_mse\n")
    for rec in log:
        stream.write(f"{rec.epoch},{rec.train_mse!r},{rec.val_mse!r}\n")
