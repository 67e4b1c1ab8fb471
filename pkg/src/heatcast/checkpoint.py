"""Versioned binary model checkpoints.

Layout: an 8-byte magic, a little-endian uint32 header length, a JSON header
(format version, model config, per-layer shape list, scaler bounds, training
metadata), then the parameter arrays concatenated as little-endian float64
in exactly the header's layer order.  Serialization is canonical (sorted
keys, fixed separators) so identical models produce identical bytes.
"""

from __future__ import annotations

import json
import struct
from typing import Any, Mapping

import numpy as np

from .network import Model, ModelConfig, NetworkError
from .series import Scaler

MAGIC = b"HEATCKPT"
FORMAT_VERSION = 1


class CheckpointError(ValueError):
    """Corrupt or inconsistent checkpoint file."""


class CheckpointVersionError(CheckpointError):
    """Checkpoint written by an unsupported format version."""


def _config_to_dict(config: ModelConfig) -> dict[str, Any]:
    return {
        "conv_widths": list(config.conv_widths),
        "kernel_size": config.kernel_size,
        "dense_widths": list(config.dense_widths),
        "output_size": config.output_size,
        "input_channels": config.input_channels,
        "input_rows": config.input_rows,
        "input_cols": config.input_cols,
        "leaky_slope": config.leaky_slope,
        "dropout_rate": config.dropout_rate,
        "learning_rate": config.learning_rate,
        "adam_beta1": config.adam_beta1,
        "adam_beta2": config.adam_beta2,
        "adam_eps": config.adam_eps,
        "batch_size": config.batch_size,
        "max_epochs": config.max_epochs,
        "patience": config.patience,
    }


def _config_from_dict(data: Mapping[str, Any]) -> ModelConfig:
    fields = dict(data)
    fields["conv_widths"] = tuple(fields["conv_widths"])
    fields["dense_widths"] = tuple(fields["dense_widths"])
    try:
        return ModelConfig(**fields)
    except (TypeError, NetworkError) as exc:
        raise CheckpointError(f"invalid model config in checkpoint: {exc}") from None


def save_model(model: Model, path, metadata: Mapping[str, Any] | None = None) -> None:
    params = model.parameters()
    header = {
        "format_version": FORMAT_VERSION,
        "config": _config_to_dict(model.config),
        "layers": [{"name": name, "shape": list(p.shape)} for name, p in params.items()],
        "scalers": {name: {"min": s.min, "max": s.max} for name, s in sorted(model.scalers.items())},
        "metadata": dict(metadata or {}),
    }
    blob = json.dumps(header, sort_keys=True, separators=(",", ":")).encode("utf-8")
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(struct.pack("<I", len(blob)))
        fh.write(blob)
        for p in params.values():
            fh.write(np.ascontiguousarray(p, dtype="<f8").tobytes())


def load_model(path) -> tuple[Model, dict[str, Any]]:
    """Read a checkpoint back into a Model; returns (model, metadata)."""
    with open(path, "rb") as fh:
        raw = fh.read()
    if len(raw) < len(MAGIC) + 4 or raw[:len(MAGIC)] != MAGIC:
        raise CheckpointError("corrupt checkpoint: bad magic")
    (header_len,) = struct.unpack_from("<I", raw, len(MAGIC))
    header_end = len(MAGIC) + 4 + header_len
    if len(raw) < header_end:
        raise CheckpointError("corrupt checkpoint: truncated header")
    try:
        header = json.loads(raw[len(MAGIC) + 4:header_end].decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise CheckpointError(f"corrupt checkpoint: unreadable header ({exc})") from None

    version = header.get("format_version")
    if version != FORMAT_VERSION:
        raise CheckpointVersionError(
            f"unsupported checkpoint format version {version!r}, expected {FORMAT_VERSION}")

    config = _config_from_dict(header["config"])
    arrays: dict[str, np.ndarray] = {}
    offset = header_end
    for layer in header["layers"]:
        shape = tuple(layer["shape"])
        count = int(np.prod(shape, dtype=np.int64)) if shape else 1
        nbytes = count * 8
        if offset + nbytes > len(raw):
            raise CheckpointError(f"corrupt checkpoint: truncated data for layer {layer['name']}")
        arrays[layer["name"]] = np.frombuffer(
            raw, dtype="<f8", count=count, offset=offset).astype(np.float64).reshape(shape)
        offset += nbytes
    if offset != len(raw):
        raise CheckpointError("corrupt checkpoint: trailing bytes after parameter arrays")

    scalers = {name: Scaler(s["min"], s["max"]) for name, s in header.get("scalers", {}).items()}
    try:
        model = Model(
            config,
            conv_kernels=[arrays[f"conv{i}.kernels"] for i in range(3)],
            conv_biases=[arrays[f"conv{i}.bias"] for i in range(3)],
            dense_weights=[arrays[f"dense{i}.weights"] for i in range(3)],
            dense_biases=[arrays[f"dense{i}.bias"] for i in range(3)],
            scalers=scalers,
        )
    except KeyError as exc:
        raise CheckpointError(f"corrupt checkpoint: missing layer {exc}") from None
    except NetworkError as exc:
        raise CheckpointError(f"inconsistent checkpoint shapes: {exc}") from None
    return model, header.get("metadata", {})
