"""The convolutional encoder that maps a 60x60 RGB scene to 3600 tanh values.

Layer table (in order):

    Conv 64   3x3  ReLU       batch-norm
    Conv 128  3x3  ReLU                    dropout 30%
    MaxPool   3x3 (stride 3)
    Conv 256  3x3  ReLU       batch-norm
    Conv 512  3x3  ReLU                    dropout 30%
    Dense 256      LeakyReLU  batch-norm   dropout 30%
    Dense 512      LeakyReLU  batch-norm   dropout 30%
    Dense 1024     LeakyReLU  batch-norm   dropout 30%
    Dense 3600     Tanh                    dropout 30%

Convolutions are stride 1 with 'same' padding so the spatial size is only
reduced by the pool (60 -> 20), making the flatten width 512*20*20.

Dropout placement: hidden rows apply dropout after the activation. The
final row's dropout is applied to its input (the last hidden vector)
instead of after the tanh output — dropout downstream of a bounded output
would cap how well the training targets can ever be fit, while the output
itself must stay deterministic tanh at inference.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

import torch
from torch import nn

from .errors import SpecMismatch

INPUT_SIZE = 60
INPUT_CHANNELS = 3
OUTPUT_LEN = INPUT_SIZE * INPUT_SIZE
POOL_KERNEL = 3
POOL_STRIDE = 3
CONV_PADDING = 1  # 'same' for 3x3 stride-1 kernels


@dataclass(frozen=True)
class LayerSpec:
    kind: str  # "conv" | "pool" | "dense"
    width: int = 0
    activation: str = ""  # "relu" | "leaky_relu" | "tanh"
    batch_norm: bool = False
    dropout: float = 0.0


ENCODER_LAYERS: Tuple[LayerSpec, ...] = (
    LayerSpec("conv", 64, "relu", batch_norm=True),
    LayerSpec("conv", 128, "relu", dropout=0.3),
    LayerSpec("pool"),
    LayerSpec("conv", 256, "relu", batch_norm=True),
    LayerSpec("conv", 512, "relu", dropout=0.3),
    LayerSpec("dense", 256, "leaky_relu", batch_norm=True, dropout=0.3),
    LayerSpec("dense", 512, "leaky_relu", batch_norm=True, dropout=0.3),
    LayerSpec("dense", 1024, "leaky_relu", batch_norm=True, dropout=0.3),
    LayerSpec("dense", 3600, "tanh", dropout=0.3),
)

_ACTIVATIONS = {
    "relu": nn.ReLU,
    "leaky_relu": nn.LeakyReLU,
    "tanh": nn.Tanh,
}


def build_model(layers: Tuple[LayerSpec, ...] = ENCODER_LAYERS) -> nn.Sequential:
    """Construct the encoder; raises SpecMismatch if the output is not 3600-wide."""
    modules = []
    channels = INPUT_CHANNELS
    side = INPUT_SIZE
    flattened = False
    width = 0
    for pos, layer in enumerate(layers):
        is_output = pos == len(layers) - 1
        if layer.kind == "conv":
            modules.append(nn.Conv2d(channels, layer.width, 3, padding=CONV_PADDING))
            channels = layer.width
        elif layer.kind == "pool":
            modules.append(nn.MaxPool2d(POOL_KERNEL, stride=POOL_STRIDE))
            side = side // POOL_STRIDE
            continue
        elif layer.kind == "dense":
            if not flattened:
                modules.append(nn.Flatten())
                width = channels * side * side
                flattened = True
            if is_output and layer.dropout:
                modules.append(nn.Dropout(layer.dropout))
            modules.append(nn.Linear(width, layer.width))
            width = layer.width
        else:
            raise SpecMismatch(f"unknown layer kind {layer.kind!r}")
        if layer.activation:
            modules.append(_ACTIVATIONS[layer.activation]())
        if layer.batch_norm:
            modules.append(nn.BatchNorm2d(channels) if layer.kind == "conv" else nn.BatchNorm1d(width))
        if layer.dropout and not is_output:
            modules.append(nn.Dropout(layer.dropout))

    model = nn.Sequential(*modules)
    model.eval()
    with torch.no_grad():
        probe = model(torch.zeros(1, INPUT_CHANNELS, INPUT_SIZE, INPUT_SIZE))
    if probe.shape != (1, OUTPUT_LEN):
        raise SpecMismatch(f"model output shape {tuple(probe.shape)}, expected (1, {OUTPUT_LEN})")
    return model


def model_metadata() -> dict:
    """Architecture constants recorded alongside every checkpoint."""
    return {
        "input": [INPUT_CHANNELS, INPUT_SIZE, INPUT_SIZE],
        "input_scale": "rgb / 255",
        "conv_padding": "same",
        "conv_stride": 1,
        "pool_kernel": POOL_KERNEL,
        "pool_stride": POOL_STRIDE,
        "final_dropout_placement": "input of the output layer",
        "layers": [
            {
                "kind": l.kind,
                "width": l.width,
                "activation": l.activation,
                "batch_norm": l.batch_norm,
                "dropout": l.dropout,
            }
            for l in ENCODER_LAYERS
        ],
    }
