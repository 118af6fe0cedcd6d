"""Training loop: MSE against +/-1 path targets, Adam, fixed 80/20 split.

Per-epoch train/validation losses are evaluated in inference mode
(dropout off, batch-norm running statistics) so the metrics file measures
the model rather than the regularization noise, and is reproducible given
the seed.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Tuple

import numpy as np
import torch
from torch import nn

from .data import SPLIT_FRACTION, load_split
from .model import build_model, model_metadata

METRICS_HEADER = "epoch,train_loss,val_loss"


@dataclass(frozen=True)
class TrainConfig:
    dataset_dir: str
    scenarios: Tuple[int, ...] = (1, 2, 3, 4, 5)
    epochs: int = 100
    batch_size: int = 32
    learning_rate: float = 1e-3
    seed: int = 0
    split_fraction: float = SPLIT_FRACTION

    def __post_init__(self):
        if self.split_fraction != SPLIT_FRACTION:
            raise ValueError(f"split_fraction is fixed at {SPLIT_FRACTION}")
        if self.epochs < 0:
            raise ValueError("epochs must be >= 0")
        if self.batch_size < 2:
            raise ValueError("batch_size must be >= 2 (batch-norm needs it)")


def _eval_loss(model: nn.Module, inputs: torch.Tensor, targets: torch.Tensor,
               batch_size: int = 64) -> float:
    if len(inputs) == 0:
        return float("nan")
    loss_fn = nn.MSELoss(reduction="sum")
    model.eval()
    total = 0.0
    with torch.no_grad():
        for k in range(0, len(inputs), batch_size):
            out = model(inputs[k:k + batch_size])
            total += loss_fn(out, targets[k:k + batch_size]).item()
    return total / (len(inputs) * targets.shape[1])


def train(config: TrainConfig, checkpoint_path, metrics_path) -> dict:
    """Train on the first 80% of indices per scenario; returns a summary.

    Writes the checkpoint (weights + architecture/config metadata) and a
    CSV metrics log with one `epoch,train_loss,val_loss` row per epoch.
    """
    torch.manual_seed(config.seed)
    train_x, train_y = load_split(config.dataset_dir, config.scenarios, "train")
    val_x, val_y = load_split(config.dataset_dir, config.scenarios, "test")
    train_inputs = torch.from_numpy(train_x)
    train_targets = torch.from_numpy(train_y)
    val_inputs = torch.from_numpy(val_x)
    val_targets = torch.from_numpy(val_y)

    model = build_model()
    optimizer = torch.optim.Adam(model.parameters(), lr=config.learning_rate)
    loss_fn = nn.MSELoss()
    shuffler = torch.Generator().manual_seed(config.seed)

    metrics_path = Path(metrics_path)
    metrics_path.parent.mkdir(parents=True, exist_ok=True)
    lines = [METRICS_HEADER]
    metrics_path.write_text("\n".join(lines) + "\n")

    history = []
    n = len(train_inputs)
    for epoch in range(1, config.epochs + 1):
        model.train()
        perm = torch.randperm(n, generator=shuffler)
        for k in range(0, n, config.batch_size):
            idx = perm[k:k + config.batch_size]
            if len(idx) < 2:
                continue  # batch-norm cannot normalize a single sample
            optimizer.zero_grad()
            loss = loss_fn(model(train_inputs[idx]), train_targets[idx])
            loss.backward()
            optimizer.step()
        train_loss = _eval_loss(model, train_inputs, train_targets)
        val_loss = _eval_loss(model, val_inputs, val_targets)
        history.append((epoch, train_loss, val_loss))
        lines.append(f"{epoch},{train_loss:.6f},{val_loss:.6f}")
        metrics_path.write_text("\n".join(lines) + "\n")

    checkpoint_path = Path(checkpoint_path)
    checkpoint_path.parent.mkdir(parents=True, exist_ok=True)
    torch.save(
        {
            "state_dict": model.state_dict(),
            "model": model_metadata(),
            "config": {
                "dataset_dir": str(config.dataset_dir),
                "scenarios": list(config.scenarios),
                "epochs": config.epochs,
                "batch_size": config.batch_size,
                "learning_rate": config.learning_rate,
                "seed": config.seed,
                "split_fraction": config.split_fraction,
                "loss": "mse",
                "optimizer": "adam",
            },
        },
        checkpoint_path,
    )
    return {
        "epochs": config.epochs,
        "train_scenes": int(n),
        "val_scenes": int(len(val_inputs)),
        "final_train_loss": history[-1][1] if history else None,
        "final_val_loss": history[-1][2] if history else None,
        "checkpoint": str(checkpoint_path),
        "metrics": str(metrics_path),
    }


def load_checkpoint(checkpoint_path):
    """Rebuild the model from a checkpoint; returns (model, payload)."""
    payload = torch.load(checkpoint_path, map_location="cpu", weights_only=True)
    model = build_model()
    model.load_state_dict(payload["state_dict"])
    model.eval()
    return model, payload
