"""Mask export: run the encoder over dataset scenes and emit MASKV1 files.

One file per scene, named mask_<index>.txt, written in the text format the
core toolkit's files: predictor consumes (header line, then 3600
whitespace-separated reals at 9 significant digits). Values are clamped to
[-1, 1]; the tanh output already lies inside the open interval, the clamp
only guards float formatting edge cases.
"""

from __future__ import annotations

from pathlib import Path
import numpy as np
import torch

from .data import GRID, load_manifest, scene_path, scene_tensor, split_indices, verify_files
from .train import load_checkpoint

MASK_HEADER = f"MASKV1 {GRID} {GRID}"


def write_mask_file(values: np.ndarray, path) -> None:
    rows = np.asarray(values, dtype=np.float64).reshape(GRID, GRID)
    lines = [MASK_HEADER]
    for row in rows:
        lines.append(" ".join(f"{x:.9g}" for x in row))
    Path(path).write_text("\n".join(lines) + "\n", encoding="ascii")


def export_masks(checkpoint_path, dataset_dir, out_dir, scenario: int,
                 split: str = "test", batch_size: int = 64) -> int:
    """Export one mask file per scene of the chosen scenario and split.

    Returns the number of files written. Masks are named by scene index,
    so each scenario's masks go to their own directory.
    """
    model, _ = load_checkpoint(checkpoint_path)
    manifest = load_manifest(dataset_dir)
    indices = list(split_indices(manifest["count"], split))
    paths = [scene_path(dataset_dir, scenario, i) for i in indices]
    verify_files(dataset_dir, manifest, paths)

    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = 0
    with torch.no_grad():
        for k in range(0, len(indices), batch_size):
            chunk = indices[k:k + batch_size]
            batch = torch.from_numpy(
                np.stack([scene_tensor(paths[k + j]) for j in range(len(chunk))])
            )
            out = model(batch).clamp(-1.0, 1.0).numpy().astype(np.float64)
            for j, index in enumerate(chunk):
                write_mask_file(out[j], out_dir / f"mask_{index:05d}.txt")
                written += 1
    return written
