import numpy as np
import pytest
import torch

from maskplan_trainer.export import export_masks
from maskplan_trainer.model import build_model
from maskplan_trainer.train import METRICS_HEADER, TrainConfig, load_checkpoint, train


def test_split_fraction_is_fixed(tiny_dataset):
    with pytest.raises(ValueError):
        TrainConfig(dataset_dir=str(tiny_dataset), split_fraction=0.7)


def test_zero_epochs_writes_init_checkpoint(tiny_dataset, tmp_path):
    config = TrainConfig(dataset_dir=str(tiny_dataset), scenarios=(1,), epochs=0, seed=3)
    summary = train(config, tmp_path / "ckpt.pt", tmp_path / "metrics.csv")
    assert summary["final_train_loss"] is None
    assert (tmp_path / "metrics.csv").read_text() == METRICS_HEADER + "\n"

    model, payload = load_checkpoint(tmp_path / "ckpt.pt")
    torch.manual_seed(3)
    fresh = build_model()
    for key, value in fresh.state_dict().items():
        assert torch.equal(value, model.state_dict()[key])
    assert payload["config"]["epochs"] == 0
    assert payload["model"]["pool_stride"] == 3


def test_short_training_decreases_loss(tiny_dataset, tmp_path):
    config = TrainConfig(
        dataset_dir=str(tiny_dataset), scenarios=(1,), epochs=3, batch_size=4, seed=5
    )
    summary = train(config, tmp_path / "ckpt.pt", tmp_path / "metrics.csv")
    lines = (tmp_path / "metrics.csv").read_text().strip().splitlines()
    assert lines[0] == METRICS_HEADER
    assert len(lines) == 4
    losses = [float(line.split(",")[1]) for line in lines[1:]]
    assert all(np.isfinite(losses))
    assert losses[-1] < losses[0]
    assert summary["train_scenes"] == 8
    assert summary["val_scenes"] == 2


def test_training_is_deterministic(tiny_dataset, tmp_path):
    config = TrainConfig(
        dataset_dir=str(tiny_dataset), scenarios=(1,), epochs=2, batch_size=4, seed=11
    )
    train(config, tmp_path / "a.pt", tmp_path / "a.csv")
    train(config, tmp_path / "b.pt", tmp_path / "b.csv")
    assert (tmp_path / "a.csv").read_text() == (tmp_path / "b.csv").read_text()


def test_export_masks_roundtrip_with_core(tiny_dataset, tmp_path):
    config = TrainConfig(dataset_dir=str(tiny_dataset), scenarios=(1,), epochs=0, seed=1)
    train(config, tmp_path / "ckpt.pt", tmp_path / "metrics.csv")
    out = tmp_path / "masks"
    written = export_masks(tmp_path / "ckpt.pt", tiny_dataset, out, scenario=1, split="test")
    assert written == 2
    files = sorted(out.iterdir())
    assert [f.name for f in files] == ["mask_00008.txt", "mask_00009.txt"]

    from maskplan.maskpipe import read_mask_file

    for f in files:
        values = read_mask_file(f)
        assert values.shape == (3600,)
        assert (values >= -1.0).all() and (values <= 1.0).all()
