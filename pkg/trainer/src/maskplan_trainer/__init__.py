"""CNN encoder trainer for maskplan route-pruning masks."""

__version__ = "0.1.0"

from .data import make_target, split_indices, train_test_boundary  # noqa: F401
from .errors import ChecksumMismatch, DatasetMissing, SpecMismatch, TrainerError  # noqa: F401
from .export import export_masks  # noqa: F401
from .model import ENCODER_LAYERS, build_model  # noqa: F401
from .train import TrainConfig, load_checkpoint, train  # noqa: F401
