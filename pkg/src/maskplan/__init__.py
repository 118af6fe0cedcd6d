"""Grid motion-planning benchmark toolkit: plain A* vs mask-pruned A*."""

__version__ = "0.1.0"

from .errors import (  # noqa: F401
    ChecksumMismatch,
    DatasetMissing,
    MalformedMaskFile,
    MaskplanError,
    MissingMaskFile,
    MissingOrDuplicateMarker,
    NonCanonicalColor,
    OutOfRange,
    ParseError,
    Unsolvable,
)
from .grid import (  # noqa: F401
    GRID,
    CellKind,
    Coord,
    Scene,
    SearchSpace,
    decode_scene_rgb,
    decode_scene_text,
    encode_scene_rgb,
    encode_scene_text,
    load_scene_png,
    render_answer,
    save_scene_png,
    scene_from_cells,
    validate_answer_path,
)
from .planner import PlanResult, astar, bfs_shortest, masked_plan, space_from_scene  # noqa: F401
from .maskpipe import (  # noqa: F401
    AllPassPredictor,
    FilePredictor,
    OraclePredictor,
    binarize,
    dilate_3x3,
    mask_from_vector,
    overlap,
    read_mask_file,
    vector_to_gray,
    write_mask_file,
)
from .scenegen import GenConfig, fixed_layout, generate_dataset, generate_scene  # noqa: F401
from .bench import BenchReport, BenchRow, emit_report, run_bench  # noqa: F401
