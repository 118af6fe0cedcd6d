import subprocess

import pytest


def generate_dataset(out_dir, scenario=1, count=10, seed=31):
    """Build a dataset through the core toolkit's CLI (the only interface)."""
    subprocess.run(
        [
            "maskplan", "gen", "--scenario", str(scenario), "--count", str(count),
            "--seed", str(seed), "--out", str(out_dir),
        ],
        check=True,
        capture_output=True,
    )
    return out_dir


@pytest.fixture(scope="session")
def tiny_dataset(tmp_path_factory):
    """10 scenes of scenario 1: train split is 8 scenes, test split 2."""
    return generate_dataset(tmp_path_factory.mktemp("tiny_ds"), scenario=1, count=10, seed=31)
