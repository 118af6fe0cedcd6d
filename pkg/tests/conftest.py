import pytest

from maskplan.scenegen import SCENARIO_IDS, GenConfig, generate_scene


@pytest.fixture(scope="session")
def scene_corpus():
    """1000 generated scenes with answers: 5 scenarios x 200, seed 1234."""
    corpus = []
    for scenario in SCENARIO_IDS:
        config = GenConfig(scenario=scenario, count=200, seed=1234)
        for index in range(config.count):
            scene, answer = generate_scene(config, index)
            corpus.append((scenario, index, scene, answer))
    return corpus
