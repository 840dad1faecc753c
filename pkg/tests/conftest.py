"""
Fixtures shared by the test modules: the standard fans of the corpus.
"""

import pytest

from src import corpus
from src.shelling import line_fan


@pytest.fixture
def line():
    return line_fan()


@pytest.fixture
def square():
    return corpus.lambda_power(2)


@pytest.fixture
def tropical_line():
    return corpus.tropical_line()


@pytest.fixture
def p2():
    return corpus.projective_fan(2)


@pytest.fixture
def p3_skeleton():
    return corpus.p3_skeleton()


@pytest.fixture
def cube():
    return corpus.cube_fan()


@pytest.fixture
def cross():
    return corpus.cross()


@pytest.fixture
def non_unimodular():
    return corpus.non_unimodular_complete()


@pytest.fixture
def cross_modification():
    return corpus.cross_modification()


@pytest.fixture
def config_file(tmp_path):
    path = tmp_path / "config.yml"
    path.write_text(
        "logging:\n"
        "  level: INFO\n"
        "  file: null\n"
        "engine:\n"
        "  threads: 1\n"
        "  validate: true\n"
        "  coeff: z\n"
        "  progress: false\n"
        "corpus:\n"
        f"  golden_dir: {tmp_path / 'golden'}\n"
        "  examples: null\n",
        encoding="utf-8",
    )
    return path
