import pytest

from sin2jp import run_sin2, state_from_matrix

EXAMPLE_A = ((0, 0, 1), (1, -15, -9), (-9, 136, 66))


@pytest.fixture(scope="session")
def example_matrix():
    return EXAMPLE_A


@pytest.fixture(scope="session")
def example_state(example_matrix):
    return state_from_matrix(example_matrix)


@pytest.fixture(scope="session")
def example_run(example_matrix, example_state):
    return run_sin2(example_state, source_matrix=example_matrix)
