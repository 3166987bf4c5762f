import pytest

from rieszlab import ProcessModel, Seed, Window, sample


@pytest.fixture(scope="session")
def replicas():
    """Sampler helper shared across test modules (seeded, cached per call)."""

    def draw(model: ProcessModel, R: float, n: int, master: int = 1234):
        window = Window(float(R), model.d)
        return [sample(model, window, Seed(master, j)) for j in range(n)]

    return draw
