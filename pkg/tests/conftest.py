import sys
from pathlib import Path

import pytest
from hypothesis import settings

from zscatter import (
    SchemeParams,
    SpectralGrid,
    UniformGrid,
    continuous_sweep,
    make_reference,
)

sys.path.insert(0, str(Path(__file__).parent))

# numba compilation on first call would trip hypothesis' default deadline
settings.register_profile("numerics", deadline=None, max_examples=50)
settings.load_profile("numerics")

SWEEP_THREADS = 2


@pytest.fixture(scope="session")
def bo():
    return SchemeParams.bo()


@pytest.fixture(scope="session")
def ct4():
    return SchemeParams.ct4()


@pytest.fixture(scope="session")
def sech_reference():
    """Factory: (potential, reference) for sech on [-40, 40] at a given M."""
    cache = {}

    def get(half_steps: int):
        if half_steps not in cache:
            cache[half_steps] = make_reference("sech", UniformGrid(40.0, half_steps))
        return cache[half_steps]

    return get


@pytest.fixture(scope="session")
def sech_fourier_sweep(sech_reference):
    """Memoized full Fourier-convention sweeps of sech; shared by the heavy tests."""
    cache = {}

    def get(scheme: str, half_steps: int):
        key = (scheme, half_steps)
        if key not in cache:
            potential, _ = sech_reference(half_steps)
            grid = SpectralGrid.fourier_convention(potential)
            params = SchemeParams.ct4() if scheme == "ct4" else SchemeParams.bo()
            samples = continuous_sweep(potential, grid, params, threads=SWEEP_THREADS)
            cache[key] = (potential, grid, samples)
        return cache[key]

    return get
