import numpy as np
import pytest

from photonflux import KGrid1D, SpectralAmplitude, photon_number


@pytest.fixture
def grid():
    return KGrid1D(n=1024, dk=1.0, area=1.0)


@pytest.fixture
def small_grid():
    return KGrid1D(n=256, dk=1.0, area=1.0)


def random_band_state(grid, rng, k0_frac=0.3, sigma_bins=20.0, helicity=+1):
    """Random complex spectrum under a Gaussian envelope, unit photon number.

    Band-limited and edge-clean by construction, so FFT synthesis is exact.
    """
    k = grid.k
    k0 = k0_frac * grid.k_max
    envelope = np.exp(-((k - k0) ** 2) / (4.0 * (sigma_bins * grid.dk) ** 2))
    noise = rng.normal(size=grid.n) + 1j * rng.normal(size=grid.n)
    c = envelope * noise
    state = SpectralAmplitude(grid=grid, helicity=helicity, c=c)
    return SpectralAmplitude(
        grid=grid, helicity=helicity, c=c / np.sqrt(photon_number(state))
    )


@pytest.fixture
def band_state_factory():
    return random_band_state
