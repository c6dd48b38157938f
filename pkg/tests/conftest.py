import numpy as np
import pytest

from nfdmsim.framing import SymbolBurst, SystemConfig, launch_amplitude, qam_alphabet


@pytest.fixture
def alphabet():
    return qam_alphabet(16)


@pytest.fixture
def small_cfg():
    """Short frame on a 20 km link; 48 guard symbols hold its 12.8-symbol dispersion memory."""
    return SystemConfig(Nb=4, Ng=48, L=20e3, nz=40, samples_per_symbol=16, noise_on=False)


@pytest.fixture
def desk_cfg():
    return SystemConfig(noise_on=False)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def random_burst(cfg: SystemConfig, rng: np.random.Generator) -> SymbolBurst:
    alphabet = qam_alphabet(cfg.qam_order)
    return SymbolBurst(indices=rng.integers(0, alphabet.order, size=cfg.Nb), alphabet=alphabet)


@pytest.fixture
def small_burst(small_cfg, rng):
    return random_burst(small_cfg, rng)


@pytest.fixture
def small_amplitude(small_cfg):
    return launch_amplitude(small_cfg)
