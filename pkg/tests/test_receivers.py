import numpy as np
import pytest

from conftest import random_burst
from nfdmsim.errors import InvalidInputError, UsageError
from nfdmsim.framing import SymbolBurst, denormalize, launch_amplitude, shape_pulses
from nfdmsim.nft import GlmSolveCounter, nfdm_transmit, window_indices
from nfdmsim.receivers import (
    common_phase_correction,
    conventional_receiver,
    detection_window,
    df_bnft_receiver,
    fnft_receiver,
    matched_filter_decide,
    matched_filter_outputs,
)
from nfdmsim.simulation import receive, transmit
from nfdmsim.channel import ChannelParams, ssfm_propagate


def test_matched_filter_recovers_symbols(small_cfg, small_burst, small_amplitude):
    s = shape_pulses(small_burst, small_cfg, small_amplitude)
    y = matched_filter_outputs(s, small_cfg, small_amplitude)
    assert np.allclose(y, small_burst.symbols, atol=1e-2)
    assert np.array_equal(matched_filter_decide(s, small_cfg, small_amplitude).decided, small_burst.indices)


@pytest.mark.parametrize("scale", [0.95, 1.05])
def test_matched_filter_tolerates_gain_error(small_cfg, small_burst, small_amplitude, scale):
    s = shape_pulses(small_burst, small_cfg, small_amplitude * scale)
    assert np.array_equal(matched_filter_decide(s, small_cfg, small_amplitude).decided, small_burst.indices)


def test_matched_filter_rejects_bad_amplitude(small_cfg, small_burst):
    s = shape_pulses(small_burst, small_cfg, 0.1)
    with pytest.raises(InvalidInputError):
        matched_filter_outputs(s, small_cfg, 0.0)


def test_common_phase_correction(alphabet, rng):
    idx = rng.permutation(np.tile(np.arange(16), 16))
    rotated = alphabet.points[idx] * np.exp(0.3j)
    corrected = common_phase_correction(rotated, alphabet)
    assert np.allclose(corrected, alphabet.points[idx], atol=1e-9)


def test_detection_windows_tile_the_burst():
    assert detection_window(1) == (-0.5, 0.5)
    assert detection_window(3) == (-2.5, -1.5)


def test_fnft_receiver_loopback(small_cfg, small_burst, small_amplitude):
    q = nfdm_transmit(small_burst, small_cfg, small_amplitude, L_norm=0.0)
    result = fnft_receiver(q, small_cfg, small_amplitude)
    assert np.array_equal(result.decided, small_burst.indices)
    assert result.glm_solves == 0


def test_nfdm_receivers_need_normalized_input(small_cfg, small_burst, small_amplitude):
    q = denormalize(nfdm_transmit(small_burst, small_cfg, small_amplitude, L_norm=0.0), small_cfg.scales)
    with pytest.raises(UsageError):
        fnft_receiver(q, small_cfg, small_amplitude)
    with pytest.raises(UsageError):
        df_bnft_receiver(q, small_cfg, small_amplitude)


def test_df_bnft_noiseless_decisions(small_cfg, small_burst, small_amplitude):
    # zero-noise received field: BNFT of the spectrum after precompensation and channel
    q = nfdm_transmit(small_burst, small_cfg, small_amplitude, L_norm=0.0)
    counter = GlmSolveCounter()
    result = df_bnft_receiver(q, small_cfg, small_amplitude, counter=counter)
    assert np.array_equal(result.decided, small_burst.indices)

    grid = small_cfg.frame_grid().mirrored()
    window_points = 0
    for k in range(1, small_cfg.Nb + 1):
        i0, i1 = window_indices(grid, *detection_window(k))
        window_points += i1 - i0 + 1
        energy = np.trapezoid(np.abs(q.samples[i0 : i1 + 1]) ** 2, dx=grid.dt)
        assert result.metric[k - 1] < 1e-2 * energy
    assert result.glm_solves == counter.count == 16 * window_points


def test_df_bnft_depends_on_feedback(small_cfg, small_burst, small_amplitude):
    q = nfdm_transmit(small_burst, small_cfg, small_amplitude, L_norm=0.0)
    wrong = (int(small_burst.indices[0]) + 5) % 16
    good = df_bnft_receiver(q, small_cfg, small_amplitude)
    forced = df_bnft_receiver(q, small_cfg, small_amplitude, feedback_override={1: wrong})
    assert forced.decided[0] == good.decided[0]
    assert abs(forced.metric[1] - good.metric[1]) > 0.0


@pytest.mark.parametrize("mode", ["edc", "dbp"])
def test_conventional_receivers_noiseless(small_cfg, small_burst, small_amplitude, mode):
    tx = transmit(small_burst, small_cfg, mode, small_amplitude)
    rx = ssfm_propagate(tx, ChannelParams.from_config(small_cfg))
    result = receive(rx, small_cfg, mode, small_amplitude)
    assert np.array_equal(result.decided, small_burst.indices)


def test_conventional_receiver_modes(small_cfg, small_burst, small_amplitude):
    s = denormalize(shape_pulses(small_burst, small_cfg, small_amplitude), small_cfg.scales)
    with pytest.raises(UsageError):
        conventional_receiver(s, small_cfg, "mlse", small_amplitude)
    with pytest.raises(UsageError):
        conventional_receiver(shape_pulses(small_burst, small_cfg, small_amplitude), small_cfg, "edc", small_amplitude)


@pytest.mark.parametrize("receiver", ["fnft", "df-bnft"])
def test_nfdm_loopback_through_the_fiber(small_cfg, small_burst, small_amplitude, receiver):
    tx = transmit(small_burst, small_cfg, receiver, small_amplitude)
    rx = ssfm_propagate(tx, ChannelParams.from_config(small_cfg))
    result = receive(rx, small_cfg, receiver, small_amplitude)
    assert np.array_equal(result.decided, small_burst.indices)


@pytest.mark.slow
@pytest.mark.parametrize("receiver", ["fnft", "df-bnft"])
def test_desk_link_loopback(desk_cfg, rng, receiver):
    burst = random_burst(desk_cfg, rng)
    amplitude = launch_amplitude(desk_cfg)
    tx = transmit(burst, desk_cfg, receiver, amplitude)
    rx = ssfm_propagate(tx, ChannelParams.from_config(desk_cfg))
    result = receive(rx, desk_cfg, receiver, amplitude)
    assert np.array_equal(result.decided, burst.indices)


@pytest.mark.slow
@pytest.mark.parametrize("Nb", [16, 64])
@pytest.mark.parametrize("receiver", [fnft_receiver, df_bnft_receiver])
def test_desk_back_to_back_is_error_free(desk_cfg, rng, receiver, Nb):
    cfg = desk_cfg.replace(Nb=Nb)
    burst = random_burst(cfg, rng)
    amplitude = launch_amplitude(cfg)
    # noiseless field after the link: the precompensation is used up
    q = nfdm_transmit(burst, cfg, amplitude, L_norm=0.0)
    result = receiver(q, cfg, amplitude)
    assert np.count_nonzero(result.decided != burst.indices) == 0


def test_detection_windows_run_backwards_over_the_burst(small_cfg):
    windows = [detection_window(k) for k in range(1, small_cfg.Nb + 1)]
    assert windows[0] == (-0.5, 0.5)
    for earlier, later in zip(windows, windows[1:]):
        assert later[1] == earlier[0]
        assert later[0] < earlier[0]
    assert windows[-1][0] == -(small_cfg.Nb - 0.5)


def test_df_bnft_decides_symbol_k_in_window_k(small_cfg, small_burst, small_amplitude):
    changed = small_burst.indices.copy()
    changed[2] = (changed[2] + 7) % small_burst.alphabet.order
    other = SymbolBurst(changed, small_burst.alphabet)
    before = df_bnft_receiver(nfdm_transmit(small_burst, small_cfg, small_amplitude, L_norm=0.0), small_cfg, small_amplitude)
    after = df_bnft_receiver(nfdm_transmit(other, small_cfg, small_amplitude, L_norm=0.0), small_cfg, small_amplitude)
    assert np.array_equal(before.decided, small_burst.indices)
    assert np.array_equal(after.decided, changed)
    assert after.glm_solves == before.glm_solves
