import numpy as np
import pandas as pd
import pytest
from scipy.special import erfc

from nfdmsim.errors import InvalidInputError, UnmeasurableError
from nfdmsim.framing import SymbolBurst
from nfdmsim.metrics import (
    INVALID,
    RECORD_COLUMNS,
    UNMEASURABLE,
    ErrorCounter,
    ExperimentRecord,
    count_bit_errors,
    fold_error_rate,
    optimum_frame,
    qfactor_db2,
    rate_efficiency,
    records_frame,
    write_records,
)


@pytest.mark.parametrize(
    "Pb, expected",
    [(0.5 * erfc(1 / np.sqrt(2)), 0.0), (0.5 * erfc(np.sqrt(2)), 20 * np.log10(2))],
)
def test_qfactor_oracles(Pb, expected):
    assert qfactor_db2(Pb) == pytest.approx(expected, abs=1e-6)


def test_qfactor_quoted_probabilities():
    assert qfactor_db2(0.158655) == pytest.approx(0.0, abs=1e-4)
    assert qfactor_db2(0.022750) == pytest.approx(6.0206, abs=1e-3)


def test_qfactor_is_strictly_decreasing():
    q = [qfactor_db2(p) for p in np.linspace(1e-6, 0.5 - 1e-6, 200)]
    assert np.all(np.diff(q) < 0)


@pytest.mark.parametrize("Pb", [0.0, 0.5, -0.1, 0.7])
def test_qfactor_domain(Pb):
    with pytest.raises(UnmeasurableError):
        qfactor_db2(Pb)


def test_rate_efficiency():
    assert rate_efficiency(10, 10) == 0.5
    assert rate_efficiency(0, 400) == 0.0
    assert rate_efficiency(247, 2000) == pytest.approx(0.11, abs=5e-3)
    assert rate_efficiency(2082, 2000) == pytest.approx(0.51, abs=5e-3)
    with pytest.raises(InvalidInputError):
        rate_efficiency(-1, 10)


def test_error_rate_folding():
    assert fold_error_rate(0.1) == pytest.approx(0.1)
    assert fold_error_rate(0.9) == pytest.approx(0.1)
    assert fold_error_rate(0.5) == 0.5
    assert fold_error_rate(1.0) == 0.0
    with pytest.raises(InvalidInputError):
        fold_error_rate(1.5)


def test_record_folds_the_error_rate():
    counter = ErrorCounter(frames=1, bit_errors=300, bits_total=320)
    r = ExperimentRecord.from_counter(counter, -4.0, 16, 400, "fnft", seed=1, wall_time=0.0)
    assert r.Pb == pytest.approx(20 / 320)
    assert r.Q_db2 == pytest.approx(qfactor_db2(20 / 320))
    half = ErrorCounter(frames=1, bit_errors=160, bits_total=320)
    assert ExperimentRecord.from_counter(half, -4.0, 16, 400, "fnft", seed=1, wall_time=0.0).Q_db2 == UNMEASURABLE


def test_count_bit_errors(alphabet, rng):
    tx = SymbolBurst(rng.integers(0, 16, size=16), alphabet)
    assert count_bit_errors(tx, tx, alphabet) == (0, 64)

    complement = SymbolBurst(tx.indices ^ 15, alphabet)
    assert count_bit_errors(tx, complement, alphabet) == (64, 64)
    assert count_bit_errors(complement, tx, alphabet) == (64, 64)


def test_neighbor_symbol_errors_cost_one_bit(alphabet):
    for i, j in alphabet.neighbor_pairs():
        assert count_bit_errors(np.array([i]), np.array([j]), alphabet) == (1, 4)


def test_count_bit_errors_length_mismatch(alphabet):
    with pytest.raises(InvalidInputError):
        count_bit_errors(np.array([0, 1]), np.array([0]), alphabet)


def test_error_counter_merge_is_order_independent():
    parts = [ErrorCounter().add(3, 64), ErrorCounter().add(0, 64).add(1, 64), ErrorCounter()]
    left = parts[0].merge(parts[1]).merge(parts[2])
    right = parts[2].merge(parts[1].merge(parts[0]))
    assert left == right == ErrorCounter(frames=3, bit_errors=4, bits_total=192)
    assert left.Pb == pytest.approx(4 / 192)


def record(receiver="fnft", power=-4.0, Nb=16, errors=10, invalid=False):
    counter = ErrorCounter(frames=5, bit_errors=errors, bits_total=320)
    return ExperimentRecord.from_counter(counter, power, Nb, 400, receiver, seed=1, wall_time=1.0, invalid=invalid)


def test_record_fields():
    r = record()
    assert r.Pb == pytest.approx(10 / 320)
    assert r.Q_db2 == pytest.approx(qfactor_db2(10 / 320))
    assert r.eta == pytest.approx(16 / 416)
    assert record(errors=0).Q_db2 == UNMEASURABLE
    assert record(invalid=True).Q_db2 == INVALID


def test_csv_header_is_stable():
    assert RECORD_COLUMNS == [
        "power_dbm", "Nb", "Ng", "receiver", "frames", "bit_errors",
        "bits_total", "Pb", "Q_db2", "eta", "seed",
    ]
    assert record().wall_time == 1.0


def test_records_are_written_in_canonical_order(tmp_path):
    records = [record("fnft", 0.0), record("df-bnft", -2.0), record("fnft", -2.0), record("df-bnft", 0.0, Nb=8)]
    results_csv, optimum_csv = write_records(records, str(tmp_path))
    df = pd.read_csv(results_csv)
    assert list(df.columns) == RECORD_COLUMNS
    assert list(zip(df.receiver, df.Nb, df.power_dbm)) == [
        ("df-bnft", 8, 0.0), ("df-bnft", 16, -2.0), ("fnft", 16, -2.0), ("fnft", 16, 0.0),
    ]
    assert pd.read_csv(optimum_csv).shape[0] == 3


def test_optimum_picks_best_power():
    records = [record(power=-6.0, errors=40), record(power=-4.0, errors=5), record(power=-2.0, errors=0)]
    opt = optimum_frame(records)
    assert len(opt) == 1
    assert opt.best_power_dbm.iloc[0] == -4.0
    assert opt.best_Q_db2.iloc[0] == pytest.approx(qfactor_db2(5 / 320))


def test_optimum_of_unmeasurable_cell():
    opt = optimum_frame([record(errors=0)])
    assert opt.best_Q_db2.iloc[0] == UNMEASURABLE


def test_records_frame_empty():
    assert list(records_frame([]).columns) == RECORD_COLUMNS
