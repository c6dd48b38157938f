from __future__ import annotations

import os
from dataclasses import asdict, dataclass, fields
from typing import Iterable, Union

import pandas as pd

from nfdmsim.errors import UnmeasurableError
from nfdmsim.metrics.quality import fold_error_rate, qfactor_db2, rate_efficiency

UNMEASURABLE = "unmeasurable"
INVALID = "invalid"


@dataclass(frozen=True)
class ErrorCounter:
    """Bit-error tally; merging is a plain sum, so order and grouping do not matter."""

    frames: int = 0
    bit_errors: int = 0
    bits_total: int = 0

    def add(self, errors: int, bits: int) -> ErrorCounter:
        return ErrorCounter(self.frames + 1, self.bit_errors + errors, self.bits_total + bits)

    def merge(self, other: ErrorCounter) -> ErrorCounter:
        return ErrorCounter(
            self.frames + other.frames,
            self.bit_errors + other.bit_errors,
            self.bits_total + other.bits_total,
        )

    @property
    def Pb(self) -> float:
        return self.bit_errors / self.bits_total if self.bits_total else 0.0


@dataclass(frozen=True)
class ExperimentRecord:
    power_dbm: float
    Nb: int
    Ng: int
    receiver: str
    frames: int
    bit_errors: int
    bits_total: int
    Pb: float
    Q_db2: Union[float, str]
    eta: float
    seed: int
    wall_time: float

    @classmethod
    def from_counter(
        cls,
        counter: ErrorCounter,
        power_dbm: float,
        Nb: int,
        Ng: int,
        receiver: str,
        seed: int,
        wall_time: float,
        invalid: bool = False,
    ) -> ExperimentRecord:
        Pb = fold_error_rate(counter.Pb)
        if invalid:
            q: Union[float, str] = INVALID
        else:
            try:
                q = qfactor_db2(Pb)
            except UnmeasurableError:
                q = UNMEASURABLE
        return cls(
            power_dbm=power_dbm,
            Nb=Nb,
            Ng=Ng,
            receiver=receiver,
            frames=counter.frames,
            bit_errors=counter.bit_errors,
            bits_total=counter.bits_total,
            Pb=Pb,
            Q_db2=q,
            eta=rate_efficiency(Nb, Ng),
            seed=seed,
            wall_time=wall_time,
        )


# wall_time is logged, not written: results.csv depends on (config, seed) only
RECORD_COLUMNS = [f.name for f in fields(ExperimentRecord) if f.name != "wall_time"]
OPTIMUM_COLUMNS = ["receiver", "Nb", "eta", "best_power_dbm", "best_Q_db2"]


def records_frame(records: Iterable[ExperimentRecord]) -> pd.DataFrame:
    """Rows in canonical (receiver, Nb, power) order, whatever order cells finished in."""
    df = pd.DataFrame([asdict(r) for r in records], columns=RECORD_COLUMNS)
    if df.empty:
        return df
    return df.sort_values(["receiver", "Nb", "power_dbm"], kind="stable").reset_index(drop=True)


def optimum_frame(records: Iterable[ExperimentRecord]) -> pd.DataFrame:
    """Best measurable Q over the power sweep for every (receiver, Nb)."""
    df = records_frame(records)
    rows = []
    for (receiver, Nb), cell in df.groupby(["receiver", "Nb"], sort=True):
        q = pd.to_numeric(cell["Q_db2"], errors="coerce")
        if q.notna().any():
            best = cell.loc[q.idxmax()]
            rows.append([receiver, int(Nb), float(best["eta"]), float(best["power_dbm"]), float(q.max())])
        else:
            rows.append([receiver, int(Nb), float(cell["eta"].iloc[0]), float("nan"), UNMEASURABLE])
    return pd.DataFrame(rows, columns=OPTIMUM_COLUMNS)


def write_records(records: list[ExperimentRecord], out_dir: str) -> tuple[str, str]:
    os.makedirs(out_dir, exist_ok=True)
    results_csv = os.path.join(out_dir, "results.csv")
    optimum_csv = os.path.join(out_dir, "optimum.csv")
    records_frame(records).to_csv(results_csv, index=False)
    optimum_frame(records).to_csv(optimum_csv, index=False)
    return results_csv, optimum_csv
