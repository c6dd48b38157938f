from __future__ import annotations

import logging
import multiprocessing
import time
from dataclasses import dataclass
from functools import partial
from sys import stdout
from typing import Any, Optional

import pandas as pd
from tqdm import tqdm

from nfdmsim.config import apply_overrides, configure_worker_logging, load_system_config, read_config, validate_sweep
from nfdmsim.config.logging_config import run_id_var
from nfdmsim.errors import GuardViolationError, NfdmError
from nfdmsim.framing import SystemConfig, launch_amplitude, qam_alphabet
from nfdmsim.metrics import ErrorCounter, ExperimentRecord, count_bit_errors, optimum_frame, records_frame, write_records
from nfdmsim.nft import GlmSolveCounter
from nfdmsim.simulation.pipeline import frame_rng, simulate_frame

logger = logging.getLogger(__name__)

disable_tqdm = not stdout.isatty()


@dataclass(frozen=True)
class SweepCell:
    receiver: str
    power_dbm: float
    Nb: int
    # receivers at the same (power, Nb) share this index and therefore the same bursts and noise
    stream: int


class NfdmExperiment:
    def __init__(self, config: dict) -> None:
        self.config = config
        self.system: SystemConfig = load_system_config(config)
        self.sweep: dict[str, Any] = validate_sweep(config)
        self.parallel: bool = bool(config.get("parallel", False))
        self.num_processes: int = config.get("num_processes", 1)
        self.debug_mode: bool = config.get("debug_mode", False)

        self.max_frames: int = self.sweep["max_frames"]
        if self.debug_mode:
            self.max_frames = min(self.max_frames, 2)

        logger.info(
            "sim.init",
            extra={
                "parallel": self.parallel,
                "num_processes": self.num_processes,
                "debug_mode": self.debug_mode,
                "cells": len(self.cells()),
                "L_norm": self.system.L_norm,
            },
        )
        if self.debug_mode:
            logger.warning("sim.debug_mode_enabled", extra={"max_frames": self.max_frames})

    def cells(self) -> list[SweepCell]:
        out = []
        for ip, power in enumerate(self.sweep["powers_dbm"]):
            for inb, Nb in enumerate(self.sweep["Nb_values"]):
                stream = ip * len(self.sweep["Nb_values"]) + inb
                for receiver in self.sweep["receivers"]:
                    out.append(SweepCell(receiver=receiver, power_dbm=float(power), Nb=int(Nb), stream=stream))
        return out

    # -----------------------
    # Monte-Carlo (workers)
    # -----------------------
    @staticmethod
    def run_cell(
        cell: SweepCell,
        system: SystemConfig,
        target_bit_errors: int = 100,
        max_frames: int = 1000,
    ) -> dict:
        """
        Count errors frame by frame until target_bit_errors or max_frames.
        Returns a dict safe for parallel usage; failures come back in "error".
        """
        t0 = time.time()
        counter = ErrorCounter()
        solves = GlmSolveCounter()
        result: dict[str, Any] = {"cell": cell, "error": None, "invalid": False, "stop": None}
        try:
            cfg = system.replace(power_dbm=cell.power_dbm, Nb=cell.Nb)
            alphabet = qam_alphabet(cfg.qam_order)
            amplitude = launch_amplitude(cfg)
            while counter.frames < max_frames and counter.bit_errors < target_bit_errors:
                rng = frame_rng(cfg.seed, cell.stream, counter.frames)
                burst, detected = simulate_frame(cfg, cell.receiver, amplitude, rng, counter=solves)
                counter = counter.add(*count_bit_errors(burst, detected, alphabet))
            result["stop"] = "target_errors" if counter.bit_errors >= target_bit_errors else "max_frames"
        except GuardViolationError as e:
            result.update(error=str(e), invalid=True, stop="guard_violation")
        except (NfdmError, ArithmeticError, ValueError) as e:
            result.update(error=f"{type(e).__name__}: {e}", invalid=True, stop="error")

        result.update(counter=counter, glm_solves=solves.count, wall_time=time.time() - t0)
        return result

    def _to_record(self, result: dict) -> ExperimentRecord:
        cell: SweepCell = result["cell"]
        return ExperimentRecord.from_counter(
            result["counter"],
            power_dbm=cell.power_dbm,
            Nb=cell.Nb,
            Ng=self.system.Ng,
            receiver=cell.receiver,
            seed=self.system.seed,
            wall_time=round(result["wall_time"], 3),
            invalid=result["invalid"],
        )

    def run(self) -> list[ExperimentRecord]:
        cells = self.cells()
        worker_func = partial(
            self.run_cell,
            system=self.system,
            target_bit_errors=self.sweep["target_bit_errors"],
            max_frames=self.max_frames,
        )
        t0 = time.time()
        logger.info("sim.sweep.start", extra={"cells": len(cells), "parallel": self.parallel})

        if self.parallel and len(cells) > 1:
            init = partial(configure_worker_logging, run_id_var.get(), "sim")
            with multiprocessing.Pool(self.num_processes, initializer=init) as pool:
                results = list(tqdm(pool.imap(worker_func, cells), total=len(cells), disable=disable_tqdm))
        else:
            results = [worker_func(cell) for cell in tqdm(cells, disable=disable_tqdm)]

        records = []
        for result in results:
            cell = result["cell"]
            extra = {
                "receiver": cell.receiver,
                "power_dbm": cell.power_dbm,
                "Nb": cell.Nb,
                "frames": result["counter"].frames,
                "bit_errors": result["counter"].bit_errors,
                "stop": result["stop"],
                "glm_solves": result["glm_solves"],
                "duration_ms": int(result["wall_time"] * 1000),
            }
            if result["error"]:
                logger.error("sim.cell.error", extra={**extra, "error": result["error"]})
            else:
                logger.info("sim.cell.done", extra=extra)
            records.append(self._to_record(result))

        errors = [r for r in results if r["error"]]
        if errors:
            logger.warning(
                "sim.sweep.errors",
                extra={"error_count": len(errors), "sample_error": errors[0]["error"]},
            )
        logger.info("sim.sweep.done", extra={"cells": len(cells), "duration_ms": int((time.time() - t0) * 1000)})
        return records


def run_experiment(
    config_path: Optional[str] = None,
    overrides: Optional[list[str]] = None,
    out_dir: str = "results",
) -> dict[str, Any]:
    """Read, override and validate the config, run the sweep, write results.csv and optimum.csv."""
    conf = apply_overrides(read_config(config_path), overrides or [])
    experiment = NfdmExperiment(conf)
    records = experiment.run()
    results_csv, optimum_csv = write_records(records, out_dir)
    logger.info("sim.results.written", extra={"results_csv": results_csv, "optimum_csv": optimum_csv})
    results: pd.DataFrame = records_frame(records)
    return {
        "records": records,
        "results": results,
        "optimum": optimum_frame(records),
        "results_csv": results_csv,
        "optimum_csv": optimum_csv,
    }
