from nfdmsim.simulation.pipeline import (
    CONVENTIONAL_RECEIVERS,
    NFDM_RECEIVERS,
    draw_burst,
    frame_rng,
    receive,
    simulate_frame,
    transmit,
)
from nfdmsim.simulation.experiment import NfdmExperiment, SweepCell, run_experiment
from nfdmsim.simulation.causality import CAUSALITY_COLUMNS, demo_causality
