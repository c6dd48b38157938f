from nfdmsim.framing.envelope import (
    EDGE_FRACTION,
    EDGE_LIMIT,
    ComplexEnvelope,
    NormalizationScales,
    TimeGrid,
    denormalize,
    edge_energy_ratio,
    normalize,
)
from nfdmsim.framing.qam import QamAlphabet, SymbolBurst, demap_burst, map_bits_to_burst, qam_alphabet
from nfdmsim.framing.system import SystemConfig
from nfdmsim.framing.pulses import gaussian_pulse, launch_amplitude, shape_pulses, shape_symbols
