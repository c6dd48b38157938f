import numpy as np

from nfdmsim.errors import InvalidInputError
from nfdmsim.framing.envelope import ComplexEnvelope


def ideal_lowpass(q: ComplexEnvelope, B: float) -> ComplexEnvelope:
    """Brick-wall filter: zero every DFT bin with |f| > B (B in the envelope's frequency units)."""
    if not B > 0:
        raise InvalidInputError(f"filter bandwidth must be positive, got {B}")
    f = np.fft.fftfreq(q.grid.n, d=q.dt)
    spectrum = np.fft.fft(q.samples)
    spectrum[np.abs(f) > B] = 0.0
    return q.with_samples(np.fft.ifft(spectrum))
