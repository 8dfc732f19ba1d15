# Third party
import numpy as np

# Local imports
from splitlora.channels.base import AbstractChannel


class IdealChannel(AbstractChannel):
    """
    The channel, which does nothing at all: h = 1 and no noise. It does not consume any random numbers.

    CHANGELOG

    Added 13.10.2026
    """

    def gains(self, rng: np.random.Generator, size: int) -> np.ndarray:
        return np.ones(size, dtype=complex)

    def variance(self, oversampling: int = 1) -> float:
        return 0.0
