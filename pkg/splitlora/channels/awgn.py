# Third party
import numpy as np

# Local imports
from splitlora.channels.base import AbstractChannel, AdditiveNoiseMixin


class AwgnChannel(AdditiveNoiseMixin, AbstractChannel):
    """
    Unit gain plus white gaussian noise.

    CHANGELOG

    Added 13.10.2026
    """

    def gains(self, rng: np.random.Generator, size: int) -> np.ndarray:
        return np.ones(size, dtype=complex)
