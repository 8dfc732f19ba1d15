# Third party
import numpy as np

# Local imports
from splitlora.channels.base import AbstractChannel, AdditiveNoiseMixin


def draw_fading(rng: np.random.Generator, size=None):
    """
    Draws Rayleigh fading gains h = (g1 + j g2) / sqrt(2) with independent standard normal g1, g2, so that E|h|^2 = 1.
    Without "size" a single complex number is returned.

    CHANGELOG

    Added 13.10.2026

    :param rng:
    :param size:
    :return:
    """
    g = rng.standard_normal(2 if size is None else (2, size))
    h = (g[0] + 1j * g[1]) / np.sqrt(2.0)
    return complex(h) if size is None else h


class RayleighChannel(AdditiveNoiseMixin, AbstractChannel):
    """
    Flat Rayleigh block fading: a new gain for every channel use, plus white gaussian noise.

    CHANGELOG

    Added 13.10.2026
    """

    def gains(self, rng: np.random.Generator, size: int) -> np.ndarray:
        return draw_fading(rng, size)
