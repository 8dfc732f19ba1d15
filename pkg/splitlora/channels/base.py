# Standard library
from typing import Dict, Tuple, Union

# Third party
import numpy as np

# Local imports
from splitlora._util import check_finite, db_to_linear

from splitlora.phy import Waveform


CHANNEL_KINDS = [
    'ideal',
    'awgn',
    'rayleigh'
]

FADING_BLOCKS = [
    'per_symbol'
]


# #####################
# CHANNEL CONFIGURATION
# #####################


class ChannelModel:
    """
    Describes a flat fading channel: its kind ("ideal", "awgn" or "rayleigh"), the SNR in dB and the granularity with
    which the fading gain is redrawn. The SNR +inf describes a noiseless channel. The ideal channel ignores the SNR.

    CHANGELOG

    Added 13.10.2026
    """
    DEFAULT_DICT = {
        'kind':             'awgn',
        'snr_db':           float('inf'),
        'fading_block':     'per_symbol'
    }

    def __init__(self, kind: str, snr_db: float, fading_block: str):
        if kind not in CHANNEL_KINDS:
            raise KeyError('The channel kind "{}" is not one of {}'.format(kind, CHANNEL_KINDS))
        if np.isnan(snr_db) or np.isneginf(snr_db):
            raise ValueError('The SNR has to be a number or +inf, got {}'.format(snr_db))
        if fading_block not in FADING_BLOCKS:
            raise ValueError('The fading block "{}" is not one of {}'.format(fading_block, FADING_BLOCKS))

        self.kind = kind
        self.snr_db = float(snr_db)
        self.fading_block = fading_block

    @property
    def noiseless(self) -> bool:
        return self.kind == 'ideal' or np.isposinf(self.snr_db)

    def replace(self, **fields):
        channel_dict = self.to_dict()
        channel_dict.update(fields)
        return ChannelModel(**channel_dict)

    def to_dict(self) -> Dict:
        return {
            'kind':             self.kind,
            'snr_db':           self.snr_db,
            'fading_block':     self.fading_block
        }

    def __eq__(self, other):
        if isinstance(other, ChannelModel):
            return self.to_dict() == other.to_dict()
        else:
            raise TypeError('You cannot compare a ChannelModel with anything else than objects of same type!')

    def __repr__(self):
        return 'ChannelModel(kind={}, snr_db={})'.format(self.kind, self.snr_db)

    @classmethod
    def from_dict(cls, channel_dict: Dict):
        argument_dict = dict(cls.DEFAULT_DICT)
        argument_dict.update(channel_dict)
        return cls(**argument_dict)


class ChannelRealization:
    """
    What happened to one channel use: the complex gain "h" and the variance of the noise that was added. The receiver
    of the frequency + BPSK mode is handed "h" directly.

    CHANGELOG

    Added 13.10.2026
    """
    def __init__(self, h: complex, noise_variance: float):
        self.h = complex(h)
        self.noise_variance = float(noise_variance)

    def __repr__(self):
        return 'ChannelRealization(h={}, noise_variance={})'.format(self.h, self.noise_variance)


def noise_variance(snr_db: float, oversampling: int = 1) -> float:
    """
    The per sample variance of the complex noise for a unit power signal. The SNR refers to the alphabet rate, which
    is why an oversampled symbol sees proportionally more noise per sample.

    CHANGELOG

    Added 13.10.2026
    """
    if np.isposinf(snr_db):
        return 0.0
    return oversampling / db_to_linear(snr_db)


# ###########################################
# THE INTERFACE FOR ALL CHANNELS TO IMPLEMENT
# ###########################################


class AbstractChannel:
    """
    This is the abstract base class, from which every concrete channel has to inherit. A concrete channel has to
    implement "gains", which returns the complex gains of "size" independent channel uses and "variance", which
    returns the per sample noise variance. The propagation itself, y = h x + w, is the same for all the channels.

    The random generator is always passed in explicitly: the channel objects themselves hold no state, other than
    the model.

    CHANGELOG

    Added 13.10.2026
    """
    def __init__(self, model: ChannelModel):
        self.model = model

    def gains(self, rng: np.random.Generator, size: int) -> np.ndarray:
        raise NotImplementedError()

    def variance(self, oversampling: int = 1) -> float:
        raise NotImplementedError()

    # PROPAGATION
    # -----------

    def propagate_batch(self,
                        X: np.ndarray,
                        rng: np.random.Generator,
                        oversampling: int = 1) -> Tuple[np.ndarray, np.ndarray]:
        """
        Propagates a matrix of channel uses, one waveform per row. Every row gets its own gain. The gains are drawn
        before the noise, so that the same seed always produces the same gains, regardless of the noise.

        CHANGELOG

        Added 13.10.2026

        :param X: complex array of shape (uses, samples)
        :param rng:
        :param oversampling: the oversampling of the access scheme
        :return: (Y, h)
        """
        X = np.atleast_2d(np.asarray(X, dtype=complex))
        check_finite('X', X)

        h = self.gains(rng, X.shape[0])
        Y = h[:, None] * X
        variance = self.variance(oversampling)
        if variance > 0:
            Y = Y + complex_noise(rng, X.shape, variance)

        return Y, h

    def propagate(self,
                  x: Union[Waveform, np.ndarray],
                  rng: np.random.Generator,
                  oversampling: int = 1) -> Tuple[Waveform, ChannelRealization]:
        samples = x.samples if isinstance(x, Waveform) else x
        Y, h = self.propagate_batch(samples[None, :], rng, oversampling)
        return Waveform(Y[0]), ChannelRealization(h[0], self.variance(oversampling))


# #######################
# USEFUL MIXIN BEHAVIOURS
# #######################


class AdditiveNoiseMixin:
    """
    This mixin provides the "variance" method for all the channels, which add white gaussian noise according to the
    SNR of their model.

    This mixin expects the class to have the "model" attribute holding the ChannelModel.

    CHANGELOG

    Added 13.10.2026
    """
    def variance(self, oversampling: int = 1) -> float:
        return noise_variance(self.model.snr_db, oversampling)


def complex_noise(rng: np.random.Generator, shape, variance: float) -> np.ndarray:
    # Circular complex gaussian, "variance" is E|w|^2
    scale = np.sqrt(variance / 2.0)
    return scale * (rng.standard_normal(shape) + 1j * rng.standard_normal(shape))
