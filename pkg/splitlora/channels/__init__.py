# Standard library
from typing import Tuple, Union

# Third party
import numpy as np

# Local imports
from splitlora.phy import Waveform

from splitlora.channels.base import ChannelModel, ChannelRealization, AbstractChannel
from splitlora.channels.base import CHANNEL_KINDS, noise_variance
from splitlora.channels.ideal import IdealChannel
from splitlora.channels.awgn import AwgnChannel
from splitlora.channels.rayleigh import RayleighChannel, draw_fading


CHANNEL_CLASSES = {
    'ideal':        IdealChannel,
    'awgn':         AwgnChannel,
    'rayleigh':     RayleighChannel
}


def get_channel(model: ChannelModel) -> AbstractChannel:
    """
    Returns the channel object for the kind of the given model.

    CHANGELOG

    Added 13.10.2026

    :raises: KeyError

    :param model:
    :return:
    """
    return CHANNEL_CLASSES[model.kind](model)


def propagate(x: Union[Waveform, np.ndarray],
              model: ChannelModel,
              rng: np.random.Generator,
              oversampling: int = 1) -> Tuple[Waveform, ChannelRealization]:
    """
    Sends a single waveform over the channel described by "model": y[n] = h x[n] + w[n].

    CHANGELOG

    Added 13.10.2026
    """
    return get_channel(model).propagate(x, rng, oversampling)


def propagate_batch(X: np.ndarray,
                    model: ChannelModel,
                    rng: np.random.Generator,
                    oversampling: int = 1) -> Tuple[np.ndarray, np.ndarray]:
    return get_channel(model).propagate_batch(X, rng, oversampling)
