# Standard library
import os

from typing import Union

# Third party
import numpy as np


# #########
# CONSTANTS
# #########

PATH = os.path.dirname(os.path.abspath(__file__))

TEMPLATE_FOLDER_PATH = os.path.join(PATH, 'templates')


# ##########
# EXCEPTIONS
# ##########


class DivergenceError(RuntimeError):
    """
    Raised by the training loops, when the loss or one of the gradients stops being a finite number. The epoch and the
    index of the sample (within the epoch) at which this happened are kept as attributes, so that the command line
    front end can report them.

    CHANGELOG

    Added 12.10.2026
    """
    def __init__(self, epoch: int, sample: int, reason: str = 'non-finite loss'):
        self.epoch = epoch
        self.sample = sample
        self.reason = reason
        super(DivergenceError, self).__init__(
            'Training diverged at epoch {} sample {}: {}'.format(epoch, sample, reason)
        )


# ########################
# NUMERICAL HELPER ROUTINES
# ########################


def round_half_away(value: Union[float, np.ndarray]) -> np.ndarray:
    """
    Rounds to the nearest integer, with ties being rounded away from zero. numpy's own "round" rounds ties to the
    even neighbour, which is not symmetric around the quantization grid.

    CHANGELOG

    Added 12.10.2026

    :param value:
    :return:
    """
    value = np.asarray(value, dtype=float)
    return (np.sign(value) * np.floor(np.abs(value) + 0.5)).astype(np.int64)


def check_finite(name: str, value) -> None:
    """
    Raises a ValueError naming the quantity "name", if any entry of "value" is NaN or infinite.

    CHANGELOG

    Added 12.10.2026

    :raises: ValueError

    :param name:
    :param value:
    :return:
    """
    if not np.all(np.isfinite(value)):
        raise ValueError('The value of "{}" has to be finite!'.format(name))


def db_to_linear(value_db: float) -> float:
    return 10.0 ** (value_db / 10.0)
