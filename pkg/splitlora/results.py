# Standard library
import os
import logging
import tempfile

from typing import Dict, List, Union

# Third party
import numpy as np
import pandas as pd

# Local imports
from splitlora.enn import EnnModel

from splitlora.phy import Waveform

from splitlora.split import map_grid


LOGGER = logging.getLogger('splitlora.results')


# ###############
# ATOMIC WRITING
# ###############


def write_atomic(path: str, content: str):
    """
    Writes the string "content" into the file "path". The content is first written into a temporary file within the
    same folder, which is then moved into place, so that readers never see a half written file.

    CHANGELOG

    Added 15.10.2026

    :param path:
    :param content:
    :return:
    """
    folder_path = os.path.dirname(os.path.abspath(path))
    os.makedirs(folder_path, exist_ok=True)

    descriptor, temporary_path = tempfile.mkstemp(dir=folder_path, prefix='.tmp-', suffix=os.path.basename(path))
    try:
        with os.fdopen(descriptor, mode='w') as file:
            file.write(content)
        os.replace(temporary_path, path)
    except BaseException:
        if os.path.exists(temporary_path):
            os.unlink(temporary_path)
        raise

    LOGGER.debug('wrote "%s"', path)


# ######
# TABLES
# ######


def write_frame(path: str, frame: pd.DataFrame):
    # Without a float format pandas writes the shortest representation, which reads back to the same float
    write_atomic(path, frame.to_csv(index=False))


def read_frame(path: str) -> pd.DataFrame:
    return pd.read_csv(path, float_precision='round_trip')


def write_metrics(path: str, metrics: Union[List[Dict], pd.DataFrame]):
    """
    Writes the per epoch metrics of a training run. Both the list of dicts of the centralized training and the frame of
    the split metrics are accepted.

    CHANGELOG

    Added 15.10.2026
    """
    if isinstance(metrics, pd.DataFrame):
        frame = metrics
    else:
        frame = pd.DataFrame(metrics, columns=['epoch', 'accuracy', 'mse'])
    write_frame(path, frame)


# #############
# DECISION MAPS
# #############


def decision_map_pgm(grid: np.ndarray) -> str:
    """
    Returns the plain text PGM (P2) image of a decision map: +1 is white (255), -1 black (0).

    EXAMPLE:
    P2
    2 2
    255
    255 0
    0 255

    CHANGELOG

    Added 15.10.2026

    :param grid:
    :return:
    """
    grid = np.asarray(grid)
    values = np.where(grid > 0, 255, 0)
    lines = ['P2', '{} {}'.format(grid.shape[1], grid.shape[0]), '255']
    lines += [' '.join(str(value) for value in row) for row in values]
    return '\n'.join(lines) + '\n'


def write_decision_map_pgm(path: str, grid: np.ndarray):
    write_atomic(path, decision_map_pgm(grid))


def read_decision_map_pgm(path: str) -> np.ndarray:
    with open(path, mode='r') as file:
        tokens = file.read().split()

    if tokens[0] != 'P2':
        raise ValueError('"{}" is not a plain text PGM file'.format(path))

    width, height = int(tokens[1]), int(tokens[2])
    values = np.array([int(token) for token in tokens[4:4 + width * height]]).reshape(height, width)
    return np.where(values > 0, 1, -1)


def write_decision_map_csv(path: str, grid: np.ndarray):
    """
    Writes a decision map as a CSV with the columns x1, x2 and label, one row per pixel in the order of "map_grid".

    CHANGELOG

    Added 15.10.2026
    """
    grid = np.asarray(grid)
    X = map_grid(grid.shape[0])
    frame = pd.DataFrame({'x1': X[:, 0], 'x2': X[:, 1], 'label': grid.ravel()})
    write_frame(path, frame)


# ###################
# MODELS AND WAVEFORMS
# ###################


def write_model(path: str, model: EnnModel):
    write_atomic(path, model.to_text())


def waveform_frame(waveform: Waveform) -> pd.DataFrame:
    return pd.DataFrame({
        'n':        np.arange(len(waveform)),
        'real':     waveform.samples.real,
        'imag':     waveform.samples.imag
    })


def write_waveform(path: str, waveform: Waveform):
    write_frame(path, waveform_frame(waveform))
