# Standard library
import os
import shutil
import tempfile

from unittest import TestCase

from typing import Callable

# Third party
import numpy as np

# Local imports
from splitlora.enn import EnnConfig, EnnModel


# ###########
# FOR TESTING
# ###########


def random_model(config: EnnConfig, rng: np.random.Generator, scale: float = 0.5) -> EnnModel:
    """
    Returns a model, whose parameters are all drawn from a normal distribution with the standard deviation "scale".
    Other than "EnnModel.initialize", the activation functions of such a model have no particular shape.

    CHANGELOG

    Added 17.10.2026

    :param config:
    :param rng:
    :param scale:
    :return:
    """
    parameters = {name: scale * rng.standard_normal(shape) for name, shape in config.shapes.items()}
    return EnnModel(config=config, **parameters)


def central_difference(function: Callable[[np.ndarray], float], point: np.ndarray, step: float = 1e-6) -> np.ndarray:
    """
    Approximates the gradient of the scalar "function" at "point" with central differences, one entry at a time.

    CHANGELOG

    Added 17.10.2026

    :param function:
    :param point:
    :param step:
    :return: array of the shape of "point"
    """
    point = np.array(point, dtype=float)
    gradient = np.zeros_like(point)
    for index in np.ndindex(point.shape):
        upper = point.copy()
        lower = point.copy()
        upper[index] += step
        lower[index] -= step
        gradient[index] = (function(upper) - function(lower)) / (2 * step)

    return gradient


def relative_error(actual: np.ndarray, expected: np.ndarray) -> float:
    scale = max(np.linalg.norm(actual), np.linalg.norm(expected), 1e-12)
    return float(np.linalg.norm(np.asarray(actual) - np.asarray(expected)) / scale)


# THE MIXINS
# ----------


class TemporaryFolderMixin:
    """
    This class implements TestCase behaviour to create a new, empty folder before every test method and to delete it
    afterwards. The path is available as "self.folder_path".

    CHANGELOG

    Added 17.10.2026
    """

    def setUp(self):
        self.folder_path = tempfile.mkdtemp(prefix='splitlora-test-')

    def tearDown(self):
        shutil.rmtree(self.folder_path, ignore_errors=True)

    def path(self, *names) -> str:
        return os.path.join(self.folder_path, *names)


# ACTUAL ABSTRACT TEST CASE BASE CLASSES
# --------------------------------------


class FolderTestCase(TemporaryFolderMixin, TestCase):

    pass
