# Standard library
from typing import Callable, Dict, Tuple

# Third party
import numpy as np


# ##################
# THE LABEL FUNCTIONS
# ##################


# Maps the names of the labelers to functions, which take an input matrix of shape (n, 2) and return the +1/-1 labels
LABELERS: Dict[str, Callable[[np.ndarray], np.ndarray]] = {}


def register_labeler(name: str):
    """
    Decorator, which registers the decorated function as a labeler with the given name.

    CHANGELOG

    Added 14.10.2026
    """
    def decorator(function):
        LABELERS[name] = function
        return function
    return decorator


def get_labeler(name: str) -> Callable[[np.ndarray], np.ndarray]:
    if name not in LABELERS:
        raise KeyError('The labeler "{}" is not one of {}'.format(name, sorted(LABELERS.keys())))
    return LABELERS[name]


def sign_labels(values: np.ndarray) -> np.ndarray:
    # sign(0) counts as +1
    return np.where(values >= 0, 1, -1)


@register_labeler('halfplane')
def halfplane(X: np.ndarray) -> np.ndarray:
    return sign_labels(X[:, 0])


RINGS_INNER_RADIUS = 0.4
RINGS_OUTER_RADIUS = 0.8


@register_labeler('rings')
def rings(X: np.ndarray) -> np.ndarray:
    """
    +1 on the annulus with the radii 0.4 and 0.8 around the origin, -1 elsewhere. The positive class covers the
    fraction 0.48 * pi / 4 (about 0.377) of the square [-1, 1]^2.

    CHANGELOG

    Added 14.10.2026
    """
    radius = np.hypot(X[:, 0], X[:, 1])
    return np.where((radius >= RINGS_INNER_RADIUS) & (radius <= RINGS_OUTER_RADIUS), 1, -1)


@register_labeler('checker2x2')
def checker(X: np.ndarray) -> np.ndarray:
    return sign_labels(X[:, 0] * X[:, 1])


# ############
# THE DATASETS
# ############


class Dataset:
    """
    A set of input vectors "X" (one per row) and their labels "y" in {-1, +1}.

    CHANGELOG

    Added 14.10.2026
    """
    def __init__(self, X, y):
        self.X = np.asarray(X, dtype=float)
        self.y = np.asarray(y, dtype=float)

        if self.X.ndim != 2 or len(self.X) != len(self.y):
            raise ValueError('A dataset needs a matrix of inputs and one label per row, got shapes {} and {}'.format(
                self.X.shape,
                self.y.shape
            ))

    def __len__(self):
        return len(self.y)

    def positive_fraction(self) -> float:
        return float(np.mean(self.y > 0))


class DatasetSpec:
    """
    Describes the binary map task: the labeler, the sizes of the train and the test set and the seed. The inputs are
    drawn independently and uniformly from [-1, 1]^2.

    CHANGELOG

    Added 14.10.2026
    """
    DEFAULT_DICT = {
        'labeler':      'rings',
        'n_train':      200000,
        'n_test':       20000,
        'seed':         0
    }

    def __init__(self, labeler: str, n_train: int, n_test: int, seed: int):
        get_labeler(labeler)
        if int(n_train) < 1:
            raise ValueError('n_train has to be at least 1, got {}'.format(n_train))
        if int(n_test) < 1:
            raise ValueError('n_test has to be at least 1, got {}'.format(n_test))
        if int(seed) < 0:
            raise ValueError('The seed cannot be negative, got {}'.format(seed))

        self.labeler = labeler
        self.n_train = int(n_train)
        self.n_test = int(n_test)
        self.seed = int(seed)

    def to_dict(self) -> Dict:
        return {
            'labeler':      self.labeler,
            'n_train':      self.n_train,
            'n_test':       self.n_test,
            'seed':         self.seed
        }

    @classmethod
    def from_dict(cls, spec_dict: Dict):
        argument_dict = dict(cls.DEFAULT_DICT)
        argument_dict.update(spec_dict)
        return cls(**argument_dict)


def sample_map(labeler: str, n: int, rng: np.random.Generator) -> Dataset:
    X = rng.uniform(-1.0, 1.0, size=(int(n), 2))
    return Dataset(X, get_labeler(labeler)(X))


def make_map_dataset(spec: DatasetSpec) -> Tuple[Dataset, Dataset]:
    """
    Draws the train and the test set described by "spec". Equal specs give identical datasets.

    CHANGELOG

    Added 14.10.2026

    :raises: KeyError (unknown labeler)

    :param spec:
    :return: (train, test)
    """
    rng = np.random.default_rng(spec.seed)
    train = sample_map(spec.labeler, spec.n_train, rng)
    test = sample_map(spec.labeler, spec.n_test, rng)
    return train, test
