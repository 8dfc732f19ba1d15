# Standard library
import logging

from typing import Dict, List, Tuple, Union, Optional

# Third party
import numpy as np

# Local imports
from splitlora._util import DivergenceError
from splitlora._util import check_finite, round_half_away


LOGGER = logging.getLogger('splitlora.training')

# Inputs whose magnitude is below this value get a zero normalization factor in the entry wise first layer gradient
DEGENERATE_INPUT_THRESHOLD = 1e-6

NORMALIZATIONS = [
    'entry',
    'vector',
    'none'
]


# #####################
# NETWORK CONFIGURATION
# #####################


class EnnConfig:
    """
    Instances of this class describe the shape of a two layer expressive neural network: the dimension of the input
    vector, the amount of neurons in the hidden layer, the amount of (odd) DCT coefficients per activation function and
    the size N of the DCT grid, which is shared with the modulation of the physical layer.

    Labels always follow the +1/-1 convention.

    CHANGELOG

    Added 12.10.2026
    """
    DEFAULT_DICT = {
        'input_dim':        2,
        'hidden_neurons':   6,
        'half_coeffs':      6,
        'dct_size':         128
    }

    # INSTANCE CONSTRUCTION
    # ---------------------

    def __init__(self,
                 input_dim: int,
                 hidden_neurons: int,
                 half_coeffs: int,
                 dct_size: int):
        self.check_counts(input_dim, hidden_neurons, half_coeffs, dct_size)

        self.input_dim = int(input_dim)
        self.hidden_neurons = int(hidden_neurons)
        self.half_coeffs = int(half_coeffs)
        self.dct_size = int(dct_size)

    @classmethod
    def check_counts(cls, input_dim, hidden_neurons, half_coeffs, dct_size):
        """
        Raises a ValueError if one of the counts violates the structural requirements. The grid size has to be even,
        because the chirps of the multiple access scheme are only orthogonal for an even amount of samples.

        CHANGELOG

        Added 12.10.2026

        :raises: ValueError
        """
        if int(input_dim) < 1:
            raise ValueError('input_dim has to be at least 1, got {}'.format(input_dim))
        if int(hidden_neurons) < 1:
            raise ValueError('hidden_neurons has to be at least 1, got {}'.format(hidden_neurons))
        if int(half_coeffs) < 1:
            raise ValueError('half_coeffs has to be at least 1, got {}'.format(half_coeffs))
        if int(dct_size) < 2 or int(dct_size) % 2 != 0:
            raise ValueError('dct_size has to be an even number >= 2, got {}'.format(dct_size))

    # PROPERTIES
    # ----------

    @property
    def shapes(self) -> Dict[str, Tuple[int, ...]]:
        return {
            'A1':   (self.input_dim + 1, self.hidden_neurons),
            'A2':   (self.hidden_neurons + 1, ),
            'F1':   (self.half_coeffs, self.hidden_neurons),
            'F2':   (self.half_coeffs, )
        }

    # UTILITY METHODS
    # ---------------

    def to_dict(self) -> Dict:
        return {
            'input_dim':        self.input_dim,
            'hidden_neurons':   self.hidden_neurons,
            'half_coeffs':      self.half_coeffs,
            'dct_size':         self.dct_size
        }

    def __eq__(self, other):
        if isinstance(other, EnnConfig):
            return self.to_dict() == other.to_dict()
        else:
            raise TypeError('You cannot compare a EnnConfig with anything else than objects of same type!')

    def __repr__(self):
        return 'EnnConfig({})'.format(', '.join('{}={}'.format(k, v) for k, v in self.to_dict().items()))

    # CLASS METHODS
    # -------------

    @classmethod
    def from_dict(cls, config_dict: Dict):
        """
        Creates a new config from a dict, which may contain any subset of the keys in DEFAULT_DICT. Missing keys are
        filled in with their defaults.

        CHANGELOG

        Added 12.10.2026

        :param config_dict:
        :return:
        """
        argument_dict = dict(cls.DEFAULT_DICT)
        argument_dict.update(config_dict)
        return cls(**argument_dict)


# ##################
# THE DCT BASIS
# ##################


def _orders(half_coeffs: int) -> np.ndarray:
    # The odd frequency factors (2q - 1) for q = 1 .. Q/2
    return 2.0 * np.arange(1, half_coeffs + 1) - 1.0


def dct_phase(i, x, N: int):
    """
    Returns the phase of the i-th basis cosine at the argument x. Under the index grid x = -1 + 2k/N the term
    N(x + 1) + 1 equals the odd number 2k + 1.

    CHANGELOG

    Added 12.10.2026
    """
    return (np.pi / (2.0 * N)) * (2.0 * np.asarray(i) - 1.0) * (N * (np.asarray(x, dtype=float) + 1.0) + 1.0)


def _check_basis_arguments(i, x, N: int):
    if np.any(np.asarray(i) < 1):
        raise ValueError('The basis index has to be >= 1, got {}'.format(i))
    if int(N) < 2:
        raise ValueError('The grid size N has to be >= 2, got {}'.format(N))
    check_finite('x', x)


def dct_basis_cos(i, x, N: int):
    """
    The i-th cosine of the DCT basis, that is used to build the adaptive activation functions. The basis is defined
    for every real argument, even outside of the [-1, 1] range, and its value always lies within [-1, 1].

    CHANGELOG

    Added 12.10.2026

    :raises: ValueError

    :param i: index >= 1 (scalar or array)
    :param x: the argument (scalar or array)
    :param N: the grid size
    :return:
    """
    _check_basis_arguments(i, x, N)
    return np.cos(dct_phase(i, x, N))


def dct_basis_sin(i, x, N: int):
    """
    The sine companion of "dct_basis_cos". It appears in the derivative of the activation functions.

    CHANGELOG

    Added 12.10.2026

    :raises: ValueError
    """
    _check_basis_arguments(i, x, N)
    return np.sin(dct_phase(i, x, N))


def _phases(half_coeffs: int, z, N: int) -> np.ndarray:
    # Shape: z.shape + (half_coeffs, )
    z = np.asarray(z, dtype=float)
    return (np.pi / (2.0 * N)) * np.multiply.outer(N * (z + 1.0) + 1.0, _orders(half_coeffs))


# ########################
# THE ACTIVATION FUNCTIONS
# ########################


def activation_eval(F, z, N: int):
    """
    Evaluates the adaptive activation function with the DCT coefficients "F" at the argument "z", which is the weighted
    sum of the odd basis cosines. "z" may be a scalar or an array of arguments; the result has the shape of "z".

    CHANGELOG

    Added 12.10.2026

    :param F: coefficient vector of length Q/2
    :param z:
    :param N:
    :return:
    """
    F = np.asarray(F, dtype=float)
    return np.cos(_phases(len(F), z, N)) @ F


def activation_sine_sum(F, z, N: int):
    """
    Returns sum_q F[q] (2q - 1) sin_q(z). The derivative of the activation function with respect to its argument is
    this sum multiplied with -pi/2.

    CHANGELOG

    Added 12.10.2026
    """
    F = np.asarray(F, dtype=float)
    return np.sin(_phases(len(F), z, N)) @ (F * _orders(len(F)))


def layer_activation(F1, Z, N: int) -> np.ndarray:
    """
    Evaluates the activation functions of a whole hidden layer. "F1" has the shape (Q/2, M), one column of coefficients
    per neuron, and "Z" has the shape (..., M). Neuron m is evaluated with the m-th column.

    CHANGELOG

    Added 12.10.2026

    :param F1:
    :param Z:
    :param N:
    :return:
    """
    F1 = np.asarray(F1, dtype=float)
    cosines = np.cos(_phases(F1.shape[0], Z, N))
    return np.sum(cosines * F1.T, axis=-1)


def layer_sine_sum(F1, Z, N: int) -> np.ndarray:
    F1 = np.asarray(F1, dtype=float)
    sines = np.sin(_phases(F1.shape[0], Z, N))
    return np.sum(sines * (F1.T * _orders(F1.shape[0])), axis=-1)


# FOLDING OF THE INDEX RANGE
# --------------------------


def argument_of_index(k, N: int):
    """
    Maps a grid index onto the argument of the activation functions: x = -1 + 2k/N.

    CHANGELOG

    Added 12.10.2026
    """
    return -1.0 + 2.0 * np.asarray(k, dtype=float) / N


def fold_index(z_bar: int, N: int) -> Tuple[int, int]:
    """
    Given an integer index "z_bar" on the extended grid, this function returns the index k within the base range
    [0, N-1] and the sign, with which the activation at k has to be multiplied to obtain the activation at z_bar.

    Every odd basis cosine is antiperiodic with the period N in the index, so the activation at z_bar equals
    (-1)^floor(z_bar / N) times the activation at the floored remainder of z_bar modulo N. This holds for negative
    indices as well, as long as the remainder is the floored one (python's "divmod").

    EXAMPLE:
    fold_index(11, 8)
    >> (3, -1)

    CHANGELOG

    Added 12.10.2026

    :param z_bar:
    :param N:
    :return: (k, sign)
    """
    quotient, k = divmod(int(z_bar), int(N))
    sign = 1 if quotient % 2 == 0 else -1
    return k, sign


def fold_indices(z_bar: np.ndarray, N: int) -> Tuple[np.ndarray, np.ndarray]:
    # Array version of "fold_index"
    z_bar = np.asarray(z_bar, dtype=np.int64)
    quotient = np.floor_divide(z_bar, N)
    k = np.mod(z_bar, N)
    signs = 1 - 2 * np.mod(quotient, 2)
    return k, signs


def activation_eval_folded(F, k: int, sign: int, N: int) -> float:
    """
    Evaluates the activation function at the base range index "k" and applies the folding sign, which implements the
    non-linearity of the frequency + phase modulation variant at the receiver.

    CHANGELOG

    Added 12.10.2026

    :raises: ValueError

    :param F:
    :param k: index within [0, N-1]
    :param sign: +1 or -1
    :param N:
    :return:
    """
    if int(k) != k or not 0 <= k <= N - 1:
        raise ValueError('The folded index has to be an integer within [0, {}], got {}'.format(N - 1, k))
    if sign not in (-1, 1):
        raise ValueError('The folding sign has to be +1 or -1, got {}'.format(sign))

    return sign * activation_eval(F, argument_of_index(k, N), N)


# ###############
# THE MODEL ITSELF
# ###############


class EnnModel:
    """
    Instances of this class hold all the parameters of a two layer ENN:

    - A1: The (input_dim + 1) x M matrix of the linear weights of the first layer. The first row contains the biases
    - A2: The M + 1 vector of linear weights of the output neuron. The first entry is the bias
    - F1: The Q/2 x M matrix of the DCT coefficients of the hidden activation functions, one column per neuron
    - F2: The Q/2 vector of DCT coefficients of the output activation function

    Model objects are not supposed to be modified after construction: the arrays are flagged read only and every
    update step creates a new object.

    CHANGELOG

    Added 12.10.2026
    """
    GROUPS = ['A1', 'A2', 'F1', 'F2']

    HEADER_LINE = '# splitlora enn model'

    # INSTANCE CONSTRUCTION
    # ---------------------

    def __init__(self, A1, A2, F1, F2, config: EnnConfig):
        self.config = config

        arrays = {'A1': A1, 'A2': A2, 'F1': F1, 'F2': F2}
        for name, shape in config.shapes.items():
            array = np.array(arrays[name], dtype=float)
            if array.shape != shape:
                raise ValueError('The parameter group {} needs the shape {}, got {}'.format(name, shape, array.shape))
            check_finite(name, array)
            array.setflags(write=False)
            setattr(self, name, array)

    def replace(self, **groups):
        """
        Returns a new model, where the parameter groups given as keyword arguments are replaced and all the others are
        taken from this model.

        CHANGELOG

        Added 12.10.2026

        :param groups:
        :return:
        """
        parameters = self.parameters()
        parameters.update(groups)
        return EnnModel(config=self.config, **parameters)

    def parameters(self) -> Dict[str, np.ndarray]:
        return {name: getattr(self, name) for name in self.GROUPS}

    def equals(self, other) -> bool:
        if self.config != other.config:
            return False

        return all(np.array_equal(getattr(self, name), getattr(other, name)) for name in self.GROUPS)

    def __eq__(self, other):
        if isinstance(other, EnnModel):
            return self.equals(other)
        else:
            raise TypeError('You cannot compare a EnnModel with anything else than objects of same type!')

    # SERIALIZATION
    # -------------

    def to_text(self) -> str:
        """
        Returns the flat text representation of the model. The first two lines are comments, the second one holding
        the config fields as key=value pairs. Then there is one line per parameter group: the name of the group followed
        by all its values in row major order. The floats are written with "repr" so that loading is lossless.

        EXAMPLE:
        # splitlora enn model
        # input_dim=2 hidden_neurons=6 half_coeffs=6 dct_size=128
        A1 0.1 -0.25 ...

        CHANGELOG

        Added 12.10.2026

        :return:
        """
        config_string = ' '.join('{}={}'.format(key, value) for key, value in self.config.to_dict().items())
        lines = [self.HEADER_LINE, '# {}'.format(config_string)]
        for name in self.GROUPS:
            values = ' '.join(repr(float(value)) for value in getattr(self, name).ravel())
            lines.append('{} {}'.format(name, values))

        return '\n'.join(lines) + '\n'

    @classmethod
    def from_text(cls, text: str):
        """
        Creates a model from its flat text representation (see "to_text").

        CHANGELOG

        Added 12.10.2026

        :raises: ValueError

        :param text:
        :return:
        """
        lines = [line.strip() for line in text.splitlines() if line.strip()]
        if len(lines) < 2 or lines[0] != cls.HEADER_LINE:
            raise ValueError('The text is not a splitlora model file!')

        config_dict = dict(item.split('=') for item in lines[1].lstrip('#').split())
        config = EnnConfig.from_dict({key: int(value) for key, value in config_dict.items()})

        groups = {}
        for line in lines[2:]:
            name, *values = line.split()
            if name not in cls.GROUPS:
                raise ValueError('Unknown parameter group "{}" in model file'.format(name))
            groups[name] = np.array([float(value) for value in values]).reshape(config.shapes[name])

        missing = set(cls.GROUPS) - set(groups.keys())
        if missing:
            raise ValueError('The model file is missing the groups {}'.format(sorted(missing)))

        return cls(config=config, **groups)

    @classmethod
    def load(cls, path: str):
        with open(path, mode='r') as file:
            return cls.from_text(file.read())

    # CLASS METHODS
    # -------------

    @classmethod
    def zeros(cls, config: EnnConfig):
        return cls(config=config, **{name: np.zeros(shape) for name, shape in config.shapes.items()})

    @classmethod
    def initialize(cls, config: EnnConfig, rng: np.random.Generator):
        """
        Creates a new randomly initialized model. The linear weights are drawn uniformly from [-0.5, 0.5]. Every
        activation function starts out as a sigmoid like shape: the leading Q/2 odd DCT coefficients of tanh on the
        index grid, scaled by 0.5, plus uniform noise within +-0.01.

        CHANGELOG

        Added 12.10.2026

        :param config:
        :param rng:
        :return:
        """
        shapes = config.shapes
        tanh_coefficients = 0.5 * tanh_coefficients_on_grid(config.half_coeffs, config.dct_size)

        return cls(
            A1=rng.uniform(-0.5, 0.5, size=shapes['A1']),
            A2=rng.uniform(-0.5, 0.5, size=shapes['A2']),
            F1=tanh_coefficients[:, None] + rng.uniform(-0.01, 0.01, size=shapes['F1']),
            F2=tanh_coefficients + rng.uniform(-0.01, 0.01, size=shapes['F2']),
            config=config
        )


def tanh_coefficients_on_grid(half_coeffs: int, N: int) -> np.ndarray:
    """
    Projects tanh, sampled on the index grid x_k = -1 + 2k/N, onto the first "half_coeffs" odd basis cosines. These
    cosines are orthogonal over the grid with the squared norm N/2.

    CHANGELOG

    Added 12.10.2026
    """
    grid = argument_of_index(np.arange(N), N)
    cosines = np.cos(_phases(half_coeffs, grid, N))
    return (2.0 / N) * (np.tanh(grid) @ cosines)


# ##################
# FORWARD EVALUATION
# ##################


class ForwardTrace:
    """
    Holds all the intermediate signals of one forward pass, as they are needed to compute the gradients:

    - x: the input vector (s0 without the leading 1)
    - z1: the pre-activations of the hidden layer. In folded mode these are the arguments of the base range indices
    - s1: the hidden activations
    - z2: the pre-activation of the output neuron
    - y_hat: the prediction
    - fold_signs: the folding signs of the hidden neurons (all +1 when folding is not used)

    CHANGELOG

    Added 12.10.2026
    """
    def __init__(self,
                 x: np.ndarray,
                 z1: np.ndarray,
                 s1: np.ndarray,
                 z2: float,
                 y_hat: float,
                 fold_signs: Optional[np.ndarray] = None):
        self.x = np.asarray(x, dtype=float)
        self.z1 = np.asarray(z1, dtype=float)
        self.s1 = np.asarray(s1, dtype=float)
        self.z2 = float(z2)
        self.y_hat = float(y_hat)

        if fold_signs is None:
            fold_signs = np.ones_like(self.z1)
        self.fold_signs = np.asarray(fold_signs, dtype=float)

    @property
    def s0(self) -> np.ndarray:
        return np.concatenate(([1.0], self.x))


def _check_input(model: EnnModel, x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape != (model.config.input_dim, ):
        raise ValueError('The input needs the shape ({}, ), got {}'.format(model.config.input_dim, x.shape))
    check_finite('x', x)
    return x


def quantize_hidden(z1, N: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    Quantizes pre-activations onto the index grid and folds them into the base range. Returns the folded arguments and
    the folding signs.

    CHANGELOG

    Added 12.10.2026
    """
    raw_indices = round_half_away(N * (np.asarray(z1, dtype=float) + 1.0) / 2.0)
    k, signs = fold_indices(raw_indices, N)
    return argument_of_index(k, N), signs.astype(float)


def clamp_hidden(z1, N: int, clamp: int) -> np.ndarray:
    """
    Quantizes pre-activations onto the index grid and clamps the indices into [0, clamp * N - 1], which is what the
    receiver of the plain mode sees with the alphabet extension "clamp". Returns the arguments of the clamped indices.

    CHANGELOG

    Added 19.10.2026
    """
    raw_indices = round_half_away(N * (np.asarray(z1, dtype=float) + 1.0) / 2.0)
    return argument_of_index(np.clip(raw_indices, 0, int(clamp) * N - 1), N)


def hidden_arguments(Z1, N: int, folded: bool = False, clamp: int = 0) -> Tuple[np.ndarray, np.ndarray]:
    """
    Applies the non-linearity of a receiver to the hidden pre-activations "Z1" and returns the arguments for the
    activation functions together with the folding signs:

    - folded: the frequency + BPSK receiver, quantized and folded into the base range
    - clamp > 0: the plain receiver with the alphabet extension "clamp", quantized and clamped
    - neither: the exact pre-activations with the signs +1

    CHANGELOG

    Added 19.10.2026

    :raises: ValueError (both folded and clamped)
    """
    if folded and clamp:
        raise ValueError('The hidden layer can either be folded or clamped, not both!')

    Z1 = np.asarray(Z1, dtype=float)
    if folded:
        return quantize_hidden(Z1, N)
    if clamp:
        return clamp_hidden(Z1, N, clamp), np.ones_like(Z1)
    return Z1, np.ones_like(Z1)


def complete_forward(model: EnnModel,
                     x: np.ndarray,
                     z1: np.ndarray,
                     fold_signs: Optional[np.ndarray] = None) -> ForwardTrace:
    """
    Completes a forward pass from given hidden pre-activations "z1": this is everything that happens after the first
    linear layer. The receiver of a split session uses this with the demodulated pre-activations.

    CHANGELOG

    Added 12.10.2026

    :param model:
    :param x:
    :param z1:
    :param fold_signs:
    :return:
    """
    N = model.config.dct_size
    z1 = np.asarray(z1, dtype=float)
    if fold_signs is None:
        fold_signs = np.ones_like(z1)

    s1 = fold_signs * layer_activation(model.F1, z1, N)
    z2 = model.A2[0] + s1 @ model.A2[1:]
    y_hat = activation_eval(model.F2, z2, N)

    return ForwardTrace(x=x, z1=z1, s1=s1, z2=z2, y_hat=y_hat, fold_signs=fold_signs)


def forward(model: EnnModel, x, folded: bool = False, clamp: int = 0) -> ForwardTrace:
    """
    Computes the forward pass of the network for the single input vector "x":

    z1 = A1^T [1, x^T]^T, s1 = sigma(z1), z2 = A2^T [1, s1^T]^T, y_hat = sigma(z2)

    If "folded" is True, the hidden pre-activations are quantized onto the index grid and the folded non-linearity is
    used instead, as it happens at the receiver with the frequency + phase modulation. With "clamp" > 0 they are
    quantized and clamped like at the receiver of the plain mode, see "hidden_arguments".

    CHANGELOG

    Added 12.10.2026

    Changed 19.10.2026
    Added the clamped non-linearity of the plain mode.

    :raises: ValueError

    :param model:
    :param x:
    :param folded:
    :param clamp: the alphabet extension of the plain mode, 0 for no clamping
    :return:
    """
    x = _check_input(model, x)
    z1 = model.A1[0] + x @ model.A1[1:]

    z1, fold_signs = hidden_arguments(z1, model.config.dct_size, folded, clamp)
    return complete_forward(model, x, z1, fold_signs)


def predict(model: EnnModel, X, folded: bool = False, clamp: int = 0) -> np.ndarray:
    """
    Evaluates the network for all the rows of the input matrix "X" at once and returns the vector of predictions.

    CHANGELOG

    Added 12.10.2026
    """
    N = model.config.dct_size
    X = np.atleast_2d(np.asarray(X, dtype=float))
    Z1 = model.A1[0] + X @ model.A1[1:]

    Z1, fold_signs = hidden_arguments(Z1, N, folded, clamp)
    S1 = fold_signs * layer_activation(model.F1, Z1, N)
    Z2 = model.A2[0] + S1 @ model.A2[1:]
    return activation_eval(model.F2, Z2, N)


def classify(y_hat) -> np.ndarray:
    # sign(0) counts as +1
    return np.where(np.asarray(y_hat) >= 0, 1, -1)


# #########
# GRADIENTS
# #########


class Gradients:
    """
    A container for the gradients of the loss 0.5 * (y - y_hat)^2 with respect to the four parameter groups.

    CHANGELOG

    Added 12.10.2026
    """
    def __init__(self, A1, A2, F1, F2):
        self.A1 = np.asarray(A1, dtype=float)
        self.A2 = np.asarray(A2, dtype=float)
        self.F1 = np.asarray(F1, dtype=float)
        self.F2 = np.asarray(F2, dtype=float)

    def items(self):
        return [(name, getattr(self, name)) for name in EnnModel.GROUPS]


def first_layer_factors(trace: ForwardTrace, model: EnnModel, error: float) -> np.ndarray:
    """
    Computes the part of the first layer gradient, which only depends on receiver side information, one value per
    hidden neuron k:

    c[k] = -(pi^2 / 4) * error * a2[k] * (sum_p F2[p] (2p-1) sin_p(z2)) * (sum_q F1[q,k] (2q-1) sin_q(z1[k]))

    The gradient of the loss with respect to A1[m, k] is c[k] times the input normalization of s0[m]. The receiver
    transmits these factors back to the transmitter.

    CHANGELOG

    Added 12.10.2026

    :param trace:
    :param model:
    :param error: the task error y - y_hat
    :return:
    """
    check_finite('error', error)
    N = model.config.dct_size
    outer_sum = activation_sine_sum(model.F2, trace.z2, N)
    inner_sums = trace.fold_signs * layer_sine_sum(model.F1, trace.z1, N)
    return -(np.pi ** 2 / 4.0) * error * model.A2[1:] * outer_sum * inner_sums


def input_normalization(s0, normalization: str = 'entry', threshold: float = DEGENERATE_INPUT_THRESHOLD) -> np.ndarray:
    """
    Returns the factor, with which the receiver factors are multiplied for every input entry s0[m]:

    - entry: s0[m] / |s0[m]|^2, entries with |s0[m]| below the threshold get the factor 0
    - vector: s0[m] / ||s0||^2 (normalized LMS)
    - none: s0[m], which gives the plain gradient of the loss

    CHANGELOG

    Added 12.10.2026

    :raises: ValueError

    :param s0:
    :param normalization:
    :param threshold:
    :return:
    """
    s0 = np.asarray(s0, dtype=float)

    if normalization == 'entry':
        degenerate = np.abs(s0) < threshold
        if np.any(degenerate):
            LOGGER.debug('degenerate input entries %s, using a zero normalization factor', np.flatnonzero(degenerate))
        factors = np.zeros_like(s0)
        factors[~degenerate] = 1.0 / s0[~degenerate]
        return factors
    elif normalization == 'vector':
        return s0 / np.dot(s0, s0)
    elif normalization == 'none':
        return s0.copy()

    raise ValueError('The normalization "{}" is not one of {}'.format(normalization, NORMALIZATIONS))


def grad_first_layer(trace: ForwardTrace,
                     model: EnnModel,
                     error: float,
                     normalization: str = 'entry') -> np.ndarray:
    """
    The gradient for the linear weights of the first layer, with the shape (input_dim + 1) x M. With the default
    "entry" normalization the entry (m, k) is the negative of the LMS update information

    (pi^2 / 4) * (s0[m] / |s0[m]|^2) * error * a2[k] * sum_p(...) * sum_q(...)

    CHANGELOG

    Added 12.10.2026

    :param trace:
    :param model:
    :param error:
    :param normalization: one of "entry", "vector", "none"
    :return:
    """
    factors = first_layer_factors(trace, model, error)
    return np.outer(input_normalization(trace.s0, normalization), factors)


def grad_receiver_params(trace: ForwardTrace,
                         model: EnnModel,
                         error: float) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    The gradients of the loss with respect to the parameters, which are located at the receiver: the output weights A2,
    the hidden DCT coefficients F1 and the output DCT coefficients F2. Derived with the chain rule through the network,
    using d cos_q(z) / dz = -(pi/2)(2q-1) sin_q(z).

    CHANGELOG

    Added 12.10.2026

    :param trace:
    :param model:
    :param error:
    :return: (gA2, gF1, gF2)
    """
    check_finite('error', error)
    N = model.config.dct_size
    half_coeffs = model.config.half_coeffs

    # d y_hat / d z2
    output_slope = -(np.pi / 2.0) * activation_sine_sum(model.F2, trace.z2, N)

    gF2 = -error * np.cos(_phases(half_coeffs, trace.z2, N))
    gA2 = -error * output_slope * np.concatenate(([1.0], trace.s1))

    hidden_cosines = np.cos(_phases(half_coeffs, trace.z1, N))
    neuron_factors = -error * output_slope * model.A2[1:] * trace.fold_signs
    gF1 = hidden_cosines.T * neuron_factors

    return gA2, gF1, gF2


def gradients(trace: ForwardTrace, model: EnnModel, error: float, normalization: str = 'entry') -> Gradients:
    gA2, gF1, gF2 = grad_receiver_params(trace, model, error)
    return Gradients(
        A1=grad_first_layer(trace, model, error, normalization),
        A2=gA2,
        F1=gF1,
        F2=gF2
    )


# ###################
# THE LMS ADAPTATION
# ###################


class LearningRates:
    """
    The step sizes of the LMS updates. The linear weights (A1, A2) and the DCT coefficients (F1, F2) have separate step
    sizes, because the dynamics of the coefficients are more sensitive.

    CHANGELOG

    Added 12.10.2026
    """
    DEFAULT_DICT = {
        'weights':          1e-2,
        'coefficients':     1e-3
    }

    GROUP_MAP = {
        'A1':   'weights',
        'A2':   'weights',
        'F1':   'coefficients',
        'F2':   'coefficients'
    }

    def __init__(self, weights: float, coefficients: float):
        for name, value in (('weights', weights), ('coefficients', coefficients)):
            if not np.isfinite(value) or value < 0:
                raise ValueError('The learning rate for {} has to be a finite value >= 0, got {}'.format(name, value))

        self.weights = float(weights)
        self.coefficients = float(coefficients)

    def for_group(self, group: str) -> float:
        return getattr(self, self.GROUP_MAP[group])

    def to_dict(self) -> Dict:
        return {'weights': self.weights, 'coefficients': self.coefficients}

    @classmethod
    def from_dict(cls, rates_dict: Dict):
        argument_dict = dict(cls.DEFAULT_DICT)
        argument_dict.update(rates_dict)
        return cls(**argument_dict)


def lms_step(model: EnnModel,
             grads: Union[Gradients, Dict[str, np.ndarray]],
             learning_rates: LearningRates) -> EnnModel:
    """
    Performs one LMS step: every parameter group is moved against its gradient, scaled with the learning rate of that
    group. Groups missing from a gradient dict stay unchanged. The given model is not modified, a new one is returned.

    CHANGELOG

    Added 12.10.2026

    :raises: ValueError (shape mismatch or non-finite gradient)

    :param model:
    :param grads:
    :param learning_rates:
    :return:
    """
    grad_items = grads.items() if isinstance(grads, Gradients) else list(grads.items())

    updated = {}
    for name, gradient in grad_items:
        current = getattr(model, name)
        gradient = np.asarray(gradient, dtype=float)
        if gradient.shape != current.shape:
            raise ValueError('The gradient of {} needs the shape {}, got {}'.format(
                name, current.shape, gradient.shape
            ))
        check_finite('gradient of {}'.format(name), gradient)
        updated[name] = current - learning_rates.for_group(name) * gradient

    return model.replace(**updated)


# ########
# TRAINING
# ########


def accuracy(model: EnnModel, dataset, folded: bool = False, clamp: int = 0) -> float:
    """
    Returns the fraction of samples of the dataset, whose label equals the sign of the prediction.

    CHANGELOG

    Added 12.10.2026

    :raises: ValueError (empty dataset)
    """
    if len(dataset) == 0:
        raise ValueError('The accuracy of an empty dataset is not defined!')

    return float(np.mean(classify(predict(model, dataset.X, folded, clamp)) == dataset.y))


def mean_squared_error(model: EnnModel, dataset, folded: bool = False, clamp: int = 0) -> float:
    if len(dataset) == 0:
        raise ValueError('The mean squared error of an empty dataset is not defined!')

    return float(np.mean((dataset.y - predict(model, dataset.X, folded, clamp)) ** 2))


def _train_epoch(parameters: Dict[str, np.ndarray],
                 X: np.ndarray,
                 y: np.ndarray,
                 order: np.ndarray,
                 epoch: int,
                 learning_rates: LearningRates,
                 normalization: str,
                 folded: bool,
                 clamp: int,
                 N: int) -> Tuple[int, float]:
    # Same arithmetic as forward, gradients and lms_step, but the parameter arrays are updated in place
    A1, A2, F1, F2 = (parameters[name] for name in EnnModel.GROUPS)
    orders = _orders(F1.shape[0])
    weight_rate = learning_rates.weights
    coefficient_rate = learning_rates.coefficients

    correct = 0
    squared_error = 0.0
    for sample, index in enumerate(order):
        x = X[index]
        z1, fold_signs = hidden_arguments(A1[0] + x @ A1[1:], N, folded, clamp)
        hidden_phases = _phases(len(orders), z1, N)
        hidden_cosines = np.cos(hidden_phases)
        s1 = fold_signs * np.sum(hidden_cosines * F1.T, axis=-1)

        z2 = A2[0] + s1 @ A2[1:]
        output_phases = _phases(len(orders), z2, N)
        output_cosines = np.cos(output_phases)
        y_hat = output_cosines @ F2

        error = y[index] - y_hat
        if not np.isfinite(error):
            raise DivergenceError(epoch, sample)

        correct += int((1 if y_hat >= 0 else -1) == y[index])
        squared_error += error ** 2

        outer_sum = np.sin(output_phases) @ (F2 * orders)
        inner_sums = fold_signs * np.sum(np.sin(hidden_phases) * (F1.T * orders), axis=-1)
        factors = -(np.pi ** 2 / 4.0) * error * A2[1:] * outer_sum * inner_sums
        output_slope = -(np.pi / 2.0) * outer_sum

        gA1 = np.outer(input_normalization(np.concatenate(([1.0], x)), normalization), factors)
        gA2 = -error * output_slope * np.concatenate(([1.0], s1))
        gF1 = hidden_cosines.T * (-error * output_slope * A2[1:] * fold_signs)
        gF2 = -error * output_cosines

        for name, gradient in (('A1', gA1), ('A2', gA2), ('F1', gF1), ('F2', gF2)):
            if not np.all(np.isfinite(gradient)):
                raise DivergenceError(epoch, sample, 'the gradient of {} is not finite'.format(name))

        A1 -= weight_rate * gA1
        A2 -= weight_rate * gA2
        F1 -= coefficient_rate * gF1
        F2 -= coefficient_rate * gF2

    return correct, squared_error


def train_centralized(model: EnnModel,
                      dataset,
                      epochs: int,
                      learning_rates: Optional[LearningRates] = None,
                      rng_seed: int = 0,
                      normalization: str = 'vector',
                      folded: bool = False,
                      clamp: int = 0) -> Tuple[EnnModel, List[Dict]]:
    """
    Trains the whole network at a single location with the sample by sample LMS algorithm and the mean squared error
    loss. The order of the samples is shuffled every epoch with a generator seeded by "rng_seed", so that two runs with
    the same seed produce identical models.

    Returns the trained model and one dict per epoch with the keys "epoch", "accuracy" and "mse". Both metrics are
    computed on-line: every prediction is made before the update with that sample.

    The updates are the ones of "lms_step" applied to "gradients" of a "forward" trace. Within an epoch they are
    carried out in place on private copies of the parameter arrays, so no intermediate model objects are created.

    CHANGELOG

    Added 12.10.2026

    Changed 19.10.2026
    The epochs are now computed in place. Added the "clamp" option, which trains with the non-linearity of the plain
    receiver.

    :raises: DivergenceError, ValueError

    :param model:
    :param dataset:
    :param epochs:
    :param learning_rates:
    :param rng_seed:
    :param normalization: input normalization of the first layer gradient
    :param folded: use the folded (quantized) non-linearity in the hidden layer
    :param clamp: use the clamped (quantized) non-linearity of the plain receiver with this alphabet extension
    :return:
    """
    if len(dataset) == 0:
        raise ValueError('Cannot train on an empty dataset!')
    if np.any(np.abs(dataset.y) != 1):
        raise ValueError('The labels have to be either +1 or -1!')
    if folded and clamp:
        raise ValueError('The hidden layer can either be folded or clamped, not both!')
    if normalization not in NORMALIZATIONS:
        raise ValueError('The normalization "{}" is not one of {}'.format(normalization, NORMALIZATIONS))

    learning_rates = learning_rates or LearningRates.from_dict({})
    rng = np.random.default_rng(rng_seed)
    X = np.asarray(dataset.X, dtype=float)
    y = np.asarray(dataset.y, dtype=float)
    parameters = {name: np.array(array) for name, array in model.parameters().items()}

    metrics = []
    for epoch in range(int(epochs)):
        correct, squared_error = _train_epoch(
            parameters, X, y, rng.permutation(len(dataset)), epoch,
            learning_rates, normalization, folded, clamp, model.config.dct_size
        )
        try:
            model = EnnModel(config=model.config, **parameters)
        except ValueError as exception:
            raise DivergenceError(epoch, len(dataset) - 1, str(exception))

        metrics.append({
            'epoch':        epoch,
            'accuracy':     correct / len(dataset),
            'mse':          squared_error / len(dataset)
        })
        LOGGER.info('epoch %d: accuracy %.4f mse %.5f', epoch, metrics[-1]['accuracy'], metrics[-1]['mse'])

    return model, metrics
