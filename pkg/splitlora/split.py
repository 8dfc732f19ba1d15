# Standard library
import logging

from typing import Callable, Dict, Optional, Sequence, Tuple

# Third party
import numpy as np
import pandas as pd

# Local imports
from splitlora._util import DivergenceError

from splitlora.enn import EnnConfig, EnnModel, ForwardTrace, Gradients, LearningRates
from splitlora.enn import argument_of_index, classify, complete_forward, first_layer_factors
from splitlora.enn import grad_receiver_params, input_normalization, layer_activation, activation_eval
from splitlora.enn import lms_step, predict, NORMALIZATIONS

from splitlora.phy import PhyConfig, ChirpBank
from splitlora.phy import quantize_array, quantize_gradient, dequantize_gradient
from splitlora.phy import modulate_batch, multiplex_frames, dechirp_frames
from splitlora.phy import noncoherent_metrics, coherent_metrics, decide_noncoherent, decide_coherent

from splitlora.probability import analytic_ser

from splitlora.channels import ChannelModel, get_channel

from splitlora.datasets import Dataset


LOGGER = logging.getLogger('splitlora.split')
SWEEP_LOGGER = logging.getLogger('splitlora.sweep')

GRADIENT_SYMBOLS = [
    'per_entry',
    'per_neuron'
]

# Every gradient symbol is sent this often by default. Two combined receptions keep the symbol error rate of the
# gradient link below 1e-2 at -10 dB for N = 128 in both modes
BACKWARD_REPETITIONS = 2

# Upper limit for the amount of complex samples, that are processed in one go by "transmit_symbols"
CHUNK_SAMPLES = 2 ** 20


# ##################
# THE SPLIT SESSION
# ##################


class SplitSession:
    """
    The two parts of a network, which is split after its first linear layer, together with everything that describes
    the link between them:

    - tx_weights: The weights A1 of the first layer, which are located at the transmitter
    - rx_params: The dict with the parameters A2, F1 and F2, which are located at the receiver
    - phy: The waveform layer. Its N has to equal the DCT size of the network
    - forward_channel: The channel, which carries the pre-activations from the transmitter to the receiver
    - backward_channel: The channel, which carries the gradient information back
    - learning_rates, normalization: The LMS settings
    - gradient_symbols: "per_entry" sends one symbol per entry of the first layer gradient, "per_neuron" sends the M
      receiver factors once and lets the transmitter reuse them for all of the inputs
    - backward_repetitions: How often every gradient symbol is sent. The receptions are combined at the transmitter,
      which lifts the effective SNR of the gradient link by a factor of up to R

    The sessions are not modified by the training functions. They return new session objects instead.

    CHANGELOG

    Added 14.10.2026

    Changed 19.10.2026
    Added the repetitions of the gradient symbols. A single reception at -10 dB misses the gradient link target of
    a symbol error rate below 1e-2.
    """
    RX_GROUPS = ['A2', 'F1', 'F2']

    # INSTANCE CONSTRUCTION
    # ---------------------

    def __init__(self,
                 tx_weights: np.ndarray,
                 rx_params: Dict[str, np.ndarray],
                 config: EnnConfig,
                 phy: PhyConfig,
                 forward_channel: ChannelModel,
                 backward_channel: ChannelModel,
                 learning_rates: Optional[LearningRates] = None,
                 normalization: str = 'vector',
                 gradient_symbols: str = 'per_entry',
                 backward_repetitions: int = BACKWARD_REPETITIONS):
        if phy.N != config.dct_size:
            raise ValueError('The PHY uses N={}, but the network uses the DCT size {}'.format(phy.N, config.dct_size))
        if normalization not in NORMALIZATIONS:
            raise ValueError('The normalization "{}" is not one of {}'.format(normalization, NORMALIZATIONS))
        if gradient_symbols not in GRADIENT_SYMBOLS:
            raise ValueError('gradient_symbols "{}" is not one of {}'.format(gradient_symbols, GRADIENT_SYMBOLS))
        if int(backward_repetitions) < 1:
            raise ValueError('backward_repetitions has to be at least 1, got {}'.format(backward_repetitions))

        self.config = config
        self.phy = phy
        self.forward_channel = forward_channel
        self.backward_channel = backward_channel
        self.learning_rates = learning_rates or LearningRates.from_dict({})
        self.normalization = normalization
        self.gradient_symbols = gradient_symbols
        self.backward_repetitions = int(backward_repetitions)

        # Assembling the model checks the shapes of all the parts
        self._model = EnnModel(A1=tx_weights, config=config, **{name: rx_params[name] for name in self.RX_GROUPS})

    # PROPERTIES
    # ----------

    @property
    def model(self) -> EnnModel:
        return self._model

    @property
    def tx_weights(self) -> np.ndarray:
        return self._model.A1

    @property
    def rx_params(self) -> Dict[str, np.ndarray]:
        return {name: getattr(self._model, name) for name in self.RX_GROUPS}

    @property
    def access(self) -> str:
        return self.phy.access

    @property
    def folded(self) -> bool:
        return self.phy.mode == 'fsk_bpsk'

    # UTILITY METHODS
    # ---------------

    def with_model(self, model: EnnModel):
        return SplitSession.from_model(
            model,
            self.phy,
            self.forward_channel,
            self.backward_channel,
            learning_rates=self.learning_rates,
            normalization=self.normalization,
            gradient_symbols=self.gradient_symbols,
            backward_repetitions=self.backward_repetitions
        )

    @classmethod
    def from_model(cls,
                   model: EnnModel,
                   phy: PhyConfig,
                   forward_channel: ChannelModel,
                   backward_channel: ChannelModel,
                   learning_rates: Optional[LearningRates] = None,
                   normalization: str = 'vector',
                   gradient_symbols: str = 'per_entry',
                   backward_repetitions: int = BACKWARD_REPETITIONS):
        """
        Splits the given model after its first linear layer.

        CHANGELOG

        Added 14.10.2026
        """
        return cls(
            model.A1,
            {name: getattr(model, name) for name in cls.RX_GROUPS},
            model.config,
            phy,
            forward_channel,
            backward_channel,
            learning_rates=learning_rates,
            normalization=normalization,
            gradient_symbols=gradient_symbols,
            backward_repetitions=backward_repetitions
        )


# ################
# THE LINK ITSELF
# ################


class Transmission:
    """
    The outcome of sending a batch of symbols over a link: the symbols that were sent, the symbols that were detected,
    the channel gain every symbol has seen and the amount of values, that had to be clamped to fit the alphabet.

    "phase_errors" marks the symbols, whose detection metric at the sent index has the wrong sign, no matter which
    index was detected. This is the event the BPSK term of the error probability describes. It is all False in the
    plain mode.

    CHANGELOG

    Added 14.10.2026

    Changed 19.10.2026
    Added the phase errors.
    """
    def __init__(self, k, signs, k_hat, signs_hat, gains, clamps: int = 0, phase_errors=None):
        self.k = np.asarray(k)
        self.signs = np.asarray(signs)
        self.k_hat = np.asarray(k_hat)
        self.signs_hat = np.asarray(signs_hat)
        self.gains = np.asarray(gains)
        self.clamps = int(clamps)

        if phase_errors is None:
            phase_errors = np.zeros(self.k.shape, dtype=bool)
        self.phase_errors = np.asarray(phase_errors, dtype=bool)

    def __len__(self):
        return len(self.k)

    @property
    def errors(self) -> np.ndarray:
        return (self.k != self.k_hat) | (self.signs != self.signs_hat)

    @property
    def error_count(self) -> int:
        return int(np.sum(self.errors))

    @property
    def sign_errors(self) -> np.ndarray:
        # Only the symbols with a correctly detected frequency
        return (self.k == self.k_hat) & (self.signs != self.signs_hat)


def _chunk_size(phy: PhyConfig) -> int:
    frames = max(1, CHUNK_SAMPLES // (phy.samples_per_symbol * phy.streams))
    return frames * phy.streams


def _receive_chunk(waveforms: np.ndarray, phy: PhyConfig, channel, rng) -> Tuple[np.ndarray, np.ndarray]:
    count, samples = waveforms.shape

    if phy.access == 'ocdm':
        # Values are grouped into frames of M streams. Streams of an incomplete last frame stay silent
        streams = phy.streams
        frames = -(-count // streams)
        padded = np.zeros((frames * streams, samples), dtype=complex)
        padded[:count] = waveforms

        bank = ChirpBank.for_config(phy)
        received, h = channel.propagate_batch(
            multiplex_frames(padded.reshape(frames, streams, samples), bank),
            rng,
            phy.oversampling
        )
        received = dechirp_frames(received, bank).reshape(frames * streams, samples)[:count]
        gains = np.repeat(h, streams)[:count]
    else:
        received, gains = channel.propagate_batch(waveforms, rng, phy.oversampling)

    return received, gains


def _transmit_chunk(k, signs, phy: PhyConfig, channel, rng, repetitions: int):
    waveforms = modulate_batch(k, signs, phy)

    metrics, first_gains = 0.0, None
    for _ in range(repetitions):
        received, gains = _receive_chunk(waveforms, phy, channel, rng)
        if phy.mode == 'plain_fsk':
            metrics = metrics + noncoherent_metrics(received, phy)
        else:
            metrics = metrics + coherent_metrics(received, gains, phy)
        if first_gains is None:
            first_gains = gains

    if phy.mode == 'plain_fsk':
        ones = np.ones(len(k), dtype=np.int64)
        return decide_noncoherent(metrics), ones, first_gains, np.zeros(len(k), dtype=bool)

    k_hat, signs_hat = decide_coherent(metrics)
    # The sign of the metric at the sent index, whatever index was detected
    phase_errors = np.where(metrics[np.arange(len(k)), k] >= 0, 1, -1) != signs
    return k_hat, signs_hat, first_gains, phase_errors


def transmit_symbols(k,
                     signs,
                     phy: PhyConfig,
                     channel_model: ChannelModel,
                     rng: np.random.Generator,
                     repetitions: int = 1) -> Transmission:
    """
    Sends the given symbols over the link: modulation, access scheme, channel and detection. With TDM every symbol
    uses its own channel use. With OCDM the symbols are grouped into frames of M streams, which share one channel use
    and thus one channel gain. The plain mode is detected blindly, the frequency + BPSK mode coherently with the true
    channel gain.

    With "repetitions" R > 1 every symbol is sent R times over independent channel uses. The detector adds up the
    metrics of the R receptions before deciding: the squared correlation magnitudes in the plain mode, the gain
    weighted correlations in the frequency + BPSK mode. The gains of the transmission are the ones of the first
    repetition.

    CHANGELOG

    Added 14.10.2026

    Changed 19.10.2026
    Added the repetitions, which the gradient link uses as its processing gain.

    :raises: ValueError (repetitions < 1)

    :param k:
    :param signs:
    :param phy:
    :param channel_model:
    :param rng:
    :param repetitions:
    :return:
    """
    if int(repetitions) < 1:
        raise ValueError('Every symbol has to be sent at least once, got {} repetitions'.format(repetitions))

    k = np.asarray(k, dtype=np.int64).ravel()
    signs = np.asarray(signs, dtype=np.int64).ravel()
    channel = get_channel(channel_model)

    chunk = _chunk_size(phy)
    results = [
        _transmit_chunk(k[i:i + chunk], signs[i:i + chunk], phy, channel, rng, int(repetitions))
        for i in range(0, len(k), chunk)
    ]
    if not results:
        empty = np.zeros(0, dtype=np.int64)
        return Transmission(empty, empty, empty, empty, np.zeros(0, dtype=complex))

    k_hat, signs_hat, gains, phase_errors = (np.concatenate(parts) for parts in zip(*results))
    return Transmission(k, signs, k_hat, signs_hat, gains, phase_errors=phase_errors)


def transmit_values(values, phy: PhyConfig, channel_model: ChannelModel, rng: np.random.Generator) -> Transmission:
    """
    Quantizes real values onto the index grid (clamping in the plain mode, folding in the frequency + BPSK mode) and
    sends the resulting symbols over the link. The values are sent in the order of "values.ravel()".

    CHANGELOG

    Added 14.10.2026
    """
    k, signs, clamped = quantize_array(np.ravel(values), phy.N, phy.mode, phy.extension)
    transmission = transmit_symbols(k, signs, phy, channel_model, rng)
    transmission.clamps = int(np.sum(clamped))
    if transmission.clamps:
        LOGGER.debug('%d of %d values clamped to the alphabet', transmission.clamps, len(transmission))
    return transmission


# FORWARD LINK
# ------------


def forward_over_channel(session: SplitSession,
                         x,
                         rng: np.random.Generator) -> Tuple[ForwardTrace, Transmission]:
    """
    One forward pass through the split network: the transmitter computes the pre-activations of the hidden layer
    and sends them over the forward channel. The receiver applies the activation functions to the detected values
    (using the detected signs in the frequency + BPSK mode) and completes the second layer.

    The returned transmission holds the channel gains and the per stream symbol errors against the transmitted
    indices.

    CHANGELOG

    Added 14.10.2026

    :raises: ValueError

    :param session:
    :param x:
    :param rng:
    :return: (trace at the receiver, transmission)
    """
    model = session.model
    x = np.asarray(x, dtype=float)
    if x.shape != (session.config.input_dim, ):
        raise ValueError('The input needs the shape ({}, ), got {}'.format(session.config.input_dim, x.shape))

    z1 = model.A1[0] + x @ model.A1[1:]
    transmission = transmit_values(z1, session.phy, session.forward_channel, rng)

    z1_hat = argument_of_index(transmission.k_hat, session.config.dct_size)
    trace = complete_forward(model, x, z1_hat, transmission.signs_hat.astype(float))
    return trace, transmission


def forward_batch_over_channel(session: SplitSession,
                               X,
                               rng: np.random.Generator) -> Tuple[np.ndarray, Transmission]:
    # Noisy inference for many inputs at once. Every input gets its own channel uses
    model = session.model
    N = session.config.dct_size
    X = np.atleast_2d(np.asarray(X, dtype=float))

    Z1 = model.A1[0] + X @ model.A1[1:]
    transmission = transmit_values(Z1, session.phy, session.forward_channel, rng)

    Z1_hat = argument_of_index(transmission.k_hat, N).reshape(Z1.shape)
    signs = transmission.signs_hat.reshape(Z1.shape)
    S1 = signs * layer_activation(model.F1, Z1_hat, N)
    Z2 = model.A2[0] + S1 @ model.A2[1:]
    return activation_eval(model.F2, Z2, N), transmission


# BACKWARD LINK
# -------------


def backward_over_channel(session: SplitSession,
                          trace: ForwardTrace,
                          error: float,
                          rng: np.random.Generator) -> Tuple[SplitSession, Optional[Transmission]]:
    """
    One update of the split network. The receiver updates A2, F1 and F2 locally. For A1 it computes the factors of
    the first layer gradient, which do not depend on the input, maps them onto the gradient grid and sends them over
    the backward channel. The transmitter multiplies the detected factors with its local input normalization and
    updates A1.

    If all the factors are zero (for example for a zero error), nothing is sent and A1 stays unchanged.

    CHANGELOG

    Added 14.10.2026

    :raises: ValueError (non-finite gradients)

    :param session:
    :param trace: the trace returned by "forward_over_channel"
    :param error: y - y_hat
    :param rng:
    :return: (updated session, backward transmission or None)
    """
    model = session.model
    N = session.config.dct_size
    rows = session.config.input_dim + 1

    factors = first_layer_factors(trace, model, error)
    gA2, gF1, gF2 = grad_receiver_params(trace, model, error)

    if session.gradient_symbols == 'per_entry':
        values = np.tile(factors, (rows, 1))
    else:
        values = factors

    indices, scale = quantize_gradient(values, N)
    transmission = None
    if scale > 0:
        # Gradient symbols are always sent with the sign +1. A wrongly detected sign is ignored
        transmission = transmit_symbols(
            indices,
            np.ones_like(indices),
            session.phy,
            session.backward_channel,
            rng,
            repetitions=session.backward_repetitions
        )
        received = dequantize_gradient(transmission.k_hat, scale, N).reshape(values.shape)
    else:
        received = np.zeros_like(values)

    gA1 = input_normalization(trace.s0, session.normalization)[:, None] * received
    grads = Gradients(A1=gA1, A2=gA2, F1=gF1, F2=gF2)
    return session.with_model(lms_step(model, grads, session.learning_rates)), transmission


# ########################
# TRAINING AND EVALUATION
# ########################


class SplitMetrics:
    """
    The per epoch metrics of a split training run: on-line accuracy and MSE, the symbol errors on both links and the
    amount of clamped values.

    CHANGELOG

    Added 14.10.2026
    """
    COLUMNS = ['epoch', 'accuracy', 'mse', 'fwd_ser', 'bwd_ser', 'clamps']

    def __init__(self):
        self.rows = []

    def __len__(self):
        return len(self.rows)

    def add_epoch(self,
                  epoch: int,
                  accuracy: float,
                  mse: float,
                  fwd_errors: int,
                  fwd_symbols: int,
                  bwd_errors: int,
                  bwd_symbols: int,
                  clamps: int):
        if min(fwd_errors, fwd_symbols, bwd_errors, bwd_symbols, clamps) < 0:
            raise ValueError('The counts of the metrics cannot be negative!')

        self.rows.append({
            'epoch':            epoch,
            'accuracy':         accuracy,
            'mse':              mse,
            'fwd_errors':       fwd_errors,
            'fwd_symbols':      fwd_symbols,
            'bwd_errors':       bwd_errors,
            'bwd_symbols':      bwd_symbols,
            'clamps':           clamps
        })

    def to_frame(self) -> pd.DataFrame:
        if not self.rows:
            return pd.DataFrame(columns=self.COLUMNS)

        frame = pd.DataFrame(self.rows)
        frame['fwd_ser'] = frame['fwd_errors'] / frame['fwd_symbols'].clip(lower=1)
        frame['bwd_ser'] = frame['bwd_errors'] / frame['bwd_symbols'].clip(lower=1)
        return frame[self.COLUMNS]


def train_split(session: SplitSession,
                dataset: Dataset,
                epochs: int,
                rng: np.random.Generator) -> Tuple[SplitSession, SplitMetrics]:
    """
    Trains the split network sample by sample: forward over the channel, the error at the receiver, backward over
    the channel. The generator "rng" is used for the sample order and for all the channels, so the run is
    deterministic given its seed.

    CHANGELOG

    Added 14.10.2026

    :raises: DivergenceError, ValueError

    :param session:
    :param dataset:
    :param epochs:
    :param rng:
    :return: (trained session, metrics)
    """
    if len(dataset) == 0:
        raise ValueError('Cannot train on an empty dataset!')

    metrics = SplitMetrics()
    for epoch in range(int(epochs)):
        correct, squared_error = 0, 0.0
        fwd_errors = fwd_symbols = bwd_errors = bwd_symbols = clamps = 0

        for sample, index in enumerate(rng.permutation(len(dataset))):
            trace, forward_transmission = forward_over_channel(session, dataset.X[index], rng)
            error = dataset.y[index] - trace.y_hat
            if not np.isfinite(error):
                raise DivergenceError(epoch, sample)

            try:
                session, backward_transmission = backward_over_channel(session, trace, error, rng)
            except ValueError as exception:
                raise DivergenceError(epoch, sample, str(exception))

            correct += int(classify(trace.y_hat) == dataset.y[index])
            squared_error += error ** 2
            fwd_errors += forward_transmission.error_count
            fwd_symbols += len(forward_transmission)
            clamps += forward_transmission.clamps
            if backward_transmission is not None:
                bwd_errors += backward_transmission.error_count
                bwd_symbols += len(backward_transmission)

        metrics.add_epoch(
            epoch,
            correct / len(dataset),
            squared_error / len(dataset),
            fwd_errors,
            fwd_symbols,
            bwd_errors,
            bwd_symbols,
            clamps
        )
        LOGGER.info('epoch %d: accuracy %.4f mse %.5f forward errors %d/%d backward errors %d/%d clamps %d',
                    epoch, correct / len(dataset), squared_error / len(dataset),
                    fwd_errors, fwd_symbols, bwd_errors, bwd_symbols, clamps)

    return session, metrics


def evaluate_split(session: SplitSession, dataset: Dataset, rng: np.random.Generator) -> float:
    """
    The accuracy of a fixed split network under noisy inference: every input is sent over the forward channel with
    independent channel realizations.

    CHANGELOG

    Added 14.10.2026

    :raises: ValueError (empty dataset)
    """
    if len(dataset) == 0:
        raise ValueError('The accuracy of an empty dataset is not defined!')

    y_hat, _ = forward_batch_over_channel(session, dataset.X, rng)
    return float(np.mean(classify(y_hat) == dataset.y))


# DECISION MAPS
# -------------


def map_grid(resolution: int) -> np.ndarray:
    """
    The inputs of a decision map with the given resolution, one row per pixel in row major order. The first pixel row
    is x2 = +1 (the top of the image), the first pixel column x1 = -1.

    CHANGELOG

    Added 14.10.2026

    :raises: ValueError
    """
    if int(resolution) < 2:
        raise ValueError('The resolution of a decision map has to be at least 2, got {}'.format(resolution))

    axis = np.linspace(-1.0, 1.0, int(resolution))
    x1, x2 = np.meshgrid(axis, axis[::-1])
    return np.column_stack((x1.ravel(), x2.ravel()))


def decision_map(evaluator: Callable[[np.ndarray], np.ndarray], resolution: int) -> np.ndarray:
    """
    Evaluates the sign of the prediction on a uniform resolution x resolution grid over [-1, 1]^2. "evaluator" maps an
    input matrix onto the vector of predictions, see "model_evaluator" and "session_evaluator".

    CHANGELOG

    Added 14.10.2026

    :param evaluator:
    :param resolution:
    :return: integer array of +1/-1 with the shape (resolution, resolution)
    """
    X = map_grid(resolution)
    return classify(evaluator(X)).reshape(int(resolution), int(resolution))


def model_evaluator(model: EnnModel, folded: bool = False, clamp: int = 0) -> Callable[[np.ndarray], np.ndarray]:
    return lambda X: predict(model, X, folded, clamp)


def session_evaluator(session: SplitSession, rng: np.random.Generator) -> Callable[[np.ndarray], np.ndarray]:
    # The channel is drawn independently for every pixel
    return lambda X: forward_batch_over_channel(session, X, rng)[0]


# SYMBOL ERROR RATE SWEEPS
# ------------------------


def measure_ser(phy: PhyConfig,
                channel_model: ChannelModel,
                trials: int,
                rng: np.random.Generator,
                repetitions: int = 1) -> Dict:
    """
    Sends "trials" uniformly random symbols of the whole alphabet over the link and counts the detection errors. In
    the frequency + BPSK mode the signs are random as well and the sign errors among the symbols with a correctly
    detected frequency are counted separately. "sign_errors / sign_trials" is thus the sign error rate given a
    correct frequency. With "repetitions" the symbols are sent like the gradient link sends them.

    CHANGELOG

    Added 14.10.2026

    Changed 19.10.2026
    Added the repetitions.

    :raises: ValueError (trials < 1)

    :return: dict with the keys "trials", "errors", "sign_errors", "sign_trials", "phase_errors"
    """
    if int(trials) < 1:
        raise ValueError('At least one trial is needed, got {}'.format(trials))

    k = rng.integers(0, phy.alphabet_size, size=int(trials))
    if phy.mode == 'fsk_bpsk':
        signs = rng.choice(np.array([-1, 1]), size=int(trials))
    else:
        signs = np.ones(int(trials), dtype=np.int64)

    transmission = transmit_symbols(k, signs, phy, channel_model, rng, repetitions=repetitions)
    return {
        'trials':           int(trials),
        'errors':           transmission.error_count,
        'sign_errors':      int(np.sum(transmission.sign_errors)),
        'sign_trials':      int(np.sum(transmission.k == transmission.k_hat)),
        'phase_errors':     int(np.sum(transmission.phase_errors))
    }


def ser_sweep(phy: PhyConfig,
              channels: Sequence[ChannelModel],
              trials: int,
              rng: np.random.Generator) -> pd.DataFrame:
    """
    Measures the symbol error rate for every channel of the list and puts it next to the analytic prediction. The
    rows follow the order of "channels".

    CHANGELOG

    Added 14.10.2026

    :param phy:
    :param channels:
    :param trials: the amount of random symbols per point
    :param rng:
    :return: frame with the columns snr_db, trials, errors, ser_measured, ser_analytic
    """
    rows = []
    for channel in channels:
        result = measure_ser(phy, channel, trials, rng)
        if channel.noiseless:
            analytic = 0.0
        else:
            analytic = analytic_ser(phy, channel.snr_db, fading='rayleigh' if channel.kind == 'rayleigh' else 'none')

        rows.append({
            'snr_db':           channel.snr_db,
            'trials':           result['trials'],
            'errors':           result['errors'],
            'ser_measured':     result['errors'] / result['trials'],
            'ser_analytic':     analytic
        })
        SWEEP_LOGGER.info('%s %.2f dB: %d errors in %d trials (measured %.3e, analytic %.3e)',
                          channel.kind, channel.snr_db, result['errors'], result['trials'],
                          rows[-1]['ser_measured'], analytic)

    return pd.DataFrame(rows, columns=['snr_db', 'trials', 'errors', 'ser_measured', 'ser_analytic'])
