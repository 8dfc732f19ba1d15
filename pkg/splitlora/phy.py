# Standard library
import functools

from typing import Dict, List, Optional, Tuple, Union

# Third party
import numpy as np

# Local imports
from splitlora._util import check_finite, round_half_away

from splitlora.enn import fold_indices


MODES = [
    'plain_fsk',
    'fsk_bpsk'
]

ACCESS_SCHEMES = [
    'tdm',
    'ocdm'
]

# Channel gains below this magnitude cannot be equalized
MINIMUM_GAIN = 1e-12


# ##########################
# PHYSICAL LAYER DESCRIPTION
# ##########################


class PhyConfig:
    """
    Instances of this class describe the waveform layer, which carries the activations and the gradients between the
    two parts of the split network:

    - N: The size of the DCT grid. Equals the alphabet size of the frequency + BPSK mode
    - amplitude: The carrier amplitude A_c. None selects the amplitude, which gives unit average power
    - mode: "plain_fsk" transmits the (clamped) raw index in frequency only. "fsk_bpsk" transmits the folded index in
      frequency and the folding sign as a 0/pi phase
    - extension: The factor E by which the alphabet of the plain mode is extended beyond N
    - access: "tdm" uses one channel use per value, "ocdm" superposes "ocdm_streams" chirped values per channel use
    - symbol_period: The symbol period T in seconds, only used to report the bandwidth

    A symbol spans K * O samples, where K is the alphabet size and O the oversampling of the access scheme (1 for TDM,
    2 * streams for OCDM). The oversampling keeps the dechirped streams of an OCDM frame in disjoint frequency bands.

    CHANGELOG

    Added 13.10.2026
    """
    DEFAULT_DICT = {
        'N':                128,
        'amplitude':        None,
        'mode':             'plain_fsk',
        'extension':        1,
        'access':           'tdm',
        'ocdm_streams':     6,
        'symbol_period':    1e-3
    }

    # INSTANCE CONSTRUCTION
    # ---------------------

    def __init__(self,
                 N: int,
                 amplitude: Optional[float],
                 mode: str,
                 extension: int,
                 access: str,
                 ocdm_streams: int,
                 symbol_period: float):
        if int(N) < 2 or int(N) % 2 != 0:
            raise ValueError('N has to be an even number >= 2, got {}'.format(N))
        if amplitude is not None and not (np.isfinite(amplitude) and amplitude > 0):
            raise ValueError('The amplitude has to be a positive number, got {}'.format(amplitude))
        if mode not in MODES:
            raise ValueError('The mode "{}" is not one of {}'.format(mode, MODES))
        if int(extension) < 1:
            raise ValueError('The extension has to be at least 1, got {}'.format(extension))
        if access not in ACCESS_SCHEMES:
            raise ValueError('The access scheme "{}" is not one of {}'.format(access, ACCESS_SCHEMES))
        if int(ocdm_streams) < 1:
            raise ValueError('ocdm_streams has to be at least 1, got {}'.format(ocdm_streams))
        if not (np.isfinite(symbol_period) and symbol_period > 0):
            raise ValueError('The symbol period has to be positive, got {}'.format(symbol_period))

        self.N = int(N)
        self.amplitude = amplitude
        self.mode = mode
        self.extension = int(extension)
        self.access = access
        self.ocdm_streams = int(ocdm_streams)
        self.symbol_period = float(symbol_period)

    # PROPERTIES
    # ----------

    @property
    def alphabet_size(self) -> int:
        # The extension only applies to the plain mode. The frequency + BPSK mode folds instead
        return self.extension * self.N if self.mode == 'plain_fsk' else self.N

    @property
    def streams(self) -> int:
        return self.ocdm_streams if self.access == 'ocdm' else 1

    @property
    def oversampling(self) -> int:
        return 2 * self.ocdm_streams if self.access == 'ocdm' else 1

    @property
    def samples_per_symbol(self) -> int:
        return self.alphabet_size * self.oversampling

    @property
    def carrier_amplitude(self) -> float:
        if self.amplitude is not None:
            return float(self.amplitude)

        samples = self.samples_per_symbol
        return float(np.sqrt(2.0 * samples / (samples + 1.0)))

    @property
    def symbol_energy(self) -> float:
        """
        The energy of a single waveform. All the waveforms start with the sample A_c, which is why the energy is
        A_c^2 (N_s + 1) / 2 and not A_c^2 N_s / 2.

        CHANGELOG

        Added 13.10.2026
        """
        return self.carrier_amplitude ** 2 * (self.samples_per_symbol + 1.0) / 2.0

    # UTILITY METHODS
    # ---------------

    def to_dict(self) -> Dict:
        return {
            'N':                self.N,
            'amplitude':        self.amplitude,
            'mode':             self.mode,
            'extension':        self.extension,
            'access':           self.access,
            'ocdm_streams':     self.ocdm_streams,
            'symbol_period':    self.symbol_period
        }

    def __eq__(self, other):
        if isinstance(other, PhyConfig):
            return self.to_dict() == other.to_dict()
        else:
            raise TypeError('You cannot compare a PhyConfig with anything else than objects of same type!')

    def __hash__(self):
        return hash(tuple(self.to_dict().items()))

    def __repr__(self):
        return 'PhyConfig({})'.format(', '.join('{}={}'.format(k, v) for k, v in self.to_dict().items()))

    @classmethod
    def from_dict(cls, phy_dict: Dict):
        argument_dict = dict(cls.DEFAULT_DICT)
        argument_dict.update(phy_dict)
        return cls(**argument_dict)


class SymbolIndex:
    """
    A single transmittable symbol: the frequency index "k" and the sign, which is carried by the phase in the
    frequency + BPSK mode (and always +1 in the plain mode).

    CHANGELOG

    Added 13.10.2026
    """
    def __init__(self, k: int, sign: int = 1):
        if sign not in (-1, 1):
            raise ValueError('The sign of a symbol has to be +1 or -1, got {}'.format(sign))
        if int(k) < 0:
            raise ValueError('The frequency index of a symbol cannot be negative, got {}'.format(k))

        self.k = int(k)
        self.sign = int(sign)

    def __eq__(self, other):
        if isinstance(other, SymbolIndex):
            return self.k == other.k and self.sign == other.sign
        else:
            raise TypeError('You cannot compare a SymbolIndex with anything else than objects of same type!')

    def __repr__(self):
        return 'SymbolIndex(k={}, sign={})'.format(self.k, self.sign)


class Waveform:
    """
    A finite sequence of complex baseband samples.

    CHANGELOG

    Added 13.10.2026
    """
    def __init__(self, samples):
        samples = np.array(samples, dtype=complex)
        if samples.ndim != 1:
            raise ValueError('The samples of a waveform have to be one dimensional, got shape {}'.format(samples.shape))
        check_finite('samples', samples)
        self.samples = samples

    def __len__(self):
        return len(self.samples)

    @property
    def energy(self) -> float:
        return float(np.sum(np.abs(self.samples) ** 2))


# ############
# QUANTIZATION
# ############


def raw_index(z, N: int) -> np.ndarray:
    # Nearest point of the grid x = -1 + 2k/N, ties away from zero
    check_finite('z', z)
    return round_half_away(N * (np.asarray(z, dtype=float) + 1.0) / 2.0)


def quantize_array(z, N: int, mode: str = 'plain_fsk', extension: int = 1) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Quantizes an array of pre-activations onto the index grid. In the plain mode the raw indices are clamped into
    [0, E*N - 1], in the frequency + BPSK mode they are folded into [0, N - 1] and a sign.

    Returns the indices, the signs and a boolean mask of the entries that had to be clamped.

    CHANGELOG

    Added 13.10.2026

    :raises: ValueError (non-finite values, unknown mode)

    :param z:
    :param N:
    :param mode:
    :param extension:
    :return: (k, signs, clamped)
    """
    raw = raw_index(z, N)

    if mode == 'plain_fsk':
        k = np.clip(raw, 0, extension * N - 1)
        return k, np.ones_like(k), k != raw
    elif mode == 'fsk_bpsk':
        k, signs = fold_indices(raw, N)
        return k, signs, np.zeros(raw.shape, dtype=bool)

    raise ValueError('The mode "{}" is not one of {}'.format(mode, MODES))


def quantize(z: float, N: int, mode: str = 'plain_fsk', extension: int = 1) -> SymbolIndex:
    """
    Quantizes a single pre-activation z to the nearest point of the grid x = -1 + 2k/N.

    EXAMPLE:
    quantize(1.2, 8, 'fsk_bpsk')
    >> SymbolIndex(k=1, sign=-1)

    CHANGELOG

    Added 13.10.2026

    :param z:
    :param N:
    :param mode:
    :param extension:
    :return:
    """
    k, signs, _ = quantize_array(np.array([z]), N, mode, extension)
    return SymbolIndex(k[0], signs[0])


def dequantize(symbol: SymbolIndex, N: int) -> float:
    return -1.0 + 2.0 * symbol.k / N


# GRADIENT GRID
# -------------


def quantize_gradient(values, N: int) -> Tuple[np.ndarray, float]:
    """
    Maps gradient values onto the index grid. The values are scaled by g_scale = max|g| * N / (N - 1), which keeps them
    within [-(N-1)/N, (N-1)/N], then quantized like pre-activations and clamped into [0, N - 1]. The scale is assumed
    to be known at the other side of the link.

    Returns the indices and the scale. If all the values are zero, the scale is 0.

    CHANGELOG

    Added 13.10.2026

    :param values:
    :param N:
    :return: (indices, scale)
    """
    values = np.asarray(values, dtype=float)
    check_finite('gradient', values)

    maximum = float(np.max(np.abs(values))) if values.size else 0.0
    if maximum == 0.0:
        return np.full(values.shape, N // 2, dtype=np.int64), 0.0

    scale = maximum * N / (N - 1.0)
    return np.clip(raw_index(values / scale, N), 0, N - 1), scale


def dequantize_gradient(indices, scale: float, N: int) -> np.ndarray:
    return scale * (-1.0 + 2.0 * np.asarray(indices, dtype=float) / N)


# ##########
# MODULATION
# ##########


@functools.lru_cache(maxsize=32)
def _cosine_table(alphabet_size: int, samples: int, amplitude: float) -> np.ndarray:
    n = np.arange(samples)
    k = np.arange(alphabet_size)
    table = amplitude * np.cos(np.pi * np.outer(2 * k + 1, n) / (2.0 * samples))
    table.setflags(write=False)
    return table


def waveform_table(cfg: PhyConfig) -> np.ndarray:
    """
    Returns the real matrix of all the waveforms of the alphabet, one row per frequency index k:

    A_c cos(pi (2k + 1) n / (2 N_s)) for n = 0 .. N_s - 1

    The demodulators correlate with these rows. The matrix is cached and read only.

    CHANGELOG

    Added 13.10.2026
    """
    return _cosine_table(cfg.alphabet_size, cfg.samples_per_symbol, cfg.carrier_amplitude)


def _check_symbol(symbol: SymbolIndex, cfg: PhyConfig, mode: str):
    if cfg.mode != mode:
        raise ValueError('This modulation requires the mode "{}", the config uses "{}"'.format(mode, cfg.mode))
    if not 0 <= symbol.k <= cfg.alphabet_size - 1:
        raise ValueError('The index {} is outside of the alphabet [0, {}]'.format(symbol.k, cfg.alphabet_size - 1))


def modulate_fsk(symbol: SymbolIndex, cfg: PhyConfig) -> Waveform:
    """
    Modulates the symbol index in frequency (plain mode). The waveform is real valued, but stored as complex samples.

    CHANGELOG

    Added 13.10.2026

    :raises: ValueError
    """
    _check_symbol(symbol, cfg, 'plain_fsk')
    return Waveform(waveform_table(cfg)[symbol.k])


def modulate_fsk_bpsk(symbol: SymbolIndex, cfg: PhyConfig) -> Waveform:
    """
    Modulates the folded index in frequency and the folding sign in phase: a phase of pi for the sign -1 is the exact
    negation of the waveform.

    CHANGELOG

    Added 13.10.2026

    :raises: ValueError
    """
    _check_symbol(symbol, cfg, 'fsk_bpsk')
    return Waveform(symbol.sign * waveform_table(cfg)[symbol.k])


def modulate(symbol: SymbolIndex, cfg: PhyConfig) -> Waveform:
    if cfg.mode == 'plain_fsk':
        return modulate_fsk(symbol, cfg)
    return modulate_fsk_bpsk(symbol, cfg)


def modulate_batch(k, signs, cfg: PhyConfig) -> np.ndarray:
    """
    Modulates many symbols at once. Returns a complex array with one waveform per row.

    CHANGELOG

    Added 13.10.2026

    :raises: ValueError (index outside of the alphabet)
    """
    k = np.asarray(k, dtype=np.int64)
    if np.any(k < 0) or np.any(k > cfg.alphabet_size - 1):
        raise ValueError('All the indices have to be within the alphabet [0, {}]'.format(cfg.alphabet_size - 1))

    return (np.asarray(signs, dtype=float)[..., None] * waveform_table(cfg)[k]).astype(complex)


# #########################
# CHIRPS AND MULTIPLEXING
# #########################


def chirp(m: int, samples: int) -> np.ndarray:
    """
    The chirp exp(-j pi (n - m)^2 / N_s) for the stream index m. Chirps of different m are orthogonal for an even
    amount of samples.

    CHANGELOG

    Added 13.10.2026

    :raises: ValueError
    """
    if int(samples) % 2 != 0 or samples < 2:
        raise ValueError('Chirps need an even amount of samples, got {}'.format(samples))
    if not 0 <= m < samples:
        raise ValueError('The stream index has to be within [0, {}], got {}'.format(samples - 1, m))

    n = np.arange(samples)
    return np.exp(-1j * np.pi * (n - m) ** 2 / samples)


class ChirpBank:
    """
    The chirps of M parallel streams over N_s samples. The chirp of stream m is offset by m * (N_s // M) samples, which
    spreads the streams evenly: after dechirping, the interfering streams appear as frequency shifts by multiples of
    1/M and do not overlap the desired one, as long as its spectrum stays below 1/(4M).

    CHANGELOG

    Added 13.10.2026
    """
    def __init__(self, samples: int, streams: int):
        if streams < 1 or streams > samples:
            raise ValueError('The amount of streams has to be within [1, {}], got {}'.format(samples, streams))

        self.samples = int(samples)
        self.streams = int(streams)
        spacing = self.samples // self.streams
        self.offsets = [m * spacing for m in range(self.streams)]
        self.chirps = np.array([chirp(offset, self.samples) for offset in self.offsets])

    @classmethod
    def for_config(cls, cfg: PhyConfig):
        return _cached_bank(cfg.samples_per_symbol, cfg.ocdm_streams)


@functools.lru_cache(maxsize=8)
def _cached_bank(samples: int, streams: int) -> ChirpBank:
    return ChirpBank(samples, streams)


def _stack(waveforms: List[Union[Waveform, np.ndarray]]) -> np.ndarray:
    arrays = [w.samples if isinstance(w, Waveform) else np.asarray(w, dtype=complex) for w in waveforms]
    if len(set(len(array) for array in arrays)) > 1:
        raise ValueError('All the waveforms to be multiplexed need the same length!')
    return np.array(arrays)


def ocdm_multiplex(waveforms: List[Union[Waveform, np.ndarray]], bank: Optional[ChirpBank] = None) -> Waveform:
    """
    Superposes the waveforms of M streams, each multiplied with its own chirp. Without a bank, stream m uses the chirp
    with the offset m.

    CHANGELOG

    Added 13.10.2026

    :raises: ValueError (length mismatch, more streams than samples)

    :param waveforms:
    :param bank:
    :return:
    """
    stacked = _stack(waveforms)
    streams, samples = stacked.shape
    if streams > samples:
        raise ValueError('Cannot multiplex {} streams onto {} samples'.format(streams, samples))

    if bank is None:
        chirps = np.array([chirp(m, samples) for m in range(streams)])
    else:
        if bank.samples != samples or bank.streams < streams:
            raise ValueError('The chirp bank does not fit {} streams of {} samples'.format(streams, samples))
        chirps = bank.chirps[:streams]

    return Waveform(np.sum(stacked * chirps, axis=0))


def ocdm_dechirp(y: Union[Waveform, np.ndarray], m: int, bank: Optional[ChirpBank] = None) -> Waveform:
    samples = y.samples if isinstance(y, Waveform) else np.asarray(y, dtype=complex)
    if bank is None:
        return Waveform(samples * np.conj(chirp(m, len(samples))))

    if bank.samples != len(samples):
        raise ValueError('The waveform has {} samples, the chirp bank {}'.format(len(samples), bank.samples))
    return Waveform(samples * np.conj(bank.chirps[m]))


def multiplex_frames(frames: np.ndarray, bank: ChirpBank) -> np.ndarray:
    # frames: (F, M, N_s) -> (F, N_s)
    return np.einsum('fmn,mn->fn', frames, bank.chirps[:frames.shape[1]])


def dechirp_frames(received: np.ndarray, bank: ChirpBank) -> np.ndarray:
    # received: (F, N_s) -> (F, M, N_s)
    return received[:, None, :] * np.conj(bank.chirps)[None, :, :]


# ############
# DEMODULATION
# ############


def noncoherent_metrics(Y: np.ndarray, cfg: PhyConfig) -> np.ndarray:
    # Squared correlation magnitudes, one row per received waveform. Repetitions of a symbol add up
    correlations = np.atleast_2d(Y) @ waveform_table(cfg).T
    return np.abs(correlations) ** 2


def coherent_metrics(Y: np.ndarray, h, cfg: PhyConfig) -> np.ndarray:
    """
    The correlations of the received waveforms with the real candidate waveforms after weighting every row with the
    conjugate of its channel gain. Summing these over repetitions of a symbol is maximum ratio combining.

    CHANGELOG

    Added 19.10.2026

    :raises: ValueError (channel gain too small)
    """
    Y = np.atleast_2d(Y)
    h = np.broadcast_to(np.asarray(h, dtype=complex), Y.shape[:1])
    if np.any(np.abs(h) < MINIMUM_GAIN):
        raise ValueError('Cannot equalize a channel gain below {}'.format(MINIMUM_GAIN))

    return (np.conj(h)[:, None] * Y).real @ waveform_table(cfg).T


def decide_noncoherent(metrics: np.ndarray) -> np.ndarray:
    # Ties go to the lowest index
    return np.argmax(metrics, axis=-1)


def decide_coherent(metrics: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    # The candidate with the largest magnitude, its sign is the detected sign (0 counting as +1)
    k = np.argmax(np.abs(metrics), axis=-1)
    winners = metrics[np.arange(len(k)), k]
    return k, np.where(winners >= 0, 1, -1)


def detect_noncoherent(Y: np.ndarray, cfg: PhyConfig) -> np.ndarray:
    """
    Blind detection of many received waveforms at once (one per row): the index of the candidate waveform with the
    largest correlation magnitude. Ties go to the lowest index.

    CHANGELOG

    Added 13.10.2026

    Changed 19.10.2026
    Split into the metrics and the decision, so that repeated symbols can be combined before deciding.
    """
    return decide_noncoherent(noncoherent_metrics(Y, cfg))


def detect_coherent(Y: np.ndarray, h, cfg: PhyConfig) -> Tuple[np.ndarray, np.ndarray]:
    """
    Coherent detection of many received waveforms at once, given the channel gain of every row. The rows are weighted
    with the conjugate gains, then correlated with the real candidate waveforms. The index is the candidate with the
    largest magnitude of the correlation and its sign the detected sign (0 counting as +1).

    CHANGELOG

    Added 13.10.2026

    Changed 19.10.2026
    Split into the metrics and the decision, so that repeated symbols can be combined before deciding.

    :raises: ValueError (channel gain too small)

    :param Y:
    :param h:
    :param cfg:
    :return: (k, signs)
    """
    return decide_coherent(coherent_metrics(Y, h, cfg))


def demodulate_noncoherent(y: Union[Waveform, np.ndarray], cfg: PhyConfig) -> SymbolIndex:
    """
    Recovers the frequency index of the plain mode from a single received waveform without channel knowledge.

    CHANGELOG

    Added 13.10.2026

    :raises: ValueError (not the plain mode)
    """
    if cfg.mode != 'plain_fsk':
        raise ValueError('Noncoherent demodulation cannot recover the sign of the "{}" mode'.format(cfg.mode))

    samples = y.samples if isinstance(y, Waveform) else y
    return SymbolIndex(detect_noncoherent(samples, cfg)[0], 1)


def demodulate_coherent(y: Union[Waveform, np.ndarray], h: complex, cfg: PhyConfig) -> SymbolIndex:
    """
    Recovers the folded index and the sign of the frequency + BPSK mode from a single received waveform, using the
    known channel gain "h".

    CHANGELOG

    Added 13.10.2026

    :raises: ValueError (not the frequency + BPSK mode, channel gain too small)
    """
    if cfg.mode != 'fsk_bpsk':
        raise ValueError('Coherent demodulation is used with the "fsk_bpsk" mode, not "{}"'.format(cfg.mode))

    samples = y.samples if isinstance(y, Waveform) else y
    k, signs = detect_coherent(samples, h, cfg)
    return SymbolIndex(k[0], signs[0])


# #########
# BANDWIDTH
# #########


def bandwidth(N: int, symbol_period: float) -> float:
    if symbol_period <= 0:
        raise ValueError('The symbol period has to be positive, got {}'.format(symbol_period))
    return N / (2.0 * symbol_period)


def occupied_bandwidth(cfg: PhyConfig) -> float:
    # The extended alphabet of the plain mode occupies E times the bandwidth
    return bandwidth(cfg.alphabet_size, cfg.symbol_period)


def access_expansion(cfg: PhyConfig) -> int:
    return cfg.ocdm_streams if cfg.access == 'ocdm' else 1
