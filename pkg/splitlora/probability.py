# Standard library
from typing import Optional, Union

# Third party
import numpy as np

from scipy.special import erfc
from scipy.integrate import quad

# Local imports
from splitlora._util import db_to_linear

from splitlora.phy import PhyConfig


# Losses of the actual detectors against the union bound expressions, in dB. Adding them to the noise density
# calibrates the bounds against the measured symbol error rates within the [1e-3, 5e-2] region.
DETECTION_LOSS_DB = {
    'noncoherent':      0.5,
    'coherent':         0.1
}

DEFAULT_DETECTORS = {
    'plain_fsk':        'noncoherent',
    'fsk_bpsk':         'coherent'
}


# ####################
# ERROR PROBABILITIES
# ####################


def q_function(x: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
    """
    The tail probability of the standard normal distribution.

    CHANGELOG

    Added 13.10.2026
    """
    return 0.5 * erfc(np.asarray(x, dtype=float) / np.sqrt(2.0))


def _symbol_snr(amplitude, h_mag, noise_density):
    if np.any(np.asarray(noise_density) <= 0):
        raise ValueError('The noise density N0 has to be positive, got {}'.format(noise_density))
    return (np.asarray(amplitude, dtype=float) * np.asarray(h_mag, dtype=float)) ** 2 / noise_density


def pe_fsk(N: int, amplitude: float, h_mag, noise_density: float):
    """
    The union bound on the symbol error probability of the plain frequency modulation with an alphabet of N symbols:

    min(1, (N - 1) * Q(sqrt(A_c^2 |h|^2 / N0)))

    The bound is clipped at 1, so that the result is always a valid probability.

    CHANGELOG

    Added 13.10.2026

    :raises: ValueError (N0 <= 0)

    :param N: the alphabet size
    :param amplitude:
    :param h_mag: the magnitude of the channel gain
    :param noise_density: N0
    :return:
    """
    snr = _symbol_snr(amplitude, h_mag, noise_density)
    return np.minimum(1.0, (N - 1) * q_function(np.sqrt(snr)))


def pe_bpsk(amplitude: float, h_mag, noise_density: float):
    """
    The probability to detect the wrong phase (sign) of an otherwise correctly detected frequency.

    CHANGELOG

    Added 13.10.2026
    """
    snr = _symbol_snr(amplitude, h_mag, noise_density)
    return q_function(np.sqrt(2.0 * snr))


def pe_fsk_bpsk(N: int, amplitude: float, h_mag, noise_density: float):
    """
    The error probability of the joint frequency + phase modulation: the sum of the frequency term, which is the same
    as in "pe_fsk", and the sign term of "pe_bpsk". The first term dominates for all practical N. The sum is clipped
    at 1.

    CHANGELOG

    Added 13.10.2026

    :raises: ValueError (N0 <= 0)
    """
    snr = _symbol_snr(amplitude, h_mag, noise_density)
    return np.minimum(1.0, (N - 1) * q_function(np.sqrt(snr)) + q_function(np.sqrt(2.0 * snr)))


# ##########################
# ANALYTIC SYMBOL ERROR RATE
# ##########################


def noise_density(snr_db: float, oversampling: int = 1, detector: str = 'noncoherent') -> float:
    """
    Returns the noise density N0, which has to be used with the union bounds to predict the symbol error rate of the
    given detector. The per sample noise variance is oversampling / 10^(snr_db / 10) relative to the unit signal
    power, the detection loss of the detector is added on top.

    CHANGELOG

    Added 13.10.2026

    :raises: KeyError (unknown detector)
    """
    variance = oversampling / db_to_linear(snr_db)
    return variance * db_to_linear(DETECTION_LOSS_DB[detector])


def analytic_ser(phy: PhyConfig,
                 snr_db: float,
                 detector: Optional[str] = None,
                 fading: str = 'none') -> float:
    """
    Predicts the symbol error rate of a single stream of the given physical layer at the SNR "snr_db". The plain mode
    uses the frequency only bound over the whole (extended) alphabet, the frequency + BPSK mode the joint bound.

    With "fading" set to "rayleigh" the bound is averaged over the exponential distribution of |h|^2. An infinite SNR
    gives 0.

    CHANGELOG

    Added 13.10.2026

    :raises: ValueError, KeyError

    :param phy:
    :param snr_db:
    :param detector: "noncoherent" or "coherent". Defaults to the detector the mode is demodulated with
    :param fading: "none" or "rayleigh"
    :return:
    """
    if np.isposinf(snr_db):
        return 0.0

    detector = detector or DEFAULT_DETECTORS[phy.mode]
    N0 = noise_density(snr_db, phy.oversampling, detector)
    amplitude = np.sqrt(phy.symbol_energy)

    if phy.mode == 'plain_fsk':
        def probability(h_mag):
            return float(pe_fsk(phy.alphabet_size, amplitude, h_mag, N0))
    else:
        def probability(h_mag):
            return float(pe_fsk_bpsk(phy.alphabet_size, amplitude, h_mag, N0))

    if fading == 'none':
        return probability(1.0)
    elif fading == 'rayleigh':
        value, _ = quad(lambda u: probability(np.sqrt(u)) * np.exp(-u), 0, np.inf, limit=200)
        return float(value)

    raise ValueError('The fading "{}" is not one of "none", "rayleigh"'.format(fading))
