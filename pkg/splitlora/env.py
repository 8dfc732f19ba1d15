# Standard library
import os
import logging

from typing import Any, Dict, List

# Third party
import numpy as np

from jinja2 import FileSystemLoader, Environment

# Local imports
from splitlora._util import TEMPLATE_FOLDER_PATH

from splitlora.enn import EnnConfig, LearningRates, NORMALIZATIONS

from splitlora.phy import PhyConfig

from splitlora.channels import ChannelModel

from splitlora.datasets import DatasetSpec

from splitlora.split import GRADIENT_SYMBOLS


# The command line spells the modes with dashes and without the "_fsk" suffix
MODE_ALIASES = {
    'plain':        'plain_fsk',
    'plain_fsk':    'plain_fsk',
    'plain-fsk':    'plain_fsk',
    'fsk_bpsk':     'fsk_bpsk',
    'fsk-bpsk':     'fsk_bpsk'
}


# ####################
# THE RUN CONFIGURATION
# ####################


class RunConfig:
    """
    Instances of this class hold the whole configuration of one run of the command line tool. The values are kept
    flat, as they appear in the config files. The structured configs for the single modules (EnnConfig, PhyConfig,
    ChannelModel, DatasetSpec, LearningRates) are derived from them. All of them are created once in the constructor,
    so that an invalid value is reported before any run starts.

    The typical work flow is:

    EXAMPLE:
    config = RunConfig.from_dict(load_config_file('run.conf'))
    config = config.update({'epochs': 2})
    phy = config.phy_config()

    CHANGELOG

    Added 15.10.2026
    """
    DEFAULT_DICT = {
        'seed':                 0,
        'out':                  'out',
        'epochs':               5,
        'neurons':              6,
        'coeffs':               6,
        'n':                    128,
        'mode':                 'fsk_bpsk',
        'extension':            1,
        'access':               'tdm',
        'ocdm_streams':         6,
        'symbol_period':        1e-3,
        'channel':              'awgn',
        'snr_list':             [0.0, -5.0, -10.0, -12.5, -15.0, -17.5],
        'backward_snr_db':      -10.0,
        'backward_repetitions': 2,
        'labeler':              'rings',
        'n_train':              200000,
        'n_test':               20000,
        'lr_weights':           1e-2,
        'lr_coefficients':      1e-3,
        'normalization':        'vector',
        'gradient_symbols':     'per_entry',
        'match_receiver':       True,
        'retrain_per_point':    True,
        'resolution':           64,
        'trials':               100000,
        'workers':              1
    }

    # One line descriptions of all the fields. They end up as comments in the default config file
    DESCRIPTIONS = {
        'seed':                 'Seed of all the random generators of a run',
        'out':                  'Folder, into which all the result files are written',
        'epochs':               'Amount of passes over the training set',
        'neurons':              'Amount M of neurons in the hidden layer',
        'coeffs':               'Amount of DCT coefficients per activation function',
        'n':                    'Size N of the DCT grid and of the symbol alphabet (even)',
        'mode':                 'plain_fsk (frequency only) or fsk_bpsk (folded frequency + sign in phase)',
        'extension':            'Factor by which the alphabet of the plain mode is extended beyond N',
        'access':               'tdm (one channel use per value) or ocdm (chirp multiplexed streams)',
        'ocdm_streams':         'Amount of streams per OCDM channel use',
        'symbol_period':        'Symbol period T in seconds, used for the bandwidth report',
        'channel':              'ideal, awgn or rayleigh',
        'snr_list':             'Comma separated SNR points in dB',
        'backward_snr_db':      'SNR of the link, that carries the gradients back, in dB',
        'backward_repetitions': 'Receptions per gradient symbol, that the receiver of the backward link combines',
        'labeler':              'Binary map to learn: halfplane, rings or checker2x2',
        'n_train':              'Size of the training set',
        'n_test':               'Size of the test set',
        'lr_weights':           'LMS step size of the linear weights',
        'lr_coefficients':      'LMS step size of the DCT coefficients',
        'normalization':        'Input normalization of the first layer gradient: vector, entry or none',
        'gradient_symbols':     'per_entry (one symbol per gradient entry) or per_neuron',
        'match_receiver':       'Train centrally with the quantized non-linearity of the configured receiver mode',
        'retrain_per_point':    'Retrain the split network for every SNR point (false: evaluate one fixed model)',
        'resolution':           'Width and height of the decision maps in pixels',
        'trials':               'Random symbols per point of a SER sweep',
        'workers':              'Processes, that evaluate the points of a sweep in parallel'
    }

    # INSTANCE CONSTRUCTION
    # ---------------------

    def __init__(self, **fields):
        unknown = set(fields.keys()) - set(self.DEFAULT_DICT.keys())
        if unknown:
            raise ValueError('Unknown config keys: {}'.format(', '.join(sorted(unknown))))

        values = dict(self.DEFAULT_DICT)
        values.update(fields)
        for key, value in values.items():
            setattr(self, key, value)

        self.mode = MODE_ALIASES.get(self.mode, self.mode)
        self.snr_list = [float(value) for value in self.snr_list]
        self.check()

    def check(self):
        """
        Raises a ValueError (or a KeyError for unknown names), if any of the values is invalid. This creates all the
        derived configs once, which makes them validate their own fields.

        CHANGELOG

        Added 15.10.2026

        :raises: ValueError, KeyError
        """
        for name, minimum in (('epochs', 0), ('seed', 0), ('trials', 1), ('workers', 1), ('backward_repetitions', 1)):
            if int(getattr(self, name)) < minimum:
                raise ValueError('{} has to be at least {}, got {}'.format(name, minimum, getattr(self, name)))
        if self.resolution < 2:
            raise ValueError('resolution has to be at least 2, got {}'.format(self.resolution))
        if self.normalization not in NORMALIZATIONS:
            raise ValueError('normalization "{}" is not one of {}'.format(self.normalization, NORMALIZATIONS))
        if self.gradient_symbols not in GRADIENT_SYMBOLS:
            raise ValueError('gradient_symbols "{}" is not one of {}'.format(self.gradient_symbols, GRADIENT_SYMBOLS))
        if not self.snr_list:
            raise ValueError('snr_list needs at least one SNR point!')

        self.enn_config()
        self.phy_config()
        self.learning_rates()
        self.dataset_spec()
        for snr_db in self.snr_list:
            self.channel_model(snr_db)
        self.backward_channel_model()

    # DERIVED CONFIGS
    # ---------------

    def enn_config(self) -> EnnConfig:
        return EnnConfig(2, self.neurons, self.coeffs, self.n)

    def phy_config(self) -> PhyConfig:
        return PhyConfig.from_dict({
            'N':                self.n,
            'mode':             self.mode,
            'extension':        self.extension,
            'access':           self.access,
            'ocdm_streams':     self.ocdm_streams,
            'symbol_period':    self.symbol_period
        })

    def channel_model(self, snr_db: float) -> ChannelModel:
        return ChannelModel.from_dict({'kind': self.channel, 'snr_db': snr_db})

    def backward_channel_model(self) -> ChannelModel:
        # The gradients travel over the same kind of channel, with their own SNR
        return ChannelModel.from_dict({'kind': self.channel, 'snr_db': self.backward_snr_db})

    def receiver_hidden(self) -> Dict[str, Any]:
        """
        Returns the keyword arguments for the forward pass functions of the enn module, which make the hidden layer of
        a centrally trained model behave like the receiver of the configured mode: folded for fsk_bpsk and clamped to
        the extended alphabet for plain_fsk. Without "match_receiver" the exact non-linearity is used.

        CHANGELOG

        Added 19.10.2026
        """
        if not self.match_receiver:
            return {}
        if self.mode == 'fsk_bpsk':
            return {'folded': True}
        return {'clamp': int(self.extension)}

    def learning_rates(self) -> LearningRates:
        return LearningRates(self.lr_weights, self.lr_coefficients)

    def dataset_spec(self) -> DatasetSpec:
        return DatasetSpec(self.labeler, self.n_train, self.n_test, self.seed)

    # UTILITY METHODS
    # ---------------

    def to_dict(self) -> Dict[str, Any]:
        return {key: getattr(self, key) for key in self.DEFAULT_DICT.keys()}

    def update(self, overrides: Dict[str, Any]):
        """
        Returns a new config, where the given values replace the ones of this config. Values of None are skipped, so
        that unset command line flags can be passed in directly.

        CHANGELOG

        Added 15.10.2026
        """
        config_dict = self.to_dict()
        config_dict.update({key: value for key, value in overrides.items() if value is not None})
        return RunConfig(**config_dict)

    def seed_sequence(self) -> np.random.SeedSequence:
        return np.random.SeedSequence(int(self.seed))

    @classmethod
    def from_dict(cls, config_dict: Dict[str, Any]):
        argument_dict = dict(cls.DEFAULT_DICT)
        argument_dict.update(config_dict)
        return cls(**argument_dict)


# ##################
# CONFIG FILE PARSING
# ##################


def format_value(value) -> str:
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, (list, tuple)):
        return ', '.join(format_value(item) for item in value)
    if isinstance(value, float):
        return repr(value)
    return str(value)


def parse_value(key: str, string: str):
    """
    Converts the string value of a config file into the type of the default value of the key "key".

    EXAMPLE:
    parse_value('snr_list', '0, -5, -10')
    >> [0.0, -5.0, -10.0]

    CHANGELOG

    Added 15.10.2026

    :raises: ValueError (unknown key, value not convertible)

    :param key:
    :param string:
    :return:
    """
    if key not in RunConfig.DEFAULT_DICT:
        raise ValueError('Unknown config key "{}"'.format(key))

    default = RunConfig.DEFAULT_DICT[key]
    string = string.strip()
    try:
        if isinstance(default, bool):
            if string.lower() not in ('true', 'false'):
                raise ValueError('expected true or false')
            return string.lower() == 'true'
        elif isinstance(default, int):
            return int(string)
        elif isinstance(default, float):
            return float(string)
        elif isinstance(default, list):
            return [float(item) for item in string.split(',') if item.strip()]
        return string
    except ValueError as exception:
        raise ValueError('Invalid value "{}" for the config key "{}": {}'.format(string, key, exception))


def parse_config_text(text: str) -> Dict[str, Any]:
    """
    Parses the content of a config file: one "key = value" per line, "#" starts a comment and blank lines are ignored.

    CHANGELOG

    Added 15.10.2026

    :raises: ValueError

    :param text:
    :return:
    """
    config_dict = {}
    for number, line in enumerate(text.splitlines(), start=1):
        line = line.split('#', 1)[0].strip()
        if not line:
            continue
        if '=' not in line:
            raise ValueError('Line {} of the config is not of the form "key = value": "{}"'.format(number, line))

        key, value = (part.strip() for part in line.split('=', 1))
        config_dict[key] = parse_value(key, value)

    return config_dict


def load_config_file(path: str) -> Dict[str, Any]:
    with open(path, mode='r') as file:
        return parse_config_text(file.read())


# ###########################
# INSTALLATION OF CONFIG FILES
# ###########################


class ConfigInstaller:
    """
    Writes the documented default config file, which lists every key of the RunConfig with its description and its
    default value. The file is rendered from the jinja template "config.jinja2".

    CHANGELOG

    Added 15.10.2026
    """
    CONFIG_FILE_TEMPLATE = 'config.jinja2'

    # CONFIGURATION FOR JINJA TEMPLATING
    # ----------------------------------

    TEMPLATE_LOADER = FileSystemLoader(searchpath=TEMPLATE_FOLDER_PATH)
    TEMPLATE_ENVIRONMENT = Environment(loader=TEMPLATE_LOADER, keep_trailing_newline=True)

    # INSTANCE CONSTRUCTION
    # ---------------------

    def __init__(self, config: RunConfig = None):
        self.logger = logging.getLogger('splitlora.cli')
        self.config = config or RunConfig.from_dict({})

    def render(self) -> str:
        template = self.TEMPLATE_ENVIRONMENT.get_template(self.CONFIG_FILE_TEMPLATE)
        return template.render(fields=self.fields())

    def fields(self) -> List[Dict[str, str]]:
        return [
            {
                'key':          key,
                'value':        format_value(value),
                'description':  RunConfig.DESCRIPTIONS[key]
            }
            for key, value in self.config.to_dict().items()
        ]

    def install(self, file_path: str):
        """
        Renders the config file into "file_path". Existing files are overwritten.

        CHANGELOG

        Added 15.10.2026
        """
        folder_path = os.path.dirname(os.path.abspath(file_path))
        os.makedirs(folder_path, exist_ok=True)
        with open(file_path, mode='w') as file:
            file.write(self.render())
        self.logger.info('Created config file at PATH "%s"', file_path)
