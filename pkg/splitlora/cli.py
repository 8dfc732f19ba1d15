# -*- coding: utf-8 -*-

"""Console script for splitlora."""
# Standard library
import sys
import logging

from typing import Dict, List, Optional

# Third party
import click

# Local imports
from splitlora._util import DivergenceError

from splitlora.env import RunConfig, MODE_ALIASES
from splitlora.env import load_config_file

from splitlora.phy import ACCESS_SCHEMES

from splitlora.channels import CHANNEL_KINDS

from splitlora.datasets import LABELERS

from splitlora.main import cmd_train_centralized, cmd_train_split, cmd_ser_sweep, cmd_bandwidth_report
from splitlora.main import cmd_init_config, cmd_waveform, cmd_decision_map


LOGGER = logging.getLogger('splitlora.cli')

EXIT_SUCCESS = 0
EXIT_CONFIG_ERROR = 1
EXIT_DIVERGENCE = 2

# Maps the keyword names of the command line flags onto the keys of the RunConfig
FLAG_KEYS = {
    'seed':             'seed',
    'out':              'out',
    'channel':          'channel',
    'snr_list':         'snr_list',
    'mode':             'mode',
    'access':           'access',
    'n':                'n',
    'neurons':          'neurons',
    'coeffs':           'coeffs',
    'labeler':          'labeler',
    'epochs':           'epochs',
    'trials':           'trials',
    'resolution':       'resolution',
    'backward_snr':     'backward_snr_db',
    'backward_repetitions': 'backward_repetitions',
    'extension':        'extension',
    'workers':          'workers'
}


# #######
# HELPERS
# #######


def parse_snr_list(ctx, param, value: Optional[str]) -> Optional[List[float]]:
    if value is None:
        return None
    try:
        return [float(item) for item in value.split(',') if item.strip()]
    except ValueError:
        raise click.BadParameter('expected comma separated numbers, got "{}"'.format(value))


COMMON_OPTIONS = [
    click.option('--config', 'config_path', type=click.Path(exists=True, dir_okay=False), default=None,
                 help='key = value config file'),
    click.option('--seed', type=int, default=None, help='Seed of all the random generators'),
    click.option('--out', type=click.Path(file_okay=False), default=None, help='Output folder'),
    click.option('--channel', type=click.Choice(CHANNEL_KINDS), default=None),
    click.option('--snr-list', 'snr_list', callback=parse_snr_list, default=None, help='dB,dB,...'),
    click.option('--mode', type=click.Choice(sorted(MODE_ALIASES.keys())), default=None),
    click.option('--access', type=click.Choice(ACCESS_SCHEMES), default=None),
    click.option('--n', 'n', type=int, default=None, help='DCT size and alphabet size N'),
    click.option('--neurons', type=int, default=None),
    click.option('--coeffs', type=int, default=None, help='DCT coefficients per activation function'),
    click.option('--labeler', type=click.Choice(sorted(LABELERS.keys())), default=None),
    click.option('--epochs', type=int, default=None),
    click.option('--trials', type=int, default=None, help='Random symbols per SER point'),
    click.option('--resolution', type=int, default=None, help='Size of the decision maps in pixels'),
    click.option('--backward-snr', 'backward_snr', type=float, default=None, help='SNR of the gradient link in dB'),
    click.option('--backward-repetitions', 'backward_repetitions', type=int, default=None,
                 help='Receptions per gradient symbol'),
    click.option('--extension', type=int, default=None, help='Alphabet extension of the plain mode'),
    click.option('--workers', type=int, default=None, help='Processes for the sweep points')
]


def common_options(function):
    for option in reversed(COMMON_OPTIONS):
        function = option(function)
    return function


def build_config(config_path: Optional[str], flags: Dict) -> RunConfig:
    """
    Creates the RunConfig of a command: the defaults, overwritten by the values of the config file, overwritten by the
    command line flags, which were actually given.

    CHANGELOG

    Added 16.10.2026

    :raises: ValueError, KeyError

    :param config_path:
    :param flags:
    :return:
    """
    file_dict = load_config_file(config_path) if config_path else {}
    config = RunConfig.from_dict(file_dict)
    return config.update({FLAG_KEYS[name]: value for name, value in flags.items() if name in FLAG_KEYS})


class SplitloraGroup(click.Group):
    """
    A click group, which maps the exceptions of the commands onto the exit codes of the tool: 1 for configuration
    errors (including invalid flags) and failed file operations, 2 for a diverged training.

    CHANGELOG

    Added 16.10.2026

    Changed 19.10.2026
    OSError is mapped onto the exit code 1 as well.
    """
    def main(self, args=None, prog_name=None, complete_var=None, standalone_mode=True, **extra):
        try:
            result = super(SplitloraGroup, self).main(
                args=args,
                prog_name=prog_name,
                complete_var=complete_var,
                standalone_mode=False,
                **extra
            )
        except DivergenceError as exception:
            click.echo('Error: {}'.format(exception), err=True)
            sys.exit(EXIT_DIVERGENCE)
        except OSError as exception:
            LOGGER.error('file operation failed: %s', exception)
            click.echo('Error: {}'.format(exception), err=True)
            sys.exit(EXIT_CONFIG_ERROR)
        except click.ClickException as exception:
            exception.show()
            sys.exit(EXIT_CONFIG_ERROR)
        except (ValueError, KeyError) as exception:
            click.echo('Error: {}'.format(exception), err=True)
            sys.exit(EXIT_CONFIG_ERROR)
        except click.Abort:
            sys.exit(EXIT_CONFIG_ERROR)

        sys.exit(result if isinstance(result, int) else EXIT_SUCCESS)


# ###########
# THE COMMANDS
# ###########


@click.group(cls=SplitloraGroup)
@click.option('--verbose', is_flag=True, help='Log debug messages')
def main(verbose):
    """Split learning over a simulated chirp / frequency shift keying link."""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.INFO,
        format='%(asctime)s %(name)s %(levelname)s: %(message)s'
    )


@main.command('train-centralized')
@common_options
@click.option('--exact', is_flag=True, default=False, help='Train with the exact instead of the receiver non-linearity')
def train_centralized_command(config_path, exact, **flags):
    """Train the whole network at one location."""
    config = build_config(config_path, flags)
    if exact:
        config = config.update({'match_receiver': False})
    result = cmd_train_centralized(config)
    click.echo('test accuracy: {:.4f}'.format(result['accuracy']))
    click.echo('test mse: {:.5f}'.format(result['mse']))
    for name, path in result['paths'].items():
        click.echo('{}: {}'.format(name, path))


@main.command('train-split')
@common_options
@click.option('--fixed-model', is_flag=True, default=False, help='Evaluate one trained model at every SNR point')
def train_split_command(config_path, fixed_model, **flags):
    """Train the split network for every SNR point."""
    config = build_config(config_path, flags)
    if fixed_model:
        config = config.update({'retrain_per_point': False})

    frame = cmd_train_split(config)
    for row in frame.itertuples():
        click.echo('{} {:>7g} dB: {:.4f}'.format(row.channel, row.snr_db, row.accuracy))


@main.command('ser-sweep')
@common_options
def ser_sweep_command(config_path, **flags):
    """Measure the symbol error rate against the analytic bound."""
    frame = cmd_ser_sweep(build_config(config_path, flags))
    for row in frame.itertuples():
        click.echo('{:>7g} dB: {}/{} errors, measured {:.3e}, analytic {:.3e}'.format(
            row.snr_db, row.errors, row.trials, row.ser_measured, row.ser_analytic
        ))


@main.command('bandwidth')
@common_options
def bandwidth_command(config_path, **flags):
    """Report the occupied bandwidth."""
    report = cmd_bandwidth_report(build_config(config_path, flags))
    click.echo('mode: {}'.format(report['mode']))
    click.echo('bandwidth: {:g} Hz'.format(report['bandwidth_hz']))
    click.echo('access: {} (expansion x{})'.format(report['access'], report['access_expansion']))
    click.echo('total bandwidth: {:g} Hz'.format(report['total_bandwidth_hz']))


@main.command('init-config')
@click.argument('path', type=click.Path(dir_okay=False), default='splitlora.conf')
def init_config_command(path):
    """Write the documented default config file."""
    cmd_init_config(RunConfig.from_dict({}), path)
    click.echo('config written to {}'.format(path))


@main.command('waveform')
@common_options
@click.option('--value', type=float, default=0.0, help='The pre-activation to modulate')
@click.option('--output', type=click.Path(dir_okay=False), default='waveform.csv')
def waveform_command(config_path, value, output, **flags):
    """Dump the waveform of a value as n,real,imag CSV."""
    cmd_waveform(build_config(config_path, flags), value, output)
    click.echo('waveform written to {}'.format(output))


@main.command('decision-map')
@common_options
@click.argument('model_path', type=click.Path(exists=True, dir_okay=False))
def decision_map_command(config_path, model_path, **flags):
    """Render the decision map of a saved model."""
    result = cmd_decision_map(build_config(config_path, flags), model_path)
    click.echo('positive fraction: {:.4f}'.format(result['positive_fraction']))


if __name__ == "__main__":
    main()  # pragma: no cover
