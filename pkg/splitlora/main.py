# Standard library
import os
import logging

from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Dict, List, Optional

# third party
import numpy as np
import pandas as pd

# Local imports
from splitlora.env import RunConfig, ConfigInstaller

from splitlora.enn import EnnModel
from splitlora.enn import accuracy, mean_squared_error, train_centralized

from splitlora.phy import quantize, modulate, occupied_bandwidth, access_expansion

from splitlora.datasets import make_map_dataset

from splitlora.split import SplitSession
from splitlora.split import train_split, evaluate_split, decision_map, ser_sweep
from splitlora.split import model_evaluator, session_evaluator

from splitlora.results import write_frame, write_metrics, write_model, write_waveform
from splitlora.results import write_decision_map_pgm, write_decision_map_csv


LOGGER = logging.getLogger('splitlora.cli')
SWEEP_LOGGER = logging.getLogger('splitlora.sweep')

MODEL_FILE_NAME = 'model.txt'
METRICS_FILE_NAME = 'metrics.csv'
MAP_PGM_FILE_NAME = 'decision_map.pgm'
MAP_CSV_FILE_NAME = 'decision_map.csv'
SWEEP_FILE_NAME = 'sweep.csv'
SER_FILE_NAME = 'ser.csv'


# ################
# SEEDING HELPERS
# ################


def run_seeds(config: RunConfig) -> Dict[str, np.random.SeedSequence]:
    """
    Derives the independent seed sequences of a run from the single seed of the config: one for the initialization
    of the model, one for the sample order of the centralized training and one parent for the sweep points.

    CHANGELOG

    Added 16.10.2026
    """
    initialization, order, points = config.seed_sequence().spawn(3)
    return {'initialization': initialization, 'order': order, 'points': points}


def initial_model(config: RunConfig) -> EnnModel:
    rng = np.random.default_rng(run_seeds(config)['initialization'])
    return EnnModel.initialize(config.enn_config(), rng)


def snr_label(snr_db: float) -> str:
    return '{:g}'.format(snr_db)


def map_points(function: Callable, arguments: List[tuple], workers: int) -> List:
    """
    Applies "function" to every tuple of "arguments". With more than one worker the calls are distributed over a
    process pool. Every point owns its own seed sequence, so the results do not depend on the amount of workers.

    CHANGELOG

    Added 16.10.2026
    """
    if workers <= 1 or len(arguments) <= 1:
        return [function(*argument) for argument in arguments]

    with ProcessPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(function, *zip(*arguments)))


# #######################
# BUSINESS LOGIC WRAPPERS
# #######################


def cmd_train_centralized(config: RunConfig) -> Dict:
    """
    Trains the whole network at one location on the configured map task. Writes the model, the per epoch metrics and
    the decision map (PGM and CSV) into the output folder. With "match_receiver" the hidden layer uses the quantized
    non-linearity of the configured receiver mode, so that the model is comparable with the split runs.

    Returns a dict with the test accuracy, the test mse and the paths of the written files.

    CHANGELOG

    Added 16.10.2026

    Changed 19.10.2026
    The hidden layer follows the receiver mode of the config. The test mse is reported as well.

    :raises: DivergenceError, ValueError

    :param config:
    :return:
    """
    train, test = make_map_dataset(config.dataset_spec())
    seeds = run_seeds(config)
    hidden = config.receiver_hidden()

    model, metrics = train_centralized(
        initial_model(config),
        train,
        config.epochs,
        learning_rates=config.learning_rates(),
        rng_seed=int(seeds['order'].generate_state(1)[0]),
        normalization=config.normalization,
        **hidden
    )
    test_accuracy = accuracy(model, test, **hidden)
    test_mse = mean_squared_error(model, test, **hidden)
    LOGGER.info('centralized test accuracy %.4f mse %.5f', test_accuracy, test_mse)

    grid = decision_map(model_evaluator(model, **hidden), config.resolution)
    paths = {
        'model':        os.path.join(config.out, MODEL_FILE_NAME),
        'metrics':      os.path.join(config.out, METRICS_FILE_NAME),
        'map_pgm':      os.path.join(config.out, MAP_PGM_FILE_NAME),
        'map_csv':      os.path.join(config.out, MAP_CSV_FILE_NAME)
    }
    write_model(paths['model'], model)
    write_metrics(paths['metrics'], metrics)
    write_decision_map_pgm(paths['map_pgm'], grid)
    write_decision_map_csv(paths['map_csv'], grid)

    return {'accuracy': test_accuracy, 'mse': test_mse, 'paths': paths}


def run_split_point(config_dict: Dict,
                    snr_db: float,
                    seed: np.random.SeedSequence,
                    model_text: Optional[str] = None) -> Dict:
    """
    Runs a single point of the split sweep and writes its metrics and decision map. This is a module level function,
    so that it can be sent to the worker processes.

    Without "model_text" the split network is trained from the initial model of the config. With "model_text" the
    given model is evaluated as it is.

    CHANGELOG

    Added 16.10.2026

    Changed 19.10.2026
    The decision map is written as CSV as well. The backward link repeats every gradient symbol.

    :param config_dict: the RunConfig as a dict
    :param snr_db: the SNR of the forward channel
    :param seed: the seed sequence of this point
    :param model_text: a fixed model in its text format
    :return: one row of the sweep table
    """
    config = RunConfig.from_dict(config_dict)
    train, test = make_map_dataset(config.dataset_spec())
    rng = np.random.default_rng(seed)

    model = initial_model(config) if model_text is None else EnnModel.from_text(model_text)
    session = SplitSession.from_model(
        model,
        config.phy_config(),
        config.channel_model(snr_db),
        config.backward_channel_model(),
        learning_rates=config.learning_rates(),
        normalization=config.normalization,
        gradient_symbols=config.gradient_symbols,
        backward_repetitions=config.backward_repetitions
    )

    label = '{}_{}'.format(config.channel, snr_label(snr_db))
    if model_text is None:
        session, metrics = train_split(session, train, config.epochs, rng)
        write_metrics(os.path.join(config.out, 'metrics_{}.csv'.format(label)), metrics.to_frame())

    test_accuracy = evaluate_split(session, test, rng)
    grid = decision_map(session_evaluator(session, rng), config.resolution)
    write_decision_map_pgm(os.path.join(config.out, 'map_{}.pgm'.format(label)), grid)
    write_decision_map_csv(os.path.join(config.out, 'map_{}.csv'.format(label)), grid)

    SWEEP_LOGGER.info('%s %s dB: test accuracy %.4f', config.channel, snr_label(snr_db), test_accuracy)
    return {'channel': config.channel, 'snr_db': snr_db, 'accuracy': test_accuracy}


def cmd_train_split(config: RunConfig) -> pd.DataFrame:
    """
    Runs the split network for every SNR of the sweep list over the configured channel kind. By default the network
    is retrained for every point. With "retrain_per_point" disabled, one model is trained centrally (with the
    non-linearity of the receiver, see "RunConfig.receiver_hidden") and then evaluated under noisy inference at every
    point.

    Writes the sweep table "sweep.csv" with the columns channel, snr_db and accuracy plus the per point files.

    CHANGELOG

    Added 16.10.2026

    :raises: DivergenceError, ValueError

    :param config:
    :return: the sweep table
    """
    model_text = None
    if not config.retrain_per_point:
        train, _ = make_map_dataset(config.dataset_spec())
        model, _ = train_centralized(
            initial_model(config),
            train,
            config.epochs,
            learning_rates=config.learning_rates(),
            rng_seed=int(run_seeds(config)['order'].generate_state(1)[0]),
            normalization=config.normalization,
            **config.receiver_hidden()
        )
        model_text = model.to_text()

    point_seeds = run_seeds(config)['points'].spawn(len(config.snr_list))
    arguments = [(config.to_dict(), snr_db, seed, model_text) for snr_db, seed in zip(config.snr_list, point_seeds)]
    rows = map_points(run_split_point, arguments, config.workers)

    frame = pd.DataFrame(rows, columns=['channel', 'snr_db', 'accuracy'])
    write_frame(os.path.join(config.out, SWEEP_FILE_NAME), frame)
    return frame


def run_ser_point(config_dict: Dict, snr_db: float, seed: np.random.SeedSequence) -> pd.DataFrame:
    config = RunConfig.from_dict(config_dict)
    return ser_sweep(config.phy_config(), [config.channel_model(snr_db)], config.trials, np.random.default_rng(seed))


def cmd_ser_sweep(config: RunConfig) -> pd.DataFrame:
    """
    Measures the symbol error rate of the configured link at every SNR of the sweep list and writes it next to the
    analytic prediction into "ser.csv".

    CHANGELOG

    Added 16.10.2026

    :param config:
    :return: the SER table
    """
    point_seeds = run_seeds(config)['points'].spawn(len(config.snr_list))
    arguments = [(config.to_dict(), snr_db, seed) for snr_db, seed in zip(config.snr_list, point_seeds)]
    frame = pd.concat(map_points(run_ser_point, arguments, config.workers), ignore_index=True)

    write_frame(os.path.join(config.out, SER_FILE_NAME), frame)
    return frame


def cmd_bandwidth_report(config: RunConfig) -> Dict:
    """
    Returns the bandwidth occupied by a single stream, the expansion factor of the access scheme and their product.

    CHANGELOG

    Added 16.10.2026
    """
    phy = config.phy_config()
    stream_bandwidth = occupied_bandwidth(phy)
    expansion = access_expansion(phy)
    return {
        'mode':                 phy.mode,
        'access':               phy.access,
        'bandwidth_hz':         stream_bandwidth,
        'access_expansion':     expansion,
        'total_bandwidth_hz':   stream_bandwidth * expansion
    }


def cmd_init_config(config: RunConfig, file_path: str) -> str:
    ConfigInstaller(config).install(file_path)
    return file_path


def cmd_waveform(config: RunConfig, value: float, file_path: str) -> str:
    """
    Quantizes the pre-activation "value", modulates it with the configured mode and writes the waveform as a CSV with
    the columns n, real and imag.

    CHANGELOG

    Added 16.10.2026
    """
    phy = config.phy_config()
    symbol = quantize(value, phy.N, phy.mode, phy.extension)
    write_waveform(file_path, modulate(symbol, phy))
    LOGGER.info('value %s was sent as %s', value, symbol)
    return file_path


def cmd_decision_map(config: RunConfig, model_path: str) -> Dict:
    """
    Renders the decision map of a saved model into the output folder. The hidden layer follows the receiver mode of
    the config, like in "cmd_train_centralized".

    CHANGELOG

    Added 16.10.2026

    Changed 19.10.2026
    Replaced the "folded" argument with the receiver matching of the config.
    """
    model = EnnModel.load(model_path)
    grid = decision_map(model_evaluator(model, **config.receiver_hidden()), config.resolution)
    paths = {
        'map_pgm':      os.path.join(config.out, MAP_PGM_FILE_NAME),
        'map_csv':      os.path.join(config.out, MAP_CSV_FILE_NAME)
    }
    write_decision_map_pgm(paths['map_pgm'], grid)
    write_decision_map_csv(paths['map_csv'], grid)
    return {'positive_fraction': float(np.mean(grid > 0)), 'paths': paths}
