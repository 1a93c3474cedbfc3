# coding: utf-8

__all__ = ['set_log_level', 'set_log_path',
           'set_monoid', 'get_monoid',
           'set_complement_cap', 'get_complement_cap',
           'set_complement_state_limit', 'get_complement_state_limit',
           'set_seed', 'get_seed',
           'set_samples', 'get_samples',
           'set_output_format', 'get_output_format',
           'load_config', 'get_profile', 'Profile']

import json
import logging
import os
from datetime import datetime
from logging.handlers import RotatingFileHandler

from appdirs import user_config_dir

from .tools import check_for_int, check_for_positive_int, check_for_string, check_for_choice
from .wltlError import WltlError, USAGE

MONOIDS = ('k1', 'k2', 'k3', 'pair')
OUTPUT_FORMATS = ('text', 'kv')


def set_log_level(level):
    """
    Set the log level.
    When logs are activated (log_level != logging.NOTSET), log files are created in the current directory.
    To change directory for log files, set log path with set_log_path() function.

    Parameters
    ----------
    level : int
        Possible values from logging module : [CRITICAL, FATAL, ERROR, WARNING, WARN, INFO, DEBUG, NOTSET]

    Example
    -------
        wltl.set_log_level(logging.DEBUG)
    """
    get_profile().set_log_level(level)


def set_log_path(path):
    """
    Set the directory of the log files.

    Parameters
    ----------
    path : string
        Directory for log files, created when missing
    """
    get_profile().set_log_path(path)


def set_monoid(monoid_id):
    """
    Set the default monoid used by the command line.

    Parameters
    ----------
    monoid_id : string
        One of 'k1' (liminf), 'k2' (limsup), 'k3' (sup over non-infinite values) or 'pair'
    """
    get_profile().set_monoid(monoid_id)


def get_monoid():
    """
    Returns the default monoid id
    """
    return get_profile().monoid


def set_complement_cap(cap):
    """
    Set the largest Büchi automaton (in states, after trimming) that may be complemented.

    Parameters
    ----------
    cap : int
        Default value: 10
    """
    get_profile().set_complement_cap(cap)


def get_complement_cap():
    """
    Returns the complementation input cap
    """
    return get_profile().complement_cap


def set_complement_state_limit(limit):
    """
    Set the largest number of states a complement construction may generate.

    Parameters
    ----------
    limit : int
        Default value: 20000
    """
    get_profile().set_complement_state_limit(limit)


def get_complement_state_limit():
    """
    Returns the limit on generated complement states
    """
    return get_profile().complement_state_limit


def set_seed(seed):
    """
    Set the seed of every sampled suite (axiom checks, random lassos).

    Parameters
    ----------
    seed : int
    """
    get_profile().set_seed(seed)


def get_seed():
    return get_profile().seed


def set_samples(samples):
    """
    Set the number of samples drawn by property checks.

    Parameters
    ----------
    samples : int
        Default value: 200
    """
    get_profile().set_samples(samples)


def get_samples():
    return get_profile().samples


def set_output_format(output_format):
    """
    Set the command line output format.

    Parameters
    ----------
    output_format : string
        'text' for readable output, 'kv' for key=value lines
    """
    get_profile().set_output_format(output_format)


def get_output_format():
    return get_profile().output_format


def load_config(path=None):
    """
    Read settings from a JSON file.

    Parameters
    ----------
    path : string, optional
        Settings file. Default: wltl.json in the user configuration directory, skipped when absent.

    Raises
    ------
    WltlError
        If an explicit file is missing or a file is not valid JSON
    """
    get_profile().load_config(path)


def get_profile():
    """
    Returns the Profile singleton
    """
    return Profile.get_profile()


class Profile(object):

    TRACE = 5
    MAX_LOG_SIZE = 10000000

    # singleton profile
    __profile = None

    @classmethod
    def get_profile(cls):
        """
        Returns the Profile singleton
        """
        if cls.__profile is None:
            cls.__profile = Profile()
        return cls.__profile

    def __init__(self):
        """
        Initialization of the __profile.
        """
        self.log_path = None
        self.log_level = logging.NOTSET

        logging.addLevelName(self.TRACE, 'TRACE')
        self.logger = logging.getLogger('wltl')
        setattr(self.logger, 'trace', lambda *args: self.logger.log(self.TRACE, *args))

        self.monoid = 'k2'
        self.complement_cap = 10
        self.complement_state_limit = 20000
        self.seed = 0
        self.samples = 200
        self.output_format = 'text'

    def set_monoid(self, monoid_id):
        check_for_string(monoid_id, 'monoid')
        check_for_choice(monoid_id.lower(), 'monoid', MONOIDS)
        self.monoid = monoid_id.lower()
        self.logger.info('Set monoid to {}'.format(self.monoid))

    def set_complement_cap(self, cap):
        check_for_positive_int(cap, 'complement_cap')
        self.complement_cap = cap
        self.logger.info('Set complementation cap to {} states'.format(cap))

    def set_complement_state_limit(self, limit):
        check_for_positive_int(limit, 'complement_state_limit')
        self.complement_state_limit = limit
        self.logger.info('Set complement state limit to {}'.format(limit))

    def set_seed(self, seed):
        check_for_int(seed, 'seed')
        self.seed = seed
        self.logger.info('Set seed to {}'.format(seed))

    def set_samples(self, samples):
        check_for_positive_int(samples, 'samples')
        self.samples = samples
        self.logger.info('Set sample count to {}'.format(samples))

    def set_output_format(self, output_format):
        check_for_string(output_format, 'output_format')
        check_for_choice(output_format, 'output_format', OUTPUT_FORMATS)
        self.output_format = output_format

    def set_log_path(self, log_path):
        """
        Set the path where log files will be created.

        Parameters
        ----------
        log_path : path directory
            Default: current directory
        Return True if log_path exists and is writable
        """
        if not os.path.isdir(log_path):
            os.makedirs(log_path)
        if os.access(log_path, os.W_OK):
            self.log_path = log_path
            return True
        else:
            return False

    def set_log_level(self, log_level):
        """
        Set the log level.
        By default, logs are disabled.

        Parameters
        ----------
        log_level : int
            Possible values from logging module : [CRITICAL, FATAL, ERROR, WARNING, WARN, INFO, DEBUG, NOTSET]
        """
        if log_level > logging.NOTSET:
            __formatter = logging.Formatter("%(asctime)s -- %(name)s -- %(levelname)s -- %(message)s")
            __filename = 'wltl.{}.log'.format(datetime.now().strftime('%Y%m%d.%H-%M-%S'))

            if self.log_path is not None:
                __filename = os.path.join(self.log_path, __filename)

            __handler = RotatingFileHandler(__filename, mode='a', maxBytes=self.MAX_LOG_SIZE,
                                            backupCount=10, encoding='utf-8')
            __handler.setFormatter(__formatter)
            self.logger.addHandler(__handler)

        self.logger.setLevel(log_level)
        self.log_level = log_level

    def load_config(self, path=None):
        explicit = path is not None
        if path is None:
            path = os.path.join(user_config_dir('wltl'), 'wltl.json')

        if not os.path.exists(path):
            if explicit:
                self.logger.error('Config file {} was not found'.format(path))
                raise WltlError(USAGE, 'Config file {} was not found'.format(path))
            return

        try:
            with open(path, encoding='utf-8') as f:
                settings = json.load(f)
        except ValueError as e:
            self.logger.error('Config file {} is not valid JSON: {}'.format(path, e))
            raise WltlError(USAGE, 'Config file {} is not valid JSON'.format(path))

        setters = {'monoid': self.set_monoid,
                   'complement_cap': self.set_complement_cap,
                   'complement_state_limit': self.set_complement_state_limit,
                   'seed': self.set_seed,
                   'samples': self.set_samples,
                   'output_format': self.set_output_format,
                   'log_path': self.set_log_path}
        for key, value in settings.items():
            if key not in setters:
                raise WltlError(USAGE, 'Unknown setting {} in {}'.format(key, path))
            try:
                setters[key](value)
            except ValueError as e:
                raise WltlError(USAGE, str(e))
        self.logger.info('Loaded settings from {}'.format(path))
