"""Configuration layer: flat TOML experiment files and the QUADFUNC_THREADS environment variable.

A config file mirrors the `simulate` flags one key per line, for example:

    n = [1000, 10000]
    epsilon = [0.3]
    b = "0.2"
    estimators = "q0,q4"
    seed = 7

Values given on the command line win over the file.
"""

import logging
import os

try:
    import tomllib
except ImportError:
    import tomli as tomllib

from quadfunc.error import FileFormatError

_LOGGER = logging.getLogger(__name__)

ENV_THREADS = 'QUADFUNC_THREADS'
CONFIG_KEYS = ('n', 'beta', 'epsilon', 'a', 'b', 'sigma', 'estimators', 'replications', 'layout', 'signs',
               'sigma_mode', 'seed', 'threads', 'out')


def default_threads():
    """Worker count from QUADFUNC_THREADS, falling back to the number of CPUs.

    Returns:
    Positive integer.
    """
    fallback = os.cpu_count() or 1
    value = os.environ.get(ENV_THREADS, '').strip()
    if not value:
        return fallback
    try:
        threads = int(value)
    except ValueError:
        threads = 0
    if threads < 1:
        _LOGGER.warning('Invalid value for %s: %r, must be a positive integer. Using %d.', ENV_THREADS, value,
                        fallback)
        return fallback
    return threads


def load_config(path):
    """Read a flat TOML config file.

    Positional arguments:
    path -- file path.

    Returns:
    Dictionary restricted to CONFIG_KEYS.
    """
    with open(path, 'rb') as handle:
        try:
            raw = tomllib.load(handle)
        except tomllib.TOMLDecodeError as exc:
            raise FileFormatError('{0}: {1}'.format(path, exc))
    config = dict()
    for key, value in raw.items():
        if isinstance(value, dict):
            raise FileFormatError('{0}: nested table {1!r} not supported, config is flat'.format(path, key))
        if key not in CONFIG_KEYS:
            _LOGGER.warning('Ignoring unknown config key %r in %s', key, path)
            continue
        config[key] = value
    _LOGGER.debug('loaded config %s: %r', path, config)
    return config


def as_list(value):
    """Normalize a scalar, a list, or a comma-separated string into a list of strings."""
    if isinstance(value, (list, tuple)):
        return [str(v).strip() for v in value]
    return [v.strip() for v in str(value).split(',') if v.strip()]
