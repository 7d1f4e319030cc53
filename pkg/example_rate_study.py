#!/usr/bin/env python
"""Desk-scale study of the quadratic functional estimators and the simultaneous signal test.

The `mse` command simulates the mean squared error of the zero estimator and the two
pair-sequence thresholded estimators over a range of n and fits the slope of
log10 MSE against log10 n, which should approach the minimax rate exponent as n
grows. The `detect` command reports type-I and type-II errors of the test that
rejects when the regime's estimator exceeds half the worst-case functional value.

This script is a showcase for the quadfunc library. Everything is seeded, so two
runs with the same options print the same tables regardless of --threads.

Usage:
    example_rate_study.py mse [--beta=B] [--epsilon=E] [--b=LIST] [--n=LIST] [-r R] [-s S] [-t T] [-v ...]
    example_rate_study.py detect [--beta=B] [--epsilon=E] [--a=X] [--b=X] [--n=LIST] [-r R] [-s S] [-t T]
        [-v ...]
    example_rate_study.py -h | --help

Options:
    --a=X                   Strength exponent of mu [default: 0.25].
    --b=LIST                Strength exponents of theta [default: 0.25].
    --beta=B                Sparsity exponent [default: 0.45].
    --epsilon=E             Simultaneous sparsity exponent [default: 0.3].
    --n=LIST                Vector lengths [default: 1000,4000,16000].
    -r --replications=R     Monte-Carlo replications per cell [default: 40].
    -s --seed=S             Master seed [default: 0].
    -t --threads=T          Worker threads [default: 2].
    -v --verbose            Print debug messages to stderr. Specify twice for more.
"""

from __future__ import print_function

import logging
import signal
import sys

from docopt import docopt
from terminaltables import AsciiTable

from quadfunc.detection import detect_region_two_seq, REGION_NAMES
from quadfunc.error import QuadfuncError
from quadfunc.estimators import ESTIMATOR_NAMES
from quadfunc.harness import (fit_log_slope, make_sim_config, run_detection_experiment, run_mse_experiment,
                              summarize, theoretical_exponent)
from quadfunc.params import format_strength
from quadfunc.rates import REGIME_NAMES, regime_of

OPTIONS = docopt(__doc__) if __name__ == '__main__' else dict()


def error(message, code=1):
    """Print an error message to stderr and exits with a status of 1 by default."""
    if message:
        print('ERROR: {0}'.format(message), file=sys.stderr)
    else:
        print(file=sys.stderr)
    sys.exit(code)


def floats(text):
    """Split a comma separated option value into floats."""
    return [float(v) for v in text.split(',') if v.strip()]


def build_config(b_values):
    """SimConfig from the command line options."""
    return make_sim_config(
        n_values=[int(n) for n in floats(OPTIONS['--n'])],
        betas=[float(OPTIONS['--beta'])],
        epsilons=[float(OPTIONS['--epsilon'])],
        b_values=b_values,
        estimators=['Q0', 'Q2', 'Q4'],
        replications=int(OPTIONS['--replications']),
        master_seed=int(OPTIONS['--seed']),
        threads=int(OPTIONS['--threads']),
    )


def mse_study():
    """Print MSE per cell and a slope table."""
    config = build_config(floats(OPTIONS['--b']))
    beta, epsilon = config.betas[0], config.epsilons[0]
    print('Regime: {0}'.format(REGIME_NAMES[regime_of(beta, epsilon)]))
    rows = run_mse_experiment(config)

    table_data = [['Estimator', 'b', 'n', 'MSE', 'Std err']]
    for row in rows:
        table_data.append([ESTIMATOR_NAMES[row.estimator], format_strength(row.b), row.n,
                           '{0:.4g}'.format(row.mse), '{0:.2g}'.format(row.mse_stderr)])
    table = AsciiTable(table_data, 'MSE')
    for column in (2, 3, 4):
        table.justify_columns[column] = 'right'
    print(table.table)

    table_data = [['Estimator', 'b', 'Slope', 'Minimax r']]
    for (_, _, _, b, name), members in summarize(rows).items():
        try:
            slope = '{0:.3f}'.format(fit_log_slope(members).slope)
        except QuadfuncError as exc:
            slope = str(exc)
        theory = '{0:.3f}'.format(theoretical_exponent(members[0]).exponent)
        table_data.append([name, format_strength(b), slope, theory])
    print(AsciiTable(table_data, 'Slopes').table)


def detect_study():
    """Print type-I and type-II errors of the simultaneous signal test."""
    a, b = float(OPTIONS['--a']), float(OPTIONS['--b'].split(',')[0])
    config = build_config([b])
    beta, epsilon = config.betas[0], config.epsilons[0]
    print('Region: {0}'.format(REGION_NAMES[detect_region_two_seq(beta, epsilon, a, b)]))
    table_data = [['n', 'Threshold', 'Type I', 'Type II']]
    for result in run_detection_experiment(config, beta, epsilon, a, b):
        table_data.append([result.n, '{0:.4g}'.format(result.threshold), '{0:.3f}'.format(result.type1),
                           '{0:.3f}'.format(result.type2)])
    table = AsciiTable(table_data, 'Detection')
    for column in range(4):
        table.justify_columns[column] = 'right'
    print(table.table)


def main():
    """Main function called upon script execution."""
    try:
        if OPTIONS['mse']:
            mse_study()
        else:
            detect_study()
    except (QuadfuncError, ValueError) as exc:
        error(exc)


def setup_logging():
    """Called when __name__ == '__main__' below. Sets up logging library.

    All logging messages go to stderr, from DEBUG to CRITICAL. This script uses print() for regular messages.
    """
    fmt = 'DBG<0>%(pathname)s:%(lineno)d  %(funcName)s: %(message)s'

    handler_stderr = logging.StreamHandler(sys.stderr)
    handler_stderr.setFormatter(logging.Formatter(fmt))
    if OPTIONS['--verbose'] == 1:
        handler_stderr.addFilter(logging.Filter(__name__))

    root_logger = logging.getLogger()
    root_logger.setLevel(logging.DEBUG)
    root_logger.addHandler(handler_stderr)


if __name__ == '__main__':
    signal.signal(signal.SIGINT, lambda *_: sys.exit(0))  # Properly handle Control+C
    if OPTIONS['--verbose']:
        setup_logging()
    main()
