"""Command line interface for minimax rates, simulations, detection tests, affinities and plots.

Signal strengths accept a number (exponent, magnitude n^x) or log:<d> (magnitude sigma*sqrt(d log n)). Lists are
comma separated. Simulation settings can come from a flat TOML file (--config) whose keys mirror the long options;
options given on the command line win. The worker count defaults to the QUADFUNC_THREADS environment variable, then
to the number of CPUs; results do not depend on it.

Exit status: 0 success, 2 usage error, 3 constraint violation, 4 file error.

Usage:
    quadfunc rates --beta=B --epsilon=E --b=X [--a=Y] [--log-scale] [--table] [-v ...]
    quadfunc simulate [--config=FILE] [--out=CSV] [--seed=S] [--threads=T] [--n=LIST] [--beta=LIST]
        [--epsilon=LIST] [--a=LIST] [--b=LIST] [--sigma=V] [--estimators=LIST] [--replications=R]
        [--layout=L] [--signs=P] [--sigma-mode=M] [--table] [-v ...]
    quadfunc detect --input=CSV --beta=B --epsilon=E --a=Y --b=X [--sigma=V] [-v ...]
    quadfunc estimate --input=CSV --estimator=K [--sigma=V] [--tau=T] [--beta=B --epsilon=E --b=X] [--a=Y]
        [-v ...]
    quadfunc affinity --kind=K --q=Q [--k=N] [--rho=R | --rho-as-delta=R] [--sigma=V] [-v ...]
    quadfunc affinity --case=C --n=N --beta=B --epsilon=E --b=X [--sigma=V] [-v ...]
    quadfunc plot --input=CSV --out=SVG [--x=AXIS] [--y=AXIS] [-v ...]
    quadfunc -h | --help
    quadfunc --version

Options:
    --a=Y               Strength of mu. Defaults to --b.
    --b=X               Strength of theta.
    --beta=B            Sparsity exponent, 0 < epsilon <= beta < 0.5.
    --case=C            Lower-bound witness 1 to 5.
    --config=FILE       Flat TOML file with simulate settings.
    --epsilon=E         Simultaneous sparsity exponent.
    --estimator=K       One of q0 q1 q2 q3 q4 q5.
    --estimators=LIST   Estimators to simulate [default from config or q0,q2,q4].
    --input=CSV         Input file (x,y pairs or simulation rows).
    --k=N               Population of the random subsets (n for the full mixture).
    --kind=K            Prior: shift, sign, full or perturb.
    --layout=L          Pair layout: full, overlap or null.
    --log-scale         Read --a and --b as log-scale coefficients d.
    --n=LIST            Vector lengths.
    --out=FILE          Output file. Simulation rows go to stdout without it.
    --q=Q               Size of the random subsets.
    --replications=R    Monte-Carlo replications per cell.
    --rho=R             Perturbation size; number or sigma/sqrt(q).
    --rho-as-delta=R    Same as --rho, naming the perturbation delta.
    --seed=S            Master seed.
    --sigma=V           Noise level, or auto for the MAD estimate (default for detect and estimate).
    --sigma-mode=M      known or mad.
    --signs=P           Sign pattern: positive or rademacher.
    --table             Print a table (phase table for rates, slope summary for simulate).
    --tau=T             Threshold; defaults to the estimator's choice for this n.
    --threads=T         Worker threads.
    --x=AXIS            n or log-n [default: log-n].
    --y=AXIS            mse or log-mse [default: log-mse].
    -h --help           Show this screen.
    --version           Show the version.
    -v --verbose        Print debug messages to stderr. Specify twice for more.
"""

from __future__ import print_function

import logging
import math
import signal
import sys

from docopt import docopt, DocoptExit
from terminaltables import AsciiTable

import quadfunc
from quadfunc.config import as_list, load_config
from quadfunc.csv_ import load_pairs, load_rows, save_rows, write_rows
from quadfunc.detection import detect_region_two_seq, REGION_NAMES, run_test_two_seq
from quadfunc.diagnostics import (affinity_mixture, affinity_perturbation, lower_bound_case, PERTURBATION,
                                  prior_from_name)
from quadfunc.error import ConstraintViolation, FileFormatError, QuadfuncError
from quadfunc.estimators import ESTIMATOR_NAMES, estimate, kind_from_name, mad_sigma, make_settings, ONE_SEQUENCE
from quadfunc.harness import fit_log_slope, make_sim_config, run_mse_experiment, summarize, theoretical_exponent
from quadfunc.params import (derive_params, format_strength, LAYOUT_NAMES, log_scale, PairConfig, parse_strength,
                             SIGN_NAMES)
from quadfunc.plot import plot_rows
from quadfunc.rates import (is_boundary, optimal_estimator, phase_boundaries, phase_table, rate_two_seq_equal,
                            rate_two_seq_general, REGIME_NAMES, regime_of)

_LOGGER = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_CONSTRAINT = 3
EXIT_IO = 4


class UsageError(Exception):
    """A flag value could not be interpreted."""


def error(message, code=EXIT_USAGE):
    """Print an error message to stderr and return the exit status to use."""
    print('ERROR: {0}'.format(message), file=sys.stderr)
    return code


def _number(text, flag, cast=float):
    try:
        return cast(float(text)) if cast is int else cast(text)
    except (TypeError, ValueError):
        raise UsageError('{0} expects a number, got {1!r}'.format(flag, text))


def _strength(text, flag, log=False):
    if log:
        return log_scale(_number(text, flag))
    try:
        return parse_strength(str(text))
    except FileFormatError as exc:
        raise UsageError('{0}: {1}'.format(flag, exc))


def _choice(lookup, text, flag):
    try:
        return lookup(text)
    except ConstraintViolation as exc:
        raise UsageError('{0}: {1}'.format(flag, exc))


def _sigma(options, x, y):
    value = options['--sigma']
    if value is None or str(value).lower() == 'auto':
        sigma = mad_sigma(x, y)
        _LOGGER.debug('MAD noise estimate %r', sigma)
        return sigma
    return _number(value, '--sigma')


def _fmt(value):
    return 'unavailable' if value is None else format(value, '.10g')


def command_rates(options):
    """Print regime, minimax rate and the rate-optimal estimator."""
    beta, epsilon = _number(options['--beta'], '--beta'), _number(options['--epsilon'], '--epsilon')
    b = _strength(options['--b'], '--b', options['--log-scale'])
    a = _strength(options['--a'], '--a', options['--log-scale']) if options['--a'] is not None else b
    regime = regime_of(beta, epsilon)
    candidates = None
    if options['--a'] is None:
        result = rate_two_seq_equal(beta, epsilon, b)
    else:
        entry = rate_two_seq_general(beta, epsilon, a, b)
        result, candidates = entry.rate, entry.candidates
    kind = optimal_estimator(beta, epsilon, a, b)
    line = 'regime={0} r={1} logpow={2} estimator={3}'.format(REGIME_NAMES[regime], _fmt(result.exponent),
                                                             result.log_power, ESTIMATOR_NAMES[kind])
    if is_boundary(beta, epsilon, a, b):
        line += ' boundary=yes'
    if result.divergent:
        line += ' divergent=yes'
    print(line)
    if candidates and len(candidates) > 1:
        print('candidates={0}'.format(','.join('{0}/{1}'.format(_fmt(c.exponent), c.log_power) for c in candidates)))
    if options['--table']:
        categories, rows = phase_table(beta, epsilon)
        table = AsciiTable([['a \\ b'] + list(categories)])
        for row, cells in rows:
            table.table_data.append([row] + ['{0}{1}'.format(text, ' *' if shaded else '') for text, shaded in cells])
        print(table.table)
        print('knots in b: {0}'.format(' '.join(_fmt(k) for k in phase_boundaries(beta, epsilon))))
        print('* zero estimator attains the rate')
    return EXIT_OK


def _merge_simulate(options):
    config = load_config(options['--config']) if options['--config'] else dict()
    for key in ('n', 'beta', 'epsilon', 'a', 'b', 'sigma', 'estimators', 'replications', 'layout', 'signs', 'seed',
                'threads', 'out'):
        value = options['--{0}'.format(key)]
        if value is not None:
            config[key] = value
    if options['--sigma-mode'] is not None:
        config['sigma_mode'] = options['--sigma-mode']
    return config


def _build_sim_config(settings):
    kwargs = dict()
    if 'n' in settings:
        kwargs['n_values'] = [_number(v, 'n', int) for v in as_list(settings['n'])]
    if 'beta' in settings:
        kwargs['betas'] = [_number(v, 'beta') for v in as_list(settings['beta'])]
    if 'epsilon' in settings:
        kwargs['epsilons'] = [_number(v, 'epsilon') for v in as_list(settings['epsilon'])]
    if 'a' in settings:
        kwargs['a_values'] = [_strength(v, 'a') for v in as_list(settings['a'])]
    if 'b' in settings:
        kwargs['b_values'] = [_strength(v, 'b') for v in as_list(settings['b'])]
    if 'sigma' in settings:
        kwargs['sigma'] = _number(settings['sigma'], 'sigma')
    if 'estimators' in settings:
        kwargs['estimators'] = as_list(settings['estimators'])
    if 'replications' in settings:
        kwargs['replications'] = _number(settings['replications'], 'replications', int)
    if 'seed' in settings:
        kwargs['master_seed'] = _number(settings['seed'], 'seed', int)
    if 'threads' in settings:
        kwargs['threads'] = _number(settings['threads'], 'threads', int)
        if kwargs['threads'] < 1:
            raise UsageError('threads must be a positive integer')
    if 'sigma_mode' in settings:
        kwargs['sigma_mode'] = str(settings['sigma_mode']).lower()
    layouts = dict((v, k) for k, v in LAYOUT_NAMES.items())
    signs = dict((v, k) for k, v in SIGN_NAMES.items())
    layout, sign = str(settings.get('layout', 'full')).lower(), str(settings.get('signs', 'positive')).lower()
    if layout not in layouts or sign not in signs:
        raise UsageError('layout must be one of {0} and signs one of {1}'.format(
            ' '.join(sorted(layouts)), ' '.join(sorted(signs))))
    kwargs['pair_config'] = PairConfig(layouts[layout], signs[sign])
    return make_sim_config(**kwargs)


def command_simulate(options):
    """Run the MSE study and write the rows as CSV."""
    settings = _merge_simulate(options)
    config = _build_sim_config(settings)
    rows = run_mse_experiment(config)
    out = settings.get('out')
    if out:
        save_rows(rows, out)
    else:
        write_rows(rows, sys.stdout)
    if options['--table']:
        table = AsciiTable([['Estimator', 'beta', 'epsilon', 'a', 'b', 'Slope', 'Minimax r']])
        table.justify_columns[5] = 'right'
        table.justify_columns[6] = 'right'
        for (beta, epsilon, a, b, name), members in summarize(rows).items():
            try:
                slope = _fmt(round(fit_log_slope(members).slope, 3))
            except QuadfuncError:
                slope = '-'
            theory = _fmt(round(theoretical_exponent(members[0]).exponent, 3))
            table.table_data.append([name, _fmt(beta), _fmt(epsilon), format_strength(a), format_strength(b), slope,
                                     theory])
        print(table.table, file=sys.stderr if not out else sys.stdout)
    return EXIT_OK


def command_detect(options):
    """Run the simultaneous signal test on an x,y file."""
    x, y = load_pairs(options['--input'])
    beta, epsilon = _number(options['--beta'], '--beta'), _number(options['--epsilon'], '--epsilon')
    a, b = _number(options['--a'], '--a'), _number(options['--b'], '--b')
    sigma = _sigma(options, x, y)
    params = derive_params(len(y), beta, epsilon, a, b, sigma)
    outcome = run_test_two_seq(x, y, sigma, params)
    print('sigma={0} statistic={1} threshold={2} reject={3} estimator={4} region={5}'.format(
        _fmt(sigma), _fmt(outcome.statistic), _fmt(outcome.threshold), 'yes' if outcome.reject else 'no',
        ESTIMATOR_NAMES[outcome.estimator], REGION_NAMES[detect_region_two_seq(beta, epsilon, a, b)]))
    return EXIT_OK


def command_estimate(options):
    """Evaluate one estimator on an x,y file."""
    x, y = load_pairs(options['--input'])
    kind = _choice(kind_from_name, options['--estimator'], '--estimator')
    sigma = _sigma(options, x, y)
    tau = _number(options['--tau'], '--tau') if options['--tau'] is not None else None
    settings = make_settings(kind, sigma, tau=tau, n=max(len(y), 2))
    value = estimate(settings, None if kind in ONE_SEQUENCE else x, y)
    print('estimator={0} sigma={1} tau={2} estimate={3}'.format(settings.name, _fmt(sigma), _fmt(settings.tau),
                                                                _fmt(value)))
    if options['--beta'] is not None:
        beta, epsilon = _number(options['--beta'], '--beta'), _number(options['--epsilon'], '--epsilon')
        b = _strength(options['--b'], '--b')
        a = _strength(options['--a'], '--a') if options['--a'] is not None else b
        result = rate_two_seq_general(beta, epsilon, a, b).rate
        print('rate r={0} logpow={1}'.format(_fmt(result.exponent), result.log_power))
    return EXIT_OK


def _rho(text, q, sigma):
    if text is None:
        raise UsageError('--rho or --rho-as-delta is required')
    if text.replace(' ', '').lower() == 'sigma/sqrt(q)':
        return sigma / math.sqrt(q)
    return _number(text, '--rho')


def command_affinity(options):
    """Print chi-square affinities or a lower-bound witness."""
    sigma = _number(options['--sigma'], '--sigma') if options['--sigma'] not in (None, 'auto') else 1.0
    if options['--case'] is not None:
        witness = lower_bound_case(_number(options['--case'], '--case', int), _number(options['--n'], '--n', int),
                                   _number(options['--beta'], '--beta'), _number(options['--epsilon'], '--epsilon'),
                                   _number(options['--b'], '--b'), sigma)
        print('case={0} delta_q={1} exact={2} bound={3} risk={4}'.format(
            witness.case, _fmt(witness.delta_q), _fmt(witness.affinity.exact), _fmt(witness.affinity.bound),
            _fmt(witness.risk)))
        return EXIT_OK
    kind = _choice(prior_from_name, options['--kind'], '--kind')
    q = _number(options['--q'], '--q', int)
    rho = _rho(options['--rho'] or options['--rho-as-delta'], q, sigma)
    if kind == PERTURBATION:
        result = affinity_perturbation(q, rho, sigma)
    else:
        if options['--k'] is None:
            raise UsageError('--k is required for mixture priors')
        result = affinity_mixture(kind, _number(options['--k'], '--k', int), q, rho, sigma)
    exact = 'unavailable' if result.exact is None else '{0:.6f}'.format(result.exact)
    print('exact={0} bound={1:.6f}'.format(exact, result.bound))
    return EXIT_OK


def command_plot(options):
    """Render simulation rows as an SVG chart."""
    plot_rows(load_rows(options['--input']), options['--out'], x=options['--x'], y=options['--y'])
    return EXIT_OK


COMMANDS = (
    ('rates', command_rates),
    ('simulate', command_simulate),
    ('detect', command_detect),
    ('estimate', command_estimate),
    ('affinity', command_affinity),
    ('plot', command_plot),
)


def setup_logging(verbosity):
    """Send log records to stderr. One -v shows this module only, two show the whole library."""
    fmt = 'DBG<0>%(pathname)s:%(lineno)d  %(funcName)s: %(message)s'

    handler_stderr = logging.StreamHandler(sys.stderr)
    handler_stderr.setFormatter(logging.Formatter(fmt))
    if verbosity == 1:
        handler_stderr.addFilter(logging.Filter(__name__))

    root_logger = logging.getLogger()
    root_logger.setLevel(logging.DEBUG)
    root_logger.addHandler(handler_stderr)


def main(argv=None):
    """Parse arguments and dispatch to the subcommand.

    Keyword arguments:
    argv -- list of arguments without the program name, defaults to sys.argv[1:].

    Returns:
    Exit status integer.
    """
    try:
        options = docopt(__doc__, argv=argv, version=quadfunc.__version__)
    except DocoptExit as exc:
        return error(str(exc).strip() or 'invalid arguments', EXIT_USAGE)
    except SystemExit:  # --help or --version already printed.
        return EXIT_OK
    if options['--verbose']:
        setup_logging(options['--verbose'])

    handler = [func for name, func in COMMANDS if options[name]][0]
    try:
        return handler(options)
    except UsageError as exc:
        return error(exc, EXIT_USAGE)
    except FileFormatError as exc:
        return error(exc, EXIT_IO)
    except QuadfuncError as exc:
        return error(exc, EXIT_CONSTRAINT)
    except (IOError, OSError) as exc:
        return error(exc, EXIT_IO)


def run():
    """Console script entry point."""
    signal.signal(signal.SIGINT, lambda *_: sys.exit(0))  # Properly handle Control+C
    sys.exit(main())


if __name__ == '__main__':
    run()
