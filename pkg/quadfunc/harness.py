"""Deterministic Monte-Carlo experiments: MSE curves of the estimators and error rates of the detection tests.

Every cell fixes one mean pair and redraws only the noise. Replication r of cell c draws from the stream seeded by
derive_seed(master_seed, stream, c, r) and results are reduced in replication order, so output is identical for any
number of worker threads.
"""

import collections
import concurrent.futures
import functools
import logging
import math

import numpy as np
from scipy import stats

from quadfunc.config import default_threads
from quadfunc.detection import lambda_threshold_params, REAL_CALIBRATION, run_test_two_seq
from quadfunc.error import ConstraintViolation, InsufficientPoints
from quadfunc.estimators import (ESTIMATOR_NAMES, estimate, kind_from_name, mad_sigma, make_settings, ONE_SEQUENCE,
                                 Q0, true_q)
from quadfunc.misc import derive_seed
from quadfunc.params import (as_strength, check_exponents, derive_params, FULL_OVERLAP_STRESS, generate_pair,
                             NULL_ONLY, PairConfig, sample_observations)
from quadfunc.rates import rate_two_seq_equal, rate_two_seq_general

_LOGGER = logging.getLogger(__name__)

KNOWN = 'known'
MAD_ESTIMATED = 'mad'
SIGMA_MODES = (KNOWN, MAD_ESTIMATED)

_MSE_STREAM = 0
_DETECTION_STREAM = 1
_PAIR_DRAW, _NOISE_DRAW, _NULL_DRAW, _ALT_DRAW = range(4)

SimConfig = collections.namedtuple('SimConfig', 'n_values betas epsilons a_values b_values sigma estimators '
                                                'replications pair_config master_seed sigma_mode threads')
SimRow = collections.namedtuple('SimRow', 'n beta epsilon a b sigma estimator replications mse mse_stderr '
                                          'mean_estimate true_q seed')
SlopeFit = collections.namedtuple('SlopeFit', 'slope intercept')
DetectionRates = collections.namedtuple('DetectionRates', 'n type1 type2 threshold calibration')


def make_sim_config(n_values=(1000, 10000, 100000), betas=(0.45,), epsilons=(0.02, 0.3, 0.44), a_values=(),
                    b_values=(-0.1, 0.15, 0.2), sigma=1.0, estimators=('Q0', 'Q2', 'Q4'), replications=200,
                    pair_config=None, master_seed=0, sigma_mode=KNOWN, threads=None):
    """Validate and normalize a simulation configuration.

    An empty `a_values` ties a to b in every cell (equal signal strengths). Desk-scale defaults follow the MSE study:
    β = 0.45, ε spanning the three regimes, weak and strong signals, 200 replications.

    Returns:
    SimConfig namedtuple.
    """
    if int(replications) < 1:
        raise ConstraintViolation('requires replications >= 1 (got {0!r})'.format(replications))
    if not n_values:
        raise ConstraintViolation('at least one n is required')
    for beta in betas:
        for epsilon in epsilons:
            check_exponents(beta, epsilon)
    if sigma_mode not in SIGMA_MODES:
        raise ConstraintViolation('unknown sigma mode {0!r}, valid: {1}'.format(sigma_mode, ' '.join(SIGMA_MODES)))
    if not sigma > 0:
        raise ConstraintViolation('requires sigma > 0 (got sigma={0!r})'.format(sigma))
    return SimConfig(
        tuple(int(n) for n in n_values),
        tuple(float(b) for b in betas),
        tuple(float(e) for e in epsilons),
        tuple(as_strength(a) for a in a_values),
        tuple(as_strength(b) for b in b_values),
        float(sigma),
        tuple(kind_from_name(k) for k in estimators),
        int(replications),
        pair_config or PairConfig(),
        int(master_seed),
        sigma_mode,
        threads,
    )


def iter_cells(config):
    """Yield (n, beta, epsilon, a, b) in the fixed order that assigns cell indexes."""
    for beta in config.betas:
        for epsilon in config.epsilons:
            for b in config.b_values:
                for a in (config.a_values or (b,)):
                    for n in config.n_values:
                        yield n, beta, epsilon, a, b


def target_value(kind, pair):
    """Functional an estimator targets: (1/n)Σθᵢ² for one-sequence estimators, Q(μ, θ) otherwise."""
    if kind in ONE_SEQUENCE:
        return float(np.mean(pair.theta ** 2)) if pair.n else 0.0
    return true_q(pair)


def _replicate(params, pair, kinds, sigma_mode, cell_seed, replication):
    obs = sample_observations(pair, params.sigma, derive_seed(cell_seed, _NOISE_DRAW, replication))
    sigma = mad_sigma(obs.x, obs.y) if sigma_mode == MAD_ESTIMATED else params.sigma
    values = list()
    for kind in kinds:
        settings = make_settings(kind, sigma, n=params.n)
        x = None if kind in ONE_SEQUENCE else obs.x
        values.append(estimate(settings, x, obs.y))
    return values


def run_mse_experiment(config):
    """Empirical MSE of every configured estimator in every cell.

    Positional arguments:
    config -- SimConfig namedtuple.

    Returns:
    List of SimRow namedtuples, cells in iter_cells() order, estimators in configured order.
    """
    rows = list()
    threads = config.threads or default_threads()
    kinds = [k for k in config.estimators if k != Q0]
    with concurrent.futures.ThreadPoolExecutor(max_workers=threads) as pool:
        for index, (n, beta, epsilon, a, b) in enumerate(iter_cells(config)):
            params = derive_params(n, beta, epsilon, a, b, config.sigma)
            cell_seed = derive_seed(config.master_seed, _MSE_STREAM, index)
            pair = generate_pair(params, config.pair_config, derive_seed(cell_seed, _PAIR_DRAW))
            _LOGGER.debug('cell %d: n=%d beta=%r epsilon=%r a=%r b=%r seed=%d', index, n, beta, epsilon, a, b,
                          cell_seed)
            work = functools.partial(_replicate, params, pair, kinds, config.sigma_mode, cell_seed)
            values = np.array(list(pool.map(work, range(config.replications))), dtype=float)
            for kind in config.estimators:
                target = target_value(kind, pair)
                if kind == Q0:
                    mse, stderr, mean = target * target, 0.0, 0.0
                else:
                    column = values[:, kinds.index(kind)]
                    squared = (column - target) ** 2
                    mse, mean = float(np.mean(squared)), float(np.mean(column))
                    stderr = float(np.std(squared, ddof=1) / math.sqrt(column.size)) if column.size > 1 else 0.0
                rows.append(SimRow(n, beta, epsilon, params.a, params.b, config.sigma, kind, config.replications,
                                   mse, stderr, mean, target, cell_seed))
    return rows


def fit_log_slope(rows):
    """Least-squares line through (log₁₀ n, log₁₀ mse).

    Positional arguments:
    rows -- iterable of SimRow with mse > 0.

    Returns:
    SlopeFit namedtuple.
    """
    rows = list(rows)
    if len(set(r.n for r in rows)) < 2:
        raise InsufficientPoints('slope fit needs at least two distinct n values')
    if any(r.mse <= 0 for r in rows):
        raise ConstraintViolation('slope fit needs mse > 0 in every row')
    fit = stats.linregress([math.log10(r.n) for r in rows], [math.log10(r.mse) for r in rows])
    return SlopeFit(float(fit.slope), float(fit.intercept))


def theoretical_exponent(row):
    """Minimax rate exponent for the cell of a SimRow."""
    if row.a == row.b:
        return rate_two_seq_equal(row.beta, row.epsilon, row.b)
    return rate_two_seq_general(row.beta, row.epsilon, row.a, row.b).rate


def _detect_once(params, null_pair, alt_pair, sigma_mode, threshold, cell_seed, replication):
    outcomes = list()
    for draw, pair in ((_NULL_DRAW, null_pair), (_ALT_DRAW, alt_pair)):
        obs = sample_observations(pair, params.sigma, derive_seed(cell_seed, draw, replication))
        sigma = mad_sigma(obs.x, obs.y) if sigma_mode == MAD_ESTIMATED else params.sigma
        outcomes.append(run_test_two_seq(obs.x, obs.y, sigma, params, threshold=threshold).reject)
    return outcomes


def run_detection_experiment(config, beta, epsilon, a, b, threshold=None, calibration=REAL_CALIBRATION):
    """Empirical type-I and type-II errors of the regime's test at one (β, ε, a, b) for every n in the config.

    Type-I error is the rejection rate when μ and θ have disjoint supports; type-II error is the acceptance rate at
    the full overlap configuration with q common coordinates.

    Positional arguments:
    config -- SimConfig namedtuple (n_values, sigma, replications, pair_config signs, master_seed, sigma_mode).
    beta -- sparsity exponent.
    epsilon -- simultaneous sparsity exponent.
    a -- strength of μ.
    b -- strength of θ.

    Keyword arguments:
    threshold -- fixed λ overriding the calibrated one.
    calibration -- REAL_CALIBRATION or INTEGER_CALIBRATION for the default λ.

    Returns:
    List of DetectionRates namedtuples, one per n.
    """
    results = list()
    threads = config.threads or default_threads()
    with concurrent.futures.ThreadPoolExecutor(max_workers=threads) as pool:
        for index, n in enumerate(config.n_values):
            params = derive_params(n, beta, epsilon, a, b, config.sigma)
            cell_seed = derive_seed(config.master_seed, _DETECTION_STREAM, index)
            signs = config.pair_config.signs
            null_pair = generate_pair(params, PairConfig(NULL_ONLY, signs), derive_seed(cell_seed, _PAIR_DRAW))
            alt_pair = generate_pair(params, PairConfig(FULL_OVERLAP_STRESS, signs), derive_seed(cell_seed, _PAIR_DRAW))
            level = lambda_threshold_params(params, calibration) if threshold is None else threshold
            work = functools.partial(_detect_once, params, null_pair, alt_pair, config.sigma_mode, level, cell_seed)
            rejects = np.array(list(pool.map(work, range(config.replications))), dtype=bool)
            type1, type2 = float(np.mean(rejects[:, 0])), float(np.mean(~rejects[:, 1]))
            _LOGGER.debug('detection n=%d threshold=%r type1=%r type2=%r', n, level, type1, type2)
            results.append(DetectionRates(n, type1, type2, level, calibration))
    return results


def summarize(rows):
    """Group rows by (beta, epsilon, a, b, estimator) keeping cell order; used for slope tables."""
    groups = collections.OrderedDict()
    for row in rows:
        groups.setdefault((row.beta, row.epsilon, row.a, row.b, ESTIMATOR_NAMES[row.estimator]), list()).append(row)
    return groups
