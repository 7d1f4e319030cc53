"""Simultaneous signal detection.

Testing H₀: ‖μ⋆θ‖₀ = 0 against ‖μ⋆θ‖₀ = qₙ with |μᵢ| ≥ rₙ, |θᵢ| ≥ sₙ on the common support.
The tests threshold the same statistics used for estimation: Q2 in the sparse regime and Q4 in the dense regimes.
"""

import collections
import logging
import math

import numpy as np

from quadfunc.error import ConstraintViolation, DegenerateSize, LengthMismatch
from quadfunc.estimators import ESTIMATOR_NAMES, estimate, make_settings, Q1, Q2, Q3, Q4
from quadfunc.params import ALGEBRAIC, LOG_SCALE
from quadfunc.rates import regime_of, SPARSE

_LOGGER = logging.getLogger(__name__)

DETECTABLE = 0
UNDETECTABLE = 1
BOUNDARY = 2
REGION_NAMES = {DETECTABLE: 'detectable', UNDETECTABLE: 'undetectable', BOUNDARY: 'boundary'}

REAL_CALIBRATION = 'real'
INTEGER_CALIBRATION = 'integer'


class TestOutcome(collections.namedtuple('TestOutcome', 'statistic threshold reject estimator')):
    """Result of one test.

    Instance variables:
    statistic -- value of the estimator.
    threshold -- λₙ.
    reject -- statistic >= threshold.
    estimator -- estimator constant the statistic came from.
    """

    __slots__ = ()
    __test__ = False  # Keep pytest from collecting this class.


def detect_region_two_seq(beta, epsilon, a, b):
    """Classify algebraic strengths (a, b) as detectable, undetectable or on the dividing set.

    Positional arguments:
    beta -- sparsity exponent.
    epsilon -- simultaneous sparsity exponent.
    a -- exponent of rₙ.
    b -- exponent of sₙ.

    Returns:
    DETECTABLE, UNDETECTABLE or BOUNDARY.
    """
    low, high = min(a, b), max(a, b)
    if regime_of(beta, epsilon) == SPARSE:
        if low > 0:
            return DETECTABLE
        return UNDETECTABLE if low < 0 else BOUNDARY
    edge = (beta - 2 * epsilon) / 4.0
    if low > edge and high > 0:
        return DETECTABLE
    if low < edge or high < 0:
        return UNDETECTABLE
    return BOUNDARY


def lambda_threshold(n, epsilon, a, b):
    """λₙ = ½n^(ε+2a+2b-1), half the worst-case functional value qₙrₙ²sₙ²/n under real-valued calibration.

    Returns:
    Float threshold.
    """
    if n < 2:
        raise DegenerateSize('requires n >= 2 (got n={0!r})'.format(n))
    return 0.5 * float(n) ** (epsilon + 2 * a + 2 * b - 1)


def lambda_threshold_params(params, calibration=REAL_CALIBRATION):
    """λₙ for a ProblemParams cell.

    Positional arguments:
    params -- ProblemParams instance.

    Keyword arguments:
    calibration -- REAL_CALIBRATION (n^ε in place of q) or INTEGER_CALIBRATION (the floored q actually planted).

    Returns:
    Float threshold.
    """
    if calibration == INTEGER_CALIBRATION:
        return 0.5 * params.q * params.r ** 2 * params.s ** 2 / params.n
    if calibration != REAL_CALIBRATION:
        raise ConstraintViolation('unknown calibration {0!r}, valid: real integer'.format(calibration))
    if not (params.a.is_log or params.b.is_log):
        return lambda_threshold(params.n, params.epsilon, params.a.value, params.b.value)
    return 0.5 * float(params.n) ** params.epsilon * params.r ** 2 * params.s ** 2 / params.n


def run_test_two_seq(x, y, sigma, params, threshold=None):
    """Reject the null of no simultaneous signal when the regime's statistic reaches λₙ.

    Positional arguments:
    x -- first sequence.
    y -- second sequence.
    sigma -- noise level.
    params -- ProblemParams instance (n must match the data).

    Keyword arguments:
    threshold -- overrides lambda_threshold_params(params); float('inf') never rejects.

    Returns:
    TestOutcome instance.
    """
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    if x.shape != y.shape:
        raise LengthMismatch('x has length {0}, y has length {1}'.format(x.size, y.size))
    if y.size != params.n:
        raise LengthMismatch('data has length {0}, parameters expect n={1}'.format(y.size, params.n))
    kind = Q2 if regime_of(params.beta, params.epsilon) == SPARSE else Q4
    settings = make_settings(kind, sigma, n=params.n)
    statistic = estimate(settings, x, y)
    if threshold is None:
        threshold = lambda_threshold_params(params)
    outcome = TestOutcome(statistic, threshold, statistic >= threshold, kind)
    _LOGGER.debug('%s statistic=%r threshold=%r reject=%s', ESTIMATOR_NAMES[kind], statistic, threshold,
                  outcome.reject)
    return outcome


def one_seq_boundary(beta, scale):
    """Detection boundary for a single k-sparse sequence.

    Positional arguments:
    beta -- sparsity exponent, 0 < β < 1.
    scale -- ALGEBRAIC (boundary on the exponent b) or LOG_SCALE (boundary on the coefficient d of σ√(d log n)).

    Returns:
    Float boundary.
    """
    if not 0 < beta < 1:
        raise ConstraintViolation('requires 0 < beta < 1 (got beta={0!r})'.format(beta))
    if scale == ALGEBRAIC:
        return (1 - 2 * beta) / 4.0 if beta >= 0.5 else 0.0
    if scale != LOG_SCALE:
        raise ConstraintViolation('unknown scale {0!r}'.format(scale))
    if beta >= 0.5:
        raise ConstraintViolation('log-scale boundary requires beta < 0.5 (got beta={0!r})'.format(beta))
    if beta <= 0.25:
        return 2 * (1 - math.sqrt(beta)) ** 2
    return 1 - 2 * beta


def detect_region_one_seq(beta, b):
    """Classify an algebraic exponent b against one_seq_boundary(beta, ALGEBRAIC)."""
    edge = one_seq_boundary(beta, ALGEBRAIC)
    if b > edge:
        return DETECTABLE
    return UNDETECTABLE if b < edge else BOUNDARY


def run_test_one_seq(y, sigma, beta, b, dense):
    """Test for any signal in one sequence.

    Dense (β ≥ 1/2): Q3 against ½n^(β+2b-1). Sparse (β < 1/2): Q1 with τ = 2 log n against (log n)/n.

    Positional arguments:
    y -- sequence.
    sigma -- noise level.
    beta -- sparsity exponent.
    b -- signal exponent (used by the dense threshold).
    dense -- boolean.

    Returns:
    TestOutcome instance.
    """
    y = np.asarray(y, dtype=float)
    n = y.size
    if n < 2:
        raise DegenerateSize('requires n >= 2 (got n={0!r})'.format(n))
    if dense and not 0.5 <= beta < 1:
        raise ConstraintViolation('dense one-sequence test requires 0.5 <= beta < 1 (got beta={0!r})'.format(beta))
    if not dense and not 0 < beta < 0.5:
        raise ConstraintViolation('sparse one-sequence test requires 0 < beta < 0.5 (got beta={0!r})'.format(beta))
    if dense:
        kind, threshold = Q3, 0.5 * float(n) ** (beta + 2 * b - 1)
    else:
        kind, threshold = Q1, math.log(n) / n
    statistic = estimate(make_settings(kind, sigma, n=n), None, y)
    return TestOutcome(statistic, threshold, statistic >= threshold, kind)
