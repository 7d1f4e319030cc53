"""Estimators of the quadratic functional Q(μ, θ) = (1/n)Σμᵢ²θᵢ² and their debiasing constants.

Q0 is the zero estimator. Q1 and Q3 estimate the one-sequence functional (1/n)Σθᵢ² from Y alone, by thresholding and
by plain unbiased moments. Q2 multiplies thresholded one-sequence terms, Q4 keeps unbiased products
on coordinates where either sequence is large, and Q5 is the naive unbiased product estimator.
"""

import collections
import logging
import math
import numbers

import numpy as np
from scipy import integrate

from quadfunc.error import ArityMismatch, ConstraintViolation, DomainError, EmptyInput, LengthMismatch
from quadfunc.misc import norm_pdf, norm_sf

_LOGGER = logging.getLogger(__name__)

Q0 = 0
Q1 = 1
Q2 = 2
Q3 = 3
Q4 = 4
Q5 = 5
ESTIMATOR_NAMES = {Q0: 'Q0', Q1: 'Q1', Q2: 'Q2', Q3: 'Q3', Q4: 'Q4', Q5: 'Q5'}
ONE_SEQUENCE = (Q1, Q3)
PAIR_SEQUENCE = (Q2, Q4, Q5)
THRESHOLDED = (Q1, Q2, Q4)

MAD_CONSTANT = 0.6745


def kind_from_name(name):
    """Map 'q2', 'Q2' or 2 to the estimator constant."""
    lookup = dict((v.lower(), k) for k, v in ESTIMATOR_NAMES.items())
    try:
        if isinstance(name, str):
            return lookup[name.strip().lower()]
        if isinstance(name, numbers.Integral) and not isinstance(name, bool) and name in ESTIMATOR_NAMES:
            return int(name)
        raise KeyError(name)
    except KeyError:
        raise ConstraintViolation('unknown estimator {0!r}, valid: {1}'.format(
            name, ' '.join(sorted(ESTIMATOR_NAMES.values()))))


def _check_domain(tau, sigma):
    if not tau > 0:
        raise DomainError('requires tau > 0 (got tau={0!r})'.format(tau))
    if not sigma > 0:
        raise DomainError('requires sigma > 0 (got sigma={0!r})'.format(sigma))


def theta0(tau, sigma):
    """Null mean of the thresholded square, E₀(Y² - σ²τ)₊ with Y ~ N(0, σ²).

    Positional arguments:
    tau -- threshold > 0.
    sigma -- noise level > 0.

    Returns:
    σ²[2√τ·φ(√τ) + 2(1 - τ)·Φ̃(√τ)], non-negative.
    """
    _check_domain(tau, sigma)
    root = math.sqrt(tau)
    value = sigma * sigma * (2.0 * root * norm_pdf(root) + 2.0 * (1.0 - tau) * norm_sf(root))
    return max(value, 0.0)


def theta0_quadrature(tau, sigma):
    """Adaptive quadrature of 2σ²∫_{√τ}^∞ (z² - τ)φ(z)dz, the oracle for theta0().

    Substituting z = √τ + t keeps the integrand smooth at the lower limit.
    """
    _check_domain(tau, sigma)
    root = math.sqrt(tau)
    value, _ = integrate.quad(lambda t: (t * t + 2.0 * root * t) * norm_pdf(root + t), 0.0, np.inf,
                              epsabs=0.0, epsrel=1e-13, limit=200)
    return 2.0 * sigma * sigma * value


def eta(tau, sigma):
    """Null mean of the Q4 summand, E₍₀,₀₎[(X² - σ²)(Y² - σ²)𝟙(X² ∨ Y² > σ²τ)] = -4σ⁴τφ²(√τ)."""
    _check_domain(tau, sigma)
    return -4.0 * sigma ** 4 * tau * norm_pdf(math.sqrt(tau)) ** 2


def truncated_moment(theta, tau, sigma):
    """E[(Y² - σ²)𝟙(Y² ≤ σ²τ)] for Y ~ N(θ, σ²).

    Positional arguments:
    theta -- float or numpy array of means.
    tau -- threshold > 0.
    sigma -- noise level > 0.

    Returns:
    Float or array like `theta`; even in theta, equal to -2σ²√τφ(√τ) at theta = 0.
    """
    _check_domain(tau, sigma)
    theta = np.asarray(theta, dtype=float)
    root, shift = math.sqrt(tau), theta / sigma
    value = (theta * theta * (norm_sf(-root - shift) - norm_sf(root - shift)) +
             norm_pdf(root + shift) * (-sigma * sigma * root + sigma * theta) +
             norm_pdf(root - shift) * (-sigma * sigma * root - sigma * theta))
    return value if np.ndim(value) else float(value)


def thresholded_mean(theta, tau, sigma):
    """E(Y² - σ²τ)₊ for Y ~ N(θ, σ²), equal to θ² - σ²(τ - 1)P(|Y| > σ√τ) - T(θ); theta0() at θ = 0."""
    _check_domain(tau, sigma)
    theta = np.asarray(theta, dtype=float)
    root, shift = math.sqrt(tau), theta / sigma
    tail = norm_sf(root - shift) + norm_sf(root + shift)
    value = theta * theta - sigma * sigma * (tau - 1.0) * tail - truncated_moment(theta, tau, sigma)
    return value if np.ndim(value) else float(value)


def true_q(pair):
    """(1/n)Σμᵢ²θᵢ² of a MeanPair."""
    if not pair.n:
        return 0.0
    return float(np.mean(pair.mu ** 2 * pair.theta ** 2))


def default_tau(kind, n):
    """Default threshold per estimator: Q1 2 log n, Q2 log n, Q4 4 log n; None otherwise."""
    multiplier = {Q1: 2.0, Q2: 1.0, Q4: 4.0}.get(kind)
    if multiplier is None:
        return None
    if n < 2:
        raise ConstraintViolation('requires n >= 2 for a default threshold (got n={0!r})'.format(n))
    return multiplier * math.log(n)


class EstimatorSettings(collections.namedtuple('EstimatorSettings', 'kind tau sigma theta0 eta warning')):
    """Estimator choice with cached debiasing constants. Build with make_settings().

    Instance variables:
    kind -- estimator constant (Q0 ... Q5).
    tau -- threshold, None for estimators without one.
    sigma -- noise level.
    theta0 -- cached θ₀ (= μ₀) for Q1 and Q2, else 0.0.
    eta -- cached η for Q4, else 0.0.
    warning -- True when τ < 1, outside the range the risk bounds cover.
    """

    __slots__ = ()

    @property
    def name(self):
        """Textual estimator name."""
        return ESTIMATOR_NAMES[self.kind]


def make_settings(kind, sigma, tau=None, n=None):
    """Build EstimatorSettings, computing θ₀ and η once.

    Positional arguments:
    kind -- estimator constant or name.
    sigma -- noise level > 0.

    Keyword arguments:
    tau -- explicit threshold; defaults to default_tau(kind, n).
    n -- vector length used for the default threshold.

    Returns:
    EstimatorSettings instance.
    """
    kind = kind_from_name(kind)
    if not sigma > 0:
        raise DomainError('requires sigma > 0 (got sigma={0!r})'.format(sigma))
    if kind not in THRESHOLDED:
        return EstimatorSettings(kind, None, float(sigma), 0.0, 0.0, False)
    if tau is None:
        if n is None:
            raise ConstraintViolation('{0} needs either tau or n'.format(ESTIMATOR_NAMES[kind]))
        tau = default_tau(kind, n)
    _check_domain(tau, sigma)
    warning = tau < 1
    if warning:
        _LOGGER.warning('%s threshold tau=%r is below 1; risk bounds assume tau >= 1', ESTIMATOR_NAMES[kind], tau)
    theta0_ = theta0(tau, sigma) if kind in (Q1, Q2) else 0.0
    eta_ = eta(tau, sigma) if kind == Q4 else 0.0
    _LOGGER.debug('%s settings: tau=%r sigma=%r theta0=%r eta=%r', ESTIMATOR_NAMES[kind], tau, sigma, theta0_, eta_)
    return EstimatorSettings(kind, float(tau), float(sigma), theta0_, eta_, warning)


def _prepare(settings, x, y):
    y = np.asarray(y, dtype=float)
    if settings.kind in ONE_SEQUENCE and x is not None:
        raise ArityMismatch('{0} is a one-sequence estimator, got x'.format(settings.name))
    if settings.kind in PAIR_SEQUENCE and x is None:
        raise ArityMismatch('{0} needs both x and y'.format(settings.name))
    if x is not None:
        x = np.asarray(x, dtype=float)
        if x.shape != y.shape:
            raise LengthMismatch('x has length {0}, y has length {1}'.format(x.size, y.size))
    return x, y


def estimate_terms(settings, x, y):
    """Per-coordinate summands whose mean is estimate().

    Positional arguments:
    settings -- EstimatorSettings instance.
    x -- numpy array or None for one-sequence estimators.
    y -- numpy array.

    Returns:
    Numpy array of length n.
    """
    x, y = _prepare(settings, x, y)
    var = settings.sigma ** 2
    kind = settings.kind
    if kind == Q0:
        return np.zeros(y.shape)
    if kind == Q3:
        return y * y - var
    if kind == Q5:
        return (x * x - var) * (y * y - var)
    if kind == Q1:
        return np.maximum(y * y - var * settings.tau, 0.0) - settings.theta0
    if kind == Q2:
        cut = var * settings.tau
        return ((np.maximum(x * x - cut, 0.0) - settings.theta0) *
                (np.maximum(y * y - cut, 0.0) - settings.theta0))
    x2, y2 = x * x, y * y
    keep = np.maximum(x2, y2) > var * settings.tau
    return np.where(keep, (x2 - var) * (y2 - var), 0.0) - settings.eta


def estimate(settings, x, y):
    """Evaluate an estimator on data.

    Positional arguments:
    settings -- EstimatorSettings instance.
    x -- first sequence, None for one-sequence estimators (Q0 accepts either).
    y -- second sequence.

    Returns:
    Float estimate.
    """
    terms = estimate_terms(settings, x, y)
    return float(np.mean(terms)) if terms.size else 0.0


def exact_mean_q4(pair, tau, sigma):
    """Exact expectation of Q4 at a MeanPair.

    Positional arguments:
    pair -- MeanPair instance.
    tau -- threshold >= 1.
    sigma -- noise level > 0.

    Returns:
    (1/n)Σ[μᵢ²θᵢ² - T(μᵢ)T(θᵢ) - η] with T = truncated_moment().
    """
    _check_domain(tau, sigma)
    if tau < 1:
        raise DomainError('requires tau >= 1 (got tau={0!r})'.format(tau))
    mu, theta = np.asarray(pair.mu, dtype=float), np.asarray(pair.theta, dtype=float)
    terms = (mu ** 2 * theta ** 2 - truncated_moment(mu, tau, sigma) * truncated_moment(theta, tau, sigma) -
             eta(tau, sigma))
    return float(np.mean(terms))


def mad_sigma(x, y):
    """Median absolute deviation of the interleaved sequence (X₁, Y₁, X₂, Y₂, ...) scaled by 1/0.6745.

    Median is order invariant, so sequences of unequal length are simply pooled. Even-length medians average the
    two central order statistics.

    Positional arguments:
    x -- sequence of floats.
    y -- sequence of floats.

    Returns:
    Float noise level estimate.
    """
    pooled = np.concatenate([np.ravel(np.asarray(x, dtype=float)), np.ravel(np.asarray(y, dtype=float))])
    if not pooled.size:
        raise EmptyInput('mad_sigma needs at least one value')
    center = np.median(pooled)
    return float(np.median(np.abs(pooled - center)) / MAD_CONSTANT)
