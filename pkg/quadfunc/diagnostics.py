"""Computable consequences of the lower-bound arguments.

Each minimax lower bound compares two priors on (μ, θ). If the functional differs by Δ between them and the
chi-square affinity of the induced data distributions is ξ, the risk is at least Δ²/(1 + √ξ)². This module evaluates
the affinities of the mixtures used (exactly through the hypergeometric law of the overlap M and through the binomial
upper bound), the risk bound, and the bias/variance bounds used on the upper-bound side.
"""

import collections
import logging
import math

import numpy as np
from scipy import special, stats

from quadfunc.error import ConstraintViolation
from quadfunc.misc import norm_pdf, norm_sf, safe_exp, SQRT2PI
from quadfunc.params import check_sigma, derive_params
from quadfunc.rates import regime_of, SPARSE

_LOGGER = logging.getLogger(__name__)

SHIFT_MIXTURE = 0
SIGN_MIXTURE = 1
FULL_MIXTURE = 2
PERTURBATION = 3
PRIOR_NAMES = {SHIFT_MIXTURE: 'shift', SIGN_MIXTURE: 'sign', FULL_MIXTURE: 'full', PERTURBATION: 'perturb'}

EXACT_POPULATION_LIMIT = 10 ** 6
NORMAL_EIGHTH_CENTRAL = 60.0  # E[(Z² - 1)⁴] for Z ~ N(0, 1).


class AffinityResult(collections.namedtuple('AffinityResult', 'exact bound prior_kind')):
    """Chi-square affinity of a prior pair.

    Instance variables:
    exact -- ∫g²/f, or None when the population exceeds EXACT_POPULATION_LIMIT.
    bound -- closed-form upper bound, +inf on overflow.
    prior_kind -- SHIFT_MIXTURE, SIGN_MIXTURE, FULL_MIXTURE or PERTURBATION.
    """

    __slots__ = ()


def prior_from_name(name):
    """Map 'shift', 'sign', 'full' or 'perturb' to the prior constant."""
    lookup = dict((v, k) for k, v in PRIOR_NAMES.items())
    try:
        return lookup[name.strip().lower()]
    except KeyError:
        raise ConstraintViolation('unknown prior kind {0!r}, valid: {1}'.format(name, ' '.join(sorted(lookup))))


def _log_weight(kind, rho, sigma):
    x = (rho / sigma) ** 2
    if kind == SHIFT_MIXTURE:
        return x
    if kind == FULL_MIXTURE:
        return 2.0 * x
    return x + math.log1p(math.exp(-2.0 * x)) - math.log(2.0)  # log cosh(x)


def affinity_mixture(kind, k, q, rho, sigma):
    """Affinity between a point null and a mixture over random q-subsets of k coordinates.

    With M ~ Hypergeometric(k, q, q) the overlap of two independent subsets, the affinity is E[w^M] where
    w = e^{ρ²/σ²} (SHIFT_MIXTURE), cosh(ρ²/σ²) (SIGN_MIXTURE) or e^{2ρ²/σ²} (FULL_MIXTURE, k being all n
    coordinates). Coupling M with a Binomial(q, q/k) variable gives the bound (1 - q/k + (q/k)w)^q.

    Positional arguments:
    kind -- SHIFT_MIXTURE, SIGN_MIXTURE or FULL_MIXTURE.
    k -- population size.
    q -- subset size, 1 <= q <= k.
    rho -- perturbation size >= 0.
    sigma -- noise level > 0.

    Returns:
    AffinityResult instance.
    """
    if kind not in (SHIFT_MIXTURE, SIGN_MIXTURE, FULL_MIXTURE):
        raise ConstraintViolation('affinity_mixture() does not handle prior {0!r}'.format(kind))
    if not 1 <= q <= k:
        raise ConstraintViolation('requires 1 <= q <= k (got q={0!r}, k={1!r})'.format(q, k))
    if not rho >= 0:
        raise ConstraintViolation('requires rho >= 0 (got rho={0!r})'.format(rho))
    check_sigma(sigma)
    k, q = int(k), int(q)
    log_w = _log_weight(kind, rho, sigma)
    if log_w == 0:
        return AffinityResult(1.0, 1.0, kind)

    with np.errstate(over='ignore'):
        excess = float(np.expm1(log_w))
    bound = safe_exp(q * math.log1p(q / float(k) * excess)) if math.isfinite(excess) else float('inf')

    exact = None
    if k <= EXACT_POPULATION_LIMIT:
        m = np.arange(q + 1)
        log_terms = stats.hypergeom.logpmf(m, k, q, q) + m * log_w
        exact = max(1.0, safe_exp(float(special.logsumexp(log_terms))))
    else:
        _LOGGER.debug('population k=%d above %d, exact affinity unavailable', k, EXACT_POPULATION_LIMIT)
    _LOGGER.debug('%s affinity k=%d q=%d log_w=%r: exact=%r bound=%r', PRIOR_NAMES[kind], k, q, log_w, exact, bound)
    return AffinityResult(exact, bound, kind)


def affinity_perturbation(q, delta, sigma):
    """Affinity e^{qδ²/σ²} between two point priors differing by δ on q coordinates."""
    if q < 1:
        raise ConstraintViolation('requires q >= 1 (got q={0!r})'.format(q))
    check_sigma(sigma)
    value = safe_exp(q * (delta / sigma) ** 2)
    return AffinityResult(value, value, PERTURBATION)


def cri_lower_bound(delta_q, xi):
    """Squared-error risk lower bound Δ²/(1 + √ξ)² from two priors with functional gap Δ and affinity ξ ≥ 1."""
    if not xi >= 1:
        raise ConstraintViolation('requires xi >= 1 (got xi={0!r})'.format(xi))
    return delta_q ** 2 / (1.0 + math.sqrt(xi)) ** 2


def testing_error_lower_bound(xi):
    """Lower bound max(0, 1 - ½√(ξ - 1)) on type-I plus type-II error of any test between the two priors."""
    if not xi >= 1:
        raise ConstraintViolation('requires xi >= 1 (got xi={0!r})'.format(xi))
    return max(0.0, 1.0 - 0.5 * math.sqrt(xi - 1.0))


TermBounds = collections.namedtuple('TermBounds', 'theta0_abs_bound q1_bias_bound q1_var_bound '
                                                  'q1_second_moment_bound q4_bias_bound q4_var_bound')


def term_bounds(mu, theta, tau, sigma):
    """Per-coordinate bias and variance bounds of the thresholded estimators.

    Positional arguments:
    mu -- mean of X at the coordinate.
    theta -- mean of Y at the coordinate.
    tau -- threshold >= 1.
    sigma -- noise level > 0.

    Returns:
    TermBounds namedtuple.
    """
    if not tau >= 1:
        raise ConstraintViolation('requires tau >= 1 (got tau={0!r})'.format(tau))
    check_sigma(sigma)
    var, root = sigma * sigma, math.sqrt(tau)
    mu2, theta2 = mu * mu, theta * theta
    decay = math.exp(-tau / 2.0)

    theta0_abs = 4.0 * var / (SQRT2PI * root * math.exp(tau / 2.0))
    q1_bias = min(2.0 * var * tau, theta2)
    q1_var = 6.0 * var * theta2 + var * var * (4.0 * root + 18.0) * decay
    q1_second = max(q1_var, 10.0 * theta2 * theta2)

    cap_mu, cap_theta = min(mu2, 3.0 * var * tau), min(theta2, 3.0 * var * tau)
    q4_bias = cap_mu * cap_theta + 2.0 * var * root * norm_pdf(root) * (cap_mu + cap_theta)
    if mu == 0 and theta == 0:
        q4_var = 2.0 * NORMAL_EIGHTH_CENTRAL * var ** 4 * math.sqrt(norm_sf(root))
    else:
        q4_var = (4 * var * mu2 ** 2 * theta2 + 4 * var * mu2 * theta2 ** 2 + 16 * var ** 2 * mu2 * theta2 +
                  2 * var ** 2 * mu2 ** 2 + 2 * var ** 2 * theta2 ** 2 + 8 * var ** 3 * mu2 + 8 * var ** 3 * theta2 +
                  4 * var ** 4 + 8 * var ** 2 * mu2 * theta2 * tau ** 2)
    return TermBounds(theta0_abs, q1_bias, q1_var, q1_second, q4_bias, q4_var)


LowerBound = collections.namedtuple('LowerBound', 'case delta_q affinity risk')


def lower_bound_case(case, n, beta, epsilon, b, sigma=1.0):
    """Evaluate the two-prior witness behind one piece of the equal-strength lower bound.

    1: shift mixture with e^{ρ²/σ²} = n^{β-2ε} (sparse regime only).
    2: mixture over all n coordinates at ρ = sₙ.
    3: perturbation of the q common entries by δ = σ/√q.
    4: sign mixture with ρ = σ(k/q²)^{1/4}.
    5: mixture over all n coordinates at ρ = σ√(½(1 - 2ε)log n).

    Positional arguments:
    case -- integer 1 to 5.
    n -- vector length.
    beta -- sparsity exponent.
    epsilon -- simultaneous sparsity exponent.
    b -- exponent of sₙ.

    Keyword arguments:
    sigma -- noise level.

    Returns:
    LowerBound namedtuple with the risk bound computed from the affinity upper bound.
    """
    params = derive_params(n, beta, epsilon, b, b, sigma)
    k, q, s = params.k, params.q, params.s
    log_n = math.log(params.n)
    if case == 1:
        if regime_of(beta, epsilon) != SPARSE:
            raise ConstraintViolation('case 1 requires epsilon < beta / 2')
        rho = sigma * math.sqrt((beta - 2 * epsilon) * log_n)
        affinity = affinity_mixture(SHIFT_MIXTURE, k, q, rho, sigma)
        delta_q = q * s * s * rho * rho / params.n
    elif case == 2:
        affinity = affinity_mixture(FULL_MIXTURE, params.n, q, s, sigma)
        delta_q = q * s ** 4 / params.n
    elif case == 3:
        delta = sigma / math.sqrt(q)
        affinity = affinity_perturbation(q, delta, sigma)
        delta_q = q * s * s * (s * s - (s - delta) ** 2) / params.n
    elif case == 4:
        rho = sigma * (k / float(q * q)) ** 0.25
        affinity = affinity_mixture(SIGN_MIXTURE, k, q, rho, sigma)
        delta_q = q * s * s * rho * rho / params.n
    elif case == 5:
        rho = sigma * math.sqrt(0.5 * (1 - 2 * epsilon) * log_n)
        affinity = affinity_mixture(FULL_MIXTURE, params.n, q, rho, sigma)
        delta_q = q * rho ** 4 / params.n
    else:
        raise ConstraintViolation('lower bound case must be 1 to 5 (got {0!r})'.format(case))
    return LowerBound(case, delta_q, affinity, cri_lower_bound(delta_q, affinity.bound))


def detection_witness(n, beta, epsilon, a, b, sigma=1.0):
    """Least-favorable prior affinity at an undetectable point (a, b).

    Sparse regime: shift mixture over k coordinates at the weaker magnitude. Dense regimes: sign mixture over k
    coordinates when a∧b < (β - 2ε)/4, mixture over all n coordinates with weight e^{(r² + s²)/σ²} when a∨b <= 0;
    if both apply the smaller bound is returned.

    Returns:
    AffinityResult instance.
    """
    params = derive_params(n, beta, epsilon, a, b, sigma)
    r, s = params.r, params.s
    low, high = min(params.a.exponent(), params.b.exponent()), max(params.a.exponent(), params.b.exponent())
    candidates = list()
    if regime_of(beta, epsilon) == SPARSE:
        if low <= 0:
            candidates.append(affinity_mixture(SHIFT_MIXTURE, params.k, params.q, min(r, s), sigma))
    else:
        if low < (beta - 2 * epsilon) / 4.0:
            candidates.append(affinity_mixture(SIGN_MIXTURE, params.k, params.q, min(r, s), sigma))
        if high <= 0:
            rho = math.sqrt(0.5 * (r * r + s * s))
            candidates.append(affinity_mixture(FULL_MIXTURE, params.n, params.q, rho, sigma))
    if not candidates:
        raise ConstraintViolation('({0!r}, {1!r}) is not in the undetectable region'.format(a, b))
    return min(candidates, key=lambda c: c.bound)
