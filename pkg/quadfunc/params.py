"""Parameter spaces, signal calibrations, mean-pair configurations and observation sampling.

The Gaussian two-sequence model observes X = μ + σZ' and Y = θ + σZ, both of length n. A parameter space is fixed by
the sparsity exponent β (at most k = n^β nonzero entries per sequence), the simultaneous sparsity exponent ε (at
most q = n^ε coordinates where both are nonzero) and the signal strengths r, s bounding |μᵢ| and |θᵢ|.
"""

import collections
import logging
import math

import numpy as np

from quadfunc.error import ConfigInfeasible, ConstraintViolation, DegenerateSize, FileFormatError, LengthMismatch
from quadfunc.misc import rng_from_seed

_LOGGER = logging.getLogger(__name__)

ALGEBRAIC = 0  # Magnitude n^exponent.
LOG_SCALE = 1  # Magnitude σ√(coefficient·log n).
STRENGTH_NAMES = {ALGEBRAIC: 'algebraic', LOG_SCALE: 'log'}

FULL_OVERLAP_STRESS = 0
OVERLAP_ONLY = 1
NULL_ONLY = 2
LAYOUT_NAMES = {FULL_OVERLAP_STRESS: 'full', OVERLAP_ONLY: 'overlap', NULL_ONLY: 'null'}

ALL_POSITIVE = 0
RADEMACHER = 1
SIGN_NAMES = {ALL_POSITIVE: 'positive', RADEMACHER: 'rademacher'}

_FLOOR_SLACK = 1e-9  # Absorbs n ** (1/3) == 9.999999999 style rounding before flooring.
_MAGNITUDE_RTOL = 1e-12


def check_exponents(beta, epsilon):
    """Raise ConstraintViolation unless 0 < epsilon <= beta < 1/2."""
    if not 0 < epsilon <= beta < 0.5:
        raise ConstraintViolation('requires 0 < epsilon <= beta < 0.5 (got beta={0!r}, epsilon={1!r})'.format(
            beta, epsilon))


def check_sigma(sigma):
    """Raise ConstraintViolation unless sigma > 0."""
    if not sigma > 0:
        raise ConstraintViolation('requires sigma > 0 (got sigma={0!r})'.format(sigma))


class SignalStrength(collections.namedtuple('SignalStrength', 'kind value')):
    """Signal magnitude calibration, either n^exponent or σ√(coefficient·log n).

    Instance variables:
    kind -- ALGEBRAIC or LOG_SCALE.
    value -- the exponent (ALGEBRAIC) or the coefficient (LOG_SCALE, strictly positive).
    """

    __slots__ = ()

    def __new__(cls, kind, value):
        """Constructor."""
        if kind not in STRENGTH_NAMES:
            raise ConstraintViolation('unknown signal strength kind {0!r}'.format(kind))
        if kind == LOG_SCALE and not value > 0:
            raise ConstraintViolation('requires log-scale coefficient > 0 (got {0!r})'.format(value))
        return super(SignalStrength, cls).__new__(cls, kind, float(value))

    def __repr__(self):
        """repr() handler."""
        if self.kind == LOG_SCALE:
            return 'LogScale({0!r})'.format(self.value)
        return 'Algebraic({0!r})'.format(self.value)

    @property
    def is_log(self):
        """True for the σ√(d log n) calibration."""
        return self.kind == LOG_SCALE

    def exponent(self):
        """Polynomial exponent of the magnitude; a log-scale strength grows slower than any power, so 0.0."""
        return 0.0 if self.is_log else self.value

    def resolve(self, n, sigma):
        """Magnitude at vector length n.

        Positional arguments:
        n -- vector length.
        sigma -- noise level.

        Returns:
        Float magnitude.
        """
        if self.is_log:
            return sigma * math.sqrt(self.value * math.log(n))
        return float(n) ** self.value


def algebraic(exponent):
    """Return SignalStrength n^exponent."""
    return SignalStrength(ALGEBRAIC, exponent)


def log_scale(coefficient):
    """Return SignalStrength σ√(coefficient·log n)."""
    return SignalStrength(LOG_SCALE, coefficient)


def as_strength(value):
    """Coerce a float, SignalStrength or text into a SignalStrength."""
    if isinstance(value, SignalStrength):
        return value
    if isinstance(value, str):
        return parse_strength(value)
    return algebraic(value)


def parse_strength(text):
    """Parse '0.15' (algebraic exponent) or 'log:2' (log-scale coefficient).

    Positional arguments:
    text -- string.

    Returns:
    SignalStrength instance.
    """
    stripped = text.strip().lower()
    try:
        if stripped.startswith('log:'):
            return log_scale(float(stripped[4:]))
        return algebraic(float(stripped))
    except ValueError:
        raise FileFormatError('invalid signal strength {0!r}, expected a number or log:<coefficient>'.format(text))


def format_strength(strength):
    """Inverse of parse_strength(), 17 significant digits."""
    if strength.is_log:
        return 'log:{0}'.format(format(strength.value, '.17g'))
    return format(strength.value, '.17g')


class ProblemParams(collections.namedtuple('ProblemParams', 'n beta epsilon a b sigma k q r s')):
    """One experiment cell with derived sparsities and magnitudes. Build with derive_params().

    Instance variables:
    n -- vector length.
    beta -- sparsity exponent.
    epsilon -- simultaneous sparsity exponent.
    a -- SignalStrength of μ.
    b -- SignalStrength of θ.
    sigma -- noise level.
    k -- max(1, ⌊n^β⌋).
    q -- max(1, ⌊n^ε⌋).
    r -- resolved μ magnitude.
    s -- resolved θ magnitude.
    """

    __slots__ = ()


def _floor_power(n, exponent):
    return max(1, int(math.floor(float(n) ** exponent + _FLOOR_SLACK)))


def derive_params(n, beta, epsilon, a, b, sigma):
    """Build a ProblemParams cell.

    Positional arguments:
    n -- integer >= 2.
    beta -- sparsity exponent.
    epsilon -- simultaneous sparsity exponent, 0 < epsilon <= beta < 1/2.
    a -- SignalStrength (or float exponent) of μ.
    b -- SignalStrength (or float exponent) of θ.
    sigma -- noise level > 0.

    Returns:
    ProblemParams instance.
    """
    if n < 2:
        raise DegenerateSize('requires n >= 2 (got n={0!r})'.format(n))
    check_exponents(beta, epsilon)
    check_sigma(sigma)
    a, b = as_strength(a), as_strength(b)
    n = int(n)
    k, q = _floor_power(n, beta), _floor_power(n, epsilon)
    params = ProblemParams(n, beta, epsilon, a, b, float(sigma), k, q, a.resolve(n, sigma), b.resolve(n, sigma))
    _LOGGER.debug('derived n=%d k=%d q=%d r=%r s=%r', n, k, q, params.r, params.s)
    return params


class PairConfig(collections.namedtuple('PairConfig', 'layout signs')):
    """How generate_pair() places and signs the nonzero entries.

    Instance variables:
    layout -- FULL_OVERLAP_STRESS, OVERLAP_ONLY or NULL_ONLY.
    signs -- ALL_POSITIVE or RADEMACHER (drawn from the seed passed to generate_pair()).
    """

    __slots__ = ()

    def __new__(cls, layout=FULL_OVERLAP_STRESS, signs=ALL_POSITIVE):
        """Constructor."""
        if layout not in LAYOUT_NAMES:
            raise ConstraintViolation('unknown pair layout {0!r}'.format(layout))
        if signs not in SIGN_NAMES:
            raise ConstraintViolation('unknown sign pattern {0!r}'.format(signs))
        return super(PairConfig, cls).__new__(cls, layout, signs)


class MeanPair(collections.namedtuple('MeanPair', 'mu theta nnz_mu nnz_theta nnz_both')):
    """Read-only (μ, θ) mean vectors with their support counts.

    Instance variables:
    mu -- numpy array of length n.
    theta -- numpy array of length n.
    nnz_mu -- ‖μ‖₀.
    nnz_theta -- ‖θ‖₀.
    nnz_both -- ‖μ⋆θ‖₀.
    """

    __slots__ = ()

    @property
    def n(self):
        """Vector length."""
        return len(self.mu)


class ObservationPair(collections.namedtuple('ObservationPair', 'x y')):
    """One noisy realization (X, Y) of equal length."""

    __slots__ = ()


def _frozen(array):
    array.setflags(write=False)
    return array


def make_pair(mu, theta):
    """Wrap two mean vectors into a MeanPair, recording support counts.

    Positional arguments:
    mu -- sequence of floats.
    theta -- sequence of floats, same length.

    Returns:
    MeanPair instance with read-only copies.
    """
    mu, theta = np.array(mu, dtype=float), np.array(theta, dtype=float)
    if mu.shape != theta.shape:
        raise LengthMismatch('mu has length {0}, theta has length {1}'.format(mu.size, theta.size))
    nnz_mu, nnz_theta = int(np.count_nonzero(mu)), int(np.count_nonzero(theta))
    nnz_both = int(np.count_nonzero((mu != 0) & (theta != 0)))
    return MeanPair(_frozen(mu), _frozen(theta), nnz_mu, nnz_theta, nnz_both)


def generate_pair(params, config, seed):
    """Realize an extreme-point member of the parameter space as contiguous disjoint blocks.

    FULL_OVERLAP_STRESS puts (r, s) on indexes [0, q), r alone on [q, k) and s alone on [k, 2k - q). OVERLAP_ONLY keeps
    only the first block. NULL_ONLY puts r on [0, k) and s on [k, 2k).

    Positional arguments:
    params -- ProblemParams instance.
    config -- PairConfig instance.
    seed -- 64-bit integer, only consumed by RADEMACHER signs.

    Returns:
    MeanPair instance.
    """
    n, k, q = params.n, params.k, params.q
    mu, theta = np.zeros(n), np.zeros(n)
    if config.layout == FULL_OVERLAP_STRESS:
        if 2 * k - q > n:
            raise ConfigInfeasible('full overlap layout requires 2k - q <= n (k={0}, q={1}, n={2})'.format(k, q, n))
        mu[:k] = params.r
        theta[:q] = params.s
        theta[k:2 * k - q] = params.s
    elif config.layout == OVERLAP_ONLY:
        mu[:q] = params.r
        theta[:q] = params.s
    else:
        if 2 * k > n:
            raise ConfigInfeasible('null layout requires 2k <= n (k={0}, n={1})'.format(k, n))
        mu[:k] = params.r
        theta[k:2 * k] = params.s

    if config.signs == RADEMACHER:
        rng = rng_from_seed(seed)
        mu *= rng.integers(0, 2, size=n) * 2 - 1
        theta *= rng.integers(0, 2, size=n) * 2 - 1

    pair = make_pair(mu, theta)
    _LOGGER.debug('generated %s pair: nnz_mu=%d nnz_theta=%d nnz_both=%d', LAYOUT_NAMES[config.layout],
                  pair.nnz_mu, pair.nnz_theta, pair.nnz_both)
    return pair


def is_member(pair, params):
    """Check counts and ℓ∞ magnitudes of a MeanPair against a parameter space.

    Positional arguments:
    pair -- MeanPair instance.
    params -- ProblemParams instance.

    Returns:
    Boolean.
    """
    if pair.n != params.n:
        return False
    if pair.nnz_mu > params.k or pair.nnz_theta > params.k or pair.nnz_both > params.q:
        return False
    if pair.n and np.max(np.abs(pair.mu)) > params.r * (1 + _MAGNITUDE_RTOL):
        return False
    return not (pair.n and np.max(np.abs(pair.theta)) > params.s * (1 + _MAGNITUDE_RTOL))


def sample_observations(pair, sigma, seed):
    """Draw X = μ + σZ', Y = θ + σZ with 2n independent standard normals.

    Positional arguments:
    pair -- MeanPair instance.
    sigma -- noise level > 0.
    seed -- 64-bit integer.

    Returns:
    ObservationPair instance.
    """
    check_sigma(sigma)
    rng = rng_from_seed(seed)
    noise = rng.standard_normal((2, pair.n))
    return ObservationPair(pair.mu + sigma * noise[0], pair.theta + sigma * noise[1])
