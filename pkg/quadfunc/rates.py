"""Minimax rates of convergence, regime classification and rate-optimal estimator selection.

A rate γₙ ≍ n^r(log n)^p is carried as RateResult(r, p). Equal signal strengths use the closed piecewise formulas;
unequal strengths use the phase tables, one per regime, whose rows and columns are phase categories of a and b. A
table cell holds one formula or the maximum of two formulas, in which case both candidates are kept and the dominant
one is resolved at the requested point.
"""

import collections
import logging

from quadfunc.error import ConstraintViolation
from quadfunc.estimators import Q0, Q2, Q4
from quadfunc.params import as_strength, check_exponents

_LOGGER = logging.getLogger(__name__)

SPARSE = 0
MODERATELY_DENSE = 1
STRONGLY_DENSE = 2
REGIME_NAMES = {SPARSE: 'sparse', MODERATELY_DENSE: 'moderately-dense', STRONGLY_DENSE: 'strongly-dense'}

_TIE = 1e-12
_ZERO_PLUS = 1e-300


class RateResult(collections.namedtuple('RateResult', 'exponent log_power divergent')):
    """Rate n^exponent (log n)^log_power; divergent when exponent > 0.

    Instance variables:
    exponent -- float polynomial exponent.
    log_power -- 0, 2 or 4.
    divergent -- True when the functional cannot be estimated consistently.
    """

    __slots__ = ()

    def __repr__(self):
        """repr() handler."""
        return '<RateResult r={0!r} logpow={1}{2}>'.format(self.exponent, self.log_power,
                                                            ' divergent' if self.divergent else '')


def rate(exponent, log_power=0):
    """Return a RateResult, setting the divergent flag from the exponent."""
    if log_power not in (0, 2, 4):
        raise ConstraintViolation('log power must be 0, 2 or 4 (got {0!r})'.format(log_power))
    return RateResult(float(exponent), log_power, exponent > 0)


def dominant(*candidates):
    """Largest of several rates; equal exponents resolve to the higher log power."""
    best = candidates[0]
    for candidate in candidates[1:]:
        if candidate.exponent > best.exponent + _TIE:
            best = candidate
        elif abs(candidate.exponent - best.exponent) <= _TIE and candidate.log_power > best.log_power:
            best = candidate
    return best


class TableEntry(collections.namedtuple('TableEntry', 'a_category b_category candidates rate q0_optimal boundary')):
    """One cell of a phase table evaluated at a point.

    Instance variables:
    a_category -- row label (phase of a).
    b_category -- column label (phase of b).
    candidates -- tuple of one or two RateResult; two for max{...} cells.
    rate -- dominant candidate.
    q0_optimal -- True when the zero estimator attains the rate (shaded cell).
    boundary -- True for log-scale cells where Q0 and Q2/Q4 are equally good.
    """

    __slots__ = ()


def regime_of(beta, epsilon):
    """Classify (β, ε): sparse ε < β/2, moderately dense β/2 ≤ ε ≤ 3β/4, strongly dense above."""
    check_exponents(beta, epsilon)
    if epsilon < beta / 2.0:
        return SPARSE
    if epsilon <= 0.75 * beta:
        return MODERATELY_DENSE
    return STRONGLY_DENSE


def rate_two_seq_equal(beta, epsilon, b):
    """Minimax rate over Ω(β, ε, b, b).

    Positional arguments:
    beta -- sparsity exponent.
    epsilon -- simultaneous sparsity exponent.
    b -- float exponent or SignalStrength shared by both sequences.

    Returns:
    RateResult instance.
    """
    regime = regime_of(beta, epsilon)
    strength = as_strength(b)
    if strength.is_log:
        return rate(2 * epsilon - 2, 4)
    b = strength.value
    if b <= 0:
        return rate(2 * epsilon + 8 * b - 2)
    if regime == SPARSE:
        if b <= epsilon / 2.0:
            return rate(2 * epsilon + 4 * b - 2, 2)
        return rate(epsilon + 6 * b - 2)
    if regime == MODERATELY_DENSE:
        if b <= (2 * epsilon - beta) / 4.0:
            return rate(2 * epsilon - 2, 4)
        if b <= (beta - epsilon) / 2.0:
            return rate(beta + 4 * b - 2)
        return rate(epsilon + 6 * b - 2)
    if b <= epsilon / 6.0:
        return rate(2 * epsilon - 2, 4)
    return rate(epsilon + 6 * b - 2)


def phase_boundaries(beta, epsilon):
    """Knots of b ↦ r(β, ε, b) including the point (2 - ε)/6 past which the rate diverges."""
    regime = regime_of(beta, epsilon)
    if regime == SPARSE:
        knots = [0.0, epsilon / 2.0]
    elif regime == MODERATELY_DENSE:
        knots = [0.0, (2 * epsilon - beta) / 4.0, (beta - epsilon) / 2.0]
    else:
        knots = [0.0, epsilon / 6.0]
    knots.append((2 - epsilon) / 6.0)
    return tuple(sorted(set(knots)))


# Cell formulas: key -> (exponent as a function of (beta, epsilon, a, b), log power, display text).
_FORMULAS = {
    'F0': (lambda be, ep, a, b: 2 * ep + 4 * a + 4 * b - 2, 0, 'n^(2e+4a+4b-2)'),
    'QA2': (lambda be, ep, a, b: 2 * ep + 4 * a - 2, 2, 'n^(2e+4a-2) log^2'),
    'QB2': (lambda be, ep, a, b: 2 * ep + 4 * b - 2, 2, 'n^(2e+4b-2) log^2'),
    'LL': (lambda be, ep, a, b: 2 * ep - 2, 4, 'n^(2e-2) log^4'),
    'BA': (lambda be, ep, a, b: be + 4 * a - 2, 0, 'n^(B+4a-2)'),
    'BB': (lambda be, ep, a, b: be + 4 * b - 2, 0, 'n^(B+4b-2)'),
    'BMAX': (lambda be, ep, a, b: be + 4 * max(a, b) - 2, 0, 'n^(B+4(avb)-2)'),
    'SMAX': (lambda be, ep, a, b: 2 * ep + 4 * max(a, b) - 2, 2, 'n^(2e+4(avb)-2) log^2'),
    'HR': (lambda be, ep, a, b: ep + 4 * max(a, b) + 2 * min(a, b) - 2, 0, 'n^(e+4(avb)+2(a^b)-2)'),
    'EA': (lambda be, ep, a, b: ep + 4 * a + 2 * b - 2, 0, 'n^(e+4a+2b-2)'),
    'EB': (lambda be, ep, a, b: ep + 2 * a + 4 * b - 2, 0, 'n^(e+2a+4b-2)'),
}

SPARSE_CATEGORIES = ('le0', 'log', 'low', 'high')
DENSE_CATEGORIES = ('weak', 'faint', 'log', 'low', 'mid', 'high')

# Rows are categories of a, columns categories of b, in the order of the *_CATEGORIES tuples.
_SPARSE_TABLE = {
    'le0': (('F0',), ('QA2',), ('F0',), ('F0',)),
    'log': (('QB2',), ('LL',), ('QB2',), ('QB2',)),
    'low': (('F0',), ('QA2',), ('SMAX',), ('QB2',)),
    'high': (('F0',), ('QA2',), ('QA2',), ('HR',)),
}
_MODERATE_TABLE = {
    'weak': (('F0',), ('F0',), ('QA2',), ('F0',), ('F0',), ('F0',)),
    'faint': (('F0',), ('F0',), ('QA2',), ('BB', 'QA2'), ('BB',), ('BB',)),
    'log': (('QB2',), ('QB2',), ('LL',), ('LL',), ('BB',), ('BB',)),
    'low': (('F0',), ('BA', 'QB2'), ('LL',), ('LL',), ('BB',), ('BB',)),
    'mid': (('F0',), ('BA',), ('BA',), ('BA',), ('BMAX',), ('BB',)),
    'high': (('F0',), ('BA',), ('BA',), ('BA',), ('BA',), ('HR',)),
}
_STRONG_TABLE = {
    'weak': (('F0',), ('F0',), ('QA2',), ('F0',), ('F0',), ('F0',)),
    'faint': (('F0',), ('F0',), ('QA2',), ('BB', 'QA2'), ('BB', 'QA2'), ('BB',)),
    'log': (('QB2',), ('QB2',), ('LL',), ('LL',), ('LL',), ('BB',)),
    'low': (('F0',), ('BA', 'QB2'), ('LL',), ('LL',), ('LL',), ('BB',)),
    'mid': (('F0',), ('BA', 'QB2'), ('LL',), ('LL',), ('LL', 'HR'), ('EB',)),
    'high': (('F0',), ('BA',), ('BA',), ('BA',), ('EA',), ('HR',)),
}
_TABLES = {
    SPARSE: (SPARSE_CATEGORIES, _SPARSE_TABLE),
    MODERATELY_DENSE: (DENSE_CATEGORIES, _MODERATE_TABLE),
    STRONGLY_DENSE: (DENSE_CATEGORIES, _STRONG_TABLE),
}


def category_of(beta, epsilon, strength):
    """Phase category (table row/column label) of a signal strength.

    Positional arguments:
    beta -- sparsity exponent.
    epsilon -- simultaneous sparsity exponent.
    strength -- SignalStrength or float exponent.

    Returns:
    String from SPARSE_CATEGORIES or DENSE_CATEGORIES.
    """
    regime = regime_of(beta, epsilon)
    strength = as_strength(strength)
    if strength.is_log:
        return 'log'
    x = strength.value
    if regime == SPARSE:
        if x <= 0:
            return 'le0'
        return 'low' if x <= epsilon / 2.0 else 'high'
    if x <= (beta - 2 * epsilon) / 4.0:
        return 'weak'
    if x <= 0:
        return 'faint'
    if regime == MODERATELY_DENSE:
        knots = ((2 * epsilon - beta) / 4.0, (beta - epsilon) / 2.0)
    else:
        knots = ((beta - epsilon) / 2.0, (2 * epsilon - beta) / 4.0)
    if x <= knots[0]:
        return 'low'
    return 'mid' if x <= knots[1] else 'high'


def _q0_region(regime, beta, epsilon, ea, eb):
    if regime == SPARSE:
        return min(ea, eb) <= 0
    return max(ea, eb) <= 0 or min(ea, eb) <= (beta - 2 * epsilon) / 4.0


def _shading(beta, epsilon, a, b):
    """Return (q0_optimal, boundary) with log-scale strengths read as exponent 0 and as 0⁺."""
    regime = regime_of(beta, epsilon)
    shaded = _q0_region(regime, beta, epsilon, a.exponent(), b.exponent())
    if not (a.is_log or b.is_log) or not shaded:
        return shaded, False
    ea = _ZERO_PLUS if a.is_log else a.value
    eb = _ZERO_PLUS if b.is_log else b.value
    return shaded, not _q0_region(regime, beta, epsilon, ea, eb)


def _evaluate(keys, beta, epsilon, ea, eb):
    return tuple(rate(_FORMULAS[k][0](beta, epsilon, ea, eb), _FORMULAS[k][1]) for k in keys)


def rate_two_seq_general(beta, epsilon, a, b):
    """Minimax rate over Ω(β, ε, a, b) with possibly unequal signal strengths.

    Positional arguments:
    beta -- sparsity exponent.
    epsilon -- simultaneous sparsity exponent.
    a -- SignalStrength or float exponent of μ.
    b -- SignalStrength or float exponent of θ.

    Returns:
    TableEntry instance.
    """
    regime = regime_of(beta, epsilon)
    a, b = as_strength(a), as_strength(b)
    a_cat, b_cat = category_of(beta, epsilon, a), category_of(beta, epsilon, b)
    ea, eb = a.exponent(), b.exponent()
    if regime == SPARSE and not (a.is_log or b.is_log):
        low, high = min(ea, eb), max(ea, eb)
        if low <= 0:
            candidates = (rate(2 * epsilon + 4 * ea + 4 * eb - 2),)
        elif low <= epsilon / 2.0:
            candidates = (rate(2 * epsilon + 4 * high - 2, 2),)
        else:
            candidates = (rate(epsilon + 4 * high + 2 * low - 2),)
    else:
        categories, table = _TABLES[regime]
        keys = table[a_cat][categories.index(b_cat)]
        candidates = _evaluate(keys, beta, epsilon, ea, eb)
    q0_optimal, boundary = _shading(beta, epsilon, a, b)
    entry = TableEntry(a_cat, b_cat, candidates, dominant(*candidates), q0_optimal, boundary)
    _LOGGER.debug('%s cell (%s, %s): %r', REGIME_NAMES[regime], a_cat, b_cat, entry.rate)
    return entry


def phase_table(beta, epsilon):
    """Symbolic phase table of the regime containing (β, ε).

    Returns:
    Tuple (categories, rows) where rows is a list of (row_category, [(cell_text, shaded), ...]).
    """
    regime = regime_of(beta, epsilon)
    categories, table = _TABLES[regime]
    if regime == SPARSE:
        light = ('le0', 'log')
        shaded = lambda r, c: r in light or c in light
    else:
        light = ('faint', 'log')
        shaded = lambda r, c: 'weak' in (r, c) or (r in light and c in light)
    rows = list()
    for row in categories:
        cells = list()
        for column, keys in zip(categories, table[row]):
            texts = [_FORMULAS[k][2] for k in keys]
            text = texts[0] if len(texts) == 1 else 'max{{{0}}}'.format(', '.join(texts))
            cells.append((text, shaded(row, column)))
        rows.append((row, cells))
    return categories, rows


def rate_one_seq(beta, b):
    """Minimax rate for estimating (1/n)Σθᵢ² over k-sparse θ with ‖θ‖∞ ≤ sₙ.

    Positional arguments:
    beta -- sparsity exponent, 0 < β < 1.
    b -- SignalStrength or float exponent.

    Returns:
    RateResult instance.
    """
    if not 0 < beta < 1:
        raise ConstraintViolation('requires 0 < beta < 1 (got beta={0!r})'.format(beta))
    strength = as_strength(b)
    if strength.is_log:
        if beta >= 0.5:
            raise ConstraintViolation('log-scale one-sequence rate requires beta < 0.5 (got beta={0!r})'.format(beta))
        return rate(2 * beta - 2, 2)
    b = strength.value
    if beta < 0.5:
        if b <= 0:
            return rate(2 * beta + 4 * b - 2)
        if b <= beta / 2.0:
            return rate(2 * beta - 2, 2)
        return rate(beta + 2 * b - 2)
    if b <= (1 - 2 * beta) / 4.0:
        return rate(2 * beta + 4 * b - 2)
    if b <= (1 - beta) / 2.0:
        return rate(-1)
    return rate(beta + 2 * b - 2)


class L2Kind(collections.namedtuple('L2Kind', 'sequences beta')):
    """ℓ₂-constrained problem: one sequence with sparsity β, or two sequences."""

    __slots__ = ()


TWO_SEQ = L2Kind(2, None)


def one_seq(beta):
    """Return the one-sequence L2Kind for sparsity exponent β."""
    return L2Kind(1, beta)


def rate_l2(kind, a_tilde, b_tilde):
    """Minimax rate when signal strength is an ℓ₂ budget n^ã, n^b̃ instead of an ℓ∞ bound.

    Positional arguments:
    kind -- TWO_SEQ or one_seq(beta).
    a_tilde -- ℓ₂ exponent of μ (ignored for one sequence, may be None).
    b_tilde -- ℓ₂ exponent of θ.

    Returns:
    RateResult instance.
    """
    if kind.sequences == 2:
        if a_tilde is None:
            raise ConstraintViolation('two-sequence l2 rate needs a_tilde')
        low, high = min(a_tilde, b_tilde), max(a_tilde, b_tilde)
        if low <= 0:
            return rate(4 * a_tilde + 4 * b_tilde - 2)
        return rate(4 * high + 2 * low - 2)
    beta = kind.beta
    if beta is None or not 0 < beta < 1:
        raise ConstraintViolation('requires 0 < beta < 1 (got beta={0!r})'.format(beta))
    if beta < 0.5:
        if b_tilde <= beta / 2.0:
            return rate(4 * b_tilde - 2)
        if b_tilde <= beta:
            return rate(2 * beta - 2, 2)
        return rate(2 * b_tilde - 2)
    if b_tilde <= 0.25:
        return rate(4 * b_tilde - 2)
    if b_tilde <= 0.5:
        return rate(-1)
    return rate(2 * b_tilde - 2)


def is_boundary(beta, epsilon, a, b):
    """True at log-scale cells on the edge of the zero-estimator region, where Q0 and Q2/Q4 are interchangeable."""
    return _shading(beta, epsilon, as_strength(a), as_strength(b))[1]


def optimal_estimator(beta, epsilon, a, b):
    """Rate-optimal estimator over Ω(β, ε, a, b).

    Sparse regime: Q2 when a∧b > 0, else Q0. Dense regimes: Q4 when a∨b > 0 and a∧b > (β - 2ε)/4, else Q0. Boundary
    cells (see is_boundary()) return Q2 or Q4.

    Returns:
    Estimator constant from quadfunc.estimators.
    """
    regime = regime_of(beta, epsilon)
    shaded, boundary = _shading(beta, epsilon, as_strength(a), as_strength(b))
    if shaded and not boundary:
        return Q0
    return Q2 if regime == SPARSE else Q4


def estimator_rate(kind, beta, epsilon, b):
    """Worst-case MSE exponent of one estimator over Ω(β, ε, b, b).

    Q0 for any b; Q2 and Q4 for b > 0, where their upper bounds are stated.

    Returns:
    RateResult instance.
    """
    regime_of(beta, epsilon)
    strength = as_strength(b)
    if strength.is_log:
        raise ConstraintViolation('estimator rates are stated for algebraic strengths only')
    b = strength.value
    if kind == Q0:
        return rate(2 * epsilon + 8 * b - 2)
    if b <= 0:
        raise ConstraintViolation('estimator rate of Q2/Q4 requires b > 0 (got b={0!r})'.format(b))
    if kind == Q2:
        return dominant(rate(2 * epsilon + 4 * b - 2, 2), rate(epsilon + 6 * b - 2))
    if kind == Q4:
        return dominant(rate(2 * epsilon - 2, 4), rate(epsilon + 6 * b - 2), rate(beta + 4 * b - 2))
    raise ConstraintViolation('no two-sequence rate for estimator {0!r}'.format(kind))
