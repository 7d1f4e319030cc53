"""Tests for quadfunc/estimators."""

import math

import numpy as np
import pytest

from quadfunc.error import ArityMismatch, ConstraintViolation, DomainError, EmptyInput, LengthMismatch
from quadfunc.estimators import (default_tau, estimate, estimate_terms, eta, exact_mean_q4, kind_from_name,
                                 mad_sigma, make_settings, Q0, Q1, Q2, Q3, Q4, Q5, theta0, theta0_quadrature,
                                 thresholded_mean, true_q, truncated_moment)
from quadfunc.params import derive_params, generate_pair, make_pair, PairConfig, sample_observations


@pytest.mark.parametrize('tau,sigma,expected', [
    (1.0, 1.0, 0.4839414),
    (1.0, 2.0, 1.9357656),
])
def test_theta0(tau, sigma, expected):
    """Test theta0() closed form."""
    assert pytest.approx(expected, abs=1e-7) == theta0(tau, sigma)


def test_theta0_limits():
    """Test theta0() vanishes for huge thresholds and rejects tau <= 0."""
    assert 0.0 <= theta0(2000.0, 1.0) < 1e-300
    with pytest.raises(DomainError):
        theta0(0.0, 1.0)
    with pytest.raises(DomainError):
        theta0(1.0, -1.0)


@pytest.mark.parametrize('tau', [1.0, 1.5, 2.0, 4.0, 7.5, 10.0, 16.0, 25.0, 36.0, 50.0])
def test_theta0_against_quadrature(tau):
    """Test the closed form against adaptive quadrature."""
    assert pytest.approx(theta0_quadrature(tau, 1.3), rel=1e-10) == theta0(tau, 1.3)


@pytest.mark.parametrize('tau,sigma,expected', [
    (1.0, 1.0, -0.2341993),
    (4.0, 1.0, -0.0466404),
    (1.0, 2.0, -3.7471892),
])
def test_eta(tau, sigma, expected):
    """Test eta() closed form."""
    assert pytest.approx(expected, abs=1e-6) == eta(tau, sigma)


def test_truncated_moment():
    """Test T(θ) at zero, evenness and vectorization."""
    assert pytest.approx(-0.4839414, abs=1e-7) == truncated_moment(0.0, 1.0, 1.0)
    assert pytest.approx(-0.2159639, abs=1e-7) == truncated_moment(0.0, 4.0, 1.0)
    values = truncated_moment(np.array([-2.0, 0.0, 2.0]), 4.0, 1.0)
    assert (3,) == values.shape
    assert pytest.approx(values[0], rel=1e-12) == values[2]
    assert truncated_moment(0.0, 4.0, 1.0) ** 2 == pytest.approx(-eta(4.0, 1.0), rel=1e-12)


def test_thresholded_mean():
    """Test E(Y² - σ²τ)₊ reduces to theta0() at zero and approaches θ² - σ²(τ - 1) for strong signals."""
    assert pytest.approx(theta0(4.0, 1.5), rel=1e-12) == thresholded_mean(0.0, 4.0, 1.5)
    assert pytest.approx(400.0 - 3.0, rel=1e-9) == thresholded_mean(20.0, 4.0, 1.0)


def test_thresholded_mean_monte_carlo(rng):
    """Test thresholded_mean() against simulation."""
    y = 1.5 + rng.standard_normal(10 ** 6)
    sample = np.maximum(y * y - 2.0, 0.0)
    se = sample.std() / math.sqrt(sample.size)
    assert abs(sample.mean() - thresholded_mean(1.5, 2.0, 1.0)) < 4 * se


def test_true_q():
    """Test the functional (1/n)Σμᵢ²θᵢ²."""
    assert 3.0 == true_q(make_pair([1, 2, 0], [3, 0, 5]))
    assert 0.0 == true_q(make_pair([0, 0], [0, 0]))
    params = derive_params(10000, 0.45, 0.3, 0.15, 0.15, 1.0)
    pair = generate_pair(params, PairConfig(), 0)
    assert pytest.approx(0.37678, abs=1e-5) == true_q(pair)


@pytest.mark.parametrize('kind,n,expected', [
    (Q1, 100, 2 * math.log(100)),
    (Q2, 100, math.log(100)),
    (Q4, 100, 4 * math.log(100)),
    (Q3, 100, None),
    (Q5, 100, None),
])
def test_default_tau(kind, n, expected):
    """Test default thresholds."""
    assert expected == default_tau(kind, n)


def test_default_tau_degenerate():
    """Test n < 2."""
    with pytest.raises(ConstraintViolation):
        default_tau(Q2, 1)


@pytest.mark.parametrize('name,expected', [('q2', Q2), ('Q4', Q4), (' q0 ', Q0), (Q5, Q5)])
def test_kind_from_name(name, expected):
    """Test kind_from_name()."""
    assert expected == kind_from_name(name)


@pytest.mark.parametrize('name', ['q9', 9, -1, True, False, 1.0, 4.0, None])
def test_kind_from_name_unknown(name):
    """Test unknown names, booleans and floats are rejected."""
    with pytest.raises(ConstraintViolation):
        kind_from_name(name)


def test_kind_from_name_numpy_integer():
    """Test numpy integers map like plain integers."""
    assert Q4 == kind_from_name(np.int64(4))
    assert int is type(kind_from_name(np.int64(4)))


def test_make_settings():
    """Test cached constants and the names."""
    settings = make_settings('q2', 1.0, tau=1.0)
    assert 'Q2' == settings.name
    assert pytest.approx(0.4839414, abs=1e-7) == settings.theta0
    assert 0.0 == settings.eta
    assert not settings.warning
    settings = make_settings(Q4, 1.0, n=100)
    assert pytest.approx(4 * math.log(100)) == settings.tau
    assert settings.eta < 0
    assert make_settings(Q3, 1.0).tau is None
    with pytest.raises(ConstraintViolation):
        make_settings(Q1, 1.0)
    with pytest.raises(DomainError):
        make_settings(Q5, 0.0)


def test_make_settings_warning(log):
    """Test tau < 1 is allowed with a warning."""
    settings = make_settings(Q2, 1.0, tau=0.5)
    assert settings.warning
    assert [m for m in log if m.startswith('make_settings: Q2 threshold tau=0.5 is below 1')]


@pytest.mark.parametrize('kind,tau,x,y,expected', [
    (Q0, None, [1.0, 2.0], [3.0, 4.0], 0.0),
    (Q3, None, None, [2.0, 0.0], 1.0),
    (Q5, None, [2.0], [3.0], 24.0),
    (Q2, 1.0, [2.0], [2.0], 6.3305496),
    (Q4, 4.0, [3.0], [3.0], 64.0466404),
    (Q1, 1.0, None, [3.0], 7.5160586),
])
def test_estimate(kind, tau, x, y, expected):
    """Test estimate() on hand-computed inputs."""
    settings = _settings(kind, 1.0)
    assert pytest.approx(expected, abs=1e-6) == estimate(settings, x, y)


def test_estimate_q4_below_threshold():
    """Coordinates with X² ∨ Y² ≤ σ²τ contribute only -η."""
    settings = make_settings(Q4, 1.0, tau=4.0)
    assert pytest.approx(-eta(4.0, 1.0), rel=1e-12) == estimate(settings, [1.0, 0.5], [1.5, -1.0])
    assert pytest.approx(3 * 15 - eta(4.0, 1.0), rel=1e-12) == estimate(settings, [2.0], [4.0])


def test_estimate_terms():
    """Test per-coordinate summands average to estimate()."""
    settings = make_settings(Q5, 1.0)
    terms = estimate_terms(settings, [2.0, 1.0], [3.0, 0.0])
    assert [24.0, -0.0] == terms.tolist()
    assert 12.0 == estimate(settings, [2.0, 1.0], [3.0, 0.0])
    assert 0.0 == estimate(make_settings(Q3, 1.0), None, [])


def test_estimate_arity():
    """Test sequence count and length checks."""
    with pytest.raises(ArityMismatch):
        estimate(make_settings(Q1, 1.0, tau=2.0), [1.0], [1.0])
    with pytest.raises(ArityMismatch):
        estimate(make_settings(Q2, 1.0, tau=2.0), None, [1.0])
    with pytest.raises(LengthMismatch):
        estimate(make_settings(Q5, 1.0), [1.0, 2.0], [1.0])


def test_exact_mean_q4():
    """Test the exact expectation at the null and its domain."""
    assert abs(exact_mean_q4(make_pair(np.zeros(5), np.zeros(5)), 4.0, 1.0)) < 1e-15
    with pytest.raises(DomainError):
        exact_mean_q4(make_pair([1.0], [1.0]), 0.5, 1.0)


@pytest.mark.parametrize('mu,theta,tau', [(3.0, 3.0, 4.0), (0.0, 2.0, 4.0), (1.0, 1.0, 1.0), (2.0, 0.5, 9.0)])
def test_exact_mean_q4_monte_carlo(rng, mu, theta, tau):
    """Test exact_mean_q4() against simulated Q4 summands."""
    n = 10 ** 6
    x, y = mu + rng.standard_normal(n), theta + rng.standard_normal(n)
    terms = estimate_terms(make_settings(Q4, 1.0, tau=tau), x, y)
    se = terms.std() / math.sqrt(n)
    assert abs(terms.mean() - exact_mean_q4(make_pair([mu], [theta]), tau, 1.0)) < 4 * se


@pytest.mark.parametrize('kind', [Q3, Q5])
def test_unbiased_estimators(kind):
    """Test Q3 and Q5 are unbiased."""
    pair = make_pair([0, 1.0, 2.0, 0] * 25, [1.5, 0, 2.0, -1.0] * 25)
    target = true_q(pair) if kind == Q5 else float(np.mean(pair.theta ** 2))
    settings = make_settings(kind, 1.0)
    values = list()
    for seed in range(4000):
        obs = sample_observations(pair, 1.0, seed)
        values.append(estimate(settings, obs.x if kind == Q5 else None, obs.y))
    values = np.array(values)
    assert abs(values.mean() - target) < 4 * values.std() / math.sqrt(values.size)


def test_mad_sigma():
    """Test the MAD noise estimate."""
    assert 0.0 == mad_sigma([1.0, 1.0], [1.0])
    assert pytest.approx(2.0, rel=1e-3) == mad_sigma([-1.349, 0.0], [1.349])
    with pytest.raises(EmptyInput):
        mad_sigma([], [])


def test_mad_sigma_consistency():
    """Test σ̂ stays within 5% of σ under sparse contamination."""
    params = derive_params(10000, 0.45, 0.3, 0.2, 0.2, 1.7)
    pair = generate_pair(params, PairConfig(), 0)
    estimates = [mad_sigma(*sample_observations(pair, 1.7, seed)) for seed in range(100)]
    assert pytest.approx(1.7, rel=0.05) == float(np.median(estimates))


def _settings(kind, sigma):
    """Settings with τ = 4 so signal coordinates pass the threshold."""
    return make_settings(kind, sigma, tau=4.0 if kind in (Q1, Q2, Q4) else None)


def _first(kind, x):
    """One-sequence estimators take no X."""
    return None if kind in (Q1, Q3) else x


def _draws(rng, n=500):
    """Sparse means plus unit noise for both sequences."""
    mu, theta = np.zeros(n), np.zeros(n)
    mu[:40], theta[20:60] = 3.0, -2.5
    return mu + rng.standard_normal(n), theta + rng.standard_normal(n)


@pytest.mark.parametrize('kind', [Q2, Q4, Q5])
def test_swap_symmetry(rng, kind):
    """Test two-sequence estimators treat X and Y alike."""
    x, y = _draws(rng)
    settings = _settings(kind, 1.0)
    assert pytest.approx(estimate(settings, x, y), rel=1e-12, abs=1e-15) == estimate(settings, y, x)


@pytest.mark.parametrize('kind', [Q1, Q2, Q3, Q4, Q5])
def test_sign_flip_invariance(rng, kind):
    """Test estimates depend on the data only through squares."""
    x, y = _draws(rng)
    settings = _settings(kind, 1.0)
    expected = estimate(settings, _first(kind, x), y)
    signs = np.where(rng.random(x.size) < 0.5, -1.0, 1.0)
    assert pytest.approx(expected, rel=1e-12, abs=1e-15) == estimate(settings, _first(kind, -x), -y)
    flipped = estimate(settings, _first(kind, signs * x), y * signs[::-1])
    assert pytest.approx(expected, rel=1e-12, abs=1e-15) == flipped


@pytest.mark.parametrize('kind', [Q1, Q2, Q3, Q4, Q5])
def test_permutation_invariance(rng, kind):
    """Test a common coordinate permutation leaves the estimate unchanged."""
    x, y = _draws(rng)
    settings = _settings(kind, 1.0)
    order = rng.permutation(x.size)
    assert pytest.approx(estimate(settings, _first(kind, x), y), rel=1e-12, abs=1e-15) == estimate(
        settings, _first(kind, x[order]), y[order])


@pytest.mark.parametrize('kind,power', [(Q1, 2), (Q2, 4), (Q3, 2), (Q4, 4), (Q5, 4)])
@pytest.mark.parametrize('scale', [0.5, 2.0, 3.7])
def test_scale_equivariance(rng, kind, power, scale):
    """Test Q(cX, cY; cσ) = c⁴Q(X, Y; σ), c² for the one-sequence estimators, at a fixed τ."""
    x, y = _draws(rng)
    base = estimate(_settings(kind, 1.0), _first(kind, x), y)
    scaled = estimate(_settings(kind, scale), _first(kind, scale * x), scale * y)
    assert pytest.approx(scale ** power * base, rel=1e-9, abs=1e-12) == scaled
