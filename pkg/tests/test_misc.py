"""Tests for quadfunc/misc."""

import math

import numpy as np
import pytest

from quadfunc.misc import derive_seed, norm_cdf, norm_pdf, norm_sf, rng_from_seed, safe_exp


def test_norm_functions():
    """Test scalar and array evaluation."""
    assert pytest.approx(0.3989422804, abs=1e-10) == norm_pdf(0.0)
    assert pytest.approx(0.0227501319, abs=1e-10) == norm_sf(2.0)
    assert pytest.approx(1 - 0.0227501319, abs=1e-10) == norm_cdf(2.0)
    assert isinstance(norm_sf(1.0), float)
    assert (3,) == norm_pdf(np.array([-1.0, 0.0, 1.0])).shape
    assert 0.0 == norm_pdf(100.0)


def test_norm_sf_tail():
    """Test the far tail keeps relative precision."""
    assert pytest.approx(7.61985302e-24, rel=1e-8) == norm_sf(10.0)
    assert 0.0 < norm_sf(30.0)


def test_derive_seed():
    """Test seeds depend on every index and on their order."""
    assert derive_seed(0, 3, 7) == derive_seed(0, 3, 7)
    assert derive_seed(0, 3, 7) != derive_seed(0, 7, 3)
    assert derive_seed(0, 1) != derive_seed(1, 1)
    assert 0 <= derive_seed(2 ** 70, 1) < 2 ** 64
    assert len(set(derive_seed(5, 0, i) for i in range(1000))) == 1000


def test_rng_from_seed():
    """Test generators built from the same seed agree."""
    first, second = rng_from_seed(42), rng_from_seed(42)
    assert np.array_equal(first.standard_normal(10), second.standard_normal(10))
    assert 'Philox' == type(rng_from_seed(1).bit_generator).__name__


def test_safe_exp(log):
    """Test overflow turns into inf."""
    assert pytest.approx(math.e, rel=1e-15) == safe_exp(1.0)
    assert math.isinf(safe_exp(1000.0))
    assert [m for m in log if m.startswith('safe_exp: exp(1000.0) overflowed')]
