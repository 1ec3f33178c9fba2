import math

import numpy as np
import pytest

from cpbeam.bounds import (distortion_bound, empirical_qe,
                           grs_covering_radius_bruteforce, min_rate, qe_bound,
                           rayleigh_abs_moments)
from cpbeam.channels import FadingSpec, rayleigh_block
from cpbeam.codebook import CpCodebook


# ---------------------------------------------------------------------------
# moments of |h| for unit-power complex Gaussians
# ---------------------------------------------------------------------------

def test_moments_sum_to_unit_power():
    m = rayleigh_abs_moments()
    assert abs(m.mu ** 2 - math.pi / 4) < 1e-15
    assert abs(m.sigma2 - (1 - math.pi / 4)) < 1e-15
    assert abs(m.mu ** 2 + m.sigma2 - 1.0) < 1e-15


def test_moments_match_monte_carlo():
    h = rayleigh_block(1, 1, 51, 0, 1000000)[:, 0, 0]
    mu = float(np.mean(np.abs(h)))
    assert abs(mu ** 2 - math.pi / 4) < 0.002


# ---------------------------------------------------------------------------
# minimum applicable rate
# ---------------------------------------------------------------------------

def test_min_rate_frozen_values():
    assert abs(min_rate(5) - 0.6427177313092476) < 1e-15
    assert abs(min_rate(11) - 0.5215943334144255) < 1e-15


def test_min_rate_decreases_toward_half():
    rates = [min_rate(p) for p in (5, 7, 11, 101, 10007)]
    assert all(a > b for a, b in zip(rates, rates[1:]))
    assert abs(rates[-1] - 0.5) < 0.01


def test_min_rate_small_primes_rejected():
    # cos(2 pi / p) <= 0 for p <= 4, so the bound's constant is undefined
    with pytest.raises(ValueError):
        min_rate(3)


# ---------------------------------------------------------------------------
# quantization-error and distortion bounds
# ---------------------------------------------------------------------------

def test_qe_bound_frozen_values():
    assert abs(qe_bound(5, 4, 4) - 0.7572986201593168) < 1e-15
    assert abs(qe_bound(7, 6, 5) - 0.8103894370942553) < 1e-15
    assert abs(qe_bound(11, 10, 7) - 0.9081156724864091) < 1e-15


def test_distortion_bound_frozen_values():
    assert abs(distortion_bound(5, 4, 4) - 0.7107421747459292) < 1e-15
    # full-rate trend: looser codebooks on longer vectors bound tighter
    full = [distortion_bound(5, 4, 4), distortion_bound(7, 6, 6),
            distortion_bound(11, 10, 10)]
    assert full[0] > full[1] > full[2]


def test_bounds_decrease_with_k():
    vals = [qe_bound(7, 6, k) for k in (4, 5, 6)]
    assert vals[0] > vals[1] > vals[2]


def test_bounds_reject_rate_below_minimum():
    # k/n = 1/4 is under min_rate(5) ~= 0.64, so no bound applies
    with pytest.raises(ValueError):
        qe_bound(5, 4, 1)
    with pytest.raises(ValueError):
        distortion_bound(5, 4, 1)


def test_bounds_lie_in_unit_interval():
    for (p, n, k) in [(5, 4, 3), (5, 4, 4), (7, 6, 5), (7, 6, 6), (11, 10, 7)]:
        assert 0.0 < qe_bound(p, n, k) < 1.0
        assert 0.0 < distortion_bound(p, n, k) < 1.0


# ---------------------------------------------------------------------------
# covering radius of the evaluation code
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("p,n,k", [(5, 4, 1), (5, 4, 2), (5, 4, 3), (5, 4, 4),
                                   (7, 6, 3)])
def test_covering_radius_equals_n_minus_k(p, n, k):
    assert grs_covering_radius_bruteforce(p, n, k) == n - k


def test_covering_radius_zero_at_full_dimension():
    # k = n means every word is a codeword shift away within distance 0 of itself
    assert grs_covering_radius_bruteforce(5, 4, 4) == 0


# ---------------------------------------------------------------------------
# empirical quantization error against the analytic bound
# ---------------------------------------------------------------------------

def test_empirical_qe_below_bound_smoke():
    cb = CpCodebook(5, 3, 4)
    qe = empirical_qe(cb, FadingSpec(), trials=4000, seed=77)
    assert 0.0 < qe < qe_bound(5, 4, 3)


def test_empirical_qe_zero_on_codeword_inputs():
    """At k = n the book contains every phase pattern the draw snaps to; the
    error is still positive for generic inputs, but a codeword input maps to
    distance zero."""
    cb = CpCodebook(5, 2, 4)
    w = cb.codeword(7)
    from cpbeam.codebook import quantize_line
    _, _, d = quantize_line(w, cb)
    assert d < 1e-9
