import math

import numpy as np
import pytest

from cpbeam.channels import (cholesky_factor, exp_correlation_matrix,
                             rayleigh_block)
from cpbeam.codebook import CpCodebook
from cpbeam.gains import (beamformers_batch, compand, cp_beamforming_gain,
                          cp_gains_batch, egt_gain_miso, egt_gains_miso_batch,
                          mrt_gain, normalized_distortion,
                          optimal_beamformer_mimo, optimal_beamformer_miso,
                          realized_gain, summarize_gains)


# ---------------------------------------------------------------------------
# optimal beamformers
# ---------------------------------------------------------------------------

def test_miso_beamformer_conjugates_phases():
    h = np.array([1.0, 1.0j])
    f = optimal_beamformer_miso(h)
    assert np.allclose(f, np.array([1.0, -1.0j]) / np.sqrt(2))
    assert abs(np.linalg.norm(f) - 1.0) < 1e-12


def test_miso_beamformer_achieves_channel_norm():
    rng = np.random.default_rng(3)
    h = rng.standard_normal(6) + 1j * rng.standard_normal(6)
    f = optimal_beamformer_miso(h)
    assert abs(abs(h @ f) - np.linalg.norm(h)) < 1e-12


def test_mimo_beamformer_matches_svd():
    rng = np.random.default_rng(5)
    for _ in range(20):
        H = rng.standard_normal((2, 6)) + 1j * rng.standard_normal((2, 6))
        f = optimal_beamformer_mimo(H)
        smax = np.linalg.svd(H, compute_uv=False)[0]
        assert abs(np.linalg.norm(H @ f) - smax) < 1e-9
        assert abs(np.linalg.norm(f) - 1.0) < 1e-12


def test_batch_beamformers_match_svd_and_power():
    """Closed-form dominant pair equals numpy's SVD on random 2x6 draws."""
    H = rayleigh_block(2, 6, 9, 0, 50)
    F, g = beamformers_batch(H)
    for t in range(50):
        s = np.linalg.svd(H[t], compute_uv=False)
        assert abs(g[t] - s[0] ** 2) < 1e-9
        assert abs(np.linalg.norm(H[t] @ F[t]) ** 2 - s[0] ** 2) < 1e-9


def test_mrt_gain_values():
    h = np.array([[3.0, 4.0]])
    assert abs(mrt_gain(h) - 25.0) < 1e-12
    H = rayleigh_block(2, 4, 1, 0, 5)
    for t in range(5):
        smax = np.linalg.svd(H[t], compute_uv=False)[0]
        assert abs(mrt_gain(H[t]) - smax ** 2) < 1e-9


# ---------------------------------------------------------------------------
# equal-gain closed form (single receive antenna)
# ---------------------------------------------------------------------------

def test_egt_gain_miso_closed_form():
    h = np.array([1.0, -2.0, 2.0j])
    assert abs(egt_gain_miso(h) - (1 + 2 + 2) ** 2 / 3.0) < 1e-12


def test_egt_mean_matches_analytic():
    # E[(sum|h|)^2 / n] = 1 + (n-1) pi/4 under unit-power Rayleigh
    n = 6
    H = rayleigh_block(1, n, 17, 0, 100000)
    mean = float(np.mean(egt_gains_miso_batch(H)))
    want = 1 + (n - 1) * math.pi / 4
    assert abs(mean - want) / want < 0.01


def test_egt_batch_matches_scalar():
    H = rayleigh_block(1, 5, 19, 0, 32)
    batch = egt_gains_miso_batch(H)
    for t in range(32):
        assert abs(batch[t] - egt_gain_miso(H[t, 0])) < 1e-12


# ---------------------------------------------------------------------------
# realized gain and the quantized-beamforming identity
# ---------------------------------------------------------------------------

def test_realized_gain_miso_identity():
    """Quantized gain equals cos^2(angle) times the full-gain optimum."""
    cb = CpCodebook(5, 2, 4)
    H = rayleigh_block(1, 4, 23, 0, 200)
    F, mrt = beamformers_batch(H)
    for t in range(200):
        idx, g = cp_gains_batch(H[t:t + 1], cb)
        c = cb.codeword(int(idx[0]))
        cos2 = abs(np.vdot(F[t], c)) ** 2
        assert abs(g[0] - cos2 * mrt[t]) < 1e-9 * max(1.0, mrt[t])
        assert abs(g[0] - realized_gain(H[t], c)) < 1e-12 * max(1.0, g[0])


def test_realized_gain_phase_invariance():
    H = rayleigh_block(2, 4, 29, 0, 1)[0]
    f = np.ones(4) / 2.0
    assert abs(realized_gain(H, f) - realized_gain(H, f * np.exp(1.1j))) < 1e-12


def test_cp_beamforming_gain_modes_agree():
    cb = CpCodebook(5, 2, 4)
    H = rayleigh_block(1, 4, 31, 0, 20)
    for t in range(20):
        ie, ge = cp_beamforming_gain(H[t], cb, mode="exhaustive")
        ip, gp = cp_beamforming_gain(H[t], cb, mode="pruned")
        assert ie == ip
        assert abs(ge - gp) < 1e-12


def test_ordering_cp_below_egt_below_mrt_in_mean():
    cb = CpCodebook(5, 2, 4)
    H = rayleigh_block(1, 4, 37, 0, 4000)
    _, cp = cp_gains_batch(H, cb)
    egt = egt_gains_miso_batch(H)
    F, mrt = beamformers_batch(H)
    assert np.mean(cp) < np.mean(egt) < np.mean(mrt)
    assert np.all(cp <= mrt + 1e-9)


# ---------------------------------------------------------------------------
# companding
# ---------------------------------------------------------------------------

def test_compand_literal_rotates_and_normalizes():
    l_tx = cholesky_factor(exp_correlation_matrix(4, 0.2))
    c = np.ones(4) / 2.0
    out = compand(c, l_tx, mode="literal")
    want = l_tx.conj().T @ c
    want = want / np.linalg.norm(want)
    assert np.allclose(out, want, atol=1e-12)
    assert abs(np.linalg.norm(out) - 1.0) < 1e-12


def test_compand_identity_correlation_is_noop():
    c = np.ones(4) / 2.0
    out = compand(c, np.eye(4), mode="literal")
    assert np.allclose(out, c)


# ---------------------------------------------------------------------------
# distortion and summaries
# ---------------------------------------------------------------------------

def test_normalized_distortion():
    assert normalized_distortion(10.0, 10.0) == 0.0
    assert abs(normalized_distortion(10.0, 7.0) - 0.3) < 1e-12
    with pytest.raises(ValueError):
        normalized_distortion(0.0, 1.0)


def test_summarize_gains_linear():
    s = summarize_gains([10.0, 0.1])
    assert abs(s.mean_linear - 5.05) < 1e-12
    assert abs(s.mean_db - 10 * math.log10(5.05)) < 1e-12
    assert s.trials == 2
    assert s.averaging_mode == "linear"


def test_summarize_gains_db_mode():
    s = summarize_gains([10.0, 0.1], mode="db")
    # mean of {+10 dB, -10 dB} is 0 dB
    assert abs(s.mean_db) < 1e-12
    with pytest.raises(ValueError):
        summarize_gains([1.0, 0.0], mode="db")
    with pytest.raises(ValueError):
        summarize_gains([], mode="linear")
