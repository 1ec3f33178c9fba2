"""Closed-form quantization-error and distortion bounds, plus exhaustive
oracles (Hamming covering radius, empirical mean squared chordal error)."""

import math
from dataclasses import dataclass

import numpy as np

from .codebook import batch_quantize
from .field import PrimeModulus
from .channels import fading_block


@dataclass(frozen=True)
class AbsMoments:
    """Mean and variance of a channel entry's magnitude."""

    mu: float
    sigma2: float

    def __post_init__(self):
        if self.mu <= 0 or self.sigma2 < 0:
            raise ValueError("need mu > 0 and sigma2 >= 0")


def rayleigh_abs_moments():
    """|CN(0,1)| moments: mu = sqrt(pi)/2, sigma2 = 1 - pi/4 (mu^2+sigma2 = 1)."""
    return AbsMoments(math.sqrt(math.pi) / 2.0, 1.0 - math.pi / 4.0)


def _cos_root(p):
    if isinstance(p, PrimeModulus):
        p = p.p
    if p < 5:
        raise ValueError(f"bound needs p >= 5 (cos(2*pi/p) > 0), got p={p}")
    return p, math.sqrt(math.cos(2 * math.pi / p))


def min_rate(p):
    """Smallest rate k/n the gain bounds cover: 1/(1 + sqrt(cos(2*pi/p)))."""
    _, c = _cos_root(p)
    return 1.0 / (1.0 + c)


def _rate_term(p, n, k):
    p, c = _cos_root(p)
    r = k / n
    thresh = 1.0 / (1.0 + c)
    if r < thresh:
        raise ValueError(
            f"rate k/n = {r:.4f} below the bound's minimum {thresh:.4f} for p={p}"
        )
    return r * c + r - 1.0


def qe_bound(p, n, k, m=None):
    """Upper bound on the mean squared chordal quantization error."""
    m = m or rayleigh_abs_moments()
    t = _rate_term(p, n, k)
    val = 1.0 - t * t * m.mu ** 2 / (m.mu ** 2 + m.sigma2)
    assert 0.0 <= val <= 1.0
    return val


def distortion_bound(p, n, k, m=None):
    """Upper bound on the normalized mean-gain distortion vs the phase-only
    optimum; strictly decreasing in n for fixed rate."""
    m = m or rayleigh_abs_moments()
    t = _rate_term(p, n, k)
    return 1.0 - t * t / (1.0 + m.sigma2 / (n * m.mu ** 2))


_COVER_CAP = 10 ** 7


def _eval_code_words(p, k, n):
    """All p^k words (f(1),...,f(n)) over F_p, zero-constant-term f, deg <= k."""
    powers = np.empty((n, k), dtype=np.int64)
    for i in range(n):
        for j in range(k):
            powers[i, j] = pow(i + 1, j + 1, p)
    idx = np.arange(p ** k, dtype=np.int64)
    place = p ** np.arange(k - 1, -1, -1, dtype=np.int64)
    digits = (idx[:, None] // place[None, :]) % p
    return ((digits @ powers.T) % p).astype(np.int8)


def grs_covering_radius_bruteforce(p, n, k, chunk=4096):
    """max over y in F_p^n of the Hamming distance to the evaluation code.

    Exhausts the whole ambient space; capped at p^n <= 10^7 points.
    """
    PrimeModulus(p)
    if not (1 <= k <= n <= p - 1):
        raise ValueError(f"need 1 <= k <= n <= p-1, got k={k}, n={n}, p={p}")
    if p ** n > _COVER_CAP:
        raise ValueError(f"p^n = {p ** n} exceeds the {_COVER_CAP} exhaustion cap")
    code = _eval_code_words(p, k, n)  # (p^k, n) int8
    total = p ** n
    place = p ** np.arange(n - 1, -1, -1, dtype=np.int64)
    radius = 0
    for start in range(0, total, chunk):
        stop = min(start + chunk, total)
        idx = np.arange(start, stop, dtype=np.int64)
        Y = ((idx[:, None] // place[None, :]) % p).astype(np.int8)
        # farthest-point update: min over codewords, max over y
        best = np.full(stop - start, n, dtype=np.int16)
        for c0 in range(0, code.shape[0], chunk):
            blk = code[c0:c0 + chunk]
            d = n - np.sum(Y[:, None, :] == blk[None, :, :], axis=2, dtype=np.int16)
            np.minimum(best, d.min(axis=1), out=best)
        radius = max(radius, int(best.max()))
    return radius


def empirical_qe(cb, fading, trials, seed, chunk=2048):
    """Monte Carlo mean of the squared chordal distance from random lines
    (normalized fading draws) to their nearest codeword."""
    acc = 0.0
    for t0 in range(0, trials, chunk):
        t1 = min(t0 + chunk, trials)
        h = fading_block(fading, 1, cb.n, seed, t0, t1)[:, 0, :]
        y = h / np.linalg.norm(h, axis=1)[:, None]
        _, s = batch_quantize(cb, y)
        acc += float(np.sum(1.0 - s * s))
    return acc / trials
