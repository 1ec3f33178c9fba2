"""Beamformers and power gains for single- and dual-receive-antenna links.

All gains are noiseless linear power ratios: the transmit vector f is unit
norm, the receive combiner is matched, so the realized gain is ||H f||^2.
"""

import math
from dataclasses import dataclass

import numpy as np

from .codebook import batch_quantize, quantize_line


@dataclass(frozen=True)
class GainSummary:
    mean_linear: float
    mean_db: float
    trials: int
    averaging_mode: str


def optimal_beamformer_miso(h):
    """Matched direction h^H / ||h|| for a single-receive-antenna channel."""
    h = np.asarray(h, dtype=np.complex128).reshape(-1)
    nrm = np.linalg.norm(h)
    if nrm == 0.0:
        raise ValueError("degenerate input: zero channel")
    return np.conj(h) / nrm


def _dominant_pair_2xn(H):
    """Batch closed-form top eigenpair of H H^H for (T, 2, n) channels.

    Returns (z (T,2) unit left vectors, lmax (T,)).
    """
    a = np.einsum("ti,ti->t", H[:, 0, :], np.conj(H[:, 0, :])).real
    d = np.einsum("ti,ti->t", H[:, 1, :], np.conj(H[:, 1, :])).real
    b = np.einsum("ti,ti->t", H[:, 0, :], np.conj(H[:, 1, :]))
    half = 0.5 * (a - d)
    disc = np.sqrt(half * half + np.abs(b) ** 2)
    lmax = 0.5 * (a + d) + disc
    # two algebraically equivalent eigenvector branches; pick the one whose
    # norm stays away from zero
    z = np.empty((H.shape[0], 2), dtype=np.complex128)
    up = a >= d
    z[up, 0] = (lmax - d)[up]
    z[up, 1] = np.conj(b[up])
    z[~up, 0] = b[~up]
    z[~up, 1] = (lmax - a)[~up]
    nrm = np.linalg.norm(z, axis=1)
    flat = nrm < 1e-300  # proportional-to-identity Gram matrix: any direction
    z[flat, 0] = 1.0
    z[flat, 1] = 0.0
    nrm[flat] = 1.0
    return z / nrm[:, None], lmax


def _pin_phase(F):
    """Rotate each row so its first non-negligible entry is real positive."""
    mag = np.abs(F)
    first = np.argmax(mag > 1e-12, axis=1)
    ph = F[np.arange(F.shape[0]), first]
    ph = np.where(np.abs(ph) == 0, 1.0, ph)
    return F * (np.conj(ph) / np.abs(ph))[:, None]


def beamformers_batch(H):
    """Optimal unit beamformers for a (T, n_r, n_t) batch, n_r in {1, 2}.

    Returns (F (T, n_t), mrt (T,)) where mrt is the top squared singular value.
    """
    H = np.asarray(H, dtype=np.complex128)
    if H.ndim != 3 or H.shape[1] not in (1, 2):
        raise ValueError(f"expected (T, 1 or 2, n_t), got {H.shape}")
    if H.shape[1] == 1:
        h = H[:, 0, :]
        nrm = np.linalg.norm(h, axis=1)
        if np.any(nrm == 0):
            raise ValueError("degenerate input: zero channel in batch")
        return np.conj(h) / nrm[:, None], nrm ** 2
    z, lmax = _dominant_pair_2xn(H)
    F = np.einsum("tj,tji->ti", np.conj(z), H).conj()
    nrm = np.linalg.norm(F, axis=1)
    if np.any(nrm == 0):
        raise ValueError("degenerate input: zero channel in batch")
    return _pin_phase(F / nrm[:, None]), lmax


def optimal_beamformer_mimo(H):
    """Dominant right singular direction of a 2-row channel, phase-pinned."""
    H = np.asarray(H, dtype=np.complex128)
    if H.ndim != 2 or H.shape[0] != 2:
        raise ValueError(f"expected a 2 x n_t matrix, got {H.shape}")
    if not np.any(H):
        raise ValueError("degenerate input: zero matrix")
    F, _ = beamformers_batch(H[None])
    return F[0]


def mrt_gain(H):
    """Top squared singular value; for one row this is ||h||^2."""
    H = np.asarray(H, dtype=np.complex128)
    if H.ndim == 1 or H.shape[0] == 1:
        return float(np.linalg.norm(H) ** 2)
    if H.shape[0] != 2:
        raise ValueError(f"expected 1 or 2 receive rows, got {H.shape[0]}")
    _, lmax = _dominant_pair_2xn(H[None])
    return float(lmax[0])


def egt_gain_miso(h):
    """Best equal-magnitude-entry gain: (sum |h_i|)^2 / n_t, phases co-aligned."""
    h = np.asarray(h, dtype=np.complex128).reshape(-1)
    return float(np.sum(np.abs(h)) ** 2 / h.size)


def realized_gain(H, f):
    """||H f||^2 for a unit-norm transmit vector f."""
    H = np.asarray(H, dtype=np.complex128)
    f = np.asarray(f, dtype=np.complex128).reshape(-1)
    if H.ndim == 1:
        H = H[None, :]
    if H.shape[1] != f.size:
        raise ValueError(f"shape mismatch: channel {H.shape}, beamformer {f.shape}")
    return float(np.linalg.norm(H @ f) ** 2)


def cp_beamforming_gain(H, cb, mode="exhaustive"):
    """Quantize the optimal direction onto cb, return (index, realized gain)."""
    H = np.asarray(H, dtype=np.complex128)
    if H.ndim == 1:
        H = H[None, :]
    if H.shape[1] != cb.n:
        raise ValueError(f"codebook length {cb.n} != n_t {H.shape[1]}")
    F, _ = beamformers_batch(H[None]) if H.shape[0] == 2 else (None, None)
    if H.shape[0] == 1:
        y = optimal_beamformer_miso(H[0])
    else:
        y = F[0]
    idx, c, _ = quantize_line(y, cb, mode=mode)
    return idx, realized_gain(H, c)


def compand(c, l_tx, mode="literal", channel=None, cb=None):
    """Adapt a codeword chosen for uncorrelated fading to a correlated channel.

    literal: rotate the given codeword by L_tx^H and renormalize.
    effective_gain: ignore c, exhaustively pick the codeword whose rotated
    version realizes the largest gain on `channel` (needs channel and cb).
    """
    l_tx = np.asarray(l_tx, dtype=np.complex128)
    if mode == "literal":
        v = l_tx.conj().T @ np.asarray(c, dtype=np.complex128).reshape(-1)
        nrm = np.linalg.norm(v)
        if nrm == 0:
            raise ValueError("numerical error: singular rotation")
        return v / nrm
    if mode == "effective_gain":
        if channel is None or cb is None:
            raise ValueError("effective_gain mode needs channel and cb")
        best = None
        best_g = -1.0
        for start, block in cb.iter_chunks():
            rot = block @ np.conj(l_tx)  # rows (L^H c)^T
            rot = rot / np.linalg.norm(rot, axis=1)[:, None]
            g = np.linalg.norm(np.atleast_2d(channel) @ rot.T, axis=0) ** 2
            j = int(np.argmax(g))
            if g[j] > best_g:
                best_g = float(g[j])
                best = rot[j]
        return best
    raise ValueError(f"unknown companding mode {mode!r}")


def normalized_distortion(mean_egt, mean_cp):
    """Relative mean-gain gap (E_egt - E_cp)/E_egt on linear means."""
    if mean_egt <= 0:
        raise ValueError(f"mean EGT gain must be positive, got {mean_egt}")
    return (mean_egt - mean_cp) / mean_egt


def summarize_gains(samples, mode="linear"):
    samples = np.asarray(samples, dtype=float)
    if samples.size == 0:
        raise ValueError("no samples")
    if mode == "linear":
        m = float(np.mean(samples))
        return GainSummary(m, 10.0 * math.log10(m), samples.size, "linear")
    if mode == "db":
        if np.any(samples <= 0):
            raise ValueError("db averaging needs positive samples")
        db = float(np.mean(10.0 * np.log10(samples)))
        return GainSummary(float(np.mean(samples)), db, samples.size, "db")
    raise ValueError(f"unknown averaging mode {mode!r}")


def egt_gains_miso_batch(H):
    """(sum |h_i|)^2 / n_t per trial for (T, 1, n_t) channels."""
    h = np.asarray(H)[:, 0, :]
    return np.sum(np.abs(h), axis=1) ** 2 / h.shape[1]


def cp_gains_batch(H, cb):
    """Per-trial (index, realized gain) of the quantized optimal direction."""
    F, mrt = beamformers_batch(H)
    idx, s = batch_quantize(cb, F)
    if H.shape[1] == 1:
        return idx, (s ** 2) * mrt
    c = cb.codewords_at(idx)
    return idx, np.linalg.norm(np.matmul(H, c[:, :, None]), axis=(1, 2)) ** 2
