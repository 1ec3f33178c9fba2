"""Flat-fading channel sampling with per-trial counter-based randomness.

Every Monte Carlo trial gets its own keyed stream (master seed, trial index),
so a trial's channel matrix is a pure function of those two integers no matter
how trials are batched or scheduled across threads.
"""

from dataclasses import dataclass

import numpy as np

_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class FadingSpec:
    """model: "rayleigh" or "rician"; kappa is the LOS/scatter power ratio."""

    model: str = "rayleigh"
    kappa: float = 0.0

    def __post_init__(self):
        if self.model not in ("rayleigh", "rician"):
            raise ValueError(f"unknown fading model {self.model!r}")
        if self.kappa < 0:
            raise ValueError(f"kappa must be >= 0, got {self.kappa}")

    def label(self):
        if self.model == "rician":
            return f"rician-k{self.kappa:g}"
        return "rayleigh"


@dataclass(frozen=True)
class CorrelationSpec:
    rho_tx: float = 0.0
    rho_rx: float = 0.0

    def __post_init__(self):
        for name, r in (("rho_tx", self.rho_tx), ("rho_rx", self.rho_rx)):
            if not (0.0 <= r < 1.0):
                raise ValueError(f"{name} must lie in [0, 1), got {r}")

    def label(self):
        return f"rtx{self.rho_tx:g}-rrx{self.rho_rx:g}"


class RngStream:
    """Counter-based uniform/Gaussian source keyed by (master_seed, stream_index)."""

    def __init__(self, master_seed, stream_index):
        self.master_seed = int(master_seed) & _MASK64
        self.stream_index = int(stream_index) & _MASK64
        key = np.array([self.master_seed, self.stream_index], dtype=np.uint64)
        self._gen = np.random.Generator(np.random.Philox(key=key))

    def uniforms(self, count):
        return self._gen.random(count)

    def complex_gaussians(self, count):
        """count i.i.d. CN(0,1) samples via Box-Muller on the uniform stream."""
        u = self.uniforms(2 * count)
        return _box_muller(u[:count], u[count:])


def _box_muller(u1, u2):
    # 1-u1 keeps the log argument in (0, 1]
    r = np.sqrt(-2.0 * np.log1p(-u1))
    z = r * (np.cos(2 * np.pi * u2) + 1j * np.sin(2 * np.pi * u2))
    return z / np.sqrt(2.0)  # unit-variance complex


def _uniform_block(master_seed, t0, t1, count):
    out = np.empty((t1 - t0, count))
    ms = int(master_seed) & _MASK64
    for t in range(t0, t1):
        key = np.array([ms, t & _MASK64], dtype=np.uint64)
        out[t - t0] = np.random.Generator(np.random.Philox(key=key)).random(count)
    return out


def rayleigh_block(n_r, n_t, master_seed, t0, t1):
    """Channels for trials [t0, t1) as a (T, n_r, n_t) array, CN(0,1) entries."""
    m = n_r * n_t
    u = _uniform_block(master_seed, t0, t1, 2 * m)
    z = _box_muller(u[:, :m], u[:, m:])
    return z.reshape(t1 - t0, n_r, n_t)


def rician_block(n_r, n_t, kappa, master_seed, t0, t1):
    h = rayleigh_block(n_r, n_t, master_seed, t0, t1)
    los = np.sqrt(kappa / (kappa + 1.0))
    nlos = np.sqrt(1.0 / (kappa + 1.0))
    return los + nlos * h  # LOS part: all-ones matrix scaled


def fading_block(spec, n_r, n_t, master_seed, t0, t1):
    if spec.model == "rician":
        return rician_block(n_r, n_t, spec.kappa, master_seed, t0, t1)
    return rayleigh_block(n_r, n_t, master_seed, t0, t1)


def sample_rayleigh(n_r, n_t, rng):
    """One n_r x n_t draw with i.i.d. CN(0,1) entries from the given stream."""
    if n_r < 1 or n_t < 1:
        raise ValueError("antenna counts must be >= 1")
    return rng.complex_gaussians(n_r * n_t).reshape(n_r, n_t)


def sample_rician(n_r, n_t, kappa, rng):
    if kappa < 0:
        raise ValueError(f"kappa must be >= 0, got {kappa}")
    h = sample_rayleigh(n_r, n_t, rng)
    return np.sqrt(kappa / (kappa + 1.0)) + np.sqrt(1.0 / (kappa + 1.0)) * h


def exp_correlation_matrix(n, rho):
    """R[i][j] = rho^|i-j| (unit diagonal, symmetric positive definite)."""
    if not (0.0 <= rho < 1.0):
        raise ValueError(f"rho must lie in [0, 1), got {rho}")
    idx = np.arange(n)
    return rho ** np.abs(idx[:, None] - idx[None, :]).astype(float)


def cholesky_factor(R):
    """Lower-triangular L with L L^H = R; names the failing pivot if not PD."""
    R = np.asarray(R)
    if R.ndim != 2 or R.shape[0] != R.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {R.shape}")
    if not np.allclose(R, R.conj().T, atol=1e-12):
        raise ValueError("matrix is not Hermitian")
    try:
        return np.linalg.cholesky(R)
    except np.linalg.LinAlgError:
        for j in range(1, R.shape[0] + 1):
            try:
                np.linalg.cholesky(R[:j, :j])
            except np.linalg.LinAlgError:
                raise ValueError(f"matrix not positive definite (failing pivot {j - 1})")
        raise


def apply_correlation(H, l_rx, l_tx):
    """H -> L_rx H L_tx^H; accepts one matrix or a (T, n_r, n_t) batch."""
    H = np.asarray(H)
    n_r, n_t = H.shape[-2], H.shape[-1]
    l_rx = np.asarray(l_rx)
    l_tx = np.asarray(l_tx)
    if l_rx.shape != (n_r, n_r) or l_tx.shape != (n_t, n_t):
        raise ValueError(
            f"factor shapes {l_rx.shape}/{l_tx.shape} do not match channel {H.shape}"
        )
    return l_rx @ H @ l_tx.conj().T
