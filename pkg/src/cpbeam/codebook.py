"""Equal-gain line codebooks on the complex unit sphere.

Codewords are unit-norm complex n-vectors identified up to a global phase
(points on the Grassmannian of lines). The main construction evaluates every
zero-constant-term polynomial of degree <= k over F_p at the points 1..n and
maps the residues through x -> exp(2*pi*i*x/p), giving p^k codewords whose
entries all have magnitude 1/sqrt(n).
"""

import csv
import math

import numpy as np

from .field import PrimeModulus, message_from_index

# materialize full codeword matrices only below this entry count (~0.5 GB);
# larger books stream in chunks
_MATERIALIZE_CAP = 32_000_000

_CW_CHUNK = 8192  # codewords per generated block in streaming paths


def _digit_block(p, k, start, stop):
    """Coefficient tuples (f_1..f_k) for message indices [start, stop)."""
    idx = np.arange(start, stop, dtype=np.int64)
    place = p ** np.arange(k - 1, -1, -1, dtype=np.int64)  # f_1 most significant
    return (idx[:, None] // place[None, :]) % p


class CpCodebook:
    """All p^k polynomial-character codewords of length n, message-index order."""

    def __init__(self, p, k, n):
        modulus = PrimeModulus(p)  # validates primality
        # k = 0 is the degenerate single-codeword book (nested-sweep base case)
        if not (0 <= k <= n <= p - 1):
            raise ValueError(f"need 0 <= k <= n <= p-1, got k={k}, n={n}, p={p}")
        self.modulus = modulus
        self.p = p
        self.k = k
        self.n = n
        self.alphas = np.arange(1, n + 1, dtype=np.int64)
        self.size = p ** k
        self.rate = k / n
        # alphas^degree mod p, degrees 1..k  (n, k)
        self._powers = np.empty((n, k), dtype=np.int64)
        for i, a in enumerate(self.alphas):
            for j in range(k):
                self._powers[i, j] = pow(int(a), j + 1, p)
        self._roots = np.exp(2j * np.pi * np.arange(p) / p)
        self._matrix = None

    @property
    def feedback_bits(self):
        return feedback_bits(self)

    def codewords_at(self, indices):
        """Codeword rows for an array of message indices, shape (len, n)."""
        indices = np.atleast_1d(np.asarray(indices, dtype=np.int64))
        digits = (indices[:, None] // (self.p ** np.arange(self.k - 1, -1, -1, dtype=np.int64))[None, :]) % self.p
        evals = (digits @ self._powers.T) % self.p
        return self._roots[evals] / math.sqrt(self.n)

    def codeword(self, index):
        if not (0 <= index < self.size):
            raise ValueError(f"index {index} out of range")
        return self.codewords_at([index])[0]

    def iter_chunks(self, chunk=_CW_CHUNK):
        """Yield (start_index, codeword_block) pairs covering the whole book."""
        for start in range(0, self.size, chunk):
            stop = min(start + chunk, self.size)
            digits = _digit_block(self.p, self.k, start, stop)
            evals = (digits @ self._powers.T) % self.p
            yield start, self._roots[evals] / math.sqrt(self.n)

    @property
    def codewords(self):
        """Full (size, n) codeword matrix; refuses to materialize huge books."""
        if self._matrix is None:
            if self.size * self.n > _MATERIALIZE_CAP:
                raise MemoryError(
                    f"codebook of {self.size} codewords is streamed; use iter_chunks()"
                )
            blocks = [block for _, block in self.iter_chunks()]
            self._matrix = np.vstack(blocks)
        return self._matrix

    def message(self, index):
        return message_from_index(self.modulus, self.k, index)


def build_cp_codebook(p, k, n):
    return CpCodebook(p, k, n)


class PskCodebook:
    """Implicit per-antenna PSK book: first entry pinned real, M^(n-1) words."""

    def __init__(self, n, M):
        if n < 2:
            raise ValueError(f"need n >= 2, got {n}")
        if M < 2:
            raise ValueError(f"need M >= 2, got {M}")
        self.n = n
        self.M = M
        self.size = M ** (n - 1)

    @property
    def feedback_bits(self):
        return feedback_bits(self)


def build_psk_codebook(n, M):
    return PskCodebook(n, M)


def feedback_bits(cb):
    """Index width in bits: ceil(log2 of the codebook size), computed exactly."""
    return (cb.size - 1).bit_length() if cb.size > 1 else 1


def chordal_distance(u, v):
    """Distance between the lines spanned by unit vectors u and v.

    sqrt(1 - |<u,v>|^2), clamped into [0,1] against rounding.
    """
    u = np.asarray(u)
    v = np.asarray(v)
    if u.shape != v.shape:
        raise ValueError(f"length mismatch: {u.shape} vs {v.shape}")
    c = abs(np.vdot(u, v))
    return math.sqrt(min(max(1.0 - min(c, 1.0) ** 2, 0.0), 1.0))


def prequantize_phases(y, p):
    """Snap every entry's phase to the nearest of the p unit roots.

    Returns (1/sqrt(n)) * exp(2*pi*i*round(p*theta/2pi)/p) entrywise; zero
    entries land on root 1 (angle(0) = 0).
    """
    if isinstance(p, PrimeModulus):
        p = p.p
    y = np.asarray(y, dtype=np.complex128)
    theta = np.angle(y)
    m = np.floor(p * theta / (2 * np.pi) + 0.5).astype(np.int64) % p
    return np.exp(2j * np.pi * m / p) / math.sqrt(y.shape[-1])


def _scores(block, y):
    # |<y, c>| per codeword row c; <u,v> = sum conj(u_i) v_i
    return np.abs(block @ np.conj(y))


def quantize_line(y, cb, mode="exhaustive"):
    """Nearest codeword to the line spanned by y.

    Returns (index, codeword, chordal distance). Ties go to the smallest
    index. "pruned" skips codewords that a triangle-inequality bound from the
    phase-snapped point proves no better, and returns the identical index.
    """
    y = np.asarray(y, dtype=np.complex128)
    if y.shape != (cb.n,):
        raise ValueError(f"length mismatch: vector {y.shape}, codebook n={cb.n}")
    if mode == "exhaustive":
        best_s = -1.0
        best_idx = 0
        for start, block in cb.iter_chunks():
            s = _scores(block, y)
            j = int(np.argmax(s))
            if s[j] > best_s:
                best_s = float(s[j])
                best_idx = start + j
        dist = math.sqrt(min(max(1.0 - min(best_s, 1.0) ** 2, 0.0), 1.0))
        return best_idx, cb.codeword(best_idx), dist
    if mode == "pruned":
        return _quantize_pruned(y, cb)
    raise ValueError(f"unknown mode {mode!r}")


def _quantize_pruned(y, cb):
    anchor = prequantize_phases(y, cb.p)
    r = chordal_distance(y, anchor)
    # distance from the anchor to every codeword (one matvec over the book)
    d_anchor = np.empty(cb.size)
    for start, block in cb.iter_chunks():
        s = np.minimum(_scores(block, anchor), 1.0)
        d_anchor[start:start + block.shape[0]] = np.sqrt(np.clip(1.0 - s * s, 0.0, 1.0))
    lower = np.maximum(np.abs(d_anchor - r), 0.0)
    order = np.argsort(lower, kind="stable")
    best_d = np.inf
    best_idx = -1
    pos = 0
    block = 4096
    while pos < cb.size:
        take = order[pos:pos + block]
        # stop once the bound proves everything remaining is no better
        if lower[take[0]] > best_d:
            break
        keep = take[lower[take] <= best_d]
        if keep.size:
            rows = cb.codewords_at(keep)
            s = np.minimum(_scores(rows, y), 1.0)
            d = np.sqrt(np.clip(1.0 - s * s, 0.0, 1.0))
            for dj, ij in zip(d, keep):
                if dj < best_d or (dj == best_d and ij < best_idx):
                    best_d = float(dj)
                    best_idx = int(ij)
        pos += block
    return best_idx, cb.codeword(best_idx), best_d


def batch_quantize(cb, Y, trial_chunk=1024):
    """Vectorized nearest-codeword search for rows of Y (shape (T, n)).

    Returns (indices (T,), scores (T,)) where score is |<y, c_best>|. The
    scan is in index order with strict-improvement updates, so ties resolve
    to the smallest index for any chunk size.
    """
    Y = np.asarray(Y, dtype=np.complex128)
    T = Y.shape[0]
    best_s = np.full(T, -1.0)
    best_idx = np.zeros(T, dtype=np.int64)
    for t0 in range(0, T, trial_chunk):
        t1 = min(t0 + trial_chunk, T)
        Yc = np.conj(Y[t0:t1])
        bs = best_s[t0:t1]
        bi = best_idx[t0:t1]
        for start, block in cb.iter_chunks():
            s = np.abs(Yc @ block.T)  # (t, block)
            j = np.argmax(s, axis=1)
            v = s[np.arange(s.shape[0]), j]
            better = v > bs
            bi[better] = start + j[better]
            bs[better] = v[better]
    return best_idx, np.minimum(best_s, 1.0)


def psk_quantize(y, M):
    """Per-antenna phase rounding after pinning the first entry's phase.

    Output entries all have magnitude 1/sqrt(n); entry 0 is real positive and
    entries j >= 1 carry the nearest M-th root of unity to the derotated y_j.
    """
    if M < 2:
        raise ValueError(f"need M >= 2, got {M}")
    y = np.asarray(y, dtype=np.complex128)
    n = y.shape[-1]
    theta = np.angle(y * np.exp(-1j * np.angle(y[..., :1])))
    m = np.floor(M * theta / (2 * np.pi) + 0.5).astype(np.int64) % M
    out = np.exp(2j * np.pi * m / M) / math.sqrt(n)
    out[..., 0] = 1.0 / math.sqrt(n)
    return out


def psk_quantize_differential(y, M):
    """Open-loop differential variant: feed back the M-ary rounding of each
    consecutive phase difference and rebuild the vector by accumulation.

    Same B = (n-1)*log2(M) budget as psk_quantize, but rounding errors walk
    down the antenna index instead of staying independent, so the realized
    gain sits below the per-antenna optimum.
    """
    if M < 2:
        raise ValueError(f"need M >= 2, got {M}")
    y = np.asarray(y, dtype=np.complex128)
    n = y.shape[-1]
    step = 2 * np.pi / M
    d = np.diff(np.angle(y), axis=-1)
    phases = np.cumsum(np.round(d / step) * step, axis=-1)
    out = np.empty(y.shape, dtype=np.complex128)
    out[..., 0] = 1.0 / math.sqrt(n)
    out[..., 1:] = np.exp(1j * phases) / math.sqrt(n)
    return out


def export_codebook_csv(cb, path):
    """Write `index,bits,re_1,im_1,...,re_n,im_n` rows; floats as repr."""
    B = feedback_bits(cb)
    header = ["index", "bits"]
    for i in range(1, cb.n + 1):
        header += [f"re_{i}", f"im_{i}"]
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        for start, block in cb.iter_chunks():
            for off, row in enumerate(block):
                idx = start + off
                cells = [str(idx), format(idx, f"0{B}b")]
                for z in row:
                    cells += [repr(float(z.real)), repr(float(z.imag))]
                w.writerow(cells)


def load_codebook_csv(path):
    """Read an exported book back as (indices, bit strings, codeword matrix)."""
    with open(path, newline="") as fh:
        r = csv.reader(fh)
        header = next(r)
        if header[:2] != ["index", "bits"] or (len(header) - 2) % 2:
            raise ValueError("unrecognized codebook CSV header")
        n = (len(header) - 2) // 2
        indices = []
        bits = []
        rows = []
        for cells in r:
            indices.append(int(cells[0]))
            bits.append(cells[1])
            vals = [float(c) for c in cells[2:]]
            rows.append([complex(vals[2 * i], vals[2 * i + 1]) for i in range(n)])
    return np.array(indices), bits, np.array(rows, dtype=np.complex128)
