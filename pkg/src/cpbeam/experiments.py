"""Declarative Monte Carlo experiment runner.

A config describes one sweep (system shape, fading, correlation, codebook
family, trial count, master seed); the runner evaluates every codebook
dimension on the *same* per-trial channel draws (streams keyed by trial
index), so gain curves are exactly monotone in k and output bytes do not
depend on the thread count.
"""

import csv
import io
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .bounds import distortion_bound, min_rate, qe_bound
from .channels import (CorrelationSpec, FadingSpec, apply_correlation,
                       cholesky_factor, exp_correlation_matrix, fading_block)
from .codebook import (CpCodebook, batch_quantize, build_psk_codebook,
                       export_codebook_csv, feedback_bits,
                       psk_quantize_differential)
from .egt import iterative_egt_gain_batch
from .field import PrimeModulus
from .gains import beamformers_batch, egt_gains_miso_batch, summarize_gains


class ConfigSchemaError(ValueError):
    """Malformed config document (structure/types); CLI exit code 2."""
    exit_code = 2


class InfeasibleParamsError(ValueError):
    """Well-formed config with unusable values; CLI exit code 3."""
    exit_code = 3


class LongRunError(RuntimeError):
    """Codebook too large for a default run; CLI exit code 4."""
    exit_code = 4


RESULT_FIELDS = ("model", "n_r", "n_t", "p", "k", "B", "M", "trials", "seed",
                 "avg_gain_db", "egt_db", "mrt_db", "distortion", "qe_bound",
                 "distortion_bound", "averaging_mode")

# quantizing more codewords than this per trial needs an explicit opt-in
LONG_CODEBOOK_CAP = 400_000

TRIAL_CHUNK = 2048
EGT_B = 8       # phase bits for the 2-receive-antenna baseline
EGT_SWEEPS = 10


@dataclass(frozen=True)
class ExperimentConfig:
    system: str = "miso"        # "miso" (1 receive antenna) or "mimo2" (2)
    codebook: str = "cp"        # "cp", "psk", or "none" (baselines only)
    p: int | None = None
    k_list: tuple = ()
    n_t: int | None = None      # defaults to p-1 for cp books
    psk_m: int | None = None
    fading: FadingSpec = field(default_factory=FadingSpec)
    correlation: CorrelationSpec | None = None
    companding_mode: str = "literal"   # or "effective_gain"
    averaging_mode: str = "linear"     # or "db"
    trials: int = 300
    master_seed: int = 0

    def effective_nt(self):
        if self.n_t is not None:
            return self.n_t
        if self.codebook == "cp" and self.p is not None:
            return self.p - 1
        raise InfeasibleParamsError("n_t is required when no cp modulus sets it")

    def validate(self):
        if self.system not in ("miso", "mimo2"):
            raise InfeasibleParamsError(f"unknown system {self.system!r}")
        if self.codebook not in ("cp", "psk", "none"):
            raise InfeasibleParamsError(f"unknown codebook family {self.codebook!r}")
        if self.companding_mode not in ("literal", "effective_gain"):
            raise InfeasibleParamsError(
                f"unknown companding mode {self.companding_mode!r}")
        if self.averaging_mode not in ("linear", "db"):
            raise InfeasibleParamsError(
                f"unknown averaging mode {self.averaging_mode!r}")
        if self.trials < 1:
            raise InfeasibleParamsError(f"trials must be >= 1, got {self.trials}")
        if self.master_seed < 0:
            raise InfeasibleParamsError("master_seed must be nonnegative")
        n_t = self.effective_nt()
        if n_t < 1:
            raise InfeasibleParamsError(f"n_t must be >= 1, got {n_t}")
        if self.codebook == "cp":
            try:
                PrimeModulus(self.p if self.p is not None else -1)
            except (ValueError, TypeError) as e:
                raise InfeasibleParamsError(f"bad modulus: {e}")
            if not self.k_list:
                raise InfeasibleParamsError("cp sweep needs a nonempty k_list")
            for k in self.k_list:
                if not (1 <= k <= n_t <= self.p - 1):
                    raise InfeasibleParamsError(
                        f"need 1 <= k <= n_t <= p-1, got k={k}, n_t={n_t}, p={self.p}")
        if self.codebook == "psk":
            if self.psk_m is None or self.psk_m < 2:
                raise InfeasibleParamsError("psk needs an order M >= 2")
            if n_t < 2:
                raise InfeasibleParamsError("psk needs n_t >= 2")


_FADING_KEYS = {"model", "kappa"}
_CORR_KEYS = {"rho_tx", "rho_rx"}
_CONFIG_KEYS = {"system", "codebook", "p", "k_list", "n_t", "fading",
                "correlation", "companding_mode", "averaging_mode", "trials",
                "master_seed"}


def _expect(obj, types, what):
    if not isinstance(obj, types):
        raise ConfigSchemaError(f"{what} has wrong type ({type(obj).__name__})")
    return obj


def parse_config(obj):
    """Build an ExperimentConfig from a plain JSON-style dict.

    Structural problems raise ConfigSchemaError; value problems surface later
    from validate() as InfeasibleParamsError.
    """
    _expect(obj, dict, "config")
    unknown = set(obj) - _CONFIG_KEYS
    if unknown:
        raise ConfigSchemaError(f"unknown config keys: {sorted(unknown)}")
    kw = {}
    if "system" in obj:
        kw["system"] = _expect(obj["system"], str, "system")
    if "n_t" in obj and obj["n_t"] is not None:
        kw["n_t"] = _expect(obj["n_t"], int, "n_t")
    if "p" in obj and obj["p"] is not None:
        kw["p"] = _expect(obj["p"], int, "p")
    if "k_list" in obj:
        ks = _expect(obj["k_list"], list, "k_list")
        kw["k_list"] = tuple(_expect(k, int, "k_list entry") for k in ks)
    if "trials" in obj:
        kw["trials"] = _expect(obj["trials"], int, "trials")
    if "master_seed" in obj:
        kw["master_seed"] = _expect(obj["master_seed"], int, "master_seed")
    for name in ("companding_mode", "averaging_mode"):
        if name in obj:
            kw[name] = _expect(obj[name], str, name)

    cb = obj.get("codebook", "cp")
    if isinstance(cb, str):
        kw["codebook"] = cb
    elif isinstance(cb, dict):
        if set(cb) - {"type", "m"}:
            raise ConfigSchemaError(f"unknown codebook keys: {sorted(set(cb) - {'type', 'm'})}")
        kw["codebook"] = _expect(cb.get("type"), str, "codebook.type")
        if "m" in cb:
            kw["psk_m"] = _expect(cb["m"], int, "codebook.m")
    else:
        raise ConfigSchemaError("codebook must be a string or object")

    fad = obj.get("fading", {"model": "rayleigh"})
    if isinstance(fad, str):
        fad = {"model": fad}
    _expect(fad, dict, "fading")
    if set(fad) - _FADING_KEYS:
        raise ConfigSchemaError(f"unknown fading keys: {sorted(set(fad) - _FADING_KEYS)}")
    model = _expect(fad.get("model", "rayleigh"), str, "fading.model")
    kappa = _expect(fad.get("kappa", 0.0), (int, float), "fading.kappa")
    try:
        kw["fading"] = FadingSpec(model, float(kappa))
    except ValueError as e:
        raise InfeasibleParamsError(str(e))

    corr = obj.get("correlation")
    if corr is not None:
        _expect(corr, dict, "correlation")
        if set(corr) - _CORR_KEYS:
            raise ConfigSchemaError(
                f"unknown correlation keys: {sorted(set(corr) - _CORR_KEYS)}")
        try:
            kw["correlation"] = CorrelationSpec(
                float(_expect(corr.get("rho_tx", 0.0), (int, float), "rho_tx")),
                float(_expect(corr.get("rho_rx", 0.0), (int, float), "rho_rx")))
        except ValueError as e:
            raise InfeasibleParamsError(str(e))

    try:
        return ExperimentConfig(**kw)
    except TypeError as e:
        raise ConfigSchemaError(str(e))


@dataclass
class ResultRow:
    model: str
    n_r: int
    n_t: int
    p: int | None
    k: int | None
    B: int | None
    M: int | None
    trials: int
    seed: int
    avg_gain_db: float
    egt_db: float
    mrt_db: float
    distortion: float | None
    qe_bound: float | None
    distortion_bound: float | None
    averaging_mode: str

    def csv_cells(self):
        def cell(v):
            if v is None:
                return ""
            if isinstance(v, float):
                return repr(v)
            return str(v)
        return [cell(getattr(self, f)) for f in RESULT_FIELDS]


def _model_label(cfg):
    label = cfg.fading.label()
    if cfg.correlation is not None:
        label += "-" + cfg.correlation.label()
    return label


def _corr_effective_gains(H, l_tx, cb, cw_chunk=2048):
    """Best realized gain over the whole rotated codebook, per trial."""
    best = np.full(H.shape[0], -1.0)
    for _, block in cb.iter_chunks(cw_chunk):
        rot = block @ np.conj(l_tx)
        rot /= np.linalg.norm(rot, axis=1)[:, None]
        prod = np.matmul(H, rot.T)  # (T, n_r, B)
        g = np.sum(np.abs(prod) ** 2, axis=1)
        np.maximum(best, g.max(axis=1), out=best)
    return best


def _rotated_gains(H, c_rows, l_tx):
    """Realized gains after rotating selected codewords by L_tx^H."""
    rot = c_rows @ np.conj(l_tx)
    rot /= np.linalg.norm(rot, axis=1)[:, None]
    prod = np.matmul(H, rot[:, :, None])[:, :, 0]
    return np.sum(np.abs(prod) ** 2, axis=1)


def run_experiment(cfg, threads=1, allow_long=False):
    """Run one config; returns ResultRows ordered by k (cp) or a single row."""
    cfg.validate()
    n_r = 1 if cfg.system == "miso" else 2
    n_t = cfg.effective_nt()

    # A stored book of p^k codewords indexes the global phase with its top
    # base-p symbol, so only p^(k-1) distinct lines are ever scanned; the
    # quantizer works on that line set (ties already resolve to the
    # zero-phase representative) while B reports the stored p^k size.
    books = {}
    if cfg.codebook == "cp":
        for k in sorted(set(cfg.k_list)):
            if cfg.p ** (k - 1) > LONG_CODEBOOK_CAP and not allow_long:
                raise LongRunError(
                    f"sweep point k={k} scans {cfg.p ** (k - 1)} lines of the "
                    f"p={cfg.p} book; rerun with the long-run opt-in")
            books[k] = CpCodebook(cfg.p, k - 1, n_t)
    elif cfg.codebook == "psk":
        build_psk_codebook(n_t, cfg.psk_m)  # validates
        if cfg.correlation is not None and cfg.companding_mode == "effective_gain":
            raise InfeasibleParamsError(
                "effective_gain companding needs an explicit codebook")

    l_rx = l_tx = None
    if cfg.correlation is not None:
        l_rx = cholesky_factor(exp_correlation_matrix(n_r, cfg.correlation.rho_rx))
        l_tx = cholesky_factor(exp_correlation_matrix(n_t, cfg.correlation.rho_tx))

    trials = cfg.trials
    egt_buf = np.empty(trials)
    mrt_buf = np.empty(trials)
    cb_bufs = {k: np.empty(trials) for k in books} if cfg.codebook == "cp" else {}
    psk_buf = np.empty(trials) if cfg.codebook == "psk" else None

    def work(t0, t1):
        H = fading_block(cfg.fading, n_r, n_t, cfg.master_seed, t0, t1)
        if l_tx is not None:
            H = apply_correlation(H, l_rx, l_tx)
        F, mrt = beamformers_batch(H)
        mrt_buf[t0:t1] = mrt
        if cfg.system == "miso":
            egt_buf[t0:t1] = egt_gains_miso_batch(H)
        else:
            egt_buf[t0:t1] = iterative_egt_gain_batch(H, F, EGT_B, EGT_SWEEPS)
        for k, cb in books.items():
            if l_tx is not None and cfg.companding_mode == "effective_gain":
                cb_bufs[k][t0:t1] = _corr_effective_gains(H, l_tx, cb)
                continue
            idx, s = batch_quantize(cb, F)
            if l_tx is not None:
                cb_bufs[k][t0:t1] = _rotated_gains(H, cb.codewords_at(idx), l_tx)
            elif n_r == 1:
                cb_bufs[k][t0:t1] = (s ** 2) * mrt
            else:
                c = cb.codewords_at(idx)
                prod = np.matmul(H, c[:, :, None])[:, :, 0]
                cb_bufs[k][t0:t1] = np.sum(np.abs(prod) ** 2, axis=1)
        if psk_buf is not None:
            # the comparison rows use the differential feedback variant,
            # whose walk-down-the-array error is what the reference curves
            # show; psk_quantize itself is the per-antenna optimum
            c = psk_quantize_differential(F, cfg.psk_m)
            if l_tx is not None:
                psk_buf[t0:t1] = _rotated_gains(H, c, l_tx)
            else:
                prod = np.matmul(H, c[:, :, None])[:, :, 0]
                psk_buf[t0:t1] = np.sum(np.abs(prod) ** 2, axis=1)

    spans = [(t0, min(t0 + TRIAL_CHUNK, trials))
             for t0 in range(0, trials, TRIAL_CHUNK)]
    if threads <= 1:
        for t0, t1 in spans:
            work(t0, t1)
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            futures = [pool.submit(work, t0, t1) for t0, t1 in spans]
            for f in futures:
                f.result()

    mode = cfg.averaging_mode
    egt_sum = summarize_gains(egt_buf, mode)
    mrt_sum = summarize_gains(mrt_buf, mode)
    model = _model_label(cfg)
    rows = []

    def bound_cells(k):
        plain_rayleigh = (cfg.fading.model == "rayleigh"
                          and cfg.correlation is None and cfg.p >= 5)
        if plain_rayleigh and k / n_t >= min_rate(cfg.p) - 1e-12:
            return qe_bound(cfg.p, n_t, k), distortion_bound(cfg.p, n_t, k)
        return None, None

    if cfg.codebook == "cp":
        for k in sorted(books):
            s = summarize_gains(cb_bufs[k], mode)
            qe, db = bound_cells(k)
            rows.append(ResultRow(
                model, n_r, n_t, cfg.p, k, (cfg.p ** k - 1).bit_length(), None,
                trials, cfg.master_seed, s.mean_db, egt_sum.mean_db,
                mrt_sum.mean_db,
                (egt_sum.mean_linear - s.mean_linear) / egt_sum.mean_linear,
                qe, db, mode))
    elif cfg.codebook == "psk":
        s = summarize_gains(psk_buf, mode)
        B = feedback_bits(build_psk_codebook(n_t, cfg.psk_m))
        rows.append(ResultRow(
            model, n_r, n_t, None, None, B, cfg.psk_m, trials,
            cfg.master_seed, s.mean_db, egt_sum.mean_db, mrt_sum.mean_db,
            (egt_sum.mean_linear - s.mean_linear) / egt_sum.mean_linear,
            None, None, mode))
    else:
        rows.append(ResultRow(
            model, n_r, n_t, None, None, None, None, trials, cfg.master_seed,
            egt_sum.mean_db, egt_sum.mean_db, mrt_sum.mean_db, 0.0,
            None, None, mode))
    return rows


def rows_to_csv(rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(RESULT_FIELDS)
    for r in rows:
        w.writerow(r.csv_cells())
    return buf.getvalue()


def write_rows(rows, path):
    with open(path, "w", newline="") as fh:
        fh.write(rows_to_csv(rows))


def export_codebook(p, k, n, path):
    """CLI-facing codebook CSV export."""
    cb = CpCodebook(p, k, n)
    export_codebook_csv(cb, path)
    return cb


def run_preset(name, out_dir, trials=None, seed=None, threads=1,
               allow_long=False, render=True):
    """Run a named preset; write {name}.csv (and {name}.png) under out_dir.

    Preset configs carry their own seeds; a seed override is offset per
    config so constituent runs still use distinct streams. Dimensions gated
    behind the long-run opt-in are simply skipped unless allow_long is set.
    """
    from .presets import PRESETS
    if name not in PRESETS:
        raise InfeasibleParamsError(f"unknown preset {name!r}")
    preset = PRESETS[name]
    rows = []
    for i, raw in enumerate(preset["configs"]):
        doc = {key: val for key, val in raw.items() if not key.startswith("_")}
        if allow_long and raw.get("_k_list_long"):
            doc["k_list"] = list(doc["k_list"]) + list(raw["_k_list_long"])
        if trials is not None:
            doc["trials"] = trials
        if seed is not None:
            doc["master_seed"] = seed + i
        cfg = parse_config(doc)
        rows.extend(run_experiment(cfg, threads=threads, allow_long=allow_long))
    os.makedirs(out_dir, exist_ok=True)
    csv_path = os.path.join(out_dir, f"{name}.csv")
    write_rows(rows, csv_path)
    png_path = None
    if render:
        from .figures import render_preset
        png_path = os.path.join(out_dir, f"{name}.png")
        render_preset(preset, rows, png_path)
    return rows, csv_path, png_path
