"""Command line entry points.

Exit codes: 0 success, 2 malformed config/usage, 3 infeasible parameters,
4 long-run guard tripped.
"""

import functools
import json
import sys

import click

from .bounds import (distortion_bound, grs_covering_radius_bruteforce, min_rate,
                     qe_bound)
from .channels import CorrelationSpec, FadingSpec
from .egt import EgtConfig, egt_baseline_mc
from .experiments import (ConfigSchemaError, InfeasibleParamsError, LongRunError,
                          export_codebook, parse_config, run_experiment,
                          run_preset, write_rows)
from .presets import PRESET_NAMES


def _mapped(f):
    """Translate library errors into the documented exit codes."""
    @functools.wraps(f)
    def wrapper(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except (ValueError, LongRunError) as e:
            click.echo(f"error: {e}", err=True)
            sys.exit(getattr(e, "exit_code", 3))
    return wrapper


@click.group()
def main():
    """Grassmannian codebooks, beamforming simulations, analytic bounds."""


@main.command()
@click.option("--p", type=int, required=True, help="prime modulus")
@click.option("--k", type=int, required=True, help="polynomial degree bound")
@click.option("--n", type=int, required=True, help="codeword length")
@click.option("--out", type=click.Path(dir_okay=False), required=True)
@_mapped
def codebook(p, k, n, out):
    """Export the p^k-codeword book as CSV (index, bits, re/im columns)."""
    cb = export_codebook(p, k, n, out)
    click.echo(f"wrote {cb.size} codewords of length {n} to {out}")


@main.command()
@click.option("--config", "config_path", required=True,
              type=click.Path(exists=True, dir_okay=False),
              help="JSON experiment description")
@click.option("--out", type=click.Path(dir_okay=False), required=True)
@click.option("--trials", type=int, default=None, help="override trial count")
@click.option("--seed", type=int, default=None, help="override master seed")
@click.option("--threads", type=int, default=1, show_default=True)
@click.option("--allow-long", is_flag=True, help="permit very large codebooks")
@_mapped
def simulate(config_path, out, trials, seed, threads, allow_long):
    """Run one experiment config and write result rows as CSV."""
    with open(config_path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as e:
            raise ConfigSchemaError(f"config is not valid JSON: {e}")
    if not isinstance(doc, dict):
        raise ConfigSchemaError("config must be a JSON object")
    if trials is not None:
        doc["trials"] = trials
    if seed is not None:
        doc["master_seed"] = seed
    cfg = parse_config(doc)
    rows = run_experiment(cfg, threads=threads, allow_long=allow_long)
    write_rows(rows, out)
    click.echo(f"wrote {len(rows)} result rows to {out}")


@main.command()
@click.argument("preset", type=click.Choice(PRESET_NAMES))
@click.option("--out", "out_dir", type=click.Path(file_okay=False),
              default="results", show_default=True)
@click.option("--trials", type=int, default=None, help="override trial count")
@click.option("--seed", type=int, default=None, help="override seed base")
@click.option("--threads", type=int, default=1, show_default=True)
@click.option("--allow-long", is_flag=True,
              help="include dimensions gated for runtime")
@_mapped
def reproduce(preset, out_dir, trials, seed, threads, allow_long):
    """Rebuild one canned report; writes PRESET.csv and PRESET.png."""
    rows, csv_path, png_path = run_preset(
        preset, out_dir, trials=trials, seed=seed, threads=threads,
        allow_long=allow_long)
    click.echo(f"wrote {len(rows)} result rows to {csv_path}")
    click.echo(f"rendered {png_path}")


def _parse_fading(text):
    if text == "rayleigh":
        return FadingSpec("rayleigh")
    if text.startswith("rician:"):
        return FadingSpec("rician", float(text.split(":", 1)[1]))
    raise InfeasibleParamsError(
        f"unknown fading {text!r} (use rayleigh or rician:KAPPA)")


@main.command("egt-baseline")
@click.option("--nt", type=int, required=True, help="transmit antennas")
@click.option("--b", type=int, default=8, show_default=True,
              help="phase quantization bits")
@click.option("--iters", type=int, default=10, show_default=True,
              help="coordinate-ascent sweeps")
@click.option("--fading", default="rayleigh", show_default=True,
              help="rayleigh or rician:KAPPA")
@click.option("--rho-tx", type=float, default=None)
@click.option("--rho-rx", type=float, default=None)
@click.option("--trials", type=int, default=300, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@_mapped
def egt_baseline(nt, b, iters, fading, rho_tx, rho_rx, trials, seed):
    """Mean phase-only ascent gain for a 2-receive-antenna channel."""
    spec = _parse_fading(fading)
    corr = None
    if rho_tx is not None or rho_rx is not None:
        corr = CorrelationSpec(rho_tx or 0.0, rho_rx or 0.0)
    cfg = EgtConfig(b=b, sweeps=iters, trials=trials, fading=spec,
                    correlation=corr)
    s = egt_baseline_mc(cfg, nt, seed)
    label = spec.label() + ("-" + corr.label() if corr is not None else "")
    click.echo(f"model={label} n_r=2 n_t={nt} b={b} iters={iters} "
               f"trials={trials} seed={seed} gain_db={s.mean_db:.4f}")


@main.command()
@click.option("--p", type=int, required=True)
@click.option("--n", type=int, required=True)
@click.option("--k", type=int, required=True)
@_mapped
def bounds(p, n, k):
    """Print the analytic quantization-loss bounds for one (p, n, k)."""
    click.echo(f"p={p} n={n} k={k} rate={k / n!r}")
    click.echo(f"min_rate={min_rate(p)!r}")
    click.echo(f"qe_bound={qe_bound(p, n, k)!r}")
    click.echo(f"distortion_bound={distortion_bound(p, n, k)!r}")


@main.command()
@click.option("--p", type=int, required=True)
@click.option("--n", type=int, required=True)
@click.option("--k", type=int, required=True)
@_mapped
def covering(p, n, k):
    """Brute-force Hamming covering radius of the evaluation code."""
    r = grs_covering_radius_bruteforce(p, n, k)
    click.echo(f"p={p} n={n} k={k} covering_radius={r} expected_n_minus_k={n - k}")


if __name__ == "__main__":
    main()
