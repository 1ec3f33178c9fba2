"""Polynomial-phase Grassmannian codebooks for limited-feedback beamforming.

Library layout:
  field        prime-field scalars and sparse message polynomials
  codebook     codeword construction, quantizers, CSV import/export
  channels     seeded fading draws and antenna correlation shaping
  gains        beamformers and gain/distortion summaries
  egt          iterative phase-only ascent baseline
  bounds       analytic loss bounds and covering-radius search
  experiments  config-driven Monte Carlo sweeps, CSV rows, presets
  figures      PNG rendering for preset reports
"""

from .bounds import (distortion_bound, empirical_qe, grs_covering_radius_bruteforce,
                     min_rate, qe_bound, rayleigh_abs_moments)
from .channels import (CorrelationSpec, FadingSpec, RngStream, apply_correlation,
                       cholesky_factor, exp_correlation_matrix, fading_block,
                       sample_rayleigh, sample_rician)
from .codebook import (CpCodebook, PskCodebook, batch_quantize, build_cp_codebook,
                       build_psk_codebook, chordal_distance, export_codebook_csv,
                       feedback_bits, load_codebook_csv, prequantize_phases,
                       psk_quantize, psk_quantize_differential,
                       quantize_line)
from .egt import EgtConfig, egt_baseline_mc, iterative_egt_gain, iterative_egt_gain_batch
from .experiments import (ConfigSchemaError, ExperimentConfig, InfeasibleParamsError,
                          LongRunError, RESULT_FIELDS, ResultRow, export_codebook,
                          parse_config, rows_to_csv, run_experiment, run_preset,
                          write_rows)
from .field import (FieldElement, MessagePolynomial, PrimeModulus,
                    enumerate_cp_messages, field_arith, message_from_index,
                    poly_eval)
from .gains import (GainSummary, compand, egt_gain_miso, mrt_gain,
                    normalized_distortion, optimal_beamformer_mimo,
                    optimal_beamformer_miso, realized_gain, summarize_gains)
from .presets import PRESET_NAMES, PRESETS

__version__ = "0.1.0"

__all__ = [
    "CorrelationSpec", "ConfigSchemaError", "CpCodebook", "EgtConfig",
    "ExperimentConfig", "FadingSpec", "FieldElement", "GainSummary",
    "InfeasibleParamsError", "LongRunError", "MessagePolynomial",
    "PRESETS", "PRESET_NAMES", "PrimeModulus", "PskCodebook",
    "RESULT_FIELDS", "ResultRow", "RngStream",
    "apply_correlation", "batch_quantize", "build_cp_codebook",
    "build_psk_codebook", "chordal_distance", "cholesky_factor", "compand",
    "distortion_bound", "egt_baseline_mc", "egt_gain_miso", "empirical_qe",
    "enumerate_cp_messages", "exp_correlation_matrix", "export_codebook",
    "export_codebook_csv", "fading_block", "feedback_bits", "field_arith",
    "grs_covering_radius_bruteforce", "iterative_egt_gain",
    "iterative_egt_gain_batch", "load_codebook_csv", "message_from_index",
    "min_rate", "mrt_gain", "normalized_distortion",
    "optimal_beamformer_mimo", "optimal_beamformer_miso", "parse_config",
    "poly_eval", "prequantize_phases", "psk_quantize",
    "psk_quantize_differential", "qe_bound",
    "quantize_line", "rayleigh_abs_moments", "realized_gain", "rows_to_csv",
    "run_experiment", "run_preset", "sample_rayleigh", "sample_rician",
    "summarize_gains", "write_rows",
]
