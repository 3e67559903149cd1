"""Finite-blocklength Monte Carlo laboratory on explicit codebooks."""

from .checks import (
    DecodingReport,
    ImmseReport,
    SaturationReport,
    check_reliable_decoding_equality,
    check_saturation_equivalence,
    finite_n_immse,
)
from .codebook import Codebook, build_binned_wiretap, build_superposition, codebook_from_points, size_for_rate
from .estimators import (
    McEstimate,
    exact_mmse_curve,
    exact_mmse_scalar,
    mc_mmse,
    mc_mutual_info,
    mmse_samples,
    summarize,
)
from .rng import stream

__all__ = [
    "Codebook",
    "McEstimate",
    "DecodingReport",
    "SaturationReport",
    "ImmseReport",
    "build_superposition",
    "build_binned_wiretap",
    "codebook_from_points",
    "size_for_rate",
    "mc_mmse",
    "mc_mutual_info",
    "mmse_samples",
    "summarize",
    "exact_mmse_scalar",
    "exact_mmse_curve",
    "check_reliable_decoding_equality",
    "check_saturation_equivalence",
    "finite_n_immse",
    "stream",
]
