"""MMSE and I-MMSE toolbox for Gaussian wiretap, broadcast and BCC codes."""

from .calculus import immse_residuals, integrate_half, rate_between_curves, verify_immse_identity
from .core import DiscreteInput, GaussianInput, bpsk, mi_discrete, mmse_discrete, mmse_gaussian, pam
from .crossing import CrossingReport, find_crossing, q_function
from .curves import PiecewiseCurve, SampledCurve, mmse_curve
from .errors import CapacityError, ConsistencyError, DomainError, ImmseError, NumericError, PropertyViolation
from .profiles import ChannelScenario, ProfileBundle, d_max
from .regions import RatePoint, RegionBoundary, region_profiles

__version__ = "0.1.0"

__all__ = [
    "DiscreteInput",
    "GaussianInput",
    "bpsk",
    "pam",
    "mmse_discrete",
    "mi_discrete",
    "mmse_gaussian",
    "verify_immse_identity",
    "immse_residuals",
    "integrate_half",
    "rate_between_curves",
    "PiecewiseCurve",
    "SampledCurve",
    "mmse_curve",
    "q_function",
    "find_crossing",
    "CrossingReport",
    "ChannelScenario",
    "ProfileBundle",
    "d_max",
    "RatePoint",
    "RegionBoundary",
    "region_profiles",
    "ImmseError",
    "DomainError",
    "NumericError",
    "ConsistencyError",
    "PropertyViolation",
    "CapacityError",
]
