"""Empirical checks of the MMSE characterizations on explicit codebooks.

These are report generators: they never raise on a failed property, they
return what was measured together with the Monte Carlo noise level so the
caller (tests, CLI) decides what to do with it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..core import check_snr
from ..errors import DomainError
from .codebook import Codebook
from .estimators import McEstimate, mc_mmse, mc_mutual_info, mmse_samples, summarize

__all__ = [
    "GapPoint",
    "DecodingReport",
    "SaturationReport",
    "ImmseReport",
    "check_reliable_decoding_equality",
    "check_saturation_equivalence",
    "finite_n_immse",
]

SIGMA_MULT = 3.0
PROXY_SLACK = 0.05
QUAD_SLACK = 1e-3


@dataclass(frozen=True)
class GapPoint:
    """MMSE(x;g) and MMSE(x;g|W_z) from common draws.

    ``sigma`` is the standard error of the paired per-draw differences,
    which is the relevant noise level for the gap under common draws;
    ``combined_sigma`` adds the two marginal standard errors in quadrature.
    """

    gamma: float
    total: McEstimate
    given: McEstimate
    gap: float
    sigma: float

    @property
    def combined_sigma(self) -> float:
        return math.hypot(self.total.std_err, self.given.std_err)

    def as_dict(self) -> dict:
        return {"gamma": self.gamma, "mmse": self.total.mean, "mmse_given": self.given.mean,
                "gap": self.gap, "sigma": self.sigma, "combined_sigma": self.combined_sigma}


@dataclass(frozen=True)
class DecodingReport:
    """MMSE(x;g) vs MMSE(x;g|W_z) on a grid, plus the decodability proxy."""

    snr_z: float
    points: tuple
    info_wz: McEstimate
    entropy_wz: float

    @property
    def tested(self) -> tuple:
        return tuple(p for p in self.points if p.gamma >= self.snr_z)

    @property
    def consistent_with_equality(self) -> bool:
        return all(abs(p.gap) <= SIGMA_MULT * p.sigma for p in self.tested)

    @property
    def decodable(self) -> bool:
        """(1/n) I(W_z; z) reaches (1/n) H(W_z) up to noise and a 5% slack."""
        deficit = self.entropy_wz - self.info_wz.mean
        return deficit <= SIGMA_MULT * self.info_wz.std_err + PROXY_SLACK * self.entropy_wz

    @property
    def concave(self) -> bool:
        return all(p.gap >= -SIGMA_MULT * p.combined_sigma for p in self.points)

    @property
    def status(self) -> str:
        return "consistent with equality" if self.consistent_with_equality else "equality violated"

    def as_dict(self) -> dict:
        return {"snr_z": self.snr_z, "status": self.status,
                "consistent_with_equality": self.consistent_with_equality,
                "decodable": self.decodable, "concave": self.concave,
                "info_wz": self.info_wz.as_dict(), "entropy_wz": self.entropy_wz,
                "points": [p.as_dict() for p in self.points]}


@dataclass(frozen=True)
class SaturationReport:
    """Secrecy proxy and per-bin rate proxy at the eavesdropper SNR."""

    snr: float
    leakage: McEstimate
    bin_info: McEstimate
    bin_rate: float
    capacity: float

    def as_dict(self) -> dict:
        return {"snr": self.snr, "leakage": self.leakage.as_dict(), "bin_info": self.bin_info.as_dict(),
                "bin_rate": self.bin_rate, "capacity": self.capacity}


@dataclass(frozen=True)
class ImmseReport:
    """(1/n) I(x; y) against the trapezoid half-integral of Monte Carlo MMSE."""

    snr: float
    info: McEstimate
    integral: float
    integral_sigma: float
    grid: np.ndarray
    mmse: tuple

    @property
    def residual(self) -> float:
        return self.info.mean - self.integral

    @property
    def tolerance(self) -> float:
        return SIGMA_MULT * math.hypot(self.info.std_err, self.integral_sigma) + QUAD_SLACK

    @property
    def ok(self) -> bool:
        return abs(self.residual) <= self.tolerance

    def as_dict(self) -> dict:
        return {"snr": self.snr, "info": self.info.as_dict(), "half_integral": self.integral,
                "integral_sigma": self.integral_sigma, "residual": self.residual,
                "tolerance": self.tolerance, "ok": self.ok,
                "points": [{"gamma": float(g), **e.as_dict()} for g, e in zip(self.grid, self.mmse)]}


def check_reliable_decoding_equality(cb: Codebook, snr_z: float, gamma_grid, samples: int = 100_000,
                                     seed: int = 0, workers: int = 1) -> DecodingReport:
    """Compare MMSE(x;g) with MMSE(x;g|W_z) and test W_z decodability at snr_z.

    Equality for g >= snr_z is expected exactly when W_z is decodable there.
    Grid points below snr_z are measured and reported but not part of the flag.
    """
    snr_z = float(check_snr(snr_z))
    grid = np.asarray(gamma_grid, dtype=float)
    if grid.ndim != 1 or grid.size == 0:
        raise DomainError("gamma_grid must be a non-empty 1-D array")
    if not np.any(grid >= snr_z):
        raise DomainError("gamma_grid has no point at or above snr_z")
    points = []
    for g in grid:
        total = mmse_samples(cb, g, None, samples, seed, workers)
        given = mmse_samples(cb, g, "wz", samples, seed, workers)
        diff = summarize(total - given, seed)
        points.append(GapPoint(float(g), summarize(total, seed), summarize(given, seed), diff.mean, diff.std_err))
    points = tuple(points)
    info = mc_mutual_info(cb, snr_z, "wz", None, samples, seed, workers)
    return DecodingReport(snr_z, points, info, cb.entropy("wz") / cb.n)


def check_saturation_equivalence(cb: Codebook, snr: float, samples: int = 100_000, seed: int = 0,
                                 workers: int = 1) -> SaturationReport:
    """Measure (1/n) I(W_s; z') and (1/n) I(x; z' | W_s) for a binned codebook.

    The bin message is hidden (leakage -> 0) exactly when each bin behaves as
    a good codebook at snr, i.e. bin_info -> 0.5 ln(1 + snr); at finite n both
    are trends, so no verdict is attached.
    """
    snr = float(check_snr(snr))
    leak = mc_mutual_info(cb, snr, "bin", None, samples, seed, workers)
    inner = mc_mutual_info(cb, snr, "x", "bin", samples, seed, workers)
    _, counts = np.unique(cb.label("bin"), return_counts=True)
    bin_rate = float(np.sum(counts * np.log(counts)) / cb.size / cb.n)
    return SaturationReport(snr, leak, inner, bin_rate, 0.5 * math.log1p(snr))


def finite_n_immse(cb: Codebook, snr: float, points: int = 60, samples: int = 100_000, seed: int = 0,
                   workers: int = 1) -> ImmseReport:
    """(1/n) I(x; sqrt(snr) x + N) against 0.5 * trapezoid of MMSE over ``points`` nodes."""
    snr = float(check_snr(snr))
    if points < 2:
        raise DomainError("need at least two grid points")
    grid = np.linspace(0.0, snr, points)
    est = tuple(mc_mmse(cb, g, None, samples, seed, workers) for g in grid)
    means = np.array([e.mean for e in est])
    errs = np.array([e.std_err for e in est])
    w = np.full(points, grid[1] - grid[0])
    w[[0, -1]] *= 0.5
    integral = 0.5 * float(w @ means)
    sigma = 0.5 * float(np.sqrt(np.sum((w * errs) ** 2)))
    info = mc_mutual_info(cb, snr, "x", None, samples, seed, workers)
    return ImmseReport(snr, info, integral, sigma, grid, est)
