"""Rate regions of the degraded Gaussian BC and BCC, with and without an
MMSE disturbance constraint MMSE(x; snr_u) <= alpha/(1 + alpha*snr_u).

Every region is produced as a union of tagged branches; :meth:`RegionBoundary.pareto`
gives the upper-right boundary for plotting.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass

import numpy as np

from .curves import PiecewiseCurve
from .errors import DomainError
from .profiles import (
    ChannelScenario,
    ProfileBundle,
    bc_good_profile,
    bc_rates,
    bcc_complete_secrecy_profile,
    bcc_secrecy_rates,
)

__all__ = [
    "BRANCHES",
    "RatePoint",
    "RegionBoundary",
    "chebyshev_grid",
    "uniform_grid",
    "bc_region",
    "bcc_secrecy_region",
    "bc_region_constrained",
    "bcc_region_constrained",
    "beta_max_low",
    "bc_three_layer_rates",
    "bc_low_beta_rates",
    "time_share_rates",
    "bcc_three_layer_rates",
    "bcc_low_beta_rates",
    "low_case_rz",
    "region_profiles",
    "unconstrained_rz",
    "inside_unconstrained",
]

BRANCHES = ("unconstrained", "three_layer", "time_share", "low_beta")
REGIONS = ("bc", "bcc", "bc-constrained", "bcc-constrained")
DEFAULT_BETA_POINTS = 256
DEFAULT_LAMBDA_POINTS = 64
CSV_HEADER = ("branch", "param_name", "param_value", "r_y_nats", "r_z_nats")


@dataclass(frozen=True)
class RatePoint:
    r_y: float
    r_z: float
    param_name: str
    param_value: float
    branch: str
    region: str

    def __post_init__(self):
        if self.branch not in BRANCHES and self.branch != "reference":
            raise DomainError(f"unknown branch {self.branch!r}")
        if self.r_y < 0 or self.r_z < 0:
            raise DomainError(f"negative rate in {self!r}")


def _fmt(x: float) -> str:
    return format(x, ".12g")


@dataclass(frozen=True)
class RegionBoundary:
    """Tagged boundary points sorted by r_y (ties keep generation order)."""

    points: tuple
    scenario: ChannelScenario
    region: str

    def __post_init__(self):
        pts = tuple(sorted(self.points, key=lambda p: p.r_y))
        object.__setattr__(self, "points", pts)

    def branch(self, name: str) -> list:
        return [p for p in self.points if p.branch == name]

    def pareto(self, tol: float = 1e-12) -> "RegionBoundary":
        """Upper-right Pareto filter of the union of branches."""
        keep, best_rz = [], -math.inf
        for p in sorted(self.points, key=lambda p: (-p.r_y, -p.r_z)):
            if p.r_z > best_rz + tol:
                keep.append(p)
                best_rz = p.r_z
        return RegionBoundary(tuple(keep), self.scenario, self.region)

    def with_reference(self, reference: "RegionBoundary") -> "RegionBoundary":
        extra = tuple(RatePoint(p.r_y, p.r_z, p.param_name, p.param_value, "reference", reference.region)
                      for p in reference.points)
        return RegionBoundary(self.points + extra, self.scenario, self.region)

    def to_csv(self, unit: str = "nats") -> str:
        scale = _unit_scale(unit)
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow([h.replace("nats", unit) for h in CSV_HEADER])
        for p in self.points:
            writer.writerow([p.branch, p.param_name, _fmt(p.param_value), _fmt(p.r_y * scale), _fmt(p.r_z * scale)])
        return buf.getvalue()

    def to_json(self, unit: str = "nats") -> str:
        scale = _unit_scale(unit)
        body = {
            "region": self.region,
            "scenario": self.scenario.as_dict(),
            "unit": unit,
            "points": [
                {"branch": p.branch, "param_name": p.param_name, "param_value": float(_fmt(p.param_value)),
                 "r_y": float(_fmt(p.r_y * scale)), "r_z": float(_fmt(p.r_z * scale))}
                for p in self.points
            ],
        }
        return json.dumps(body, indent=2) + "\n"


def _unit_scale(unit: str) -> float:
    if unit == "nats":
        return 1.0
    if unit == "bits":
        return 1.0 / math.log(2.0)
    raise DomainError(f"unknown unit {unit!r}")


def chebyshev_grid(lo: float, hi: float, n: int = DEFAULT_BETA_POINTS) -> np.ndarray:
    """Chebyshev-Lobatto points on [lo, hi], clustered at both ends, endpoints exact."""
    if n < 2:
        return np.array([lo], dtype=float)
    k = np.arange(n)
    pts = lo + (hi - lo) * 0.5 * (1.0 - np.cos(np.pi * k / (n - 1)))
    pts[0], pts[-1] = lo, hi
    return pts


def uniform_grid(lo: float, hi: float, n: int = DEFAULT_LAMBDA_POINTS) -> np.ndarray:
    return np.linspace(lo, hi, n)


def _half_log_ratio(num: float, den: float) -> float:
    # 0.5 * ln((1 + num) / (1 + den)) without cancellation for small arguments
    return 0.5 * (math.log1p(num) - math.log1p(den))


def _plain(scenario: ChannelScenario) -> ChannelScenario:
    return ChannelScenario(scenario.snr_z, scenario.snr_y, beta=scenario.beta)


def _require_constrained(sc: ChannelScenario):
    if not sc.constrained:
        raise DomainError("constrained regions need snr_u and alpha")


def _points(rates, betas, branch, region, param="beta"):
    return [RatePoint(ry, rz, param, float(b), branch, region) for b, (ry, rz) in zip(betas, rates)]


def bc_region(scenario: ChannelScenario, beta_grid=None) -> RegionBoundary:
    """Unconstrained degraded Gaussian BC: superposition pairs over beta."""
    betas = chebyshev_grid(0.0, 1.0) if beta_grid is None else np.asarray(beta_grid, dtype=float)
    _check_grid(betas)
    sc = _plain(scenario)
    rates = [bc_rates(sc.with_beta(float(b))) for b in betas]
    return RegionBoundary(tuple(_points(rates, betas, "unconstrained", "bc")), scenario, "bc")


def bcc_secrecy_region(scenario: ChannelScenario, beta_grid=None) -> RegionBoundary:
    """BCC with the strong user's message completely secret from snr_z."""
    betas = chebyshev_grid(0.0, 1.0) if beta_grid is None else np.asarray(beta_grid, dtype=float)
    _check_grid(betas)
    sc = _plain(scenario)
    rates = [bcc_secrecy_rates(sc.with_beta(float(b))) for b in betas]
    return RegionBoundary(tuple(_points(rates, betas, "unconstrained", "bcc")), scenario, "bcc")


def _check_grid(g):
    if g.ndim != 1 or g.size == 0 or np.any(g < 0) or np.any(g > 1):
        raise DomainError("parameter grids must be non-empty subsets of [0, 1]")


def bc_three_layer_rates(sc: ChannelScenario, beta: float) -> tuple:
    """snr_u between snr_z and snr_y, beta in [alpha, 1]."""
    a, su = sc.alpha, sc.snr_u
    ry = 0.5 * math.log1p(a * sc.snr_y) + 0.5 * math.log1p((beta - a) * su / (1.0 + a * su))
    return ry, _half_log_ratio(sc.snr_z, beta * sc.snr_z)


def _layer_gap(sc: ChannelScenario) -> float:
    """T = 0.5 ln((1+snr_u)/(1+alpha snr_u)), the rate of the layer decoded at snr_u."""
    return _half_log_ratio(sc.snr_u, sc.alpha * sc.snr_u)


def low_case_rz(sc: ChannelScenario, beta: float) -> float:
    """R_z of the 3-layer code for snr_u < snr_z, for any beta (may be negative)."""
    return _layer_gap(sc) + _half_log_ratio(sc.alpha * sc.snr_z, beta * sc.snr_z)


def beta_max_low(sc: ChannelScenario) -> float:
    """Largest beta with a nonnegative R_z in the snr_u < snr_z case."""
    _require_constrained(sc)
    a, su, sz = sc.alpha, sc.snr_u, sc.snr_z
    return ((1.0 - a) * su + a * sz * (1.0 + su)) / (sz * (1.0 + a * su))


def time_share_rates(sc: ChannelScenario, lam: float) -> tuple:
    t = _layer_gap(sc)
    return 0.5 * math.log1p(sc.alpha * sc.snr_y) + lam * t, (1.0 - lam) * t


def bc_low_beta_rates(sc: ChannelScenario, beta: float) -> tuple:
    return 0.5 * math.log1p(beta * sc.snr_y), low_case_rz(sc, beta)


def bc_region_constrained(scenario: ChannelScenario, beta_points: int = DEFAULT_BETA_POINTS,
                          lambda_points: int = DEFAULT_LAMBDA_POINTS) -> RegionBoundary:
    """Degraded Gaussian BC under the MMSE disturbance constraint.

    Both branch intervals are sampled closed, so the junction point at
    beta = alpha appears in both branches.
    """
    sc = scenario
    _require_constrained(sc)
    a = sc.alpha
    region = "bc-constrained"
    pts: list[RatePoint] = []
    if sc.placement == "interior":
        low = chebyshev_grid(0.0, a, beta_points)
        high = chebyshev_grid(a, 1.0, beta_points)
        pts += _points([bc_rates(_plain(sc).with_beta(float(b))) for b in low], low, "unconstrained", region)
        pts += _points([bc_three_layer_rates(sc, float(b)) for b in high], high, "three_layer", region)
    else:
        lams = uniform_grid(0.0, 1.0, lambda_points)
        betas = chebyshev_grid(0.0, a, beta_points)
        pts += _points([time_share_rates(sc, float(l)) for l in lams], lams, "time_share", region, "lambda")
        pts += _points([bc_low_beta_rates(sc, float(b)) for b in betas], betas, "low_beta", region)
    return RegionBoundary(tuple(pts), sc, region)


def bcc_three_layer_rates(sc: ChannelScenario, beta: float) -> tuple:
    """snr_u between snr_z and snr_y, beta in [alpha, 1]."""
    a, su = sc.alpha, sc.snr_u
    ry = _half_log_ratio(beta * su, beta * sc.snr_z) + _half_log_ratio(a * sc.snr_y, a * su)
    return ry, _half_log_ratio(sc.snr_z, beta * sc.snr_z)


def bcc_low_beta_rates(sc: ChannelScenario, beta: float) -> tuple:
    return _half_log_ratio(beta * sc.snr_y, beta * sc.snr_z), low_case_rz(sc, beta)


def bcc_region_constrained(scenario: ChannelScenario, beta_points: int = DEFAULT_BETA_POINTS) -> RegionBoundary:
    """BCC (complete secrecy) under the MMSE disturbance constraint."""
    sc = scenario
    _require_constrained(sc)
    a = sc.alpha
    region = "bcc-constrained"
    pts: list[RatePoint] = []
    if sc.placement == "interior":
        low = chebyshev_grid(0.0, a, beta_points)
        high = chebyshev_grid(a, 1.0, beta_points)
        pts += _points([bcc_secrecy_rates(_plain(sc).with_beta(float(b))) for b in low], low,
                       "unconstrained", region)
        pts += _points([bcc_three_layer_rates(sc, float(b)) for b in high], high, "three_layer", region)
    else:
        betas = chebyshev_grid(0.0, a, beta_points)
        pts += _points([bcc_low_beta_rates(sc, float(b)) for b in betas], betas, "low_beta", region)
    return RegionBoundary(tuple(pts), sc, region)


def unconstrained_rz(scenario: ChannelScenario, r_y: float, secrecy: bool = False) -> float:
    """Largest R_z of the unconstrained region at a given R_y (-inf if R_y is infeasible)."""
    sz, sy = scenario.snr_z, scenario.snr_y
    e = math.expm1(2.0 * r_y)
    if secrecy:
        # (1 + b sy)/(1 + b sz) = 1 + e  ->  b = e / (sy - (1 + e) sz)
        den = sy - (1.0 + e) * sz
        beta = e / den if den > 0 else math.inf
    else:
        beta = e / sy
    if beta > 1.0 + 1e-12:
        return -math.inf
    beta = min(beta, 1.0)
    return _half_log_ratio(sz, beta * sz)


def inside_unconstrained(boundary: RegionBoundary, tol: float = 1e-12) -> list:
    """Points of a constrained region lying above the unconstrained boundary."""
    secrecy = boundary.region.startswith("bcc")
    return [p for p in boundary.points if p.branch != "reference"
            and p.r_z > unconstrained_rz(boundary.scenario, p.r_y, secrecy) + tol]


def _gamma_for_share(a: float, t: float, cap: float) -> float:
    # solve 0.5 ln((1+g)/(1+a g)) = t for g
    e = math.exp(2.0 * t)
    if e - 1.0 <= 0.0:
        return 0.0
    return min((e - 1.0) / (1.0 - a * e), cap)


def region_profiles(point: RatePoint, scenario: ChannelScenario) -> ProfileBundle:
    """MMSE profiles of the code achieving ``point``.

    For ``time_share`` points (a BC code, no W_y curve) MMSE(x; g|W_z) is that
    of splitting the layer decoded at snr_u between W_z and W_y.
    """
    sc = scenario
    region, branch = point.region, point.branch
    p = point.param_value
    if region in ("bc", "bcc") or branch == "unconstrained":
        if branch != "unconstrained":
            raise DomainError(f"branch {branch!r} does not belong to region {region!r}")
        plain = _plain(sc).with_beta(p)
        if sc.constrained and p > sc.alpha + 1e-15:
            raise DomainError("unconstrained-branch points of a constrained region need beta <= alpha")
        return bcc_complete_secrecy_profile(plain) if region.startswith("bcc") else bc_good_profile(plain)
    if region not in ("bc-constrained", "bcc-constrained"):
        raise DomainError(f"unknown region {region!r}")
    _require_constrained(sc)
    a, su, sz, sy = sc.alpha, sc.snr_u, sc.snr_z, sc.snr_y
    secrecy = region == "bcc-constrained"
    if branch == "three_layer":
        if sc.placement != "interior":
            raise DomainError("three_layer points need snr_z < snr_u < snr_y")
        total = PiecewiseCurve.from_breaks([sz, su, sy], [1.0, p, a, 0.0])
        given_wz = PiecewiseCurve.from_breaks([su, sy], [p, a, 0.0])
        given_wy = PiecewiseCurve.from_breaks([sz], [1.0, 0.0]) if secrecy else None
        return ProfileBundle(total, given_wy=given_wy, given_wz=given_wz)
    if sc.placement != "low":
        raise DomainError(f"{branch} points need snr_u < snr_z")
    if branch == "low_beta":
        total = PiecewiseCurve.from_breaks([su, sz, sy], [1.0, a, p, 0.0])
        given_wz = PiecewiseCurve.from_breaks([sy], [p, 0.0])
        given_wy = PiecewiseCurve.from_breaks([su, sz], [1.0, a, 0.0]) if secrecy else None
        return ProfileBundle(total, given_wy=given_wy, given_wz=given_wz)
    if branch == "time_share":
        if secrecy:
            raise DomainError("time_share points only occur in the constrained BC region")
        total = PiecewiseCurve.from_breaks([su, sy], [1.0, a, 0.0])
        knee = _gamma_for_share(a, p * _layer_gap(sc), su)
        given_wz = PiecewiseCurve.from_breaks([knee, sy], [1.0, a, 0.0])
        return ProfileBundle(total, given_wz=given_wz)
    raise DomainError(f"unknown branch {branch!r}")
