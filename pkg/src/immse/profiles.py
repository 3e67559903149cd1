"""Closed-form MMSE profiles of optimal Gaussian wiretap / BC / BCC codes.

All curves are :class:`~immse.curves.PiecewiseCurve` objects with segments
``c/(1+c*gamma)``; rates follow from areas between them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .calculus import rate_between_curves
from .curves import PiecewiseCurve
from .errors import DomainError

__all__ = [
    "ChannelScenario",
    "ProfileBundle",
    "IntegralConstraint",
    "WiretapRate",
    "d_max",
    "capacity",
    "wiretap_dmax_profile",
    "wiretap_secrecy_bundle",
    "wiretap_rate_profile",
    "bc_good_profile",
    "bcc_complete_secrecy_profile",
    "bcc_optimal_secure_profile",
    "wiretap_rate_from_profiles",
    "bc_rates",
    "bcc_secrecy_rates",
]

DOMINANCE_TOL = 1e-12


def _half_log(x: float) -> float:
    return 0.5 * math.log(x)


def _check_unit(name: str, v: float):
    if not (0.0 <= v <= 1.0):
        raise DomainError(f"{name} must lie in [0, 1], got {v!r}")


def _check_snr_value(name: str, v: float):
    if not (math.isfinite(v) and v >= 0):
        raise DomainError(f"{name} must be finite and nonnegative, got {v!r}")


@dataclass(frozen=True)
class ChannelScenario:
    """Degraded Gaussian channel: eavesdropper / weak user at ``snr_z``,
    legitimate / strong user at ``snr_y``, optional disturbance receiver at
    ``snr_u`` with MMSE budget ``alpha/(1+alpha*snr_u)``, power split ``beta``.
    """

    snr_z: float
    snr_y: float
    snr_u: float | None = None
    alpha: float | None = None
    beta: float = 1.0

    def __post_init__(self):
        _check_snr_value("snr_z", self.snr_z)
        _check_snr_value("snr_y", self.snr_y)
        if not self.snr_z < self.snr_y:
            raise DomainError(f"need snr_z < snr_y, got {self.snr_z!r} >= {self.snr_y!r}")
        _check_unit("beta", self.beta)
        if (self.snr_u is None) != (self.alpha is None):
            raise DomainError("snr_u and alpha must be given together")
        if self.snr_u is not None:
            _check_snr_value("snr_u", self.snr_u)
            _check_unit("alpha", self.alpha)
            if self.snr_u == self.snr_z:
                raise DomainError("snr_u must differ from snr_z")
            if not self.snr_u < self.snr_y:
                raise DomainError(f"need snr_u < snr_y, got {self.snr_u!r}")

    @property
    def constrained(self) -> bool:
        return self.snr_u is not None

    @property
    def placement(self) -> str | None:
        """``'interior'`` for snr_z < snr_u < snr_y, ``'low'`` for snr_u < snr_z."""
        if self.snr_u is None:
            return None
        return "interior" if self.snr_u > self.snr_z else "low"

    def with_beta(self, beta: float) -> "ChannelScenario":
        return ChannelScenario(self.snr_z, self.snr_y, self.snr_u, self.alpha, beta)

    def as_dict(self) -> dict:
        return {"snr_z": self.snr_z, "snr_y": self.snr_y, "snr_u": self.snr_u,
                "alpha": self.alpha, "beta": self.beta}


@dataclass(frozen=True)
class IntegralConstraint:
    """0.5 * int_lo^hi curve = value, with curve <= bound pointwise."""

    lo: float
    hi: float
    value: float
    bound: PiecewiseCurve

    def admits(self, curve: PiecewiseCurve, tol: float = 1e-9) -> bool:
        return (abs(curve.integrate_half(self.lo, self.hi) - self.value) <= tol
                and curve.dominated_by(self.bound, tol))

    def as_dict(self) -> dict:
        return {"lo": self.lo, "hi": self.hi, "half_integral": self.value, "bound": self.bound.to_json()}


@dataclass(frozen=True)
class ProfileBundle:
    """MMSE(x;g), MMSE(x;g|W_y) and MMSE(x;g|W_z); conditionals may be absent."""

    total: PiecewiseCurve
    given_wy: PiecewiseCurve | None = None
    given_wz: PiecewiseCurve | None = None
    given_wy_constraint: IntegralConstraint | None = None

    def __post_init__(self):
        for name in ("given_wy", "given_wz"):
            cond = getattr(self, name)
            if cond is not None and not cond.dominated_by(self.total, DOMINANCE_TOL):
                raise DomainError(f"{name} exceeds the unconditional MMSE")

    def as_dict(self) -> dict:
        out = {"total": self.total.to_json(),
               "given_wy": None if self.given_wy is None else self.given_wy.to_json(),
               "given_wz": None if self.given_wz is None else self.given_wz.to_json()}
        if self.given_wy_constraint is not None:
            out["given_wy_constraint"] = self.given_wy_constraint.as_dict()
        return out


@dataclass(frozen=True)
class WiretapRate:
    rate: float
    equivocation: float

    @property
    def fraction(self) -> float:
        """d / R, a quick secrecy indicator (1 = complete secrecy)."""
        return self.equivocation / self.rate if self.rate > 0 else 1.0

    def __iter__(self):
        return iter((self.rate, self.equivocation, self.fraction))


def capacity(snr: float) -> float:
    """Point-to-point capacity 0.5*ln(1+snr) in nats."""
    _check_snr_value("snr", snr)
    return 0.5 * math.log1p(snr)


def d_max(snr_y: float, snr_z: float) -> float:
    """Maximum equivocation 0.5*ln(1+snr_y) - 0.5*ln(1+snr_z)."""
    _check_snr_value("snr_y", snr_y)
    _check_snr_value("snr_z", snr_z)
    if not snr_z < snr_y:
        raise DomainError(f"need snr_z < snr_y, got {snr_z!r} >= {snr_y!r}")
    return 0.5 * (math.log1p(snr_y) - math.log1p(snr_z))


def wiretap_dmax_profile(snr_y: float) -> PiecewiseCurve:
    """MMSE of a code attaining maximum equivocation: 1/(1+g) on [0, snr_y), 0 after."""
    if not snr_y > 0:
        raise DomainError("snr_y must be positive")
    return PiecewiseCurve.from_breaks([snr_y], [1.0, 0.0])


def wiretap_secrecy_bundle(snr_z: float, snr_y: float) -> ProfileBundle:
    """Bundle of a secrecy-capacity code: the message is hidden below snr_z."""
    ChannelScenario(snr_z, snr_y)
    total = wiretap_dmax_profile(snr_y)
    given = PiecewiseCurve.from_breaks([snr_z], [1.0, 0.0])
    return ProfileBundle(total, given_wy=given)


def wiretap_rate_profile(snr_y: float, rate: float) -> ProfileBundle:
    """Full-equivocation code at rate ``rate`` <= C.

    W_y is resolved once the SNR reaches e^{2(C-R)} - 1; below that the
    conditional MMSE follows the unconditional one.
    """
    cap = capacity(snr_y)
    if not (0.0 <= rate <= cap):
        raise DomainError(f"rate must lie in [0, C={cap:.6g}]")
    knee = math.expm1(2.0 * (cap - rate))
    total = wiretap_dmax_profile(snr_y)
    if knee <= 0.0:
        return ProfileBundle(total, given_wy=total)
    return ProfileBundle(total, given_wy=PiecewiseCurve.from_breaks([knee], [1.0, 0.0]))


def _good_total(sc: ChannelScenario) -> PiecewiseCurve:
    return PiecewiseCurve.from_breaks([sc.snr_z, sc.snr_y], [1.0, sc.beta, 0.0])


def _layer_curve(sc: ChannelScenario) -> PiecewiseCurve:
    return PiecewiseCurve.from_breaks([sc.snr_y], [sc.beta, 0.0])


def bc_good_profile(scenario: ChannelScenario) -> ProfileBundle:
    """Superposition code with power split beta; W_z decoded from snr_z on."""
    return ProfileBundle(_good_total(scenario), given_wz=_layer_curve(scenario))


def bcc_complete_secrecy_profile(scenario: ChannelScenario) -> ProfileBundle:
    """BCC code whose confidential message is completely hidden from snr_z."""
    sc = scenario
    given_wy = PiecewiseCurve.from_breaks([sc.snr_z], [1.0, 0.0])
    return ProfileBundle(_good_total(sc), given_wy=given_wy, given_wz=_layer_curve(sc))


def bcc_optimal_secure_profile(scenario: ChannelScenario) -> ProfileBundle:
    """BCC code that is optimally secure from snr_z.

    MMSE(x;g|W_y) on [0, snr_z) is pinned down only through its integral, so
    it is returned as an :class:`IntegralConstraint` instead of a curve.
    """
    sc = scenario
    total = _good_total(sc)
    value = 0.5 * (math.log1p(sc.snr_z) - math.log1p(sc.beta * sc.snr_z))
    constraint = IntegralConstraint(0.0, sc.snr_z, value, total)
    return ProfileBundle(total, given_wz=_layer_curve(sc), given_wy_constraint=constraint)


def wiretap_rate_from_profiles(bundle: ProfileBundle, snr_z: float, snr_y: float) -> WiretapRate:
    """Rate R and equivocation d of the message W_y from its MMSE profiles.

    R = 0.5 int_0^snr_y (total - given_wy) and
    d = 0.5 int_snr_z^snr_y (total - given_wy), capped at R.
    """
    if bundle.given_wy is None:
        raise DomainError("bundle has no MMSE(x;g|W_y) curve")
    ChannelScenario(snr_z, snr_y)
    rate = rate_between_curves(bundle.total, bundle.given_wy, 0.0, snr_y).value_nats
    equiv = rate_between_curves(bundle.total, bundle.given_wy, snr_z, snr_y).value_nats
    return WiretapRate(rate, min(equiv, rate))


def bc_rates(scenario: ChannelScenario) -> tuple:
    """(R_y, R_z) of the superposition code with split beta."""
    sc = scenario
    return (_half_log(1.0 + sc.beta * sc.snr_y),
            _half_log((1.0 + sc.snr_z) / (1.0 + sc.beta * sc.snr_z)))


def bcc_secrecy_rates(scenario: ChannelScenario) -> tuple:
    """(R_y, R_z) with R_y completely secret from the snr_z receiver."""
    sc = scenario
    return (_half_log((1.0 + sc.beta * sc.snr_y) / (1.0 + sc.beta * sc.snr_z)),
            _half_log((1.0 + sc.snr_z) / (1.0 + sc.beta * sc.snr_z)))
