"""Integral calculus on MMSE curves: I = 0.5 * int MMSE and rates as areas."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .core import DiscreteInput, check_snr, mi_discrete
from .curves import PiecewiseCurve, SampledCurve, mmse_curve
from .errors import ConsistencyError, DomainError

__all__ = [
    "AreaRate",
    "sampling_grid",
    "integrate_half",
    "verify_immse_identity",
    "immse_residuals",
    "immse_table",
    "rate_between_curves",
]

LINEAR_STEP = 0.01
LINEAR_END = 10.0
GEOMETRIC_RATIO = 1.05
ORDER_TOL = 1e-9
CLAMP_TOL = 1e-9


@dataclass(frozen=True)
class AreaRate:
    lower_snr: float
    upper_snr: float
    value_nats: float

    def __post_init__(self):
        if self.lower_snr > self.upper_snr:
            raise DomainError("lower_snr must not exceed upper_snr")
        if self.value_nats < -CLAMP_TOL:
            raise DomainError(f"area rate {self.value_nats!r} is negative")


def sampling_grid(b: float, breakpoints: Iterable[float] = (), step: float = LINEAR_STEP,
                  linear_end: float = LINEAR_END, ratio: float = GEOMETRIC_RATIO) -> np.ndarray:
    """SNR grid on [0, b]: linear up to ``linear_end``, geometric beyond.

    ``breakpoints`` inside [0, b] are inserted as exact nodes so that kinks of
    piecewise curves fall on panel edges.
    """
    b = float(check_snr(b))
    if b == 0.0:
        raise DomainError("grid needs a positive upper limit")
    lin_end = min(linear_end, b)
    n_lin = int(np.ceil(lin_end / step - 1e-9))
    pts = [np.linspace(0.0, lin_end, n_lin + 1)]
    if b > lin_end:
        n_geo = int(np.ceil(np.log(b / lin_end) / np.log(ratio) - 1e-9))
        pts.append(lin_end * ratio ** np.arange(1, n_geo + 1))
        pts.append([b])
    extra = [float(x) for x in breakpoints if 0.0 <= x <= b]
    grid = np.unique(np.concatenate([*map(np.asarray, pts), extra]))
    return grid[grid <= b]


def integrate_half(curve, a: float, b: float) -> float:
    """Return 0.5 * integral of ``curve`` over [a, b] in nats."""
    if isinstance(curve, (PiecewiseCurve, SampledCurve)):
        return curve.integrate_half(float(a), float(b))
    raise DomainError(f"cannot integrate object of type {type(curve).__name__}")


def verify_immse_identity(inp: DiscreteInput, snr: float, tol: float | None = None) -> float:
    """Residual |I(snr) - 0.5 * int_0^snr MMSE| for a discrete input.

    If ``tol`` is given the residual is also compared against it and a
    ``ConsistencyError`` raised on failure.
    """
    snr = float(check_snr(snr))
    if tol is not None and tol <= 0:
        raise DomainError("tol must be positive")
    if snr == 0.0 or inp.is_degenerate:
        residual = abs(mi_discrete(inp, snr))
    else:
        curve = mmse_curve(inp, sampling_grid(snr))
        residual = abs(mi_discrete(inp, snr) - curve.integrate_half(0.0, snr))
    if tol is not None and residual > tol:
        raise ConsistencyError(f"I-MMSE residual {residual:.3e} exceeds {tol:.1e}", gamma=snr)
    return residual


def immse_table(inp: DiscreteInput, snrs) -> tuple:
    """(I(snr), 0.5 * int_0^snr MMSE) at several SNRs from one shared MMSE curve."""
    snrs = np.atleast_1d(check_snr(snrs)).astype(float)
    mi = np.atleast_1d(np.asarray(mi_discrete(inp, snrs), dtype=float))
    top = float(snrs.max()) if snrs.size else 0.0
    if top == 0.0 or inp.is_degenerate:
        return mi, np.zeros_like(mi)
    curve = mmse_curve(inp, sampling_grid(top, breakpoints=snrs))
    return mi, np.array([curve.integrate_half(0.0, s) for s in snrs])


def immse_residuals(inp: DiscreteInput, snrs) -> np.ndarray:
    """Identity residuals |I - 0.5 int MMSE| at several SNRs."""
    mi, half = immse_table(inp, snrs)
    return np.abs(mi - half)


def _check_order(total, conditioned, a: float, b: float):
    if isinstance(total, PiecewiseCurve) and isinstance(conditioned, PiecewiseCurve):
        cuts = sorted({a, b, *total.breakpoints, *conditioned.breakpoints})
        cuts = [c for c in cuts if a <= c <= b]
        # both curves are monotone rationals between cuts; check both ends of each piece
        probes = [*cuts, *(np.nextafter(c, -np.inf) for c in cuts[1:])]
    else:
        grids = [c.grid for c in (total, conditioned) if isinstance(c, SampledCurve)]
        probes = np.unique(np.concatenate([*grids, [a, b]]))
        probes = probes[(probes >= a) & (probes <= b)]
    probes = np.asarray(sorted(probes), dtype=float)
    gap = np.asarray(conditioned(probes)) - np.asarray(total(probes))
    bad = np.flatnonzero(gap > ORDER_TOL)
    if bad.size:
        g = float(probes[bad[0]])
        raise ConsistencyError(
            f"conditional MMSE exceeds unconditional MMSE by {gap[bad[0]]:.3e} at gamma={g:.6g}", gamma=g
        )


def rate_between_curves(total, conditioned, a: float, b: float) -> AreaRate:
    """0.5 * int_a^b (total - conditioned) as an :class:`AreaRate`.

    Raises ``ConsistencyError`` if ``conditioned`` exceeds ``total`` anywhere
    on [a, b] by more than 1e-9.
    """
    a, b = float(a), float(b)
    if not (0.0 <= a <= b):
        raise DomainError(f"need 0 <= a <= b, got a={a!r}, b={b!r}")
    _check_order(total, conditioned, a, b)
    value = integrate_half(total, a, b) - integrate_half(conditioned, a, b)
    if value < -CLAMP_TOL:
        raise ConsistencyError(f"area between curves is {value:.3e} < 0 on [{a}, {b}]")
    return AreaRate(a, b, max(value, 0.0))
