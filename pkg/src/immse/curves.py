"""MMSE curves: closed-form piecewise profiles and sampled curves.

A :class:`PiecewiseCurve` is a list of left-closed segments ``[lo, hi)`` on
which the curve equals ``c / (1 + c*gamma)``; ``c = 0`` is the zero branch.
Segments tile ``[0, inf)`` so every curve is defined at every SNR, and at a
breakpoint the curve takes its right-limit value.

A :class:`SampledCurve` holds values on a strictly increasing grid, plus
optionally the slopes at the nodes and the function that produced them.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from .core import DiscreteInput, check_snr, mmse_discrete, mmse_with_slope
from .errors import DomainError

__all__ = [
    "Segment",
    "PiecewiseCurve",
    "SampledCurve",
    "gaussian_curve",
    "zero_curve",
    "mmse_curve",
]

COEFF_TOL = 1e-12
MONOTONE_TOL = 1e-9
_PANEL_GL_ORDER = 2
# panels wider than this are integrated with a higher-order rule when possible
_WIDE_PANEL = 0.05
_WIDE_GL_ORDER = 6


@dataclass(frozen=True)
class Segment:
    lo: float
    hi: float
    coeff: float

    def value(self, gamma):
        return self.coeff / (1.0 + self.coeff * gamma)

    def half_integral(self, a: float, b: float) -> float:
        """0.5 * integral of the segment's rational form over [a, b] within the segment."""
        a, b = max(a, self.lo), min(b, self.hi)
        if b <= a or self.coeff == 0.0:
            return 0.0
        if np.isinf(b):
            raise DomainError("integral of a nonzero segment over an unbounded interval diverges")
        return 0.5 * (np.log1p(self.coeff * b) - np.log1p(self.coeff * a))


@dataclass(frozen=True)
class PiecewiseCurve:
    """Piecewise ``c/(1+c*gamma)`` curve on ``[0, inf)``."""

    segments: tuple

    def __post_init__(self):
        segs = tuple(s if isinstance(s, Segment) else Segment(*map(float, s)) for s in self.segments)
        if not segs:
            raise DomainError("a piecewise curve needs at least one segment")
        if segs[0].lo != 0.0 or not np.isinf(segs[-1].hi):
            raise DomainError("segments must tile [0, inf)")
        for s in segs:
            if not (s.lo < s.hi):
                raise DomainError(f"empty or reversed segment [{s.lo}, {s.hi})")
            if not (0.0 <= s.coeff <= 1.0 + COEFF_TOL):
                raise DomainError(f"segment coefficient {s.coeff!r} outside [0, 1]")
        for left, right in zip(segs, segs[1:]):
            if left.hi != right.lo:
                raise DomainError(f"segments are not contiguous at {left.hi!r}")
            # MMSE of a fixed law cannot jump upwards
            if right.value(right.lo) > left.value(left.hi) + COEFF_TOL:
                raise DomainError(f"curve increases across the breakpoint {right.lo!r}")
        object.__setattr__(self, "segments", segs)

    @classmethod
    def from_breaks(cls, breaks: Sequence[float], coeffs: Sequence[float]) -> "PiecewiseCurve":
        """Build from interior breakpoints ``b_1 < ... < b_k`` and ``k + 1`` coefficients.

        Zero-length pieces (repeated breakpoints) are dropped and adjacent
        pieces with equal coefficients are merged.
        """
        edges = [0.0, *map(float, breaks), np.inf]
        if len(coeffs) != len(edges) - 1:
            raise DomainError("need exactly one coefficient more than breakpoints")
        if any(b < a for a, b in zip(edges, edges[1:])):
            raise DomainError(f"breakpoints must be nondecreasing and nonnegative: {list(breaks)}")
        merged: list[list[float]] = []
        for lo, hi, c in zip(edges, edges[1:], coeffs):
            if hi <= lo:
                continue
            if merged and merged[-1][2] == float(c):
                merged[-1][1] = hi
            else:
                merged.append([lo, hi, float(c)])
        return cls(tuple(Segment(*m) for m in merged))

    @property
    def breakpoints(self) -> tuple:
        return tuple(s.lo for s in self.segments[1:])

    def __call__(self, gamma):
        g = check_snr(gamma)
        los = np.array([s.lo for s in self.segments])
        coeffs = np.array([s.coeff for s in self.segments])
        c = coeffs[np.searchsorted(los, g, side="right") - 1]
        out = c / (1.0 + c * g)
        return float(out) if out.ndim == 0 else out

    def integrate_half(self, a: float, b: float) -> float:
        if not (0.0 <= a <= b):
            raise DomainError(f"need 0 <= a <= b, got a={a!r}, b={b!r}")
        return float(sum(s.half_integral(a, b) for s in self.segments))

    def dominated_by(self, other: "PiecewiseCurve", tol: float = COEFF_TOL) -> bool:
        """True when ``self <= other`` everywhere.

        On a common sub-interval ``c/(1+c*gamma)`` is increasing in ``c``, so
        comparing coefficients piece by piece is exact.
        """
        cuts = sorted({*self.breakpoints, *other.breakpoints, 0.0})
        for g in cuts:
            c_self = self._coeff_at(g)
            c_other = other._coeff_at(g)
            if c_self > c_other + tol:
                return False
        return True

    def _coeff_at(self, g: float) -> float:
        for s in self.segments:
            if s.lo <= g < s.hi:
                return s.coeff
        return self.segments[-1].coeff

    def to_json(self) -> list:
        return [{"lo": s.lo, "hi": None if np.isinf(s.hi) else s.hi, "coeff": s.coeff} for s in self.segments]

    @classmethod
    def from_json(cls, data) -> "PiecewiseCurve":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(tuple(Segment(float(d["lo"]), np.inf if d["hi"] is None else float(d["hi"]), float(d["coeff"]))
                         for d in data))


@lru_cache(maxsize=None)
def _gl(order: int):
    return np.polynomial.legendre.leggauss(order)


@dataclass(frozen=True, eq=False)
class SampledCurve:
    """Curve known on a grid.

    Parameters
    ----------
    grid : array_like
        Strictly increasing nonnegative SNR values.
    values : array_like
        Curve values on ``grid``.
    func : callable, optional
        Vectorised generator of the curve, enabling evaluation between nodes.
    slopes : array_like, optional
        Derivative of the curve at the nodes.

    Notes
    -----
    Integration between grid nodes uses the end-corrected trapezoid rule
    ``h/2 (f_a + f_b) + h^2/12 (f'_a - f'_b)`` when slopes are known (exact for
    cubics, like two-point Gauss-Legendre, but reusing the samples).  Without
    slopes it uses two-point Gauss-Legendre per panel through ``func``, or the
    plain trapezoid rule if the curve is known only at its nodes.
    """

    grid: np.ndarray
    values: np.ndarray
    func: Callable | None = field(default=None, repr=False)
    slopes: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        grid = np.asarray(self.grid, dtype=float)
        values = np.asarray(self.values, dtype=float)
        if grid.ndim != 1 or grid.shape != values.shape or grid.size < 2:
            raise DomainError("grid and values must be 1-d arrays of equal length >= 2")
        check_snr(grid)
        if np.any(np.diff(grid) <= 0):
            raise DomainError("grid must be strictly increasing")
        if not np.all(np.isfinite(values)) or np.any(values < -COEFF_TOL):
            raise DomainError("curve values must be finite and nonnegative")
        grid.setflags(write=False)
        values.setflags(write=False)
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "values", values)
        if self.slopes is not None:
            slopes = np.asarray(self.slopes, dtype=float)
            if slopes.shape != grid.shape or not np.all(np.isfinite(slopes)):
                raise DomainError("slopes must be finite and match the grid")
            slopes.setflags(write=False)
            object.__setattr__(self, "slopes", slopes)

    @classmethod
    def from_function(cls, func: Callable, grid) -> "SampledCurve":
        grid = np.asarray(grid, dtype=float)
        return cls(grid, np.asarray(func(grid), dtype=float), func)

    def _node_index(self, g: float):
        i = int(np.searchsorted(self.grid, g))
        return i if i < self.grid.size and self.grid[i] == g else None

    @property
    def domain(self) -> tuple:
        return float(self.grid[0]), float(self.grid[-1])

    def _check_inside(self, g):
        lo, hi = self.domain
        if np.any(g < lo) or np.any(g > hi):
            raise DomainError(f"curve sampled on [{lo}, {hi}] evaluated outside it")

    def __call__(self, gamma):
        g = check_snr(gamma)
        self._check_inside(g)
        if self.func is not None:
            return self.func(g)
        idx = np.clip(np.searchsorted(self.grid, g), 0, self.grid.size - 1)
        if not np.all(self.grid[idx] == g):
            raise DomainError("sampled curve without a generator can only be evaluated on its grid")
        out = self.values[idx]
        return float(out) if out.ndim == 0 else out

    def is_nonincreasing(self, tol: float = MONOTONE_TOL) -> bool:
        return bool(np.all(np.diff(self.values) <= tol))

    def integrate_half(self, a: float, b: float) -> float:
        if not (a <= b):
            raise DomainError(f"need a <= b, got a={a!r}, b={b!r}")
        self._check_inside(np.array([a, b]))
        if a == b:
            return 0.0
        ia, ib = self._node_index(a), self._node_index(b)
        if self.slopes is not None and ia is not None and ib is not None:
            return 0.5 * self._hermite(ia, ib)
        inner = self.grid[(self.grid > a) & (self.grid < b)]
        edges = np.concatenate([[a], inner, [b]])
        if self.func is None:
            if ia is None or ib is None:
                raise DomainError("trapezoid integration needs both limits on the grid")
            vals = self.values[ia:ib + 1]
            return 0.5 * float(np.sum(0.5 * (vals[1:] + vals[:-1]) * np.diff(edges)))
        return 0.5 * self._gauss(edges, _PANEL_GL_ORDER)

    def _gauss(self, edges, order) -> float:
        if edges.size < 2:
            return 0.0
        x, w = _gl(order)
        half = 0.5 * np.diff(edges)
        mid = 0.5 * (edges[1:] + edges[:-1])
        nodes = mid[:, None] + half[:, None] * x
        vals = np.asarray(self.func(nodes.ravel()), dtype=float).reshape(nodes.shape)
        return float(np.sum(vals * w * half[:, None]))

    def _hermite(self, ia: int, ib: int) -> float:
        f = self.values[ia:ib + 1]
        df = self.slopes[ia:ib + 1]
        x = self.grid[ia:ib + 1]
        h = np.diff(x)
        panel = 0.5 * h * (f[1:] + f[:-1]) + h * h / 12.0 * (df[:-1] - df[1:])
        wide = h > _WIDE_PANEL
        if self.func is not None and wide.any():
            # geometric tail panels: a higher-order rule costs only a few evaluations
            panel = np.where(wide, 0.0, panel)
            for k in np.flatnonzero(wide):
                panel[k] = self._gauss(x[k:k + 2], _WIDE_GL_ORDER)
        return float(np.sum(panel))


def gaussian_curve(sigma2: float = 1.0) -> PiecewiseCurve:
    """MMSE of a Gaussian input of variance ``sigma2``."""
    return PiecewiseCurve(((0.0, np.inf, float(sigma2)),))


def zero_curve() -> PiecewiseCurve:
    return PiecewiseCurve(((0.0, np.inf, 0.0),))


def mmse_curve(inp: DiscreteInput, grid) -> SampledCurve:
    """Sampled MMSE curve of a discrete input, with slopes, evaluable between the nodes."""
    grid = np.asarray(grid, dtype=float)
    values, slopes = mmse_with_slope(inp, grid)
    return SampledCurve(grid, values, lambda g: mmse_discrete(inp, g), slopes)
