"""Single-crossing analysis of q(gamma) = sigma2/(1 + sigma2*gamma) - MMSE(gamma|U).

For any input law (conditioned on any U) q changes sign at most once, and
only from negative to nonnegative.  On [0, gamma_0) it is strictly
increasing, after gamma_0 it stays nonnegative, and it vanishes as gamma
grows.  :func:`find_crossing` checks all of this on a sampled grid.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import check_snr
from .errors import DomainError, PropertyViolation

__all__ = ["QCurve", "CrossingReport", "q_function", "crossing_grid", "find_crossing"]

DEFAULT_TOL = 1e-9
_MAX_BISECTIONS = 200


@dataclass(frozen=True, eq=False)
class QCurve:
    sigma2: float
    target: object
    grid: np.ndarray
    samples: np.ndarray

    def __call__(self, gamma):
        """q off the grid; needs a target that can be evaluated anywhere."""
        g = check_snr(gamma)
        return self.sigma2 / (1.0 + self.sigma2 * g) - np.asarray(self.target(g), dtype=float)


@dataclass(frozen=True)
class CrossingReport:
    """Outcome of a single-crossing check.

    ``crossing`` is the first SNR at which q is nonnegative after being
    negative (``None`` if that never happens).  The four boolean fields are
    the single-crossing properties evaluated on the grid.
    """

    crossing: float | None
    up_crossings: int
    down_crossings: int
    starts_nonpositive: bool
    monotone_before: bool
    nonneg_after: bool
    limit_zero: bool
    q_at_max: float
    gamma_max: float
    identically_zero: bool = False
    refined: bool = True
    note: str = ""
    brackets: tuple = field(default=())

    @property
    def sign_changes(self) -> int:
        return self.up_crossings + self.down_crossings

    @property
    def ok(self) -> bool:
        # q(0) <= 0 is only required when a crossing actually occurs
        start = self.starts_nonpositive or self.crossing is None
        return (self.up_crossings <= 1 and self.down_crossings == 0 and start
                and self.monotone_before and self.nonneg_after and self.limit_zero)

    def as_dict(self) -> dict:
        return {
            "crossing": self.crossing,
            "sign_changes": self.sign_changes,
            "up_crossings": self.up_crossings,
            "down_crossings": self.down_crossings,
            "starts_nonpositive": self.starts_nonpositive,
            "monotone_before": self.monotone_before,
            "nonneg_after": self.nonneg_after,
            "limit_zero": self.limit_zero,
            "q_at_max": self.q_at_max,
            "gamma_max": self.gamma_max,
            "identically_zero": self.identically_zero,
            "refined": self.refined,
            "ok": self.ok,
            "note": self.note,
            "brackets": [list(b) for b in self.brackets],
        }


def q_function(sigma2: float, target, grid) -> QCurve:
    """Sample q = sigma2/(1 + sigma2*gamma) - target(gamma) on ``grid``."""
    if not (0.0 <= sigma2 <= 1.0 + 1e-12):
        raise DomainError(f"sigma2 must lie in [0, 1], got {sigma2!r}")
    grid = check_snr(np.asarray(grid, dtype=float))
    if grid.ndim != 1 or grid.size < 2 or np.any(np.diff(grid) <= 0):
        raise DomainError("grid must be strictly increasing with at least two points")
    values = np.asarray(target(grid), dtype=float)
    samples = sigma2 / (1.0 + sigma2 * grid) - values
    grid.setflags(write=False)
    samples.setflags(write=False)
    return QCurve(float(sigma2), target, grid, samples)


def crossing_grid(sigma2: float, step: float = 1e-3, knee: float = 20.0, ratio: float = 1.05,
                  gamma_max: float | None = None, extra=()) -> np.ndarray:
    """Linear grid of spacing ``step`` on [0, knee], geometric beyond.

    The default upper end max(1e4/sigma2, 1e4) is where both MMSE terms
    of q are below 1e-4 for unit-power laws; 1e4 itself is always a node.
    """
    if gamma_max is None:
        gamma_max = 1e4 / sigma2 if sigma2 > 0 else 1e4
        gamma_max = max(gamma_max, 1e4)
    lin = np.linspace(0.0, knee, int(round(knee / step)) + 1)
    n_geo = int(np.ceil(np.log(gamma_max / knee) / np.log(ratio)))
    geo = knee * ratio ** np.arange(1, n_geo + 1)
    pts = np.concatenate([lin, geo[geo < gamma_max], [gamma_max, 1e4], np.asarray(extra, dtype=float)])
    pts = pts[(pts >= 0) & (pts <= gamma_max)]
    return np.unique(pts)


def _refine(q: QCurve, lo: float, hi: float, q_lo: float, q_hi: float, tol: float):
    """Shrink [lo, hi] with q(lo) < -tol <= q(hi) to width <= tol."""
    try:
        for _ in range(_MAX_BISECTIONS):
            if hi - lo <= tol:
                break
            mid = 0.5 * (lo + hi)
            if float(q(mid)) < -tol:
                lo = mid
            else:
                hi = mid
        return hi, (lo, hi), True
    except DomainError:
        # target only known on the grid: linear interpolation inside the cell
        root = lo + (hi - lo) * (-q_lo) / (q_hi - q_lo) if q_hi != q_lo else hi
        return float(root), (lo, hi), False


def find_crossing(q: QCurve, tol: float = DEFAULT_TOL) -> CrossingReport:
    """Locate the sign change of ``q`` and evaluate the single-crossing properties.

    Raises
    ------
    PropertyViolation
        If q goes from negative to nonnegative more than once on the grid.
    """
    if tol <= 0:
        raise DomainError("tol must be positive")
    g, s = q.grid, q.samples
    neg = s < -tol
    up = np.flatnonzero(neg[:-1] & ~neg[1:])
    down = np.flatnonzero(~neg[:-1] & neg[1:])
    brackets = tuple((float(g[k]), float(g[k + 1])) for k in up)
    gmax = float(g[-1])
    q_max = float(s[-1])
    limit_zero = abs(q_max) <= 2.0 / gmax + tol if gmax > 0 else False

    if up.size > 1:
        report = CrossingReport(None, int(up.size), int(down.size), bool(s[0] <= tol), False, False,
                                limit_zero, q_max, gmax, note="multiple negative-to-nonnegative crossings",
                                brackets=brackets)
        raise PropertyViolation(f"q crosses zero upwards {up.size} times; brackets {list(brackets)}", report)

    if np.all(np.abs(s) <= tol):
        return CrossingReport(None, 0, 0, True, True, True, limit_zero, q_max, gmax,
                              identically_zero=True, note="identically zero")

    crossing, refined, notes = None, True, []
    if up.size == 1:
        k = int(up[0])
        crossing, bracket, refined = _refine(q, float(g[k]), float(g[k + 1]), float(s[k]), float(s[k + 1]), tol)
        brackets = (bracket,)
        before = slice(0, k + 1)
        after = slice(k + 1, None)
    elif neg.all():
        notes.append("no crossing, negative throughout")
        before, after = slice(0, g.size), slice(g.size, None)
    else:
        notes.append("no crossing, nonnegative throughout" if not neg.any() else "no upward crossing")
        before, after = slice(0, 0), slice(0, None)

    diffs = np.diff(s[before])
    monotone_before = bool(np.all(diffs > -tol))
    nonneg_after = bool(np.all(s[after] >= -tol))
    if down.size:
        notes.append(f"{down.size} nonnegative-to-negative transition(s)")
    return CrossingReport(
        crossing=crossing,
        up_crossings=int(up.size),
        down_crossings=int(down.size),
        starts_nonpositive=bool(s[0] <= tol),
        monotone_before=monotone_before,
        nonneg_after=nonneg_after,
        limit_zero=bool(limit_zero),
        q_at_max=q_max,
        gamma_max=gmax,
        refined=refined,
        note="; ".join(notes),
        brackets=brackets,
    )
