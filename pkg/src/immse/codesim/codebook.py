"""Explicit finite codebooks with message labels."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..errors import CapacityError, DomainError
from .rng import stream

__all__ = ["Codebook", "build_superposition", "build_binned_wiretap", "codebook_from_points", "size_for_rate"]

MAX_CODEWORDS = 1 << 20
MAX_BLOCKLENGTH = 64
POWER_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class Codebook:
    """M x n codeword matrix with integer labels per codeword.

    Each label (e.g. ``wz``, ``wy``, ``bin``) partitions the codewords into
    disjoint groups; messages are uniform, so every codeword is equally likely.
    """

    codewords: np.ndarray
    labels: dict = field(default_factory=dict)
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        x = np.asarray(self.codewords, dtype=float)
        if x.ndim != 2 or x.shape[0] == 0 or x.shape[1] == 0:
            raise DomainError("codewords must be a non-empty M x n matrix")
        m, n = x.shape
        if m > MAX_CODEWORDS or n > MAX_BLOCKLENGTH:
            raise CapacityError(f"codebook {m} x {n} exceeds the limits {MAX_CODEWORDS} x {MAX_BLOCKLENGTH}")
        if not np.all(np.isfinite(x)):
            raise DomainError("codewords must be finite")
        power = np.einsum("ij,ij->i", x, x) / n
        if np.any(power > 1.0 + POWER_TOL):
            raise DomainError(f"row power {power.max():.6g} violates the unit power constraint")
        labels = {}
        for name, vals in dict(self.labels).items():
            v = np.asarray(vals)
            if v.shape != (m,) or not np.issubdtype(v.dtype, np.integer) or np.any(v < 0):
                raise DomainError(f"label {name!r} must be M nonnegative integers")
            v = v.astype(np.int64)
            v.setflags(write=False)
            labels[name] = v
        x.setflags(write=False)
        object.__setattr__(self, "codewords", x)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "meta", dict(self.meta))

    @property
    def size(self) -> int:
        return int(self.codewords.shape[0])

    @property
    def n(self) -> int:
        return int(self.codewords.shape[1])

    def row_power(self) -> np.ndarray:
        return np.einsum("ij,ij->i", self.codewords, self.codewords) / self.n

    def prior_variance(self) -> float:
        """Per-dimension variance of a uniformly chosen codeword."""
        x = self.codewords
        return float(np.mean(np.sum((x - x.mean(axis=0)) ** 2, axis=1)) / self.n)

    def label(self, name: str) -> np.ndarray:
        try:
            return self.labels[name]
        except KeyError:
            raise DomainError(f"codebook has no label {name!r}; available: {sorted(self.labels)}") from None

    def groups(self, name: str | None) -> list:
        """Index arrays of the codewords sharing each value of ``name``."""
        if name is None:
            return [np.arange(self.size)]
        lab = self.label(name)
        order = np.argsort(lab, kind="stable")
        cuts = np.flatnonzero(np.diff(lab[order])) + 1
        return np.split(order, cuts)

    def entropy(self, name: str) -> float:
        """H of a label under uniform codeword selection, nats."""
        _, counts = np.unique(self.label(name), return_counts=True)
        p = counts / counts.sum()
        return float(-np.sum(p * np.log(p)))

    def save(self, path) -> tuple:
        """Write ``<path>.json`` (header) and ``<path>.csv`` (codeword matrix)."""
        base = Path(path)
        header = {"n": self.n, "M": self.size,
                  "labels": {k: v.tolist() for k, v in sorted(self.labels.items())},
                  "meta": self.meta}
        jpath, cpath = base.with_suffix(".json"), base.with_suffix(".csv")
        jpath.write_text(json.dumps(header, indent=2, sort_keys=True) + "\n")
        cpath.write_text(self.matrix_csv())
        return jpath, cpath

    def matrix_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        for row in self.codewords:
            writer.writerow([repr(float(v)) for v in row])
        return buf.getvalue()

    @classmethod
    def load(cls, path) -> "Codebook":
        base = Path(path)
        header = json.loads(base.with_suffix(".json").read_text())
        rows = [[float(v) for v in r] for r in csv.reader(io.StringIO(base.with_suffix(".csv").read_text()))]
        x = np.array(rows, dtype=float)
        if x.shape != (header["M"], header["n"]):
            raise DomainError("codeword matrix does not match its header")
        labels = {k: np.asarray(v, dtype=np.int64) for k, v in header["labels"].items()}
        return cls(x, labels, header.get("meta", {}))


def _enforce_power(x: np.ndarray) -> tuple:
    """Scale rows with power above 1 back onto the unit sphere."""
    power = np.einsum("ij,ij->i", x, x) / x.shape[1]
    over = power > 1.0
    x = x.copy()
    x[over] /= np.sqrt(power[over])[:, None]
    # guard against the rescaled row rounding to just above 1
    x[over] *= np.minimum(1.0, 1.0 / np.sqrt(np.einsum("ij,ij->i", x[over], x[over]) / x.shape[1]))[:, None]
    return x, int(over.sum())


def _check_sizes(n: int, total: int):
    if n < 1 or total < 1:
        raise DomainError("blocklength and codebook size must be positive")
    if n > MAX_BLOCKLENGTH or total > MAX_CODEWORDS:
        raise CapacityError(f"requested {total} codewords of length {n}; limits are "
                            f"{MAX_CODEWORDS} codewords and n <= {MAX_BLOCKLENGTH}")


def size_for_rate(n: int, rate_nats: float) -> int:
    """Number of messages for a rate in nats per dimension: round(e^{n R}), at least 1."""
    if rate_nats < 0:
        raise DomainError("rate must be nonnegative")
    exponent = n * rate_nats
    if exponent > math.log(MAX_CODEWORDS) + 1:
        raise CapacityError(f"rate {rate_nats} at n={n} needs more than {MAX_CODEWORDS} codewords")
    return max(1, int(round(math.exp(exponent))))


def build_superposition(n: int, beta: float, m_v: int, m_u: int, seed: int) -> Codebook:
    """Two-layer Gaussian superposition code x = v_i + u_j.

    The cloud centres v carry W_z (power 1 - beta), the satellites u carry
    W_y (power beta).  Codeword ``i*m_u + j`` has labels ``wz = i``, ``wy = j``.
    Rows whose power exceeds 1 are rescaled onto the unit sphere.
    """
    if not 0.0 <= beta <= 1.0:
        raise DomainError(f"beta must lie in [0, 1], got {beta!r}")
    _check_sizes(n, m_v * m_u)
    rng = stream(seed, f"superposition:{n}:{beta!r}:{m_v}:{m_u}")
    v = rng.standard_normal((m_v, n)) * math.sqrt(1.0 - beta)
    u = rng.standard_normal((m_u, n)) * math.sqrt(beta)
    x = (v[:, None, :] + u[None, :, :]).reshape(m_v * m_u, n)
    x, rescaled = _enforce_power(x)
    wz, wy = np.divmod(np.arange(m_v * m_u), m_u)
    meta = {"kind": "superposition", "beta": beta, "m_v": m_v, "m_u": m_u, "seed": seed, "rescaled_rows": rescaled}
    return Codebook(x, {"wz": wz, "wy": wy}, meta)


def build_binned_wiretap(n: int, m: int, num_bins: int, seed: int) -> Codebook:
    """i.i.d. Gaussian codebook split into ``num_bins`` near-equal bins.

    Labels: ``bin`` (the secret message W_s) and ``wp`` (index inside the bin).
    """
    _check_sizes(n, m)
    if not 1 <= num_bins <= m:
        raise DomainError("need 1 <= num_bins <= M")
    rng = stream(seed, f"binned:{n}:{m}:{num_bins}")
    x, rescaled = _enforce_power(rng.standard_normal((m, n)))
    k = np.arange(m)
    bins = k * num_bins // m
    starts = np.searchsorted(bins, np.arange(num_bins))
    wp = k - starts[bins]
    meta = {"kind": "binned", "num_bins": num_bins, "seed": seed, "rescaled_rows": rescaled}
    return Codebook(x, {"bin": bins, "wp": wp}, meta)


def codebook_from_points(points, labels=None) -> Codebook:
    """Codebook from an explicit list of (scalar or vector) codewords."""
    x = np.asarray(points, dtype=float)
    if x.ndim == 1:
        x = x[:, None]
    return Codebook(x, labels or {}, {"kind": "explicit"})
