"""Monte Carlo MMSE and mutual information for explicit codebooks.

The estimator is the exact conditional mean over the (possibly conditioned)
codeword set, so randomness enters only through the transmitted codeword
and the noise.  For a transmitted x_m and noise n the posterior logits are

    l_j = -sqrt(g) <n, x_m - x_j> - g ||x_m - x_j||^2 / 2      (l_m = 0)

which are evaluated through inner products so no M x M x n tensor is formed.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.special import logsumexp

from ..core import DiscreteInput, check_snr, mmse_discrete
from ..curves import SampledCurve
from ..errors import DomainError, NumericError
from .codebook import Codebook
from .rng import stream

__all__ = [
    "McEstimate",
    "mc_mmse",
    "mmse_samples",
    "summarize",
    "mc_mutual_info",
    "exact_mmse_scalar",
    "exact_mmse_curve",
]

MIN_SAMPLES = 1000
MAX_SAMPLES = 10_000_000
_BLOCK_ELEMENTS = 1 << 21


@dataclass(frozen=True)
class McEstimate:
    mean: float
    std_err: float
    samples: int
    seed: int

    def __post_init__(self):
        if self.std_err < 0 or self.samples < 1:
            raise DomainError("invalid Monte Carlo estimate")

    def as_dict(self) -> dict:
        return {"mean": self.mean, "std_err": self.std_err, "samples": self.samples, "seed": self.seed}


def _check_samples(samples: int):
    if not MIN_SAMPLES <= samples <= MAX_SAMPLES:
        raise DomainError(f"samples must lie in [{MIN_SAMPLES}, {MAX_SAMPLES}], got {samples}")


def _split(samples: int, workers: int) -> list:
    if workers < 1:
        raise DomainError("workers must be positive")
    base, extra = divmod(samples, workers)
    return [base + (k < extra) for k in range(workers)]


def _logits(x_set, sq_set, x_sent, noise, gamma):
    """Posterior logits over ``x_set`` relative to the sent codeword, shape (B, K)."""
    s = np.sqrt(gamma)
    a = noise @ x_set.T                      # <n, x_j>
    p = x_sent @ x_set.T                     # <x_m, x_j>
    a_m = np.einsum("bi,bi->b", noise, x_sent)[:, None]
    sq_m = np.einsum("bi,bi->b", x_sent, x_sent)[:, None]
    return s * (a - a_m) - 0.5 * gamma * (sq_m - 2.0 * p + sq_set[None, :])


class _Groups:
    """Codeword groups of one label, group id and in-group position of every codeword."""

    def __init__(self, cb: Codebook, name: str | None):
        self.members = cb.groups(name)
        self.group_of = np.empty(cb.size, dtype=np.int64)
        self.position = np.empty(cb.size, dtype=np.int64)
        for g, idx in enumerate(self.members):
            self.group_of[idx] = g
            self.position[idx] = np.arange(idx.size)

    def logits(self, x, sq, sent, noise, gamma):
        """Yield (rows, member indices, logits) for each group hit by ``sent``."""
        gid = self.group_of[sent]
        for g in np.unique(gid):
            rows = np.flatnonzero(gid == g)
            idx = self.members[g]
            lg = _logits(x[idx], sq[idx], x[sent[rows]], noise[rows], gamma)
            # the sent codeword's own logit is 0 by construction; pin it against roundoff
            lg[np.arange(rows.size), self.position[sent[rows]]] = 0.0
            yield rows, idx, lg


def _draw(cb: Codebook, gamma: float, samples: int, seed: int, workers: int, purpose: str, per_block):
    """Per-draw values of ``per_block`` over (codeword, noise) pairs, in worker order."""
    m, n = cb.size, cb.n

    def work(k: int, count: int) -> np.ndarray:
        rng = stream(seed, purpose, k)
        out = np.empty(count)
        done = 0
        while done < count:
            b = min(count - done, max(1, _BLOCK_ELEMENTS // (m * max(n, 4))))
            sent = rng.integers(0, m, size=b)
            noise = rng.standard_normal((b, n))
            out[done:done + b] = per_block(sent, noise)
            done += b
        return out

    counts = _split(samples, workers)
    if workers == 1:
        parts = [work(0, counts[0])]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(work, range(workers), counts))
    vals = np.concatenate(parts)
    if not np.all(np.isfinite(vals)):
        raise NumericError(f"non-finite Monte Carlo values at gamma={gamma!r}", gamma=gamma)
    return vals


def summarize(vals: np.ndarray, seed: int) -> McEstimate:
    """Sample mean and its standard error."""
    return McEstimate(float(vals.mean()), float(vals.std(ddof=1) / np.sqrt(vals.size)), int(vals.size), int(seed))


def mmse_samples(cb: Codebook, gamma: float, conditioning: str | None = None, samples: int = 100_000,
                 seed: int = 0, workers: int = 1) -> np.ndarray:
    """Per-draw squared errors behind :func:`mc_mmse`.

    The stream depends on (seed, gamma, worker) only, so estimates with
    different conditioning use common draws and can be differenced pairwise.
    """
    gamma = float(check_snr(gamma))
    _check_samples(samples)
    x = cb.codewords
    sq = np.einsum("ij,ij->i", x, x)
    groups = _Groups(cb, conditioning)

    def per_block(sent, noise):
        out = np.empty(sent.size)
        for rows, idx, logits in groups.logits(x, sq, sent, noise, gamma):
            logits -= logits.max(axis=1, keepdims=True)
            w = np.exp(logits)
            w /= w.sum(axis=1, keepdims=True)
            err = x[sent[rows]] - w @ x[idx]
            out[rows] = np.einsum("bi,bi->b", err, err) / cb.n
        return out

    return _draw(cb, gamma, samples, seed, workers, f"mmse:{gamma!r}", per_block)


def mc_mmse(cb: Codebook, gamma: float, conditioning: str | None = None, samples: int = 100_000,
            seed: int = 0, workers: int = 1) -> McEstimate:
    """Per-dimension MMSE of the codeword given sqrt(gamma) x + N (and a label).

    Parameters
    ----------
    conditioning : str, optional
        Label name (``'wz'``, ``'wy'``, ``'bin'``...) known to the estimator.
    workers : int
        Number of independent substreams; results depend on it but are
        reproducible for a fixed value.
    """
    return summarize(mmse_samples(cb, gamma, conditioning, samples, seed, workers), seed)


def mc_mutual_info(cb: Codebook, gamma: float, variable: str = "x", given: str | None = None,
                   samples: int = 100_000, seed: int = 0, workers: int = 1) -> McEstimate:
    """(1/n) I(variable; sqrt(gamma) x + N | given) in nats.

    ``variable`` is ``'x'`` (the codeword itself) or a label name; each draw
    contributes ln p(y|W, given) - ln p(y|given) with exact finite sums.
    """
    gamma = float(check_snr(gamma))
    _check_samples(samples)
    x = cb.codewords
    sq = np.einsum("ij,ij->i", x, x)
    groups = _Groups(cb, given)
    var_label = None if variable == "x" else cb.label(variable)

    def per_block(sent, noise):
        out = np.empty(sent.size)
        for rows, idx, logits in groups.logits(x, sq, sent, noise, gamma):
            lse_all = logsumexp(logits, axis=1) - np.log(idx.size)
            if var_label is None:
                # the sent codeword alone: logit 0, one member
                lse_sub = 0.0
            else:
                same = var_label[idx][None, :] == var_label[sent[rows]][:, None]
                lse_sub = logsumexp(np.where(same, logits, -np.inf), axis=1) - np.log(same.sum(axis=1))
            out[rows] = (lse_sub - lse_all) / cb.n
        return out

    vals = _draw(cb, gamma, samples, seed, workers, f"mi:{gamma!r}", per_block)
    return summarize(vals, seed)


def _group_inputs(cb: Codebook, conditioning: str | None):
    if cb.n != 1:
        raise DomainError("exact quadrature needs a scalar (n = 1) codebook")
    out = []
    for idx in cb.groups(conditioning):
        atoms, counts = np.unique(cb.codewords[idx, 0], return_counts=True)
        out.append((idx.size / cb.size, DiscreteInput(atoms, counts / counts.sum())))
    return out


def exact_mmse_scalar(cb: Codebook, gamma, conditioning: str | None = None):
    """Exact MMSE(x; gamma | label) of a scalar codebook by quadrature."""
    parts = _group_inputs(cb, conditioning)
    total = sum(w * np.asarray(mmse_discrete(inp, gamma)) for w, inp in parts)
    return float(total) if np.ndim(total) == 0 else total


def exact_mmse_curve(cb: Codebook, grid, conditioning: str | None = None) -> SampledCurve:
    """Sampled exact (conditional) MMSE curve of a scalar codebook."""
    parts = _group_inputs(cb, conditioning)

    def func(g):
        return sum(w * np.asarray(mmse_discrete(inp, g)) for w, inp in parts)

    return SampledCurve.from_function(func, grid)
