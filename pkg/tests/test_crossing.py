import numpy as np
import pytest

from immse.codesim import build_binned_wiretap, codebook_from_points, exact_mmse_curve
from immse.core import bpsk, mmse_discrete, mmse_gaussian, random_discrete_input
from immse.crossing import crossing_grid, find_crossing, q_function
from immse.curves import PiecewiseCurve, gaussian_curve, zero_curve
from immse.errors import DomainError, PropertyViolation

# Root of 0.5/(1 + 0.5 g) = MMSE_BPSK(g): mpmath findroot on the tanh form,
# after a sign scan at step 0.05 over (0, 20] found exactly one bracket.
BPSK_HALF_CROSSING = 1.7951016306470452759


def test_q_examples():
    grid = crossing_grid(1.0, step=0.01)
    q = q_function(1.0, gaussian_curve(), grid)
    assert np.all(q.samples == 0.0)
    rep = find_crossing(q)
    assert rep.identically_zero and rep.ok and rep.crossing is None

    q = q_function(1.0, zero_curve(), grid)
    assert np.all(q.samples > 0)
    rep = find_crossing(q)
    assert rep.crossing is None and rep.sign_changes == 0
    assert "nonnegative throughout" in rep.note


def test_superposition_profile_sign_pattern():
    z, y, beta = 3.0, 15.0, 0.4
    total = PiecewiseCurve.from_breaks([z, y], [1.0, beta, 0.0])
    grid = np.unique(np.concatenate([crossing_grid(beta, step=0.01, gamma_max=50.0), [z]]))
    q = q_function(beta, lambda g: total(g) if np.ndim(g) else float(total(g)), grid)
    assert np.all(q.samples[grid < z] < 0)
    assert np.all(q.samples[(grid >= z) & (grid < y)] == 0.0)
    rep = find_crossing(q)
    assert rep.crossing == pytest.approx(z, abs=1e-9)


def test_bpsk_crossing_oracle():
    grid = crossing_grid(0.5, step=1e-3)
    q = q_function(0.5, lambda g: mmse_discrete(bpsk(), g), grid)
    rep = find_crossing(q, tol=1e-9)
    assert rep.ok and rep.sign_changes == 1
    assert rep.crossing == pytest.approx(BPSK_HALF_CROSSING, abs=1e-8)
    assert rep.gamma_max >= 1e4 / 0.5
    # q is a smooth function, so it can also be evaluated between grid nodes
    assert q(rep.crossing) == pytest.approx(0.0, abs=1e-9)


def test_multiple_crossings_raise():
    grid = np.linspace(0.0, 10.0, 101)
    wavy = lambda g: mmse_gaussian(1.0, g) + 0.05 * np.sin(g) / (1.0 + g)
    with pytest.raises(PropertyViolation) as info:
        find_crossing(q_function(1.0, wavy, grid))
    assert len(info.value.report.brackets) > 1


def test_validation():
    with pytest.raises(DomainError):
        q_function(1.0, gaussian_curve(), [0.0, 0.0, 1.0])
    with pytest.raises(DomainError):
        q_function(1.5, gaussian_curve(), [0.0, 1.0])
    with pytest.raises(DomainError):
        find_crossing(q_function(1.0, gaussian_curve(), [0.0, 1.0]), tol=0.0)


def test_limit_bound():
    rng = np.random.default_rng(11)
    for _ in range(5):
        inp = random_discrete_input(rng)
        grid = crossing_grid(1.0, step=0.05)
        q = q_function(1.0, lambda g: mmse_discrete(inp, g), grid)
        big = grid >= 1e3
        assert np.all(np.abs(q.samples[big]) <= 2.0 / grid[big])


def test_conditional_codebook_variant():
    # the q-function built on a conditional MMSE also has at most one crossing
    rng = np.random.default_rng(5)
    for seed in range(3):
        cb = build_binned_wiretap(1, 8, 2, seed)
        grid = crossing_grid(0.5, step=0.02, gamma_max=2e3)
        cond = exact_mmse_curve(cb, grid, conditioning="bin")
        rep = find_crossing(q_function(0.5, cond, grid))
        assert rep.sign_changes <= 1 and rep.down_crossings == 0
    pts = codebook_from_points(rng.uniform(-1, 1, 6), {"bin": np.array([0, 0, 0, 1, 1, 1])})
    grid = crossing_grid(0.3, step=0.02, gamma_max=2e3)
    rep = find_crossing(q_function(0.3, exact_mmse_curve(pts, grid, "bin"), grid))
    assert rep.sign_changes <= 1
