import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from immse.core import (
    MAX_ATOMS,
    DiscreteInput,
    GaussianInput,
    bpsk,
    check_snr,
    mi_discrete,
    mmse_discrete,
    mmse_gaussian,
    mmse_slope_discrete,
    mmse_with_slope,
    pam,
    random_discrete_input,
)
from immse.errors import DomainError

# Frozen oracles.  mpmath values: 30-digit adaptive quadrature of the BPSK
# tanh / log-cosh forms and of the output entropy of the 4-atom law.
BPSK_MMSE = {0.5: 0.64988659532486918568, 1.0: 0.44959950920667282971,
             4.0: 0.068597408790738814024, 10.0: 0.0024113147354122573302}
BPSK_MI = {0.5: 0.20134547158480514026, 1.0: 0.336830820346831612,
           4.0: 0.63272019373686698166, 10.0: 0.69089883845157316357}
PAM4_MI_2 = 0.5348067401660453927
PAM4_MMSE = {1.0: 0.48337295159122221674, 2.0: 0.30843459414240156239}
# 10^7-draw Monte Carlo of (1 - tanh(1 + N))^2, default_rng(20240101)
MC_BPSK_MMSE_1 = (0.4498564876419035, 0.00025433521574694533)


def four_atom():
    return DiscreteInput.unit_power([-1.0, -1.0 / 3.0, 1.0 / 3.0, 1.0])


def test_gaussian_examples():
    assert mmse_gaussian(1.0, 0.0) == 1.0
    assert mmse_gaussian(1.0, 1.0) == 0.5
    assert mmse_gaussian(0.25, 4.0) == 0.125
    with pytest.raises(DomainError):
        mmse_gaussian(-1.0, 1.0)
    with pytest.raises(DomainError):
        mmse_gaussian(1.0, -1.0)
    assert GaussianInput(0.5).mmse(2.0) == 0.25
    assert GaussianInput(1.0).mi(3.0) == pytest.approx(math.log(2.0), abs=1e-15)


def test_input_validation():
    with pytest.raises(DomainError):
        DiscreteInput([0.0, 0.0], [0.5, 0.5])
    with pytest.raises(DomainError):
        DiscreteInput([1.0, -1.0], [0.6, 0.5])
    with pytest.raises(DomainError):
        DiscreteInput([2.0, -2.0], [0.5, 0.5])
    with pytest.raises(DomainError):
        DiscreteInput([1.0, np.nan], [0.5, 0.5])
    with pytest.raises(DomainError):
        GaussianInput(1.5)
    with pytest.raises(DomainError):
        check_snr(np.inf)


def test_bpsk_mmse_oracles():
    for g, v in BPSK_MMSE.items():
        assert mmse_discrete(bpsk(), g) == pytest.approx(v, abs=1e-10)
    mean, se = MC_BPSK_MMSE_1
    assert abs(mmse_discrete(bpsk(), 1.0) - mean) <= 3 * se


def test_bpsk_mi_oracles():
    for g, v in BPSK_MI.items():
        assert mi_discrete(bpsk(), g) == pytest.approx(v, abs=1e-9)
    assert mi_discrete(bpsk(), 400.0) == pytest.approx(math.log(2.0), abs=1e-6)


def test_four_atom_oracles():
    inp = four_atom()
    assert inp.power == pytest.approx(1.0, abs=1e-15)
    assert mi_discrete(inp, 2.0) == pytest.approx(PAM4_MI_2, abs=1e-9)
    for g, v in PAM4_MMSE.items():
        assert mmse_discrete(inp, g) == pytest.approx(v, abs=1e-10)
    # same law as PAM4
    assert mmse_discrete(pam(4), 1.0) == pytest.approx(PAM4_MMSE[1.0], abs=1e-10)


def test_trivial_cases():
    point = DiscreteInput([0.0], [1.0])
    assert mmse_discrete(point, 5.0) == 0.0
    assert mi_discrete(point, 5.0) == 0.0
    assert mmse_discrete(bpsk(), 0.0) == 1.0
    assert mi_discrete(four_atom(), 0.0) == 0.0
    assert point.is_degenerate and pam(1).is_degenerate


def test_vectorised_matches_scalar():
    grid = np.array([0.0, 0.3, 2.0, 17.0])
    vec = mmse_discrete(pam(4), grid)
    assert vec.shape == grid.shape
    for g, v in zip(grid, vec):
        assert mmse_discrete(pam(4), float(g)) == pytest.approx(v, abs=1e-13)


def test_slope_matches_finite_difference():
    inp = four_atom()
    h = 1e-4
    for g in (0.5, 3.0):
        fd = (mmse_discrete(inp, g + h) - mmse_discrete(inp, g - h)) / (2 * h)
        assert mmse_slope_discrete(inp, g) == pytest.approx(fd, abs=1e-7)
    m0, s0 = mmse_with_slope(bpsk(), 0.0)
    assert (m0, s0) == (1.0, -1.0)


def test_atom_cap():
    atoms = np.linspace(-1, 1, MAX_ATOMS + 1)
    inp = DiscreteInput(atoms, np.full(atoms.size, 1.0 / atoms.size))
    with pytest.raises(DomainError):
        mmse_discrete(inp, 1.0)


def test_unbalanced_probabilities():
    inp = DiscreteInput.unit_power([-1.0, 0.0, 3.0], [0.499999, 0.5, 1e-6])
    v = mmse_discrete(inp, 5.0)
    assert 0.0 <= v <= inp.variance


@given(st.integers(0, 10_000), st.floats(0.0, 30.0), st.floats(0.0, 30.0))
def test_monotone_and_linear_bound(seed, g1, g2):
    inp = random_discrete_input(np.random.default_rng(seed))
    lo, hi = sorted((g1, g2))
    m_lo, m_hi = mmse_discrete(inp, lo), mmse_discrete(inp, hi)
    assert m_hi <= m_lo + 1e-9
    p = inp.power
    assert m_hi <= p / (1.0 + p * hi) + 1e-9


@given(st.integers(0, 10_000))
def test_zero_snr_variance(seed):
    inp = random_discrete_input(np.random.default_rng(seed))
    assert mmse_discrete(inp, 0.0) == pytest.approx(inp.variance, abs=1e-12)
    assert 0.0 <= mi_discrete(inp, 50.0) <= inp.entropy() + 1e-9
