import math

import numpy as np
import pytest

from immse.core import bpsk, mi_discrete, mmse_discrete
from immse.curves import PiecewiseCurve, SampledCurve, Segment, gaussian_curve, mmse_curve, zero_curve
from immse.errors import DomainError


def test_piecewise_construction_and_eval():
    c = PiecewiseCurve.from_breaks([2.0, 5.0], [1.0, 0.5, 0.0])
    assert c.breakpoints == (2.0, 5.0)
    assert c(0.0) == 1.0
    assert c(2.0) == pytest.approx(0.25)  # right-limit value at a breakpoint
    assert c(5.0) == 0.0
    assert c(np.array([1.0, 3.0])).tolist() == pytest.approx([0.5, 0.5 / 2.5])


def test_from_breaks_merges_and_drops():
    c = PiecewiseCurve.from_breaks([1.0, 1.0, 3.0], [1.0, 0.7, 0.5, 0.0])
    assert c.breakpoints == (1.0, 3.0)
    assert [s.coeff for s in c.segments] == [1.0, 0.5, 0.0]
    # dropping the empty piece leaves two equal neighbours, which merge
    assert PiecewiseCurve.from_breaks([1.0, 1.0, 3.0], [1.0, 0.7, 1.0, 0.0]).breakpoints == (3.0,)
    same = PiecewiseCurve.from_breaks([1.0, 3.0], [0.5, 0.5, 0.0])
    assert same.breakpoints == (3.0,)


def test_piecewise_validation():
    with pytest.raises(DomainError):
        PiecewiseCurve.from_breaks([1.0], [0.2, 0.8])  # upward jump
    with pytest.raises(DomainError):
        PiecewiseCurve((Segment(0.0, 1.0, 1.0),))  # does not reach infinity
    with pytest.raises(DomainError):
        PiecewiseCurve.from_breaks([1.0], [1.5, 0.0])
    with pytest.raises(DomainError):
        PiecewiseCurve.from_breaks([3.0, 1.0], [1.0, 0.5, 0.0])


def test_piecewise_integrals():
    assert gaussian_curve().integrate_half(0.0, 3.0) == pytest.approx(math.log(2.0), abs=1e-15)
    assert zero_curve().integrate_half(0.0, 10.0) == 0.0
    c = PiecewiseCurve.from_breaks([2.0, 5.0], [1.0, 0.5, 0.0])
    whole = c.integrate_half(0.0, 9.0)
    assert whole == pytest.approx(c.integrate_half(0.0, 3.3) + c.integrate_half(3.3, 9.0), abs=1e-15)
    assert whole == pytest.approx(0.5 * math.log(3.0) + 0.5 * math.log(3.5 / 2.0), abs=1e-15)
    with pytest.raises(DomainError):
        c.integrate_half(2.0, 1.0)
    with pytest.raises(DomainError):
        gaussian_curve().integrate_half(0.0, math.inf)
    assert PiecewiseCurve.from_breaks([4.0], [1.0, 0.0]).integrate_half(0.0, math.inf) == pytest.approx(
        0.5 * math.log(5.0))


def test_dominance_and_json_roundtrip():
    big = PiecewiseCurve.from_breaks([2.0, 5.0], [1.0, 0.5, 0.0])
    small = PiecewiseCurve.from_breaks([5.0], [0.5, 0.0])
    assert small.dominated_by(big)
    assert not big.dominated_by(small)
    data = big.to_json()
    assert data[-1]["hi"] is None
    assert PiecewiseCurve.from_json(data) == big


def test_sampled_curve_rules():
    grid = np.linspace(0.0, 4.0, 401)
    curve = mmse_curve(bpsk(), grid)
    assert curve.is_nonincreasing()
    assert curve.integrate_half(0.0, 4.0) == pytest.approx(mi_discrete(bpsk(), 4.0), abs=1e-8)
    assert curve(0.123) == pytest.approx(mmse_discrete(bpsk(), 0.123), abs=1e-14)
    plain = SampledCurve(grid, np.asarray(mmse_discrete(bpsk(), grid)))
    assert plain.integrate_half(0.0, 2.0) == pytest.approx(mi_discrete(bpsk(), 2.0), abs=1e-5)
    with pytest.raises(DomainError):
        plain(0.123)
    with pytest.raises(DomainError):
        plain.integrate_half(0.0, 5.0)


def test_sampled_validation():
    with pytest.raises(DomainError):
        SampledCurve(np.array([0.0, 0.0, 1.0]), np.array([1.0, 1.0, 0.5]))
    with pytest.raises(DomainError):
        SampledCurve(np.array([0.0, 1.0]), np.array([1.0, -0.5]))
