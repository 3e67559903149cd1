import math

import mpmath as mp
import numpy as np
import pytest

from immse.calculus import rate_between_curves
from immse.crossing import find_crossing, q_function
from immse.curves import PiecewiseCurve, zero_curve
from immse.errors import DomainError
from immse.profiles import (
    ChannelScenario,
    ProfileBundle,
    WiretapRate,
    bc_good_profile,
    bc_rates,
    bcc_complete_secrecy_profile,
    bcc_optimal_secure_profile,
    bcc_secrecy_rates,
    capacity,
    d_max,
    wiretap_dmax_profile,
    wiretap_rate_from_profiles,
    wiretap_rate_profile,
    wiretap_secrecy_bundle,
)


def test_scenario_validation():
    with pytest.raises(DomainError):
        ChannelScenario(5.0, 3.0)
    with pytest.raises(DomainError):
        ChannelScenario(3.0, 15.0, snr_u=3.0, alpha=0.5)
    with pytest.raises(DomainError):
        ChannelScenario(3.0, 15.0, snr_u=16.0, alpha=0.5)
    with pytest.raises(DomainError):
        ChannelScenario(3.0, 15.0, snr_u=1.0)
    with pytest.raises(DomainError):
        ChannelScenario(3.0, 15.0, beta=1.2)
    assert ChannelScenario(3.0, 15.0, 1.0, 0.4).placement == "low"
    assert ChannelScenario(3.0, 15.0, 7.0, 0.4).placement == "interior"


def test_d_max_examples():
    mp.mp.dps = 40
    assert d_max(15.0, 3.0) == pytest.approx(float(mp.log(2)), abs=1e-15)
    assert d_max(3.0, 0.0) == pytest.approx(capacity(3.0), abs=1e-15)
    assert d_max(3.0 + 1e-12, 3.0) == pytest.approx(0.0, abs=1e-12)
    with pytest.raises(DomainError):
        d_max(3.0, 3.0)


def test_dmax_profile():
    c = wiretap_dmax_profile(15.0)
    assert c(0.0) == 1.0 and c(15.0) == 0.0
    assert c.integrate_half(0.0, 15.0) == pytest.approx(0.5 * math.log(16.0), abs=1e-15)
    assert len(c.segments) == 2


def test_bc_good_profile_examples():
    z, y = 3.0, 15.0
    one = bc_good_profile(ChannelScenario(z, y, beta=1.0))
    assert one.given_wz == one.total
    zero = bc_good_profile(ChannelScenario(z, y, beta=0.0))
    assert zero.total(z) == 0.0 and zero.given_wz.integrate_half(0.0, 100.0) == 0.0
    beta = 0.35
    sc = ChannelScenario(z, y, beta=beta)
    b = bc_good_profile(sc)
    ry = b.given_wz.integrate_half(0.0, y)
    rz = rate_between_curves(b.total, b.given_wz, 0.0, z).value_nats
    assert (ry, rz) == pytest.approx(bc_rates(sc), abs=1e-14)
    assert ry + rz == pytest.approx(0.5 * math.log1p(beta * y) + 0.5 * math.log((1 + z) / (1 + beta * z)))


def test_bcc_profiles():
    z, y, beta = 3.0, 15.0, 0.6
    sc = ChannelScenario(z, y, beta=beta)
    b = bcc_complete_secrecy_profile(sc)
    r = wiretap_rate_from_profiles(b, z, y)
    assert r.rate == pytest.approx(bcc_secrecy_rates(sc)[0], abs=1e-14)
    assert r.equivocation == pytest.approx(r.rate, abs=1e-14)
    # W_y is completely secret: no area below snr_z
    assert rate_between_curves(b.total, b.given_wy, 0.0, z).value_nats == 0.0
    assert bcc_secrecy_rates(sc.with_beta(1.0))[0] == pytest.approx(d_max(y, z), abs=1e-15)

    opt = bcc_optimal_secure_profile(sc)
    con = opt.given_wy_constraint
    assert con.value == pytest.approx(bc_rates(sc)[1], abs=1e-15)
    assert opt.given_wz.integrate_half(0.0, y) == pytest.approx(bc_rates(sc)[0], abs=1e-15)
    assert bcc_optimal_secure_profile(sc.with_beta(1.0)).given_wy_constraint.value == 0.0
    assert bcc_optimal_secure_profile(sc.with_beta(0.0)).given_wy_constraint.value == pytest.approx(
        0.5 * math.log1p(z))
    # a curve meeting the functional: the unit Gaussian segment up to a knee
    knee = (1.0 - beta) * z / (1.0 + beta * z)
    assert con.admits(PiecewiseCurve.from_breaks([knee], [1.0, 0.0]))
    assert not con.admits(PiecewiseCurve.from_breaks([z], [beta, 0.0]))
    assert not con.admits(zero_curve())


def test_wiretap_rate_examples():
    z, y = 2.0, 9.0
    r = wiretap_rate_from_profiles(wiretap_secrecy_bundle(z, y), z, y)
    assert r.rate == pytest.approx(d_max(y, z)) and r.equivocation == pytest.approx(d_max(y, z))
    one_to_one = ProfileBundle(wiretap_dmax_profile(y), given_wy=zero_curve())
    assert wiretap_rate_from_profiles(one_to_one, z, y).rate == pytest.approx(capacity(y), abs=1e-15)
    same = ProfileBundle(wiretap_dmax_profile(y), given_wy=wiretap_dmax_profile(y))
    assert tuple(wiretap_rate_from_profiles(same, z, y)) == (0.0, 0.0, 1.0)
    assert WiretapRate(0.4, 0.2).fraction == 0.5


def test_wiretap_rate_profile():
    y, rate = 9.0, 0.6
    b = wiretap_rate_profile(y, rate)
    assert rate_between_curves(b.total, b.given_wy, 0.0, y).value_nats == pytest.approx(rate, abs=1e-14)
    with pytest.raises(DomainError):
        wiretap_rate_profile(y, 2.0)


def test_dominance_enforced():
    with pytest.raises(DomainError):
        ProfileBundle(zero_curve(), given_wy=wiretap_dmax_profile(3.0))


def test_profile_single_crossing_at_snr_z():
    z, y, beta = 2.0, 12.0, 0.45
    total = bc_good_profile(ChannelScenario(z, y, beta=beta)).total
    grid = np.unique(np.concatenate([np.linspace(0.0, 40.0, 4001), [z]]))
    rep = find_crossing(q_function(beta, total, grid), tol=1e-12)
    assert rep.crossing == pytest.approx(z, abs=1e-9)


def test_profile_integrals_and_nesting():
    z, y = 1.5, 10.0
    b = bc_good_profile(ChannelScenario(z, y, beta=0.3))
    far = b.total.integrate_half(0.0, 1e6)
    assert far == pytest.approx(0.5 * math.log1p(z) + 0.5 * math.log((1 + 0.3 * y) / (1 + 0.3 * z)), abs=1e-6)
    lo = bc_good_profile(ChannelScenario(z, y, beta=0.2)).total
    hi = bc_good_profile(ChannelScenario(z, y, beta=0.7)).total
    g = np.linspace(z, y, 50, endpoint=False)
    assert np.all(lo(g) <= hi(g))
