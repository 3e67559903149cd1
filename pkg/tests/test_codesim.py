import math

import numpy as np
import pytest

from immse.codesim import (
    Codebook,
    build_binned_wiretap,
    build_superposition,
    check_reliable_decoding_equality,
    check_saturation_equivalence,
    codebook_from_points,
    exact_mmse_curve,
    exact_mmse_scalar,
    finite_n_immse,
    mc_mmse,
    mc_mutual_info,
    size_for_rate,
    stream,
)
from immse.core import DiscreteInput, mmse_discrete
from immse.errors import CapacityError, DomainError

N_FAST = 4000


def test_stream_independence():
    a = stream(1, "x").standard_normal(4)
    assert np.array_equal(a, stream(1, "x").standard_normal(4))
    assert not np.array_equal(a, stream(1, "y").standard_normal(4))
    assert not np.array_equal(a, stream(1, "x", worker=1).standard_normal(4))
    assert not np.array_equal(a, stream(2, "x").standard_normal(4))


def test_superposition_structure():
    single = build_superposition(2, 1.0, 1, 6, seed=0)
    assert single.size == 6 and np.all(single.label("wz") == 0)
    cb = build_superposition(4, 0.5, 4, 4, seed=1)
    assert cb.size == 16 and cb.n == 4
    assert np.all(cb.row_power() <= 1 + 1e-9)
    groups = cb.groups("wz")
    assert len(groups) == 4 and sorted(np.concatenate(groups).tolist()) == list(range(16))
    assert all(np.unique(cb.label("wy")[g]).size == 4 for g in groups)
    # x = v_i + u_j: differences within a cloud do not depend on the cloud
    x = cb.codewords
    if cb.meta["rescaled_rows"] == 0:
        assert np.allclose(x[1] - x[0], x[5] - x[4])
    with pytest.raises(DomainError):
        build_superposition(4, 1.5, 2, 2, seed=0)
    with pytest.raises(CapacityError):
        build_superposition(4, 0.5, 2048, 1024, seed=0)
    with pytest.raises(CapacityError):
        build_superposition(65, 0.5, 2, 2, seed=0)


def test_mean_row_power_trend():
    # rows above unit power are rescaled, which biases the mean power below 1;
    # the deficit shrinks with the blocklength
    def deficit(n):
        return np.mean([1.0 - build_superposition(n, 0.5, 8, 8, seed=s).row_power().mean() for s in range(20)])
    d = [deficit(n) for n in (2, 8, 32)]
    assert d[0] > d[1] > d[2] > 0
    m = 64
    cb = build_superposition(32, 0.5, 8, 8, seed=0)
    assert abs(cb.row_power().mean() - 1.0) <= 3 / math.sqrt(32 * m) + d[2] * 3


def test_binned_structure():
    one = build_binned_wiretap(3, 8, 8, seed=0)
    assert np.array_equal(one.label("bin"), np.arange(8)) and one.entropy("bin") == pytest.approx(math.log(8))
    assert build_binned_wiretap(3, 8, 1, seed=0).entropy("bin") == 0.0
    cb = build_binned_wiretap(8, 64, 8, seed=0)
    _, counts = np.unique(cb.label("bin"), return_counts=True)
    assert counts.tolist() == [8] * 8
    uneven = build_binned_wiretap(2, 10, 3, seed=0)
    _, counts = np.unique(uneven.label("bin"), return_counts=True)
    assert counts.max() - counts.min() <= 1
    with pytest.raises(DomainError):
        build_binned_wiretap(2, 4, 5, seed=0)


def test_codebook_validation_and_io(tmp_path):
    with pytest.raises(DomainError):
        Codebook(np.array([[2.0]]))
    with pytest.raises(DomainError):
        Codebook(np.zeros((2, 1)), {"bin": np.array([0.5, 1.0])})
    with pytest.raises(DomainError):
        Codebook(np.zeros((2, 1))).label("wz")
    cb = build_superposition(3, 0.4, 3, 2, seed=7)
    jpath, cpath = cb.save(tmp_path / "code")
    back = Codebook.load(tmp_path / "code")
    assert np.array_equal(back.codewords, cb.codewords)
    assert np.array_equal(back.label("wy"), cb.label("wy"))
    assert back.meta == cb.meta
    assert cpath.read_text() == cb.matrix_csv()
    assert size_for_rate(4, 0.0) == 1 and size_for_rate(4, math.log(2) / 4) == 2


def test_mc_mmse_examples():
    cb = build_superposition(4, 0.5, 4, 4, seed=1)
    est = mc_mmse(cb, 0.0, samples=N_FAST, seed=0)
    assert abs(est.mean - cb.prior_variance()) <= 3 * est.std_err
    single = build_binned_wiretap(2, 8, 8, seed=0)
    assert mc_mmse(single, 3.0, "bin", samples=N_FAST).mean == 0.0
    pts = codebook_from_points([-0.9, -0.2, 0.4, 1.0])
    law = DiscreteInput([-0.9, -0.2, 0.4, 1.0], [0.25] * 4)
    est = mc_mmse(pts, 2.0, samples=50_000, seed=4)
    assert abs(est.mean - mmse_discrete(law, 2.0)) <= 3 * est.std_err
    with pytest.raises(DomainError):
        mc_mmse(pts, 1.0, samples=10)
    with pytest.raises(DomainError):
        mc_mmse(pts, -1.0)


def test_mc_determinism_and_workers():
    cb = build_superposition(4, 0.5, 4, 4, seed=1)
    a = mc_mmse(cb, 2.0, "wz", samples=N_FAST, seed=9)
    assert a == mc_mmse(cb, 2.0, "wz", samples=N_FAST, seed=9)
    w2 = mc_mmse(cb, 2.0, "wz", samples=N_FAST, seed=9, workers=2)
    assert w2 == mc_mmse(cb, 2.0, "wz", samples=N_FAST, seed=9, workers=2)
    assert w2.samples == N_FAST and w2.mean != a.mean


def test_mc_mutual_info_examples():
    cb = build_superposition(4, 0.5, 4, 4, seed=1)
    for var in ("x", "wz", "wy"):
        assert mc_mutual_info(cb, 0.0, var, samples=N_FAST).mean == 0.0
    anti = codebook_from_points([-1.0, 1.0])
    est = mc_mutual_info(anti, 100.0, samples=N_FAST)
    assert abs(est.mean - math.log(2)) <= 3 * est.std_err + 1e-12
    full = mc_mutual_info(cb, 3.0, "x", samples=20_000, seed=2)
    part = mc_mutual_info(cb, 3.0, "wz", samples=20_000, seed=2)
    assert part.mean <= full.mean + 3 * part.std_err
    # chain rule: I(x; y) = I(wz; y) + I(x; y | wz), estimated separately
    rest = mc_mutual_info(cb, 3.0, "x", given="wz", samples=20_000, seed=2)
    sigma = math.sqrt(full.std_err**2 + part.std_err**2 + rest.std_err**2)
    assert abs(full.mean - part.mean - rest.mean) <= 4 * sigma


def test_exact_scalar_helpers():
    cb = codebook_from_points([-1.0, -0.3, 0.5, 0.9], {"bin": np.array([0, 0, 1, 1])})
    full = exact_mmse_scalar(cb, 1.0)
    cond = exact_mmse_scalar(cb, 1.0, "bin")
    assert cond < full
    law = DiscreteInput([-1.0, -0.3], [0.5, 0.5])
    assert exact_mmse_scalar(codebook_from_points([-1.0, -0.3]), 2.0) == pytest.approx(mmse_discrete(law, 2.0))
    grid = np.linspace(0.0, 3.0, 31)
    curve = exact_mmse_curve(cb, grid, "bin")
    assert curve(1.0) == pytest.approx(cond, abs=1e-14)
    with pytest.raises(DomainError):
        exact_mmse_scalar(build_superposition(2, 0.5, 2, 2, seed=0), 1.0)


def test_decoding_check_trivial():
    cb = build_superposition(3, 1.0, 1, 8, seed=0)
    rep = check_reliable_decoding_equality(cb, 1.0, [1.0, 2.0, 4.0], samples=N_FAST, seed=1)
    assert all(p.gap == 0.0 for p in rep.points)
    assert rep.consistent_with_equality and rep.decodable and rep.concave
    assert rep.status == "consistent with equality"
    with pytest.raises(DomainError):
        check_reliable_decoding_equality(cb, 5.0, [1.0, 2.0], samples=N_FAST)


def test_saturation_trivial_cases():
    one = build_binned_wiretap(2, 8, 8, seed=0)
    rep = check_saturation_equivalence(one, 2.0, samples=N_FAST, seed=0)
    assert rep.bin_info.mean == 0.0 and rep.bin_rate == 0.0
    same = mc_mutual_info(one, 2.0, "x", samples=N_FAST, seed=0)
    assert rep.leakage.mean == pytest.approx(same.mean, abs=3 * same.std_err + 3 * rep.leakage.std_err)
    single = build_binned_wiretap(2, 8, 1, seed=0)
    rep = check_saturation_equivalence(single, 2.0, samples=N_FAST, seed=0)
    assert rep.leakage.mean == 0.0
    assert rep.bin_rate == pytest.approx(math.log(8) / 2)


def test_saturation_trend():
    # bins of rate about 0.5 ln(1 + snr) at the eavesdropper: the leakage about
    # the bin index falls with the blocklength
    snr = 1.0
    leak = []
    for n in (2, 4, 8):
        per_bin = size_for_rate(n, 0.5 * math.log1p(snr))
        cb = build_binned_wiretap(n, 4 * per_bin, 4, seed=11)
        leak.append(check_saturation_equivalence(cb, snr, samples=20_000, seed=11).leakage.mean / 1.0)
    assert leak[0] > leak[1] > leak[2]


def test_finite_n_immse_report():
    cb = build_superposition(2, 0.5, 2, 2, seed=3)
    rep = finite_n_immse(cb, 2.0, points=21, samples=N_FAST, seed=3)
    assert rep.ok and len(rep.mmse) == 21
    assert rep.as_dict()["points"][0]["gamma"] == 0.0
    with pytest.raises(DomainError):
        finite_n_immse(cb, 2.0, points=1)
