import math

import numpy as np
import pytest
from scipy import stats

from anpolar.errors import SkippedPair
from anpolar.precoding import orthonormal_decomposition
from anpolar.sim import (
    BerRecord,
    CdiExperimentConfig,
    CsiExperimentConfig,
    GDistribution,
    ber_cdf_points,
    estimate_eta_quantile,
    run_cdi_experiment,
    run_cdi_h,
    run_csi_experiment,
    run_csi_pair,
    sample_rayleigh_vector,
    substream,
    summarize_cdi,
)


def test_rayleigh_vector_mean_magnitude():
    rng = np.random.default_rng(3)
    v = sample_rayleigh_vector(10**6, 2.0, rng)
    assert np.abs(v).mean() == pytest.approx(2.0 * math.sqrt(math.pi / 2), rel=0.01)


def test_rayleigh_vector_nonzero_and_sign_balance():
    rng = np.random.default_rng(4)
    v = sample_rayleigh_vector(10**5, 1.0, rng)
    assert np.all(v != 0.0)
    assert abs(np.mean(v > 0) - 0.5) < 0.01


def test_rayleigh_vector_seeded_determinism():
    a = sample_rayleigh_vector(64, 1.0, substream(7, 0, 0))
    b = sample_rayleigh_vector(64, 1.0, substream(7, 0, 0))
    c = sample_rayleigh_vector(64, 1.0, substream(7, 0, 1))
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)


def test_eta_quantile_isotropic_median_is_one():
    # (g@p)^2 / (g@Z)^2 with isotropic Gaussian g and N_A=2 is F(1,1); its
    # median is exactly 1 by symmetry
    basis = orthonormal_decomposition(np.array([1.0, 0.7]))
    dist = GDistribution(kind="gaussian", scale=1.0)
    eta = estimate_eta_quantile(dist, basis, 0.5, 4 * 10**5, np.random.default_rng(5))
    assert eta == pytest.approx(1.0, abs=0.02)


def test_eta_quantile_monotone_in_p0():
    basis = orthonormal_decomposition(np.array([0.8, -0.4, 1.2]))
    dist = GDistribution()
    rngs = [np.random.default_rng(9) for _ in range(3)]
    vals = [
        estimate_eta_quantile(dist, basis, p0, 20000, rng)
        for p0, rng in zip((0.5, 0.85, 0.95), rngs)
    ]
    assert vals[0] < vals[1] < vals[2]


def test_eta_quantile_determinism():
    basis = orthonormal_decomposition(np.array([0.8, -0.4, 1.2]))
    dist = GDistribution()
    a = estimate_eta_quantile(dist, basis, 0.85, 5000, substream(1, 2, 1))
    b = estimate_eta_quantile(dist, basis, 0.85, 5000, substream(1, 2, 1))
    assert a == b


def test_csi_pair_without_eavesdropper_leakage():
    # g orthogonal to p: Eve sees pure noise, Bob decodes cleanly
    h = np.array([2.0, 0.0])
    g = np.array([0.0, 1.5])
    cfg = CsiExperimentConfig(
        n_a=2, p_t=3.0, n_exponents=(8,), num_pairs=1, bits_per_pair=500, seed=3
    )
    records = run_csi_pair(h, g, cfg, pair_id=0)
    assert len(records) == 1
    rec = records[0]
    assert rec.status == "ok"
    assert 0.45 <= rec.eve_ber <= 0.55
    assert rec.bob_ber <= 0.01


def test_csi_pair_noiseless_bob():
    h = np.array([1.0, 0.5])
    g = np.array([0.3, -0.8])
    cfg = CsiExperimentConfig(
        n_a=2,
        p_t=3.0,
        sigma_b_sq=1e-6,
        n_exponents=(8,),
        num_pairs=1,
        bits_per_pair=300,
        seed=3,
    )
    rec = run_csi_pair(h, g, cfg, pair_id=0)[0]
    assert rec.bob_ber == 0.0


def test_csi_pair_zero_secrecy_raises():
    # Eve aligned with p and much stronger, AN blind to her
    h = np.array([1.0, 0.0])
    g = np.array([10.0, 0.0])
    cfg = CsiExperimentConfig(n_a=2, p_t=3.0, n_exponents=(6,), num_pairs=1, seed=1)
    with pytest.raises(SkippedPair):
        run_csi_pair(h, g, cfg, pair_id=0)


def test_csi_experiment_records_skips():
    cfg = CsiExperimentConfig(
        n_a=2, p_t=3.0, n_exponents=(6, 8), num_pairs=6, bits_per_pair=200, seed=2
    )
    records, summary = run_csi_experiment(cfg, workers=1)
    assert len(records) == 12
    assert {s["n"] for s in summary} == {6, 8}
    for s in summary:
        assert s["pairs_ok"] + s["pairs_skipped"] == 6


def test_csi_worker_count_independence():
    cfg = CsiExperimentConfig(
        n_a=2, p_t=3.0, n_exponents=(6, 8), num_pairs=4, bits_per_pair=200, seed=5
    )
    r1, s1 = run_csi_experiment(cfg, workers=1)
    r2, s2 = run_csi_experiment(cfg, workers=2)
    r8, s8 = run_csi_experiment(cfg, workers=8)
    # repr-level equality also treats NaN BERs of skipped rows as equal
    assert repr(r1) == repr(r2) == repr(r8)
    assert repr(s1) == repr(s2) == repr(s8)


def test_cdi_worker_count_independence():
    cfg = CdiExperimentConfig(
        n_a=2, n_exponent=7, num_h=4, num_g_per_h=2, eta_samples=2000,
        bits_per_pair=100, seed=5,
    )
    out1 = run_cdi_experiment(cfg, workers=1)
    out2 = run_cdi_experiment(cfg, workers=2)
    assert repr(out1[0]) == repr(out2[0])
    assert repr(out1[1]) == repr(out2[1])


def test_bob_observation_noise_is_pure_gaussian():
    # assemble y through the full vector path and subtract the signal part
    rng = np.random.default_rng(10)
    h = sample_rayleigh_vector(4, 1.0, rng)
    basis = orthonormal_decomposition(h)
    n_samples = 10**4
    u = np.where(rng.random(n_samples) < 0.5, 1.0, -1.0) * math.sqrt(1.7)
    v = rng.normal(0, math.sqrt(0.4), (n_samples, 3))
    noise = rng.normal(0, 1.0, n_samples)
    y = (basis.p * u[:, None] + v @ basis.Z.T) @ h + noise
    residual = y - (h @ basis.p) * u
    _, p_value = stats.kstest(residual, "norm", args=(0.0, 1.0))
    assert p_value > 0.01


def test_ber_estimator_ci_scaling():
    # doubling the bit budget shrinks the BER spread by ~sqrt(2) (+-30%)
    h = np.array([0.9, -0.6])
    g = np.array([1.1, 0.4])
    spreads = []
    for bits in (256, 512):
        bers = []
        for seed in range(40):
            cfg = CsiExperimentConfig(
                n_a=2, p_t=3.0, n_exponents=(6,), num_pairs=1, bits_per_pair=bits, seed=seed
            )
            rec = run_csi_pair(h, g, cfg, pair_id=0)[0]
            bers.append(rec.eve_ber)
        spreads.append(np.std(bers))
    ratio = spreads[0] / spreads[1]
    assert 0.7 * math.sqrt(2) <= ratio <= 1.3 * math.sqrt(2)


def test_cdi_h_design_and_measure():
    cfg = CdiExperimentConfig(
        n_a=4, n_exponent=8, num_h=1, num_g_per_h=5, eta_samples=5000,
        bits_per_pair=200, seed=11,
    )
    h = sample_rayleigh_vector(4, 1.0, substream(cfg.seed, 0, 0))
    records, eta0 = run_cdi_h(h, cfg, h_id=0)
    assert eta0 > 0
    assert len(records) == 5
    ok = [r for r in records if r.status == "ok"]
    assert ok, "expected at least one measured pair"
    for rec in ok:
        assert 0.0 <= rec.bob_ber <= 1.0
        assert 0.0 <= rec.eve_ber <= 1.0
        assert rec.secrecy_rate > 0


def test_cdi_summary_and_cdf_points():
    records = [
        BerRecord("h00-g00", 8, "ok", 0.0, 0.5, 0.3, 0.4, secret_bits=100,
                  bob_bit_errors=0, eve_bit_errors=50),
        BerRecord("h00-g01", 8, "ok", 0.02, 0.48, 0.3, 0.4, secret_bits=100,
                  bob_bit_errors=2, eve_bit_errors=48),
        BerRecord("h01-g00", 8, "skipped_zero_cs", math.nan, math.nan, 0.0, 0.0),
    ]
    summary = summarize_cdi(records)
    by = {s["series"]: s for s in summary}
    assert by["bob"]["mean_ber"] == pytest.approx(0.01)
    assert by["bob"]["frac_zero_ber"] == pytest.approx(0.5)
    assert by["eve"]["mean_ber"] == pytest.approx(0.49)
    assert by["bob"]["pairs_skipped"] == 1
    points = ber_cdf_points(records)
    bob_pts = [p for p in points if p["series"] == "bob"]
    assert [p["cdf"] for p in bob_pts] == [0.5, 1.0]
    assert bob_pts[0]["ber"] == 0.0
