"""Fading-channel Monte-Carlo experiments (CSI and CDI cases).

Channel model per fading draw: entries of h and g are independent
Rayleigh-distributed magnitudes with independent uniform random signs
(zero-mean real entries, matching the real-valued signal model).  For each
coded bit, the transmitter sends p*u + Z*v with u = +-sqrt(P_u) and a fresh
AN vector v ~ N(0, P_v I); the legitimate receiver sees h@p * u + n_B and
the eavesdropper g@p * u + (g@Z)@v + n_E.

Reproducibility: every random quantity is drawn from a dedicated PCG64
stream keyed by (seed, pair/h index, purpose tag, ...), so results are
bitwise independent of worker count and scheduling.  The eavesdropper is
modeled as the strongest standard SC adversary: she knows the full code
construction, the frozen values, and her own noise-plus-AN variance, but
not the AN realization or the random bits.
"""

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .capacity import ChannelGains, f_series, optimize_power_allocation
from .errors import DegenerateSample, SkippedPair
from .polar import channel_llr, construct_ga, construct_mc
from .precoding import PrecodingBasis, orthonormal_decomposition
from .wiretap import build_partition, secure_decode, secure_encode_batch

# purpose tags for RNG substreams
_TAG_CHANNEL = 0
_TAG_ETA = 1
_TAG_GDRAW = 2
_TAG_BLOCK = 3
_TAG_MC_CONSTRUCT = 4

STATUS_OK = "ok"
STATUS_ZERO_CS = "skipped_zero_cs"
STATUS_RATE_INVERSION = "skipped_rate_inversion"
STATUS_ZERO_RATE = "skipped_zero_rate"


def substream(seed: int, *path: int) -> np.random.Generator:
    """Independent generator for (seed, *path); stable across worker counts."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence((seed, *path))))


def sample_rayleigh_vector(dim: int, scale: float, rng: np.random.Generator) -> np.ndarray:
    """Vector of Rayleigh(scale) magnitudes with uniform random signs.

    Exact zeros are redrawn (probability-zero event, but downstream code
    divides by norms).  Draw order is magnitudes first, then signs.
    """
    if scale <= 0:
        raise ValueError("scale must be > 0")
    mags = rng.rayleigh(scale, dim)
    while np.any(mags == 0.0):
        redo = mags == 0.0
        mags[redo] = rng.rayleigh(scale, int(redo.sum()))
    signs = 2.0 * rng.integers(0, 2, dim).astype(np.float64) - 1.0
    return mags * signs


@dataclass(frozen=True)
class GDistribution:
    """Eavesdropper channel-vector law used for eta-quantile estimation."""

    kind: str = "rayleigh_sign"
    scale: float = 1.0

    def sample_matrix(self, dim: int, size: int, rng: np.random.Generator) -> np.ndarray:
        if self.kind == "rayleigh_sign":
            mags = rng.rayleigh(self.scale, (size, dim))
            while np.any(mags == 0.0):
                redo = mags == 0.0
                mags[redo] = rng.rayleigh(self.scale, int(redo.sum()))
            signs = 2.0 * rng.integers(0, 2, (size, dim)).astype(np.float64) - 1.0
            return mags * signs
        if self.kind == "gaussian":
            return rng.normal(0.0, self.scale, (size, dim))
        raise ValueError(f"unknown distribution kind {self.kind!r}")


@dataclass(frozen=True)
class CsiExperimentConfig:
    n_a: int = 4
    p_t: float = 3.0
    sigma_b_sq: float = 1.0
    sigma_e_sq: float = 1.0
    delta: float = 0.11
    n_exponents: tuple = (4, 6, 8, 10)
    num_pairs: int = 100
    bits_per_pair: int = 1000
    seed: int = 0
    construction: str = "ga"
    mc_samples: int = 20000

    def __post_init__(self):
        if not 0 < self.delta < 1:
            raise ValueError("delta must be in (0, 1)")
        if self.p_t <= 0:
            raise ValueError("p_t must be > 0")
        if self.construction not in ("ga", "mc"):
            raise ValueError("construction must be 'ga' or 'mc'")
        object.__setattr__(self, "n_exponents", tuple(int(x) for x in self.n_exponents))


@dataclass(frozen=True)
class CdiExperimentConfig:
    n_a: int = 4
    p_t: float = 5.0
    sigma_b_sq: float = 1.0
    sigma_e_sq_true: float = 1.0
    p0: float = 0.85
    delta: float = 0.14
    n_exponent: int = 12
    num_h: int = 30
    num_g_per_h: int = 30
    eta_samples: int = 20000
    bits_per_pair: int = 1000
    seed: int = 0
    construction: str = "ga"
    mc_samples: int = 20000

    def __post_init__(self):
        if not 0 < self.p0 < 1:
            raise ValueError("p0 must be in (0, 1)")
        if not 0 < self.delta < 1:
            raise ValueError("delta must be in (0, 1)")
        if self.p_t <= 0:
            raise ValueError("p_t must be > 0")
        if self.construction not in ("ga", "mc"):
            raise ValueError("construction must be 'ga' or 'mc'")


@dataclass(frozen=True)
class BerRecord:
    """One measured (channel pair, code length) row behind the BER figures."""

    pair_id: str
    n: int
    status: str
    bob_ber: float
    eve_ber: float
    secrecy_rate: float
    c_s: float
    k_bob: int = 0
    k_eve: int = 0
    secret_bits: int = 0
    bob_bit_errors: int = 0
    eve_bit_errors: int = 0


def _k_from_rate(size: int, rate: float, lo: int, hi: int) -> int:
    return int(min(max(round(size * rate), lo), hi))


def _constructions(config, n, snr_bob, snr_eve, seed, *path):
    if config.construction == "mc":
        sb = int(np.random.SeedSequence((seed, *path, _TAG_MC_CONSTRUCT, 0)).generate_state(1)[0])
        se = int(np.random.SeedSequence((seed, *path, _TAG_MC_CONSTRUCT, 1)).generate_state(1)[0])
        bob = construct_mc(snr_bob, n, config.mc_samples, sb)
        eve = construct_mc(snr_eve, n, config.mc_samples, se)
    else:
        bob = construct_ga(snr_bob, n)
        eve = construct_ga(snr_eve, n)
    return bob, eve


def _transmit_blocks(
    partition,
    basis: PrecodingBasis,
    h,
    g,
    p_u: float,
    p_v: float,
    sigma_b_sq: float,
    sigma_e_sq: float,
    bits_target: int,
    seed: int,
    stream_path: tuple,
):
    """Send enough blocks to cover ``bits_target`` secret bits; return BERs.

    Per-block randomness (secrets, random bits, AN vectors, both noises)
    comes from the stream (seed, *stream_path, block).  Returns
    (secret_bits, bob_errors, eve_errors).
    """
    size = partition.block_length
    n_g = partition.g_set.size
    n_m = partition.m_set.size
    blocks = max(1, math.ceil(bits_target / n_g))

    hp = float(h @ basis.p)
    gp = float(g @ basis.p)
    g_z = np.asarray(g @ basis.Z, dtype=np.float64)
    sigma_eve_eff = p_v * float(np.sum(g_z**2)) + sigma_e_sq
    sqrt_pu = math.sqrt(p_u)
    an_std = math.sqrt(p_v) if p_v > 0 else 0.0

    s_all = np.empty((blocks, n_g), dtype=np.uint8)
    r_all = np.empty((blocks, n_m), dtype=np.uint8)
    noise_b = np.empty((blocks, size))
    an_proj = np.empty((blocks, size))
    noise_e = np.empty((blocks, size))
    for blk in range(blocks):
        rng = substream(seed, *stream_path, blk)
        s_all[blk] = rng.integers(0, 2, n_g, dtype=np.uint8)
        r_all[blk] = rng.integers(0, 2, n_m, dtype=np.uint8)
        noise_b[blk] = rng.normal(0.0, math.sqrt(sigma_b_sq), size)
        v = rng.normal(0.0, an_std, (size, basis.n_a - 1)) if an_std > 0 else np.zeros(
            (size, basis.n_a - 1)
        )
        an_proj[blk] = v @ g_z
        noise_e[blk] = (
            rng.normal(0.0, math.sqrt(sigma_e_sq), size) if sigma_e_sq > 0 else np.zeros(size)
        )

    x = secure_encode_batch(s_all, r_all, partition)
    symbols = (1.0 - 2.0 * x.astype(np.float64)) * sqrt_pu
    y = hp * symbols + noise_b
    z = gp * symbols + an_proj + noise_e

    llr_bob = channel_llr(y, hp, sqrt_pu, sigma_b_sq)
    llr_eve = channel_llr(z, gp, sqrt_pu, sigma_eve_eff)
    s_bob, _ = secure_decode(llr_bob, partition)
    s_eve, _ = secure_decode(llr_eve, partition)

    secret_bits = blocks * n_g
    bob_errors = int(np.count_nonzero(s_bob != s_all))
    eve_errors = int(np.count_nonzero(s_eve != s_all))
    return secret_bits, bob_errors, eve_errors


def run_csi_pair(h, g, config: CsiExperimentConfig, pair_id: int = 0):
    """Full CSI pipeline for one channel pair; one BerRecord per code length.

    Raises SkippedPair when the optimal secrecy capacity is zero.  Per-length
    rate inversions (C_E above C_B - delta) and empty secret sets are
    reported in the record status rather than raised, since other lengths of
    the same pair can still be measured.
    """
    h = np.asarray(h, dtype=np.float64)
    g = np.asarray(g, dtype=np.float64)
    basis = orthonormal_decomposition(h)
    gains = ChannelGains(
        bob_gain=float(h @ basis.p) ** 2,
        eve_gain=float(g @ basis.p) ** 2,
        eve_an_gain=float(np.sum((g @ basis.Z) ** 2)),
    )
    opt = optimize_power_allocation(
        gains, config.sigma_b_sq, config.sigma_e_sq, config.p_t, config.n_a
    )
    name = f"p{pair_id:03d}"
    if not opt.feasible:
        raise SkippedPair(f"pair {name}: zero secrecy capacity")

    snr_bob = opt.p_u_opt * gains.bob_gain / config.sigma_b_sq
    sigma_eve_eff = opt.p_v_opt * gains.eve_an_gain + config.sigma_e_sq
    snr_eve = opt.p_u_opt * gains.eve_gain / sigma_eve_eff
    c_b = 1.0 - f_series(math.sqrt(snr_bob))
    c_e = 1.0 - f_series(math.sqrt(snr_eve))

    records = []
    for n in config.n_exponents:
        size = 1 << n
        k_bob = _k_from_rate(size, c_b - config.delta, 1, size - 1)
        k_eve = _k_from_rate(size, c_e, 0, size - 1)
        base = dict(pair_id=name, n=n, c_s=opt.c_s_max, k_bob=k_bob, k_eve=k_eve)
        if k_eve > k_bob:
            records.append(
                BerRecord(
                    status=STATUS_RATE_INVERSION,
                    bob_ber=math.nan,
                    eve_ber=math.nan,
                    secrecy_rate=0.0,
                    **base,
                )
            )
            continue
        if k_eve == k_bob:
            records.append(
                BerRecord(
                    status=STATUS_ZERO_RATE,
                    bob_ber=math.nan,
                    eve_ber=math.nan,
                    secrecy_rate=0.0,
                    **base,
                )
            )
            continue
        bob_cons, eve_cons = _constructions(config, n, snr_bob, snr_eve, config.seed, pair_id, n)
        partition = build_partition(bob_cons, eve_cons, k_bob, k_eve)
        bits, bob_err, eve_err = _transmit_blocks(
            partition,
            basis,
            h,
            g,
            opt.p_u_opt,
            opt.p_v_opt,
            config.sigma_b_sq,
            config.sigma_e_sq,
            config.bits_per_pair,
            config.seed,
            (pair_id, _TAG_BLOCK, n),
        )
        records.append(
            BerRecord(
                status=STATUS_OK,
                bob_ber=bob_err / bits,
                eve_ber=eve_err / bits,
                secrecy_rate=partition.secrecy_rate,
                secret_bits=bits,
                bob_bit_errors=bob_err,
                eve_bit_errors=eve_err,
                **base,
            )
        )
    return records


def _csi_task(args):
    config, pair_id = args
    rng = substream(config.seed, pair_id, _TAG_CHANNEL)
    h = sample_rayleigh_vector(config.n_a, 1.0, rng)
    g = sample_rayleigh_vector(config.n_a, 1.0, rng)
    try:
        return run_csi_pair(h, g, config, pair_id)
    except SkippedPair:
        return [
            BerRecord(
                pair_id=f"p{pair_id:03d}",
                n=n,
                status=STATUS_ZERO_CS,
                bob_ber=math.nan,
                eve_ber=math.nan,
                secrecy_rate=0.0,
                c_s=0.0,
            )
            for n in config.n_exponents
        ]


def _map_tasks(task_fn, args_list, workers):
    if workers <= 1:
        return [task_fn(a) for a in args_list]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(task_fn, args_list))


def run_csi_experiment(config: CsiExperimentConfig, workers: int = 1):
    """All pairs of the CSI experiment; returns (records, summary_rows).

    Summary rows aggregate per code length over OK pairs with bit-weighted
    means: (n, N, bob_ber, eve_ber, pairs_ok, pairs_skipped).
    """
    args = [(config, pair_id) for pair_id in range(config.num_pairs)]
    per_pair = _map_tasks(_csi_task, args, workers)
    records = [rec for pair_recs in per_pair for rec in pair_recs]
    summary = summarize_csi(config, records)
    return records, summary


def summarize_csi(config: CsiExperimentConfig, records):
    rows = []
    for n in config.n_exponents:
        at_n = [r for r in records if r.n == n]
        ok = [r for r in at_n if r.status == STATUS_OK]
        bits = sum(r.secret_bits for r in ok)
        rows.append(
            {
                "n": n,
                "block_length": 1 << n,
                "bob_ber": (sum(r.bob_bit_errors for r in ok) / bits) if bits else math.nan,
                "eve_ber": (sum(r.eve_bit_errors for r in ok) / bits) if bits else math.nan,
                "pairs_ok": len(ok),
                "pairs_skipped": len(at_n) - len(ok),
            }
        )
    return rows


def estimate_eta_quantile(
    dist: GDistribution,
    basis: PrecodingBasis,
    p0: float,
    eta_samples: int,
    rng: np.random.Generator,
) -> float:
    """Empirical p0-quantile of eta = (g @ p)^2 / ||g @ Z||^2 under ``dist``.

    Draws with an exactly zero AN projection are resampled; more than 0.1%
    of them aborts (the distribution would be degenerate for this basis).
    """
    if not 0 < p0 < 1:
        raise ValueError("p0 must be in (0, 1)")
    if eta_samples < 1:
        raise ValueError("eta_samples must be >= 1")
    gmat = dist.sample_matrix(basis.n_a, eta_samples, rng)
    num = (gmat @ basis.p) ** 2
    den = np.sum((gmat @ basis.Z) ** 2, axis=1)
    degenerate = 0
    max_degenerate = max(1, int(0.001 * eta_samples))
    while np.any(den == 0.0):
        redo = np.nonzero(den == 0.0)[0]
        degenerate += redo.size
        if degenerate > max_degenerate:
            raise DegenerateSample(
                f"{degenerate} draws with zero AN projection (limit {max_degenerate})"
            )
        gre = dist.sample_matrix(basis.n_a, redo.size, rng)
        num[redo] = (gre @ basis.p) ** 2
        den[redo] = np.sum((gre @ basis.Z) ** 2, axis=1)
    return float(np.quantile(num / den, p0))


def run_cdi_h(h, config: CdiExperimentConfig, h_id: int = 0):
    """Design once for a legitimate channel, then measure all its g draws."""
    h = np.asarray(h, dtype=np.float64)
    basis = orthonormal_decomposition(h)
    dist = GDistribution()
    eta0 = estimate_eta_quantile(
        dist, basis, config.p0, config.eta_samples, substream(config.seed, h_id, _TAG_ETA)
    )
    # worst-case (noiseless-Eve) design: SNR_E = P_u * eta0 / P_v
    gains = ChannelGains(bob_gain=float(h @ basis.p) ** 2, eve_gain=eta0, eve_an_gain=1.0)
    opt = optimize_power_allocation(gains, config.sigma_b_sq, 0.0, config.p_t, config.n_a)

    def skipped(status):
        return [
            BerRecord(
                pair_id=f"h{h_id:02d}-g{g_id:02d}",
                n=config.n_exponent,
                status=status,
                bob_ber=math.nan,
                eve_ber=math.nan,
                secrecy_rate=0.0,
                c_s=max(opt.c_s_max, 0.0),
            )
            for g_id in range(config.num_g_per_h)
        ], eta0

    if not opt.feasible:
        return skipped(STATUS_ZERO_CS)

    snr_bob = opt.p_u_opt * gains.bob_gain / config.sigma_b_sq
    snr_eve_design = opt.p_u_opt * eta0 / opt.p_v_opt if opt.p_v_opt > 0 else math.inf
    c_b = 1.0 - f_series(math.sqrt(snr_bob))
    c_e = 1.0 - f_series(math.sqrt(snr_eve_design)) if math.isfinite(snr_eve_design) else 1.0
    size = 1 << config.n_exponent
    k_bob = _k_from_rate(size, c_b - config.delta, 1, size - 1)
    k_eve = _k_from_rate(size, c_e, 0, size - 1)
    if k_eve > k_bob:
        return skipped(STATUS_RATE_INVERSION)
    if k_eve == k_bob:
        return skipped(STATUS_ZERO_RATE)

    bob_cons, eve_cons = _constructions(
        config, config.n_exponent, snr_bob, snr_eve_design, config.seed, h_id
    )
    partition = build_partition(bob_cons, eve_cons, k_bob, k_eve)

    records = []
    for g_id in range(config.num_g_per_h):
        g = sample_rayleigh_vector(
            config.n_a, 1.0, substream(config.seed, h_id, _TAG_GDRAW, g_id)
        )
        bits, bob_err, eve_err = _transmit_blocks(
            partition,
            basis,
            h,
            g,
            opt.p_u_opt,
            opt.p_v_opt,
            config.sigma_b_sq,
            config.sigma_e_sq_true,
            config.bits_per_pair,
            config.seed,
            (h_id, _TAG_BLOCK, g_id),
        )
        records.append(
            BerRecord(
                pair_id=f"h{h_id:02d}-g{g_id:02d}",
                n=config.n_exponent,
                status=STATUS_OK,
                bob_ber=bob_err / bits,
                eve_ber=eve_err / bits,
                secrecy_rate=partition.secrecy_rate,
                c_s=opt.c_s_max,
                k_bob=k_bob,
                k_eve=k_eve,
                secret_bits=bits,
                bob_bit_errors=bob_err,
                eve_bit_errors=eve_err,
            )
        )
    return records, eta0


def _cdi_task(args):
    config, h_id = args
    rng = substream(config.seed, h_id, _TAG_CHANNEL)
    h = sample_rayleigh_vector(config.n_a, 1.0, rng)
    return run_cdi_h(h, config, h_id)


def run_cdi_experiment(config: CdiExperimentConfig, workers: int = 1):
    """All (h, g) pairs of the CDI experiment.

    Returns (records, summary_rows, cdf_points) where cdf_points holds the
    empirical BER CDFs over OK pairs for both receivers.
    """
    args = [(config, h_id) for h_id in range(config.num_h)]
    results = _map_tasks(_cdi_task, args, workers)
    records = [rec for recs, _ in results for rec in recs]
    summary = summarize_cdi(records)
    return records, summary, ber_cdf_points(records)


def summarize_cdi(records):
    ok = [r for r in records if r.status == STATUS_OK]
    bits = sum(r.secret_bits for r in ok)
    rows = []
    for series, err_field in (("bob", "bob_bit_errors"), ("eve", "eve_bit_errors")):
        ber_field = f"{series}_ber"
        rows.append(
            {
                "series": series,
                "mean_ber": (sum(getattr(r, err_field) for r in ok) / bits) if bits else math.nan,
                "pairs_ok": len(ok),
                "pairs_skipped": len(records) - len(ok),
                "frac_zero_ber": (
                    sum(1 for r in ok if getattr(r, ber_field) == 0.0) / len(ok)
                    if ok
                    else math.nan
                ),
            }
        )
    return rows


def ber_cdf_points(records):
    """Empirical CDF samples of the OK pairs' BERs: (series, ber, cdf) rows."""
    ok = [r for r in records if r.status == STATUS_OK]
    points = []
    for series, field_name in (("bob", "bob_ber"), ("eve", "eve_ber")):
        vals = np.sort(np.array([getattr(r, field_name) for r in ok], dtype=np.float64))
        for i, v in enumerate(vals):
            points.append({"series": series, "ber": float(v), "cdf": (i + 1) / vals.size})
    return points
