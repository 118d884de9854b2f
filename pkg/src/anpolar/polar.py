"""Polar code construction, encoding, and successive-cancellation decoding.

Index convention: the public API uses the generator ``G = B_N F^{xn}``
(bit-reversal included), with 0-based u-indices decoded in index order.
Internally the butterfly and SC recursion run on the plain Kronecker
generator; since ``B F^{xn} B = F^{xn}``, encoding permutes u by
bit-reversal before the butterfly, and decoding permutes the *channel*
LLRs instead, which makes the recursion visit u in true index order with
the conditioning structure of the classic likelihood recursion.

Constructions rank synthesized channels by a *badness* metric (estimated
error probability; smaller is better):

* Monte-Carlo (:func:`construct_mc`): genie-aided SC decoding of all-zero
  codewords; the per-index error frequency is the metric.
* Gaussian approximation (:func:`construct_ga`): density evolution on LLR
  means with the standard check/variable-node updates; the metric is
  Q(sqrt(mean / 2)).  Deterministic and monotone in SNR, which the wiretap
  layer relies on for degradation nesting.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _backend
from .errors import BadLength, MissingFrozenValue


@lru_cache(maxsize=None)
def _bitrev_cached(n: int):
    perm = np.zeros(1 << n, dtype=np.int64)
    for i in range(1 << n):
        r = 0
        for k in range(n):
            r = (r << 1) | ((i >> k) & 1)
        perm[i] = r
    perm.flags.writeable = False
    return perm


def bit_reversal_permutation(n: int) -> np.ndarray:
    """Permutation ``br`` with ``br[i]`` = bit-reverse of i over n bits."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return _bitrev_cached(n)


def _check_power_of_two(length):
    if length < 1 or (length & (length - 1)) != 0:
        raise BadLength(f"length {length} is not a power of two")
    return int(length).bit_length() - 1


@dataclass(frozen=True)
class PolarConstruction:
    """Per-index reliability metric and the selected information set.

    ``reliability[i]`` estimates how bad synthesized channel i is (error
    probability proxy, smaller = better); ``info_set`` holds the chosen
    information indices, sorted ascending.
    """

    n: int
    reliability: np.ndarray
    info_set: np.ndarray
    snr: float
    method: str
    num_samples: int = 0
    seed: int | None = None

    def __post_init__(self):
        rel = np.asarray(self.reliability, dtype=np.float64)
        if rel.shape != (1 << self.n,):
            raise ValueError(f"reliability must have length {1 << self.n}")
        info = np.asarray(self.info_set, dtype=np.int64)
        if info.size and (info.min() < 0 or info.max() >= rel.size):
            raise ValueError("info_set indices out of range")
        rel.flags.writeable = False
        info.flags.writeable = False
        object.__setattr__(self, "reliability", rel)
        object.__setattr__(self, "info_set", info)

    @property
    def block_length(self):
        return 1 << self.n

    def ranked_indices(self) -> np.ndarray:
        """All indices from most to least reliable, ties by smaller index."""
        return np.argsort(self.reliability, kind="stable").astype(np.int64)


def polar_transform(u) -> np.ndarray:
    """x = u G over GF(2) with G = B_N F^{xn}, via the butterfly recursion.

    Accepts a length-N bit vector or a (batch, N) array; N must be a power
    of two.  The transform is an involution: applying it twice returns u.
    """
    u = np.asarray(u)
    length = u.shape[-1]
    n = _check_power_of_two(length)
    br = bit_reversal_permutation(n)
    return _backend.polar_transform_batch(u[..., br].astype(np.uint8))


def channel_llr(y, effective_gain, sqrt_pu, sigma_sq):
    """Channel LLR ln(P(y|bit=0)/P(y|bit=1)) = 2 y gain sqrt(P_u) / sigma^2.

    Bit mapping is 0 -> +sqrt(P_u), 1 -> -sqrt(P_u) throughout the library;
    ``effective_gain`` is the signed scalar channel gain (h@p or g@p).
    """
    if sigma_sq <= 0:
        raise ValueError("sigma_sq must be > 0")
    return 2.0 * np.asarray(y, dtype=np.float64) * effective_gain * sqrt_pu / sigma_sq


def sc_decode(llrs, frozen_set, frozen_values) -> np.ndarray:
    """Successive-cancellation decoding in the log domain.

    ``llrs`` is one length-N vector or a (batch, N) array of channel LLRs
    (codeword order).  ``frozen_set`` lists frozen u-indices and
    ``frozen_values`` their bits (scalar 0 broadcast is allowed).  At
    information indices the decision is 0 when the LLR is >= 0.
    """
    llrs = np.asarray(llrs, dtype=np.float64)
    squeeze = llrs.ndim == 1
    if squeeze:
        llrs = llrs[None, :]
    n = _check_power_of_two(llrs.shape[1])
    size = llrs.shape[1]

    frozen_set = np.asarray(frozen_set, dtype=np.int64)
    frozen_values = np.asarray(frozen_values, dtype=np.uint8)
    if frozen_values.ndim == 0:
        frozen_values = np.full(frozen_set.size, int(frozen_values), dtype=np.uint8)
    if frozen_values.size != frozen_set.size:
        raise MissingFrozenValue(
            f"{frozen_set.size} frozen indices but {frozen_values.size} frozen values"
        )
    mask = np.zeros(size, dtype=np.uint8)
    vals = np.zeros(size, dtype=np.uint8)
    mask[frozen_set] = 1
    vals[frozen_set] = frozen_values

    br = bit_reversal_permutation(n)
    u = _backend.sc_decode_batch(np.ascontiguousarray(llrs[:, br]), mask, vals)
    return u[0] if squeeze else u


# Monte-Carlo construction samples are drawn in fixed-size chunks so results
# do not depend on how many workers consume them.
MC_CHUNK = 4096


def construct_mc(snr: float, n: int, num_samples: int, seed: int) -> PolarConstruction:
    """Monte-Carlo construction: genie-aided error frequency per index.

    Simulates all-zero codewords over a binary-input AWGN channel at power
    SNR ``snr`` (channel LLRs are N(2 snr, 4 snr)), runs genie-aided SC, and
    uses the per-index decision-error rate as the badness metric.
    Deterministic given ``seed`` (chunked RNG streams, chunk size fixed).
    """
    if snr < 0:
        raise ValueError("snr must be >= 0")
    if num_samples < 1:
        raise ValueError("num_samples must be >= 1")
    size = 1 << n
    mean = 2.0 * snr
    std = np.sqrt(2.0 * mean) if mean > 0 else 0.0
    neg = np.zeros(size, dtype=np.int64)
    ties = np.zeros(size, dtype=np.int64)
    done = 0
    chunk_idx = 0
    while done < num_samples:
        take = min(MC_CHUNK, num_samples - done)
        rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence((seed, chunk_idx))))
        llrs = rng.normal(mean, std, size=(take, size)) if std > 0 else np.zeros((take, size))
        chunk_neg, chunk_ties = _backend.genie_llr_negative_counts(llrs)
        neg += chunk_neg
        ties += chunk_ties
        done += take
        chunk_idx += 1
    # channel samples are i.i.d., so the recursion's leaf order is already
    # the u index order of the bit-reversed generator
    reliability = (neg + 0.5 * ties) / float(num_samples)
    return PolarConstruction(
        n=n,
        reliability=reliability,
        info_set=np.array([], dtype=np.int64),
        snr=float(snr),
        method="mc",
        num_samples=int(num_samples),
        seed=int(seed),
    )


# Gaussian-approximation phi(x) ~ E[1 - tanh(L/2)] for L ~ N(x, 2x).
# Two-piece approximation with crossover at x = 10; the x > 10 branch is
# rescaled by a constant so phi is continuous (and hence the check-node
# update strictly monotone), and capped at 1 where the small-x fit
# overshoots.  Means beyond ~500 are updated in the log domain so nothing
# underflows.
_GA_A, _GA_B, _GA_C = 0.4527, 0.86, 0.0218
_GA_SPLIT = 10.0
_GA_LOG_DOMAIN = 500.0


def _ga_phi_low(x):
    return np.minimum(np.exp(-_GA_A * x**_GA_B + _GA_C), 1.0)


_GA_HIGH_SCALE = float(
    np.exp(-_GA_A * _GA_SPLIT**_GA_B + _GA_C)
    / (np.sqrt(np.pi / _GA_SPLIT) * np.exp(-_GA_SPLIT / 4.0) * (1.0 - 10.0 / (7.0 * _GA_SPLIT)))
)


def _ga_phi(x):
    x = np.asarray(x, dtype=np.float64)
    out = np.ones_like(x)
    low = (x > 0) & (x <= _GA_SPLIT)
    high = x > _GA_SPLIT
    out[low] = _ga_phi_low(x[low])
    xh = x[high]
    out[high] = (
        _GA_HIGH_SCALE * np.sqrt(np.pi / xh) * np.exp(-xh / 4.0) * (1.0 - 10.0 / (7.0 * xh))
    )
    return out


def _ga_log_phi_high(x):
    return (
        np.log(_GA_HIGH_SCALE)
        + 0.5 * (np.log(np.pi) - np.log(x))
        - x / 4.0
        + np.log1p(-10.0 / (7.0 * x))
    )


_GA_Y_SPLIT = float(_ga_phi_low(np.asarray(_GA_SPLIT)))


def _ga_phi_inv(y):
    """Inverse of _ga_phi on (0, 1]: closed form below x=10, bisection above."""
    y = np.asarray(y, dtype=np.float64)
    out = np.zeros_like(y)
    low = (y >= _GA_Y_SPLIT) & (y < 1.0)
    out[low] = ((_GA_C - np.log(y[low])) / _GA_A) ** (1.0 / _GA_B)
    high = (y > 0.0) & (y < _GA_Y_SPLIT)
    if np.any(high):
        out[high] = _ga_inv_high_from_log(np.log(y[high]))
    return out


def _ga_inv_high_from_log(log_y):
    """Solve _ga_log_phi_high(x) = log_y for x > 10 (bisection, 80 rounds)."""
    lo = np.full_like(log_y, _GA_SPLIT)
    hi = np.maximum(-6.0 * log_y + 20.0, 2.0 * _GA_SPLIT)
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        too_big = _ga_log_phi_high(mid) < log_y
        hi = np.where(too_big, mid, hi)
        lo = np.where(too_big, lo, mid)
    return 0.5 * (lo + hi)


def _ga_check_update(m):
    """Check-node mean update phi_inv(1 - (1 - phi(m))^2) without rounding traps.

    Three regimes: for m <= 10 the complement 1 - phi is formed with expm1 so
    the argument never rounds to exactly 1 (which would zero out the whole
    subtree); for moderate m the argument 2 phi - phi^2 is small and safe;
    for m above ~500 everything moves to the log domain so phi never
    underflows.
    """
    m = np.asarray(m, dtype=np.float64)
    out = np.empty_like(m)
    lowm = m <= _GA_SPLIT
    if np.any(lowm):
        t = np.maximum(_GA_A * m[lowm] ** _GA_B - _GA_C, 0.0)
        comp = -np.expm1(-t)  # 1 - phi, exact as phi -> 1
        log_y = np.log1p(-comp * comp)
        val = ((_GA_C - log_y) / _GA_A) ** (1.0 / _GA_B)
        out[lowm] = np.where(comp > 0.0, val, 0.0)
    midm = (m > _GA_SPLIT) & (m <= _GA_LOG_DOMAIN)
    if np.any(midm):
        phi = _ga_phi(m[midm])
        out[midm] = _ga_phi_inv(phi * (2.0 - phi))
    big = m > _GA_LOG_DOMAIN
    if np.any(big):
        log_y = _ga_log_phi_high(m[big]) + np.log(2.0)
        out[big] = _ga_inv_high_from_log(log_y)
    return out


def ga_llr_means(snr: float, n: int) -> np.ndarray:
    """Density-evolution LLR means for all 2^n synthesized channels.

    Returned in u index order (the recursion tree's leaf order, which for an
    i.i.d. channel coincides with the bit-reversed generator's u order).
    Both node updates are monotone in the input mean, so every per-index
    mean is nondecreasing in SNR.
    """
    if snr < 0:
        raise ValueError("snr must be >= 0")
    means = np.array([2.0 * snr], dtype=np.float64)
    for _ in range(n):
        nxt = np.empty(2 * means.size, dtype=np.float64)
        nxt[1::2] = 2.0 * means
        nxt[0::2] = _ga_check_update(means)
        means = nxt
    return means


def construct_ga(snr: float, n: int) -> PolarConstruction:
    """Gaussian-approximation construction; badness metric Q(sqrt(mean/2))."""
    from .capacity import q_function

    means = ga_llr_means(snr, n)
    reliability = np.asarray(q_function(np.sqrt(np.maximum(means, 0.0) / 2.0)))
    return PolarConstruction(
        n=n,
        reliability=reliability,
        info_set=np.array([], dtype=np.int64),
        snr=float(snr),
        method="ga",
    )


def select_info_set(construction: PolarConstruction, k: int) -> PolarConstruction:
    """Pick the k most reliable indices (ties broken by smaller index)."""
    size = construction.block_length
    if not 0 <= k <= size:
        raise ValueError(f"k must be in [0, {size}]")
    chosen = np.sort(construction.ranked_indices()[:k])
    return PolarConstruction(
        n=construction.n,
        reliability=construction.reliability,
        info_set=chosen,
        snr=construction.snr,
        method=construction.method,
        num_samples=construction.num_samples,
        seed=construction.seed,
    )
