"""Binary-input AWGN capacity, secrecy capacity, and power-split optimization.

The capacity of a binary-input AWGN channel at amplitude SNR ``beta``
(``beta = sqrt(SNR)``) is ``C(beta) = 1 - F(beta)`` where

    F(x) = (1/ln 2) * [ 2x exp(-x^2/2)/sqrt(2 pi) - (2x^2 - 1) Q(x)
                        + sum_{i>=1} (-1)^(i-1)/(i(i+1)) exp(2i(i+1)x^2) Q((2i+1)x) ]

Two independent evaluators are provided: :func:`f_series` (the series above)
and :func:`bi_awgn_capacity_quadrature` (adaptive quadrature of the defining
mutual-information integral).  They cross-validate each other in the tests.

Series numerics: the product exp(2i(i+1)x^2) * Q((2i+1)x) overflows when
evaluated naively (already at x ~ 3 for i >= 2), so each term is computed as
exp(2i(i+1)x^2 + log Q((2i+1)x)).  The leading ``max_terms`` terms are summed
explicitly and the remaining tail is folded in exactly through its integral
representation

    sum_{i>M} (-1)^(i-1)/(i(i+1)) exp(2i(i+1)x^2) Q((2i+1)x)
        = int_0^inf phi(x + w) * R_M(exp(-2xw)) dw,
    R_M(z) = (1 + 1/z) ln(1+z) - 1 - sum_{i<=M} (-1)^(i-1) z^i / (i(i+1)),

evaluated on fixed Gauss-Legendre panels.  This keeps the result independent
of ``max_terms`` to ~1e-12, which raw truncation cannot do for small ``x``
(the terms only decay like 1/i^3 there).
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate, special

from .errors import InvalidBudget, NonConvergent, QuadratureFailure

_LN2 = math.log(2.0)
_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)


def q_function(x):
    """Upper-tail probability of the standard normal, Q(x) = P(N(0,1) > x)."""
    return 0.5 * special.erfc(np.asarray(x, dtype=np.float64) / math.sqrt(2.0))


# 24 nodes per panel keep the tail exact to ~1e-12, far inside the 1e-9
# stability budget, at half the cost of finer rules
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(24)
_W_CAP = 40.0


def _tail_quadrature(beta, max_terms):
    """Tail of the series past ``max_terms`` via its integral representation.

    Integrates phi(beta + w) * R_M(exp(-2 beta w)) over w >= 0 on four
    Gauss-Legendre panels.  The integrand decays like exp(-2 beta (M+1) w)
    times a Gaussian, so the first three panels are geometric in the inverse
    decay rate and the last covers the remaining Gaussian mass.  Vectorized
    over ``beta``.
    """
    beta = np.asarray(beta, dtype=np.float64)
    scale = np.maximum(2.0 * beta * (max_terms + 1), 0.5)[:, None]

    nodes = []
    weights = []
    for a, b in ((0.0, 1.0), (1.0, 4.0), (4.0, 16.0)):
        half = 0.5 * (b - a)
        nodes.append((0.5 * (a + b) + half * _GL_NODES)[None, :] / scale)
        weights.append((half * _GL_WEIGHTS)[None, :] / scale)
    # last panel: [16/scale, w_cap] in w units, empty when 16/scale >= w_cap
    a = np.minimum(16.0 / scale, _W_CAP)
    half = 0.5 * (_W_CAP - a)
    nodes.append(0.5 * (a + _W_CAP) + half * _GL_NODES[None, :])
    weights.append(half * _GL_WEIGHTS[None, :])
    w = np.concatenate(nodes, axis=1)
    wts = np.concatenate(weights, axis=1)

    z = np.exp(-2.0 * beta[:, None] * w)
    integrand = _INV_SQRT_2PI * np.exp(-0.5 * (beta[:, None] + w) ** 2)
    integrand *= _series_remainder(z, max_terms)
    return np.sum(integrand * wts, axis=1)


def _series_remainder(z, max_terms):
    """R_M(z) = sum_{i > M} (-1)^(i-1) z^i / (i(i+1)) for z in [0, 1].

    Uses the closed form (1 + 1/z) ln(1+z) - 1 minus the leading partial sum.
    The cancellation for small z costs ~1e-16 absolute accuracy, well inside
    what the tail integral needs.
    """
    z = np.asarray(z, dtype=np.float64)
    out = np.zeros_like(z)
    nz = z > 0.0
    zz = z[nz]
    lz = np.log1p(zz)
    total = lz + lz / zz - 1.0
    term = np.ones_like(zz)
    for i in range(1, max_terms + 1):
        term = term * zz
        total -= ((-1.0) ** (i - 1)) * term / (i * (i + 1))
    out[nz] = total
    return out


def _f_bracket(beta, max_terms):
    """The bracketed expression of F for an array of finite beta >= 0."""
    beta = np.asarray(beta, dtype=np.float64)
    lead = (
        2.0 * beta * np.exp(-0.5 * beta * beta) * _INV_SQRT_2PI
        - (2.0 * beta * beta - 1.0) * q_function(beta)
    )
    i = np.arange(1, max_terms + 1, dtype=np.float64)
    signs = np.where(i % 2 == 1, 1.0, -1.0)
    # exp(2i(i+1)b^2) * Q((2i+1)b), computed in the log domain
    log_terms = (2.0 * i * (i + 1.0))[None, :] * (beta * beta)[:, None] + special.log_ndtr(
        -(2.0 * i + 1.0)[None, :] * beta[:, None]
    )
    terms = (signs / (i * (i + 1.0)))[None, :] * np.exp(log_terms)
    if not np.all(np.isfinite(terms)):
        raise NonConvergent("series term is non-finite after log-domain evaluation")
    head = terms.sum(axis=1)
    return lead + head + _tail_quadrature(beta, max_terms)


def f_series(beta, max_terms: int = 5):
    """F(beta); the binary-input AWGN capacity is ``1 - f_series(beta)``.

    Accepts a scalar or an array.  ``max_terms`` controls how many series
    terms are evaluated explicitly; the remainder is folded in analytically,
    so the returned value is stable in ``max_terms`` (this is what makes
    truncation at 3 vs 5 terms indistinguishable).
    """
    if max_terms < 1:
        raise ValueError("max_terms must be >= 1")
    arr = np.atleast_1d(np.asarray(beta, dtype=np.float64))
    if np.any(arr < 0):
        raise ValueError("beta must be >= 0")
    out = np.zeros_like(arr)
    inf = np.isinf(arr)
    out[inf] = 0.0
    if np.any(~inf):
        out[~inf] = _f_bracket(arr[~inf], max_terms) / _LN2
    out = np.clip(out, 0.0, 1.0)
    return float(out[0]) if np.isscalar(beta) or np.ndim(beta) == 0 else out


def bi_awgn_capacity_quadrature(beta: float) -> float:
    """Capacity by adaptive quadrature of the defining integral.

    Independent oracle for ``1 - f_series``: integrates
    phi(t - beta) * log2(1 + exp(-2 beta t)) over [beta - 10, beta + 10].
    """
    beta = float(beta)
    if beta < 0:
        raise ValueError("beta must be >= 0")
    if math.isinf(beta):
        return 1.0

    def integrand(t):
        return (
            _INV_SQRT_2PI
            * math.exp(-0.5 * (t - beta) ** 2)
            * (np.logaddexp(0.0, -2.0 * beta * t) / _LN2)
        )

    val, abserr = integrate.quad(
        integrand, beta - 10.0, beta + 10.0, epsabs=1e-12, epsrel=1e-12, limit=300
    )
    if abserr > 1e-9:
        raise QuadratureFailure(f"quadrature error estimate {abserr:g} exceeds 1e-9")
    return min(max(1.0 - val, 0.0), 1.0)


def secrecy_capacity(beta_bob, beta_eve):
    """Instantaneous secrecy capacity C_B - C_E = F(beta_eve) - F(beta_bob).

    May be negative; rate selection clamps at zero, but capacity sweeps keep
    the raw value.
    """
    return f_series(beta_eve) - f_series(beta_bob)


@dataclass(frozen=True)
class ChannelGains:
    """Squared effective gains entering the SNR formulas.

    ``bob_gain = (h @ p)^2``, ``eve_gain = (g @ p)^2``,
    ``eve_an_gain = ||g @ Z||^2``.  The CDI worst case substitutes
    ``eve_gain = eta0, eve_an_gain = 1`` with ``sigma_e_sq = 0``.
    """

    bob_gain: float
    eve_gain: float
    eve_an_gain: float


@dataclass(frozen=True)
class PowerOptimum:
    """Result of the secrecy-capacity power split."""

    p_u_opt: float
    p_v_opt: float
    c_s_max: float
    feasible: bool


def secrecy_rate_curve(gains: ChannelGains, sigma_b_sq, sigma_e_sq, p_t, n_a, p_u):
    """C_s as a function of signal power P_u (vectorized over ``p_u``).

    The AN power is pinned by the budget equality
    ``P_v = (P_t - P_u) / (n_a - 1)``.  Returns the raw (possibly negative)
    secrecy capacity together with C_B and C_E.
    """
    p_u = np.asarray(p_u, dtype=np.float64)
    p_v = (p_t - p_u) / (n_a - 1)
    beta_b = np.sqrt(p_u * gains.bob_gain / sigma_b_sq)
    num = p_u * gains.eve_gain
    denom = p_v * gains.eve_an_gain + sigma_e_sq
    with np.errstate(divide="ignore", invalid="ignore"):
        snr_e = np.where(denom > 0.0, num / np.maximum(denom, 1e-300), np.where(num > 0, np.inf, 0.0))
    beta_e = np.sqrt(snr_e)
    c_b = 1.0 - f_series(beta_b)
    c_e = 1.0 - f_series(beta_e)
    return c_b - c_e, c_b, c_e


def optimize_power_allocation(
    gains: ChannelGains,
    sigma_b_sq: float,
    sigma_e_sq: float,
    p_t: float,
    n_a: int,
    grid_points: int = 1000,
) -> PowerOptimum:
    """Maximize C_s over P_u in (0, P_t] under the power equality.

    Dense-grid scan followed by golden-section refinement of the best
    bracket; the curve is smooth but not provably unimodal, so the grid
    guards against locking onto a local optimum.  An optimum with
    C_s <= 0 is reported as infeasible with ``c_s_max = 0``.
    """
    if p_t <= 0:
        raise InvalidBudget("p_t must be > 0")
    if n_a < 2:
        raise ValueError("n_a must be >= 2")

    grid = p_t * np.arange(1, grid_points + 1, dtype=np.float64) / grid_points
    c_s, _, _ = secrecy_rate_curve(gains, sigma_b_sq, sigma_e_sq, p_t, n_a, grid)
    best = int(np.argmax(c_s))
    lo = grid[best - 1] if best > 0 else grid[0] / 2.0
    hi = grid[best + 1] if best < grid_points - 1 else grid[-1]

    def objective(p_u):
        val, _, _ = secrecy_rate_curve(gains, sigma_b_sq, sigma_e_sq, p_t, n_a, np.array([p_u]))
        return float(val[0])

    p_u_star, c_s_star = _golden_max(objective, float(lo), float(hi), tol=1e-6 * p_t)
    if c_s[best] > c_s_star:
        p_u_star, c_s_star = float(grid[best]), float(c_s[best])

    p_v_star = (p_t - p_u_star) / (n_a - 1)
    if c_s_star <= 0.0:
        return PowerOptimum(p_u_opt=p_u_star, p_v_opt=p_v_star, c_s_max=0.0, feasible=False)
    return PowerOptimum(p_u_opt=p_u_star, p_v_opt=p_v_star, c_s_max=c_s_star, feasible=True)


def _golden_max(obj, a, b, tol):
    """Golden-section search for the maximum of ``obj`` on [a, b]."""
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    inv_phi_sq = (3.0 - math.sqrt(5.0)) / 2.0
    dist = b - a
    if dist <= tol:
        mid = 0.5 * (a + b)
        return mid, obj(mid)
    n_iter = int(math.ceil(math.log(tol / dist) / math.log(inv_phi)))
    c = a + inv_phi_sq * dist
    d = a + inv_phi * dist
    yc = obj(c)
    yd = obj(d)
    for _ in range(max(n_iter - 1, 0)):
        if yc > yd:
            b, d, yd = d, c, yc
            dist *= inv_phi
            c = a + inv_phi_sq * dist
            yc = obj(c)
        else:
            a, c, yc = c, d, yd
            dist *= inv_phi
            d = a + inv_phi * dist
            yd = obj(d)
    return (c, yc) if yc > yd else (d, yd)
