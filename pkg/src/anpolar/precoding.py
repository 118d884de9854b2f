"""Artificial-noise precoding for the MISO wiretap channel.

The transmitter splits its signal space into the direction of the legitimate
channel vector ``h`` (unit vector ``p``) and the null space of ``h`` (the
columns of ``Z``).  Information rides on ``p``; artificial noise is injected
along ``Z`` so it degrades only the eavesdropper.  Both effective links then
reduce to scalar binary-input AWGN channels with the SNRs computed here.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateDenominator, ZeroChannel

_ZERO_NORM_TOL = 1e-12
_DENOM_TOL = 1e-15


def _as_vector(x, name):
    v = np.asarray(x, dtype=np.float64)
    if v.ndim != 1:
        raise ValueError(f"{name} must be a 1-D real vector, got shape {v.shape}")
    return v


@dataclass(frozen=True)
class ChannelRealization:
    """One fading draw: channel vectors and noise variances (linear scale).

    ``sigma_e_sq = 0`` encodes the CDI worst case of a noiseless eavesdropper.
    """

    h: np.ndarray
    g: np.ndarray
    sigma_b_sq: float
    sigma_e_sq: float

    def __post_init__(self):
        h = _as_vector(self.h, "h")
        g = _as_vector(self.g, "g")
        if h.size != g.size:
            raise ValueError("h and g must have the same length")
        if h.size < 2:
            raise ValueError("need at least 2 transmit antennas")
        if float(np.linalg.norm(h)) < _ZERO_NORM_TOL:
            raise ZeroChannel("legitimate channel vector is numerically zero")
        if not self.sigma_b_sq > 0:
            raise ValueError("sigma_b_sq must be > 0")
        if self.sigma_e_sq < 0:
            raise ValueError("sigma_e_sq must be >= 0")
        h.flags.writeable = False
        g.flags.writeable = False
        object.__setattr__(self, "h", h)
        object.__setattr__(self, "g", g)

    @property
    def n_a(self):
        return self.h.size


@dataclass(frozen=True)
class PrecodingBasis:
    """Unit vector ``p`` along ``h`` plus an orthonormal null-space basis ``Z``."""

    p: np.ndarray
    Z: np.ndarray

    def __post_init__(self):
        p = _as_vector(self.p, "p")
        Z = np.asarray(self.Z, dtype=np.float64)
        if Z.shape != (p.size, p.size - 1):
            raise ValueError(f"Z must be {p.size}x{p.size - 1}, got {Z.shape}")
        p.flags.writeable = False
        Z.flags.writeable = False
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "Z", Z)

    @property
    def n_a(self):
        return self.p.size


@dataclass(frozen=True)
class PowerAllocation:
    """Signal power per bit, AN power per null-space element, and the budget.

    At the secrecy-capacity optimum the power constraint holds with equality,
    so the constructor enforces ``p_u + (n_a - 1) * p_v == p_t``.
    """

    p_u: float
    p_v: float
    p_t: float
    n_a: int

    def __post_init__(self):
        if not self.p_u > 0:
            raise ValueError("p_u must be > 0")
        if self.p_v < 0:
            raise ValueError("p_v must be >= 0")
        if self.n_a < 2:
            raise ValueError("n_a must be >= 2")
        gap = abs(self.p_u + (self.n_a - 1) * self.p_v - self.p_t)
        if gap > 1e-9 * max(1.0, abs(self.p_t)):
            raise ValueError(
                f"power constraint violated: p_u + (n_a-1)*p_v differs from p_t by {gap:g}"
            )


def orthonormal_decomposition(h) -> PrecodingBasis:
    """Split the transmit space into span(h) and its orthogonal complement.

    Returns ``p = h / ||h||`` (so the effective gain ``h @ p`` is positive)
    and ``Z``, an orthonormal basis of the null space of ``h^T`` obtained from
    a Householder QR of ``h``.  Only span(Z) is meaningful; individual columns
    are an implementation detail.
    """
    h = _as_vector(h, "h")
    if h.size < 2:
        raise ValueError("need at least 2 antennas for a null space")
    norm = float(np.linalg.norm(h))
    if norm < _ZERO_NORM_TOL:
        raise ZeroChannel("cannot build a precoding basis for a zero channel")
    p = h / norm
    q, _ = np.linalg.qr(h.reshape(-1, 1), mode="complete")
    Z = q[:, 1:]
    return PrecodingBasis(p=p, Z=Z)


def snr_bob(basis: PrecodingBasis, chan: ChannelRealization, alloc: PowerAllocation) -> float:
    """Legitimate-receiver SNR: P_u * (h @ p)^2 / sigma_B^2."""
    gain = float(chan.h @ basis.p)
    return alloc.p_u * gain * gain / chan.sigma_b_sq


def snr_eve(basis: PrecodingBasis, chan: ChannelRealization, alloc: PowerAllocation) -> float:
    """Eavesdropper SNR with the AN folded into the noise floor.

    P_u * (g @ p)^2 / (P_v * ||g @ Z||^2 + sigma_E^2).  Raises
    DegenerateDenominator when a noiseless Eve is aligned with p so the AN
    cannot jam her at all.
    """
    num = alloc.p_u * float(chan.g @ basis.p) ** 2
    denom = alloc.p_v * float(np.sum((chan.g @ basis.Z) ** 2)) + chan.sigma_e_sq
    if denom < _DENOM_TOL:
        raise DegenerateDenominator(
            "AN power reaching Eve plus her channel noise is numerically zero"
        )
    return num / denom


def snr_eve_worst_case(basis: PrecodingBasis, g, alloc: PowerAllocation) -> float:
    """Eve's SNR with her channel noise dropped (noiseless-eavesdropper case).

    Equals :func:`snr_eve` with ``sigma_e_sq = 0`` and upper-bounds it for any
    positive noise variance.
    """
    g = _as_vector(g, "g")
    num = alloc.p_u * float(g @ basis.p) ** 2
    denom = alloc.p_v * float(np.sum((g @ basis.Z) ** 2))
    if denom < _DENOM_TOL:
        raise DegenerateDenominator("AN does not reach this eavesdropper draw")
    return num / denom
