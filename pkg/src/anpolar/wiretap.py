"""Secret/random/frozen partitioning and secure encoding over the wiretap code.

The legitimate receiver's information set A is split against the
eavesdropper's: indices of A that are *also* good for the eavesdropper carry
uniformly random bits (set M), the rest of A carries the secret message
(set G), and the complement of A is frozen to zero (set B).  Secrecy rate is
|G| / N.

Finite-sample constructions can violate the degraded-channel nesting that
theory promises, so M is always chosen as the k_eve indices of A that rank
best for the eavesdropper; this forces M inside A while keeping |G| =
k_bob - k_eve and placing the random bits exactly where the eavesdropper is
strongest.
"""

import hashlib
from dataclasses import dataclass

import numpy as np

from .errors import LengthMismatch, RateInversion
from .polar import PolarConstruction, polar_transform, sc_decode


@dataclass(frozen=True)
class WiretapPartition:
    """Disjoint index sets: g_set (secret), m_set (random), b_set (frozen)."""

    n: int
    g_set: np.ndarray
    m_set: np.ndarray
    b_set: np.ndarray

    def __post_init__(self):
        size = 1 << self.n
        g = np.sort(np.asarray(self.g_set, dtype=np.int64))
        m = np.sort(np.asarray(self.m_set, dtype=np.int64))
        b = np.sort(np.asarray(self.b_set, dtype=np.int64))
        union = np.concatenate([g, m, b])
        if union.size != size or np.unique(union).size != size:
            raise ValueError("g/m/b sets must partition {0..N-1}")
        if union.size and (union.min() < 0 or union.max() >= size):
            raise ValueError("partition indices out of range")
        for name, arr in (("g_set", g), ("m_set", m), ("b_set", b)):
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)

    @property
    def block_length(self):
        return 1 << self.n

    @property
    def secrecy_rate(self):
        return self.g_set.size / self.block_length

    @property
    def info_set(self):
        """The legitimate receiver's information set A = G union M."""
        return np.sort(np.concatenate([self.g_set, self.m_set]))


def build_partition(
    bob_construction: PolarConstruction,
    eve_construction: PolarConstruction,
    k_bob: int,
    k_eve: int,
) -> WiretapPartition:
    """Derive the G/M/B split from the two channels' constructions.

    A = the k_bob most reliable indices for the legitimate channel; M = the
    k_eve indices of A ranking best for the eavesdropper; G = A minus M;
    B = everything else.  Raises RateInversion when k_eve > k_bob.
    """
    if bob_construction.n != eve_construction.n:
        raise ValueError("constructions must share the block length")
    if k_eve > k_bob:
        raise RateInversion(f"k_eve={k_eve} exceeds k_bob={k_bob}")
    size = bob_construction.block_length
    if not 0 <= k_bob <= size:
        raise ValueError("k_bob out of range")

    a_set = np.sort(bob_construction.ranked_indices()[:k_bob])
    eve_rel = eve_construction.reliability[a_set]
    order = np.argsort(eve_rel, kind="stable")
    m_set = np.sort(a_set[order[:k_eve]])
    g_set = np.sort(a_set[order[k_eve:]])
    mask = np.ones(size, dtype=bool)
    mask[a_set] = False
    b_set = np.nonzero(mask)[0].astype(np.int64)
    return WiretapPartition(n=bob_construction.n, g_set=g_set, m_set=m_set, b_set=b_set)


def _as_bits(x, length, name):
    bits = np.asarray(x, dtype=np.uint8)
    if bits.shape[-1] != length:
        raise LengthMismatch(f"{name} must have length {length}, got {bits.shape[-1]}")
    return bits


def secure_encode(s, r, partition: WiretapPartition) -> np.ndarray:
    """Place secret bits on G, random bits on M, zeros on B, then transform."""
    s = _as_bits(s, partition.g_set.size, "s")
    r = _as_bits(r, partition.m_set.size, "r")
    u = np.zeros(partition.block_length, dtype=np.uint8)
    u[partition.g_set] = s
    u[partition.m_set] = r
    return polar_transform(u)


def secure_encode_batch(s, r, partition: WiretapPartition) -> np.ndarray:
    """Batched :func:`secure_encode`; s is (blocks, |G|), r is (blocks, |M|)."""
    s = _as_bits(s, partition.g_set.size, "s")
    r = _as_bits(r, partition.m_set.size, "r")
    u = np.zeros((s.shape[0], partition.block_length), dtype=np.uint8)
    u[:, partition.g_set] = s
    u[:, partition.m_set] = r
    return polar_transform(u)


def secure_decode(llrs, partition: WiretapPartition):
    """SC-decode with B frozen to zero; return (s_hat, r_hat)."""
    u_hat = sc_decode(llrs, partition.b_set, 0)
    return u_hat[..., partition.g_set], u_hat[..., partition.m_set]


def partition_record(
    partition: WiretapPartition,
    bob_construction: PolarConstruction,
    eve_construction: PolarConstruction,
) -> dict:
    """Self-describing export record with construction fingerprints."""
    return {
        "format": "anpolar-partition",
        "version": 1,
        "n": partition.n,
        "k_bob": int(partition.g_set.size + partition.m_set.size),
        "k_eve": int(partition.m_set.size),
        "g_set": partition.g_set.tolist(),
        "m_set": partition.m_set.tolist(),
        "bob_fingerprint": construction_fingerprint(bob_construction),
        "eve_fingerprint": construction_fingerprint(eve_construction),
    }


def construction_fingerprint(construction: PolarConstruction) -> str:
    """SHA-256 over the reliability vector plus the construction metadata."""
    h = hashlib.sha256()
    h.update(
        f"{construction.n}|{construction.method}|{construction.snr!r}|"
        f"{construction.num_samples}|{construction.seed}".encode()
    )
    h.update(np.ascontiguousarray(construction.reliability).tobytes())
    return h.hexdigest()
