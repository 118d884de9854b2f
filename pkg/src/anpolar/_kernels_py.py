"""Pure-NumPy kernels: polar butterfly transform and batched SC decoding.

These operate in *natural* index order (no bit-reversal); :mod:`anpolar.polar`
applies the bit-reversal permutation around them.  A compiled twin of this
module lives in ``_kernels.pyx``; whichever is available is picked at import
time by ``_backend``.  Both implement the same arithmetic:

  f(a, b) = 2 atanh(tanh(a/2) tanh(b/2))   (sign-min fallback when both
                                            magnitudes exceed 30)
  g(a, b, s) = b + (1 - 2 s) a

with every LLR saturated to [-40, 40] so tanh never rounds to exactly +-1
inside the stable region.
"""

import numpy as np

BACKEND = "py"

LLR_CLAMP = 40.0
_TANH_SAFE = 30.0


def _f_op(a, b):
    big = (np.abs(a) > _TANH_SAFE) & (np.abs(b) > _TANH_SAFE)
    with np.errstate(divide="ignore"):
        out = 2.0 * np.arctanh(np.tanh(0.5 * a) * np.tanh(0.5 * b))
    np.copyto(out, np.sign(a) * np.sign(b) * np.minimum(np.abs(a), np.abs(b)), where=big)
    return np.clip(out, -LLR_CLAMP, LLR_CLAMP)


def _g_op(a, b, x_left):
    return np.clip(b + (1.0 - 2.0 * x_left) * a, -LLR_CLAMP, LLR_CLAMP)


def polar_transform_batch(bits):
    """Butterfly for x = u F^{xn} (natural order), batched over rows."""
    x = np.array(bits, dtype=np.uint8, copy=True)
    squeeze = x.ndim == 1
    if squeeze:
        x = x[None, :]
    rows, n = x.shape
    half = n // 2
    while half >= 1:
        blocks = x.reshape(rows, -1, 2, half)
        blocks[:, :, 0, :] ^= blocks[:, :, 1, :]
        half //= 2
    return x[0] if squeeze else x


def sc_decode_batch(llrs, frozen_mask, frozen_vals):
    """Successive-cancellation decoding of a batch of codewords.

    ``llrs`` is (batch, N) in natural order; ``frozen_mask``/``frozen_vals``
    are length-N natural-order arrays.  Ties (LLR == 0) decode to 0.
    Returns the decoded u rows as uint8.
    """
    llrs = np.clip(np.asarray(llrs, dtype=np.float64), -LLR_CLAMP, LLR_CLAMP)
    batch, n = llrs.shape
    u_hat = np.empty((batch, n), dtype=np.uint8)

    def recurse(llr, lo):
        width = llr.shape[1]
        if width == 1:
            if frozen_mask[lo]:
                bit = np.full(batch, frozen_vals[lo], dtype=np.uint8)
            else:
                bit = (llr[:, 0] < 0).astype(np.uint8)
            u_hat[:, lo] = bit
            return bit[:, None]
        half = width // 2
        a, b = llr[:, :half], llr[:, half:]
        x_left = recurse(_f_op(a, b), lo)
        x_right = recurse(_g_op(a, b, x_left), lo + half)
        return np.concatenate([x_left ^ x_right, x_right], axis=1)

    recurse(llrs, 0)
    return u_hat


def genie_llr_negative_counts(llrs):
    """Per-index (negative, zero) counts of genie-aided decision LLRs.

    ``llrs`` holds channel LLRs for all-zero codewords, one sample per row.
    With the true bits all zero, the g-update degenerates to a + b, so the
    whole genie-aided SC pass is a density-evolution sweep.  For each
    natural-order index, returns how many samples would decide 1 (LLR < 0)
    and how many are ties (LLR == 0, half an error on a symmetric channel).
    """
    llrs = np.clip(np.asarray(llrs, dtype=np.float64), -LLR_CLAMP, LLR_CLAMP)
    _, n = llrs.shape
    neg = np.zeros(n, dtype=np.int64)
    ties = np.zeros(n, dtype=np.int64)

    def recurse(llr, lo):
        width = llr.shape[1]
        if width == 1:
            neg[lo] = int(np.count_nonzero(llr[:, 0] < 0))
            ties[lo] = int(np.count_nonzero(llr[:, 0] == 0.0))
            return
        half = width // 2
        a, b = llr[:, :half], llr[:, half:]
        recurse(_f_op(a, b), lo)
        recurse(np.clip(a + b, -LLR_CLAMP, LLR_CLAMP), lo + half)

    recurse(llrs, 0)
    return neg, ties
