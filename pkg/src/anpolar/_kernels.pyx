# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: polar butterfly transform and successive-cancellation
decoding, mirroring the arithmetic of ``_kernels_py`` exactly (tanh-rule f
with sign-min fallback for magnitudes above 30, LLR saturation at 40).
"""

import numpy as np

from libc.math cimport atanh, fabs, tanh

BACKEND = "c"

LLR_CLAMP = 40.0

cdef double _CLAMP = 40.0
cdef double _SAFE = 30.0


cdef inline double _clip(double x) nogil:
    if x > _CLAMP:
        return _CLAMP
    if x < -_CLAMP:
        return -_CLAMP
    return x


cdef inline double _f(double a, double b) nogil:
    cdef double fa = fabs(a)
    cdef double fb = fabs(b)
    cdef double out
    if fa > _SAFE and fb > _SAFE:
        out = fa if fa < fb else fb
        if (a < 0) != (b < 0):
            out = -out
        return _clip(out)
    return _clip(2.0 * atanh(tanh(0.5 * a) * tanh(0.5 * b)))


def polar_transform_batch(bits):
    """Butterfly for x = u F^{xn} (natural order), batched over rows."""
    x = np.array(bits, dtype=np.uint8, copy=True)
    squeeze = x.ndim == 1
    if squeeze:
        x = x[None, :]
    cdef unsigned char[:, ::1] xv = np.ascontiguousarray(x)
    cdef Py_ssize_t rows = xv.shape[0]
    cdef Py_ssize_t size = xv.shape[1]
    cdef Py_ssize_t half, start, j, r
    with nogil:
        for r in range(rows):
            half = size // 2
            while half >= 1:
                start = 0
                while start < size:
                    for j in range(half):
                        xv[r, start + j] ^= xv[r, start + half + j]
                    start += 2 * half
                half //= 2
    out = np.asarray(xv)
    return out[0] if squeeze else out


cdef void _sc_node(
    double[:, ::1] llr_buf,
    unsigned char[:, ::1] x_buf,
    const unsigned char* frozen_mask,
    const unsigned char* frozen_vals,
    unsigned char* u_row,
    Py_ssize_t depth,
    Py_ssize_t lo,
    Py_ssize_t width,
    Py_ssize_t max_n,
) nogil:
    """One SC node: llr_buf[depth, :width] holds this node's LLRs; writes the
    node codeword into x_buf[depth, :width] and decisions into u_row."""
    cdef Py_ssize_t half, j
    cdef unsigned char bit
    if width == 1:
        if frozen_mask[lo]:
            bit = frozen_vals[lo]
        else:
            bit = 1 if llr_buf[depth, 0] < 0.0 else 0
        u_row[lo] = bit
        x_buf[depth, 0] = bit
        return
    half = width // 2
    for j in range(half):
        llr_buf[depth + 1, j] = _f(llr_buf[depth, j], llr_buf[depth, half + j])
    _sc_node(llr_buf, x_buf, frozen_mask, frozen_vals, u_row, depth + 1, lo, half, max_n)
    # stash left codeword before the right child reuses the child buffers
    for j in range(half):
        x_buf[depth, j] = x_buf[depth + 1, j]
    for j in range(half):
        if x_buf[depth, j]:
            llr_buf[depth + 1, j] = _clip(llr_buf[depth, half + j] - llr_buf[depth, j])
        else:
            llr_buf[depth + 1, j] = _clip(llr_buf[depth, half + j] + llr_buf[depth, j])
    _sc_node(llr_buf, x_buf, frozen_mask, frozen_vals, u_row, depth + 1, lo + half, half, max_n)
    for j in range(half):
        x_buf[depth, half + j] = x_buf[depth + 1, j]
        x_buf[depth, j] ^= x_buf[depth + 1, j]


def sc_decode_batch(llrs, frozen_mask, frozen_vals):
    """Successive-cancellation decoding of a batch of codewords.

    Same contract as the NumPy twin: natural-order (batch, N) LLRs and
    length-N frozen mask/values; ties decode to 0.
    """
    llr_arr = np.clip(np.asarray(llrs, dtype=np.float64), -LLR_CLAMP, LLR_CLAMP)
    cdef double[:, ::1] llr_in = np.ascontiguousarray(llr_arr)
    cdef unsigned char[::1] mask = np.ascontiguousarray(frozen_mask, dtype=np.uint8)
    cdef unsigned char[::1] vals = np.ascontiguousarray(frozen_vals, dtype=np.uint8)
    cdef Py_ssize_t batch = llr_in.shape[0]
    cdef Py_ssize_t size = llr_in.shape[1]
    cdef int n = 0
    while (1 << n) < size:
        n += 1
    out = np.empty((batch, size), dtype=np.uint8)
    cdef unsigned char[:, ::1] u_hat = out
    buf = np.empty((n + 1, size), dtype=np.float64)
    xb = np.empty((n + 1, size), dtype=np.uint8)
    cdef double[:, ::1] llr_buf = buf
    cdef unsigned char[:, ::1] x_buf = xb
    cdef Py_ssize_t r, j
    with nogil:
        for r in range(batch):
            for j in range(size):
                llr_buf[0, j] = llr_in[r, j]
            _sc_node(llr_buf, x_buf, &mask[0], &vals[0], &u_hat[r, 0], 0, 0, size, n)
    return out


def genie_llr_negative_counts(llrs):
    """Per-index (negative, zero) counts of genie-aided decision LLRs.

    Iterative all-zero-codeword density-evolution sweep over a (samples, N)
    LLR matrix; same contract as the NumPy twin.
    """
    llr_arr = np.clip(np.asarray(llrs, dtype=np.float64), -LLR_CLAMP, LLR_CLAMP)
    cdef Py_ssize_t samples = llr_arr.shape[0]
    cdef Py_ssize_t size = llr_arr.shape[1]
    cdef int n = 0
    while (1 << n) < size:
        n += 1
    neg_arr = np.zeros(size, dtype=np.int64)
    tie_arr = np.zeros(size, dtype=np.int64)
    cdef long long[::1] neg = neg_arr
    cdef long long[::1] ties = tie_arr
    # per-level workspace: level d holds a (samples, size >> d) block
    bufs = [np.ascontiguousarray(llr_arr)]
    for d in range(1, n + 1):
        bufs.append(np.empty((samples, max(size >> d, 1)), dtype=np.float64))
    cdef double[:, ::1] cur
    cdef double[:, ::1] child

    # explicit stack of (depth, lo, phase); phase 0 -> do f child, 1 -> g child
    stack = [(0, 0, 0)]
    cdef Py_ssize_t depth, lo, phase, width, half, s, j
    cdef long long negc, tiec
    while stack:
        depth, lo, phase = stack.pop()
        width = size >> depth
        cur = bufs[depth]
        if width == 1:
            negc = 0
            tiec = 0
            with nogil:
                for s in range(samples):
                    if cur[s, 0] < 0.0:
                        negc += 1
                    elif cur[s, 0] == 0.0:
                        tiec += 1
            neg[lo] = negc
            ties[lo] = tiec
            continue
        half = width // 2
        child = bufs[depth + 1]
        if phase == 0:
            # compute f child now; revisit this node for the g child after
            stack.append((depth, lo, 1))
            with nogil:
                for s in range(samples):
                    for j in range(half):
                        child[s, j] = _f(cur[s, j], cur[s, half + j])
            stack.append((depth + 1, lo, 0))
        else:
            with nogil:
                for s in range(samples):
                    for j in range(half):
                        child[s, j] = _clip(cur[s, j] + cur[s, half + j])
            stack.append((depth + 1, lo + half, 0))
    return neg_arr, tie_arr
