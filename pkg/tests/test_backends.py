"""Cross-checks between the compiled kernels and the NumPy fallback."""

import numpy as np
import pytest

from anpolar import _backend

try:
    C_IMPL = _backend.get_impl("c")
    HAVE_C = True
except ImportError:
    HAVE_C = False

PY_IMPL = _backend.get_impl("py")

needs_c = pytest.mark.skipif(not HAVE_C, reason="compiled kernels not built")


def test_active_backend_reports_name():
    assert _backend.kernel_backend() in ("c", "py")


@needs_c
@pytest.mark.parametrize("n", [1, 3, 6, 9, 11])
def test_transform_agreement(n):
    rng = np.random.default_rng(n)
    bits = rng.integers(0, 2, (17, 1 << n)).astype(np.uint8)
    assert np.array_equal(
        PY_IMPL.polar_transform_batch(bits), C_IMPL.polar_transform_batch(bits)
    )


@needs_c
@pytest.mark.parametrize("n", [1, 3, 6, 9, 11])
def test_sc_decode_agreement(n):
    rng = np.random.default_rng(100 + n)
    size = 1 << n
    llrs = rng.normal(0.9, 1.5, (13, size))
    mask = (rng.random(size) < 0.45).astype(np.uint8)
    vals = (rng.random(size) < 0.5).astype(np.uint8) * mask
    a = PY_IMPL.sc_decode_batch(llrs, mask, vals)
    b = C_IMPL.sc_decode_batch(llrs, mask, vals)
    assert np.array_equal(a, b)


@needs_c
@pytest.mark.parametrize("n", [2, 6, 10])
def test_genie_agreement(n):
    rng = np.random.default_rng(200 + n)
    llrs = rng.normal(1.8, 1.9, (512, 1 << n))
    llrs[rng.random(llrs.shape) < 0.01] = 0.0  # exercise the tie counter
    neg_p, tie_p = PY_IMPL.genie_llr_negative_counts(llrs)
    neg_c, tie_c = C_IMPL.genie_llr_negative_counts(llrs)
    assert np.array_equal(neg_p, neg_c)
    assert np.array_equal(tie_p, tie_c)


@needs_c
def test_saturation_and_tie_paths_agree():
    # exercise the sign-min fallback and the clamp on both sides
    rng = np.random.default_rng(77)
    llrs = rng.choice([-45.0, -31.0, -0.5, 0.0, 0.5, 31.0, 45.0], size=(40, 64))
    mask = np.zeros(64, dtype=np.uint8)
    vals = np.zeros(64, dtype=np.uint8)
    assert np.array_equal(
        PY_IMPL.sc_decode_batch(llrs, mask, vals), C_IMPL.sc_decode_batch(llrs, mask, vals)
    )


def test_forced_backend_env():
    import subprocess
    import sys

    code = "import anpolar, sys; sys.stdout.write(anpolar.kernel_backend())"
    out = subprocess.run(
        [sys.executable, "-c", code],
        env={"ANPOLAR_KERNELS": "py", "PATH": "/usr/bin:/bin"},
        capture_output=True,
        text=True,
    )
    assert out.stdout == "py"
