"""Kernel backend selection.

Prefers the compiled Cython kernels when they are importable, falling back
to the pure-NumPy implementation.  Set ``ANPOLAR_KERNELS=py`` (or ``c``) to
force a backend; forcing ``c`` raises if the extension is missing instead of
silently falling back.
"""

import os

from . import _kernels_py

_requested = os.environ.get("ANPOLAR_KERNELS", "").strip().lower()

if _requested == "py":
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        if _requested == "c":
            raise ImportError(
                "ANPOLAR_KERNELS=c requested but the compiled extension is not built"
            )
        _impl = _kernels_py


def kernel_backend() -> str:
    """Name of the active kernel backend: 'c' (compiled) or 'py' (NumPy)."""
    return _impl.BACKEND


def get_impl(name: str | None = None):
    """Return a kernels module: the active one, or 'c'/'py' explicitly."""
    if name is None:
        return _impl
    if name == "py":
        return _kernels_py
    if name == "c":
        from . import _kernels  # type: ignore[attr-defined]

        return _kernels
    raise ValueError(f"unknown backend {name!r}")


polar_transform_batch = _impl.polar_transform_batch
sc_decode_batch = _impl.sc_decode_batch
genie_llr_negative_counts = _impl.genie_llr_negative_counts
LLR_CLAMP = _kernels_py.LLR_CLAMP
