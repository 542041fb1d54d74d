"""Backend selection for the oracle inner loops.

The compiled extension is preferred; the numpy fallback is used if it was
not built or if ``CAUSEBOUNDS_PURE_PYTHON`` is set to a non-empty value other
than ``0``.
"""

import importlib
import os

_FORCE_PURE = os.environ.get("CAUSEBOUNDS_PURE_PYTHON", "") not in ("", "0")


def load_backend(name):
    """Return the kernel module for ``"cython"`` or ``"numpy"``."""
    if name == "cython":
        return importlib.import_module("causebounds._kernels")
    if name == "numpy":
        return importlib.import_module("causebounds._fallback")
    raise ValueError(f"unknown backend {name!r}")


def available_backends():
    names = ["numpy"]
    try:
        load_backend("cython")
    except ImportError:
        pass
    else:
        names.insert(0, "cython")
    return names


if _FORCE_PURE:
    BACKEND = "numpy"
else:
    try:
        load_backend("cython")
        BACKEND = "cython"
    except ImportError:
        BACKEND = "numpy"

_impl = load_backend(BACKEND)

improvement_samples = _impl.improvement_samples
improvement_moments = _impl.improvement_moments
midpoint_mean = _impl.midpoint_mean
