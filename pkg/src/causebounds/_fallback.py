"""numpy implementations of the oracle inner loops.

Used when the compiled ``_kernels`` extension is unavailable, or forced with
``CAUSEBOUNDS_PURE_PYTHON=1``.
"""

import numpy as np


def _improvement(d, p, q, upper):
    if upper:
        r = 1.0 - q
        base = min(p, r)
        return base - np.minimum(np.minimum(base, d), p + r - d)
    base = max(0.0, p - q)
    return np.maximum(np.maximum(base, d - q), p - d) - base


def improvement_samples(u, lo, hi, p, q, upper):
    u = np.asarray(u, dtype=np.float64)
    return _improvement(lo + (hi - lo) * u, p, q, upper)


def improvement_moments(u, lo, hi, p, q, upper):
    v = improvement_samples(u, lo, hi, p, q, upper)
    return float(v.sum()), float(np.dot(v, v))


def midpoint_mean(lo, hi, p, q, upper, panels):
    if hi <= lo:
        return float(_improvement(np.float64(lo), p, q, upper))
    h = (hi - lo) / panels
    d = lo + (np.arange(panels) + 0.5) * h
    return float(_improvement(d, p, q, upper).sum() / panels)
