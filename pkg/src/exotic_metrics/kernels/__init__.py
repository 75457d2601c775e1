"""Scaled-integer sweeps over many cobweb points at once.

The compiled extension is preferred; the numpy module is the fallback.
Set ``EXOTIC_METRICS_PURE_PYTHON=1`` to force the fallback.
"""
from __future__ import annotations

import math
import os
from fractions import Fraction

import numpy as np

from ..cobweb import Vortex
from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

if _ckernels is not None and not os.environ.get("EXOTIC_METRICS_PURE_PYTHON"):
    BACKEND = "cython"
    _impl = _ckernels
else:
    BACKEND = "python"
    _impl = _pykernels

# Room for sums of three thread lengths without int64 overflow.
_LIMIT = 2**60


def backend(name: str | None = None):
    """The kernel module called ``name`` ("cython" or "python"), or the active one."""
    if name is None:
        return _impl
    if name == "python":
        return _pykernels
    if name == "cython":
        if _ckernels is None:
            raise ImportError("compiled kernels are not built")
        return _ckernels
    raise ValueError(f"unknown kernel backend {name!r}")


class Encoded:
    """Cobweb points as int64 arrays in units of ``1 / scale``."""

    def __init__(self, u, v, t, length, scale):
        self.u, self.v, self.t = u, v, t
        self.length = length
        self.scale = scale

    def __len__(self):
        return len(self.u)

    def to_units(self, x: Fraction) -> int:
        """``x`` in kernel units, rounded down (exact when representable)."""
        return math.floor(Fraction(x) * self.scale)


def encode(points, eps) -> Encoded | None:
    """Encode canonical cobweb points; None if the common scale overflows."""
    eps = Fraction(eps)
    scale = eps.denominator
    for p in points:
        if not isinstance(p, Vortex):
            scale = math.lcm(scale, p.t.denominator)
            if scale > _LIMIT:
                return None
    length = int(eps * scale)
    if 4 * length >= _LIMIT:
        return None
    ids: dict = {}
    n = len(points)
    u = np.empty(n, dtype=np.int64)
    v = np.empty(n, dtype=np.int64)
    t = np.zeros(n, dtype=np.int64)
    for i, p in enumerate(points):
        if isinstance(p, Vortex):
            u[i] = v[i] = ids.setdefault(p.v, len(ids))
        else:
            u[i] = ids.setdefault(p.u, len(ids))
            v[i] = ids.setdefault(p.v, len(ids))
            t[i] = int(p.t * scale)
    return Encoded(u, v, t, length, scale)


def pairwise(enc: Encoded, impl=None) -> np.ndarray:
    impl = impl or _impl
    return impl.pairwise(enc.u, enc.v, enc.t, enc.length)


def chain_labels(enc: Encoded, thresh: Fraction, impl=None) -> np.ndarray:
    impl = impl or _impl
    return impl.chain_labels(enc.u, enc.v, enc.t, enc.length, enc.to_units(thresh))


def batch(enc: Encoded, i, j, impl=None) -> np.ndarray:
    """Distances between points ``i[k]`` and ``j[k]`` of one encoding."""
    impl = impl or _impl
    i = np.asarray(i, dtype=np.intp)
    j = np.asarray(j, dtype=np.intp)
    return impl.batch(enc.u[i], enc.v[i], enc.t[i], enc.u[j], enc.v[j], enc.t[j], enc.length)
