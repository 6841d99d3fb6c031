"""Quadrature plumbing: adaptive scalar quadrature and fixed Gauss-Legendre panels."""

from __future__ import annotations

from functools import lru_cache

import numpy as np
from scipy import integrate

from .errors import NumericError

EPSABS = 1e-12
EPSREL = 1e-12
LIMIT = 400


def adaptive(f, a: float, b: float, epsabs: float = EPSABS, epsrel: float = EPSREL,
             limit: int = LIMIT, points=None, tol: float | None = None) -> float:
    """Adaptive QUADPACK integral of a real integrand.

    Raises NumericError when the reported error estimate exceeds `tol`
    (default: 1e3 times the requested absolute/relative tolerance).
    """
    kw = dict(epsabs=epsabs, epsrel=epsrel, limit=limit, full_output=1)
    if points is not None and np.isfinite(a) and np.isfinite(b):
        kw["points"] = points
    out = integrate.quad(f, a, b, **kw)
    val, err = out[0], out[1]
    if tol is None:
        tol = 1e3 * max(epsabs, epsrel * abs(val))
    if not np.isfinite(val) or err > tol:
        raise NumericError(f"quadrature on [{a}, {b}] failed: value {val!r}, error estimate {err!r}")
    return val


def adaptive_complex(f, a: float, b: float, **kw) -> complex:
    re = adaptive(lambda x: f(x).real, a, b, **kw)
    im = adaptive(lambda x: f(x).imag, a, b, **kw)
    return complex(re, im)


@lru_cache(maxsize=32)
def _gl(order: int):
    x, w = np.polynomial.legendre.leggauss(order)
    return x, w


def gauss_panels(edges, order: int = 32):
    """Nodes and weights of composite Gauss-Legendre on consecutive panels."""
    x0, w0 = _gl(order)
    edges = np.asarray(edges, dtype=float)
    a, b = edges[:-1, None], edges[1:, None]
    half = 0.5 * (b - a)
    nodes = (a + b) / 2 + half * x0[None, :]
    weights = half * w0[None, :]
    return nodes.ravel(), weights.ravel()


def real_line_nodes(scale: float = 1.0, order: int = 32, panels: int = 60):
    """Nodes/weights for integrals over the real line of functions decaying like |x|^-2 or faster.

    Uses x = scale*sinh(u) with uniform panels in u on [-U, U]; the sinh map
    turns algebraic tails into exponentially decaying ones.
    """
    U = 36.0
    u, w = gauss_panels(np.linspace(-U, U, panels + 1), order)
    x = scale * np.sinh(u)
    return x, w * scale * np.cosh(u)
