"""Complex digamma / log-gamma and the closed-form integrals used by the trace formula.

Digamma and log-gamma shift the argument upward until Re(z) >= 10 and then
use the Bernoulli asymptotic series; digamma uses reflection for Re(z) < 1/2.
Everything is double precision and vectorised over numpy arrays.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import ConvergenceError, DomainError, RangeError

EULER_GAMMA = 0.57721566490153286061
LOG_2PI_HALF = 0.5 * math.log(2 * math.pi)
_SHIFT = 10.0
_ORDER = 8


# --- Bernoulli numbers ---------------------------------------------------------

@lru_cache(maxsize=None)
def _bernoulli_all(m: int) -> tuple[Fraction, ...]:
    """B_0..B_m (convention B_1 = +1/2) via the Akiyama-Tanigawa algorithm."""
    out = []
    a = [Fraction(0)] * (m + 1)
    for i in range(m + 1):
        a[i] = Fraction(1, i + 1)
        for j in range(i, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
        out.append(a[0])
    return tuple(out)


@dataclass(frozen=True)
class BernoulliTable:
    """Exact B_2, B_4, ..., B_2K."""

    values: tuple[Fraction, ...]

    @classmethod
    def build(cls, K: int) -> "BernoulliTable":
        if K < 0:
            raise DomainError("table size must be nonnegative")
        allb = _bernoulli_all(2 * K)
        return cls(tuple(allb[2 * k] for k in range(1, K + 1)))

    def __len__(self) -> int:
        return len(self.values)

    def b2k(self, k: int) -> Fraction:
        """B_{2k}, k >= 1."""
        return self.values[k - 1]

    def at_half(self, k: int) -> Fraction:
        """Bernoulli polynomial B_{2k}(1/2) = (2^{1-2k} - 1) B_{2k}."""
        return (Fraction(2) ** (1 - 2 * k) - 1) * self.b2k(k)


BERNOULLI = BernoulliTable.build(30)
_B2K = np.array([float(BERNOULLI.b2k(k)) for k in range(1, _ORDER + 1)])


@dataclass(frozen=True)
class AsymptoticSeries:
    """log_coefficient*log z + sum coeff*z**exponent, truncated.

    `omitted` is the first dropped term (exponent, coefficient); its modulus
    at z is the documented error bound for |z| large enough that the terms
    decrease.
    """

    log_coefficient: float
    terms: tuple[tuple[int, float], ...]
    omitted: tuple[int, float]

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        val = self.log_coefficient * np.log(z)
        for e, c in self.terms:
            val = val + c * z ** e
        return val

    def error_bound(self, z) -> float:
        e, c = self.omitted
        return float(np.max(np.abs(c * np.asarray(z, dtype=complex) ** e)))


def digamma_series(order: int) -> AsymptoticSeries:
    """psi(z+1) ~ log z + 1/(2z) - sum_{k<=order} B_2k / (2k z^2k)."""
    if order < 0 or order >= len(BERNOULLI):
        raise RangeError(f"order must lie in [0, {len(BERNOULLI) - 1}]")
    terms = [(-1, 0.5)]
    terms += [(-2 * k, -float(BERNOULLI.b2k(k)) / (2 * k)) for k in range(1, order + 1)]
    k = order + 1
    return AsymptoticSeries(1.0, tuple(terms), (-2 * k, -float(BERNOULLI.b2k(k)) / (2 * k)))


# --- helpers -----------------------------------------------------------------------

def _check_poles(z: np.ndarray) -> None:
    bad = (z.imag == 0) & (z.real <= 0) & (z.real == np.round(z.real))
    if np.any(bad):
        k = int(z.real[bad].flat[0])
        raise DomainError(f"Gamma has a pole at z = {k}")


def _wrap(z_in, out: np.ndarray):
    """Return a scalar for scalar input, real when the input was real and the result is."""
    if np.ndim(z_in) == 0:
        v = complex(out.reshape(()))
        if not np.iscomplexobj(z_in) and v.imag == 0.0:
            return v.real
        return v
    if not np.iscomplexobj(z_in) and np.all(out.imag == 0.0):
        return out.real
    return out


def _pi_cot_pi(z: np.ndarray) -> np.ndarray:
    """pi*cot(pi z), stable for large |Im z| (uses periodicity then exponentials)."""
    zr = z - np.round(z.real)
    x = 2j * np.pi * zr
    up = zr.imag >= 0
    e = np.exp(np.where(up, x, -x))
    # Im >= 0: cot = i(e+1)/(e-1) with e = exp(2 pi i z); else cot = i(1+e)/(1-e) with e = exp(-2 pi i z)
    cot = np.where(up, 1j * (e + 1) / (e - 1), 1j * (1 + e) / (1 - e))
    return np.pi * cot


def _digamma_right(w: np.ndarray) -> np.ndarray:
    """psi on Re(w) >= 1/2 by upward recurrence and the order-8 Bernoulli series."""
    w = w.copy()
    acc = np.zeros_like(w)
    m = w.real < _SHIFT
    while np.any(m):
        acc[m] += 1.0 / w[m]
        w[m] += 1.0
        m = w.real < _SHIFT
    inv2 = 1.0 / (w * w)
    s = np.zeros_like(w)
    for k in range(_ORDER, 0, -1):
        s = (s + _B2K[k - 1] / (2 * k)) * inv2
    return np.log(w) - 0.5 / w - s - acc


def digamma(z):
    """Complex digamma psi(z) = Gamma'(z)/Gamma(z).

    Reflection psi(z) = psi(1-z) - pi cot(pi z) is used for Re(z) < 1/2.
    Raises DomainError at the non-positive integers.
    """
    za = np.atleast_1d(np.asarray(z, dtype=complex))
    _check_poles(za)
    refl = za.real < 0.5
    w = np.where(refl, 1.0 - za, za)
    out = _digamma_right(w)
    if np.any(refl):
        out[refl] = out[refl] - _pi_cot_pi(za[refl])
        # exact reality on the real axis
        real_axis = refl & (za.imag == 0)
        out[real_axis] = out[real_axis].real
    return _wrap(z, out.reshape(np.shape(z)))


def log_gamma(z):
    """Principal-branch log Gamma, continuous off the negative real axis.

    Defined through log Gamma(z) = log Gamma(z+m) - sum_k log(z+k) with
    principal logarithms, then Stirling's series at Re >= 10.
    """
    za = np.atleast_1d(np.asarray(z, dtype=complex))
    _check_poles(za)
    w = za.copy()
    acc = np.zeros_like(w)
    m = w.real < _SHIFT
    while np.any(m):
        acc[m] += np.log(w[m])
        w[m] += 1.0
        m = w.real < _SHIFT
    inv = 1.0 / w
    inv2 = inv * inv
    s = np.zeros_like(w)
    for k in range(_ORDER, 0, -1):
        s = s * inv2 + _B2K[k - 1] / (2 * k * (2 * k - 1))
    out = (w - 0.5) * np.log(w) - w + LOG_2PI_HALF + s * inv - acc
    real_pos = (za.imag == 0) & (za.real > 0)
    out[real_pos] = out[real_pos].real
    return _wrap(z, out.reshape(np.shape(z)))


def gamma(z):
    """Gamma(z) = exp(log_gamma(z))."""
    return np.exp(log_gamma(z))


def digamma_asymptotic(z: complex, order: int) -> complex:
    """Truncated expansion of psi(z+1) at z; error below the first omitted term."""
    if abs(z) < 2:
        raise RangeError(f"|z| = {abs(z):.3g} < 2 is outside the asymptotic region")
    return complex(digamma_series(order)(z))


# --- closed-form integrals -----------------------------------------------------

def gaussian_moment(t: float, k: int) -> float:
    """Integral over the real line of lam^{2k} exp(-t lam^2): Gamma(k+1/2) t^{-k-1/2}."""
    if t <= 0:
        raise DomainError("t must be positive")
    if k < 0:
        raise DomainError("k must be a nonnegative integer")
    return math.exp(math.lgamma(k + 0.5) - (k + 0.5) * math.log(t))


def laplace_heat(s: complex, r: float, kind: str) -> complex:
    """Laplace transforms in t of the heat kernels against exp(-s^2 t).

    kind 'three_half': int_0^inf e^{-s^2 t} e^{-r^2/4t} (4 pi t)^{-3/2} dt = e^{-sr}/(4 pi r)
    kind 'half':       int_0^inf e^{-s^2 t} e^{-r^2/4t} (4 pi t)^{-1/2} dt = e^{-sr}/(2s)
    """
    s = complex(s)
    if s.real <= 0:
        raise ConvergenceError("Re(s) must be positive for the integral to converge")
    if kind == "three_half":
        if r <= 0:
            raise DomainError("r must be positive for kind three_half")
        return cmath.exp(-s * r) / (4 * math.pi * r)
    if kind == "half":
        if r < 0:
            raise DomainError("r must be nonnegative")
        return cmath.exp(-s * r) / (2 * s)
    raise DomainError(f"unknown kind {kind!r}")


def cauchy_digamma_integral(s: float) -> float:
    """(1/2pi) int psi(i lam + 1/2)/(lam^2 + s^2) d lam = psi(s + 1/2)/(2s) for s > 0."""
    if s <= 0:
        raise DomainError("s must be positive")
    return digamma(s + 0.5) / (2 * s)


def bernoulli_half(k: int) -> Fraction:
    return BERNOULLI.at_half(k)


def polyval_even(coeffs: Sequence[float], lam):
    """sum c_k lam^{2k} (Horner in lam^2)."""
    y = np.asarray(lam) ** 2
    out = np.zeros_like(y, dtype=np.result_type(y, float))
    for c in reversed(list(coeffs)):
        out = out * y + c
    return out
