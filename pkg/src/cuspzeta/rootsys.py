"""Exact root-system algebra for Spin(2n+1,1) and the unipotent densities built on it.

Roots are integer vectors on e_1..e_{n+1}; e_1 spans the split part a and
e_2..e_{n+1} carry the D_n root system of M = Spin(2n). Weights are vectors of
linear forms in the formal variable x = i*lam. All algebra is exact
(fractions.Fraction); floats appear only in the evaluate helpers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

import numpy as np

from . import specfun
from .errors import ConsistencyError, DomainError

HALF = Fraction(1, 2)


# --- exact polynomials ------------------------------------------------------------

def _trim(c: Sequence[Fraction]) -> tuple[Fraction, ...]:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class XPoly:
    """Polynomial in the formal variable x = i*lam, coefficients low to high."""

    coeffs: tuple[Fraction, ...] = ()

    @classmethod
    def const(cls, c) -> "XPoly":
        return cls(_trim([Fraction(c)]))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __add__(self, other: "XPoly") -> "XPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [Fraction(0)] * (n - len(self.coeffs))
        b = list(other.coeffs) + [Fraction(0)] * (n - len(other.coeffs))
        return XPoly(_trim([u + v for u, v in zip(a, b)]))

    def __neg__(self) -> "XPoly":
        return XPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "XPoly") -> "XPoly":
        return self + (-other)

    def __mul__(self, other) -> "XPoly":
        if not isinstance(other, XPoly):
            return XPoly(_trim([c * Fraction(other) for c in self.coeffs]))
        if not self.coeffs or not other.coeffs:
            return XPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return XPoly(_trim(out))

    __rmul__ = __mul__

    def to_even(self) -> "EvenPolynomial":
        """Rewrite in lam using x^2 = -lam^2; odd powers must vanish."""
        if any(c != 0 for c in self.coeffs[1::2]):
            raise ConsistencyError("polynomial in x = i*lam has odd powers")
        return EvenPolynomial(_trim([c * (-1) ** k for k, c in enumerate(self.coeffs[0::2])]))


@dataclass(frozen=True)
class EvenPolynomial:
    """sum_k coefficients[k] * lam^(2k) with exact rational coefficients."""

    coefficients: tuple[Fraction, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "coefficients", _trim([Fraction(c) for c in self.coefficients]))

    @property
    def degree(self) -> int:
        """Degree in lam; -1 for the zero polynomial."""
        return 2 * (len(self.coefficients) - 1) if self.coefficients else -1

    def __add__(self, other: "EvenPolynomial") -> "EvenPolynomial":
        n = max(len(self.coefficients), len(other.coefficients))
        a = list(self.coefficients) + [Fraction(0)] * (n - len(self.coefficients))
        b = list(other.coefficients) + [Fraction(0)] * (n - len(other.coefficients))
        return EvenPolynomial(tuple(u + v for u, v in zip(a, b)))

    def __neg__(self):
        return EvenPolynomial(tuple(-c for c in self.coefficients))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other) -> "EvenPolynomial":
        if not isinstance(other, EvenPolynomial):
            return EvenPolynomial(tuple(c * Fraction(other) for c in self.coefficients))
        if not self.coefficients or not other.coefficients:
            return EvenPolynomial()
        out = [Fraction(0)] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            for j, b in enumerate(other.coefficients):
                out[i + j] += a * b
        return EvenPolynomial(tuple(out))

    __rmul__ = __mul__

    def divmod_linear(self, a2: Fraction) -> tuple["EvenPolynomial", Fraction]:
        """Divide by (lam^2 + a2) in the variable y = lam^2; returns (quotient, remainder)."""
        c = list(self.coefficients)
        if not c:
            return EvenPolynomial(), Fraction(0)
        q = [Fraction(0)] * max(len(c) - 1, 0)
        r = c[-1]
        for k in range(len(c) - 2, -1, -1):
            q[k] = r
            r = c[k] - a2 * r
        return EvenPolynomial(tuple(q)), r

    def floats(self) -> list[float]:
        return [float(c) for c in self.coefficients]

    def __call__(self, lam):
        return specfun.polyval_even(self.floats(), lam)

    @classmethod
    def from_roots(cls, a_values: Sequence[Fraction]) -> "EvenPolynomial":
        """prod (lam^2 + a^2)."""
        p = cls((Fraction(1),))
        for a in a_values:
            p = p * cls((Fraction(a) ** 2, Fraction(1)))
        return p


# --- root data and weights -----------------------------------------------------

@dataclass(frozen=True)
class LinearForm:
    """x_coef * x + const, with x = i*lam."""

    x_coef: Fraction
    const: Fraction

    def poly(self) -> XPoly:
        return XPoly(_trim([self.const, self.x_coef]))

    def __add__(self, o: "LinearForm") -> "LinearForm":
        return LinearForm(self.x_coef + o.x_coef, self.const + o.const)

    def scale(self, c) -> "LinearForm":
        return LinearForm(self.x_coef * c, self.const * c)

    def at(self, x: complex) -> complex:
        return float(self.x_coef) * x + float(self.const)


def _lf(c) -> LinearForm:
    return LinearForm(Fraction(0), Fraction(c))


@dataclass(frozen=True)
class WeightVector:
    """Weight on e_1..e_{n+1}; entries are linear forms in x = i*lam."""

    coords: tuple[LinearForm, ...]

    @property
    def e1_coefficient(self) -> LinearForm:
        return self.coords[0]

    @property
    def tail(self) -> tuple[LinearForm, ...]:
        return self.coords[1:]

    def pair(self, root: Sequence[int]) -> LinearForm:
        if len(root) != len(self.coords):
            raise DomainError("weight and root dimensions differ")
        out = _lf(0)
        for r, c in zip(root, self.coords):
            if r:
                out = out + c.scale(r)
        return out

    def reflect(self, root: Sequence[int]) -> "WeightVector":
        """s_alpha(mu) = mu - <mu, alpha> alpha (roots have squared length 2)."""
        p = self.pair(root)
        return WeightVector(tuple(c + p.scale(-r) for c, r in zip(self.coords, root)))


@dataclass(frozen=True)
class RootDatum:
    n: int
    sigma_M_roots: tuple[tuple[int, ...], ...]
    sigma_A_roots: tuple[tuple[int, ...], ...]

    @property
    def dim(self) -> int:
        return self.n + 1


def _unit(n1: int, i: int) -> list[int]:
    v = [0] * n1
    v[i] = 1
    return v


def build_root_datum(n: int) -> RootDatum:
    """Positive roots: Sigma_M = {e_i +- e_l : 2 <= i < l <= n+1}, Sigma_A = {e_1 +- e_j}."""
    if n < 1:
        raise DomainError("n must be a positive integer")
    n1 = n + 1
    sm = []
    for i, l in combinations(range(1, n1), 2):
        for s in (-1, 1):
            v = _unit(n1, i)
            v[l] = s
            sm.append(tuple(v))
    sa = []
    for j in range(1, n1):
        for s in (-1, 1):
            v = _unit(n1, 0)
            v[j] = s
            sa.append(tuple(v))
    return RootDatum(n, tuple(sm), tuple(sa))


def _sign(sigma_sign) -> int:
    if sigma_sign in (1, "+", "plus"):
        return 1
    if sigma_sign in (-1, "-", "minus"):
        return -1
    raise DomainError(f"sigma_sign must be +1 or -1, got {sigma_sign!r}")


def rho_M(n: int) -> WeightVector:
    """Half sum of Sigma_M: (0; n-1, n-2, ..., 0)."""
    return WeightVector((_lf(0),) + tuple(_lf(n - k) for k in range(1, n + 1)))


def half_spin_weight(n: int, sigma_sign) -> WeightVector:
    """Highest weight of sigma_+-: (0; 1/2, ..., 1/2, +-1/2)."""
    s = _sign(sigma_sign)
    tail = [_lf(HALF)] * (n - 1) + [_lf(s * HALF)]
    return WeightVector((_lf(0),) + tuple(tail))


def lambda_sigma(n: int, sigma_sign) -> WeightVector:
    """i*lam*e_1 + sigma_+- + rho_M; tail (n-1/2, ..., 3/2, +-1/2)."""
    s = _sign(sigma_sign)
    tail = [_lf(n - k + HALF) for k in range(1, n)] + [_lf(s * HALF)]
    return WeightVector((LinearForm(Fraction(1), Fraction(0)),) + tuple(tail))


def pi_product(datum: RootDatum, w: WeightVector) -> XPoly:
    """prod over Sigma_M of mu(H_alpha), an exact polynomial in x."""
    if len(w.coords) != datum.dim:
        raise DomainError(f"weight has {len(w.coords)} entries, expected {datum.dim}")
    out = XPoly.const(1)
    for a in datum.sigma_M_roots:
        out = out * w.pair(a).poly()
    return out


def _const(p: XPoly) -> Fraction:
    if p.degree > 0:
        raise ConsistencyError("expected a constant")
    return p.coeffs[0] if p.coeffs else Fraction(0)


def weyl_dimension(n: int) -> int:
    """prod (sigma+rho)(H_alpha) / prod rho(H_alpha) over Sigma_M; asserted equal to 2^(n-1)."""
    datum = build_root_datum(n)
    rho = rho_M(n)
    num = pi_product(datum, WeightVector(tuple(a + b for a, b in zip(half_spin_weight(n, 1).coords, rho.coords))))
    den = pi_product(datum, rho)
    d = _const(num) / _const(den)
    for s in (1, -1):
        hw = half_spin_weight(n, s)
        other = _const(pi_product(datum, WeightVector(tuple(a + b for a, b in zip(hw.coords, rho.coords))))) / _const(den)
        if other != d:
            raise ConsistencyError("half-spin dimensions differ")
    if d != 2 ** (n - 1):
        raise ConsistencyError(f"Weyl dimension {d} differs from 2^(n-1)")
    return int(d)


def _tail_values(n: int, sigma_sign) -> list[Fraction]:
    return [c.const for c in lambda_sigma(n, sigma_sign).tail]


def _c_j(n: int, m: int, sigma_sign) -> Fraction:
    """Double product over tail pairs (k < l) avoiding position m of (t_k^2 - t_l^2)."""
    t = _tail_values(n, sigma_sign)
    out = Fraction(1)
    for k, l in combinations(range(n), 2):
        if m not in (k, l):
            out *= t[k] ** 2 - t[l] ** 2
    return out


def reflected_products(n: int, sigma_sign) -> list[tuple[Fraction, EvenPolynomial]]:
    """(C_j, P_j) for j = 2..n+1, P_j = Pi(s_alpha lambda_sigma) with alpha = e_1 -+ e_j.

    The reflection moves x = i*lam into tail position m = j-2 (0-based), so
    P_j = C_j (-1)^(n-1-m) prod_{k != m} (lam^2 + t_k^2).
    """
    if n < 1:
        raise DomainError("n must be positive")
    if n == 1:
        return []
    datum = build_root_datum(n)
    lam = lambda_sigma(n, sigma_sign)
    t = _tail_values(n, sigma_sign)
    out = []
    for j in range(2, n + 2):
        m = j - 2
        minus = [0] * (n + 1)
        minus[0], minus[j - 1] = 1, -1
        plus = [0] * (n + 1)
        plus[0], plus[j - 1] = 1, 1
        pm = pi_product(datum, lam.reflect(minus)).to_even()
        pp = pi_product(datum, lam.reflect(plus)).to_even()
        if pm != pp:
            raise ConsistencyError(f"s_(e1-e{j}) and s_(e1+e{j}) give different products")
        cj = _c_j(n, m, sigma_sign)
        formula = EvenPolynomial.from_roots([t[k] for k in range(n) if k != m]) * (cj * (-1) ** (n - 1 - m))
        if formula != pm:
            raise ConsistencyError(f"product formula fails for j = {j}")
        if pm.degree != 2 * (n - 1):
            raise ConsistencyError("P_j has the wrong degree")
        out.append((cj, pm))
    return out


@dataclass(frozen=True)
class PartialFractionSum:
    """sum weight * 2a / (lam^2 + a^2) over terms (a, weight)."""

    terms: tuple[tuple[Fraction, Fraction], ...]

    def __call__(self, lam):
        lam = np.asarray(lam, dtype=float)
        out = np.zeros_like(lam)
        for a, w in self.terms:
            out = out + float(w) * 2 * float(a) / (lam ** 2 + float(a) ** 2)
        return out

    def times(self, p: EvenPolynomial) -> EvenPolynomial:
        """Exact product with p; every denominator must divide p."""
        total = EvenPolynomial()
        for a, w in self.terms:
            q, r = p.divmod_linear(a ** 2)
            if r != 0:
                raise ConsistencyError(f"lam^2 + {a ** 2} does not divide the polynomial")
            total = total + q * (2 * a * w)
        return total


def r_sum(n: int, j: int) -> PartialFractionSum:
    """R_j = sum_{a=1/2}^{n-j+1/2} 2a/(lam^2+a^2) - sum_{a=n-j+5/2}^{n-1/2} 2a/(lam^2+a^2).

    This is the rational remainder of the digamma quartet attached to e_1 -+ e_j
    after shifting to psi(+-x - n + 1/2) and psi(+-x + 1/2); the a = n-j+3/2
    terms cancel between the two shifts.
    """
    if not 2 <= j <= n + 1:
        raise DomainError(f"j must lie in [2, {n + 1}]")
    terms = []
    a = HALF
    while a <= n - j + HALF:
        terms.append((a, Fraction(1)))
        a += 1
    a = Fraction(2 * (n - j) + 5, 2)
    while a <= n - HALF:
        terms.append((a, Fraction(-1)))
        a += 1
    return PartialFractionSum(tuple(terms))


def reflection_sum_identity(n: int, sigma_sign) -> bool:
    """sum over Sigma_A of Pi(s_alpha lambda_sigma) equals 2 Pi(lambda_sigma), exactly."""
    datum = build_root_datum(n)
    lam = lambda_sigma(n, sigma_sign)
    lhs = XPoly()
    for a in datum.sigma_A_roots:
        lhs = lhs + pi_product(datum, lam.reflect(a))
    rhs = pi_product(datum, lam) * 2
    if lhs != rhs:
        raise ConsistencyError(f"reflection-sum identity fails for n = {n}")
    return True


@dataclass(frozen=True)
class OmegaDecomposition:
    """Omega(lam) = psi1_coefficient*psi(1) + polynomial(lam) + digamma_coefficient*F(lam),

    F(lam) = psi(i lam - n + 1/2) + psi(-i lam - n + 1/2) + psi(i lam + 1/2) + psi(-i lam + 1/2).
    """

    n: int
    digamma_coefficient: Fraction
    polynomial: EvenPolynomial
    psi1_coefficient: Fraction

    def rational_part(self) -> EvenPolynomial:
        return self.polynomial

    def p_n(self, lam):
        """The even function P^n = psi1_coefficient*psi(1) + polynomial."""
        return float(self.psi1_coefficient) * specfun.digamma(1.0) + self.polynomial(lam)

    def __call__(self, lam):
        lam = np.asarray(lam, dtype=float)
        x = 1j * lam
        h = 0.5 - self.n
        F = specfun.digamma(x + h) + specfun.digamma(-x + h) + specfun.digamma(x + 0.5) + specfun.digamma(-x + 0.5)
        return self.p_n(lam) + float(self.digamma_coefficient) * np.real(F)


def omega(n: int, sigma_sign) -> OmegaDecomposition:
    """Exact assembly of Omega(sigma, i lam).

    Omega = 2d psi(1) - (1/2) sum_j P_j (R_j + F) / Pi(rho); the reflection-sum
    identity and Pi(lambda_sigma) = d Pi(rho) collapse the F-part to -(d/2) F.
    """
    d = weyl_dimension(n)
    datum = build_root_datum(n)
    pi_rho = _const(pi_product(datum, rho_M(n)))
    pi_lam = pi_product(datum, lambda_sigma(n, sigma_sign)).to_even()
    if pi_lam != EvenPolynomial((pi_rho * d,)):
        raise ConsistencyError("Pi(lambda_sigma) is not d * Pi(rho)")
    reflection_sum_identity(n, sigma_sign)
    poly = EvenPolynomial()
    sum_p = EvenPolynomial()
    for j, (_, pj) in zip(range(2, n + 2), reflected_products(n, sigma_sign)):
        poly = poly + r_sum(n, j).times(pj)
        sum_p = sum_p + pj
    if n > 1 and sum_p != pi_lam:
        raise ConsistencyError("sum of P_j differs from Pi(lambda_sigma)")
    poly = poly * (-HALF / pi_rho)
    if n >= 2 and poly.degree > 2 * n - 4:
        raise ConsistencyError("P^n exceeds degree 2n - 4")
    if n == 1 and poly.degree > 0:
        raise ConsistencyError("P^1 must be constant")
    return OmegaDecomposition(n, Fraction(-d, 2), poly, Fraction(2 * d))


def omega_direct(n: int, sigma_sign, lam, coroot_factor: bool = False):
    """Numerical Omega straight from its defining sum over Sigma_A (oracle path).

    With coroot_factor=True each summand is additionally multiplied by
    lambda_sigma(H_alpha); that reading is kept for comparison only.
    """
    d = weyl_dimension(n)
    datum = build_root_datum(n)
    pi_rho = float(_const(pi_product(datum, rho_M(n))))
    lam_w = lambda_sigma(n, sigma_sign)
    lam = np.atleast_1d(np.asarray(lam, dtype=float))
    x = 1j * lam
    total = np.zeros_like(x)
    for a in datum.sigma_A_roots:
        p = pi_product(datum, lam_w.reflect(a))
        pv = np.zeros_like(x)
        for c in reversed(p.coeffs):
            pv = pv * x + float(c)
        h = lam_w.pair(a).at(x)
        term = pv / pi_rho * (specfun.digamma(1 + h) + specfun.digamma(1 - h))
        if coroot_factor:
            term = term * h
        total = total + term
    return 2 * d * specfun.digamma(1.0) - 0.5 * total


# --- Harish-Chandra C-function and Plancherel density ---------------------------------

def harish_chandra_c(n: int, lam: complex) -> complex:
    """(2n-1)!/(n-1)! * Gamma(i lam + 1/2) / Gamma(i lam + n + 1/2); same for both half-spins."""
    z = 1j * complex(lam) + 0.5
    for k in range(n + 1):
        w = z + k
        if abs(w.imag) < 1e-300 and w.real <= 0 and w.real == round(w.real):
            raise DomainError(f"Gamma ratio has a pole at lam = {lam}")
    pref = math.factorial(2 * n - 1) / math.factorial(n - 1)
    return pref * complex(np.exp(specfun.log_gamma(z) - specfun.log_gamma(z + n)))


def plancherel_from_c(n: int) -> EvenPolynomial:
    """prod_{k=0}^{n-1} (lam^2 + (k+1/2)^2)."""
    if n < 1:
        raise DomainError("n must be positive")
    return EvenPolynomial.from_roots([k + HALF for k in range(n)])


# --- unipotent density ---------------------------------------------------------------

@dataclass(frozen=True)
class UnipotentDensity:
    """P_U(lam) + Q(lam) with Q(lam) = digamma_coefficient*(psi(i lam+1/2) + psi(-i lam+1/2)).

    P_U = (kappa/2) P^n + c_T1 = polynomial_part(lam) + constant_shift, where
    polynomial_part is exact and constant_shift = kappa*d*psi(1) + c_T1.
    """

    n: int
    kappa: int
    polynomial_part: EvenPolynomial
    constant_shift: float
    digamma_coefficient: Fraction

    @property
    def degree(self) -> int:
        return max(self.polynomial_part.degree, 0)

    def p_u_coefficients(self) -> list[float]:
        c = self.polynomial_part.floats() or [0.0]
        c[0] += self.constant_shift
        return c

    def p_u(self, lam):
        return specfun.polyval_even(self.p_u_coefficients(), lam)

    def q(self, lam):
        x = 1j * np.asarray(lam, dtype=float)
        return float(self.digamma_coefficient) * np.real(specfun.digamma(x + 0.5) + specfun.digamma(-x + 0.5))

    def __call__(self, lam):
        return self.p_u(lam) + self.q(lam)


def unipotent_density(n: int, kappa: int, c_T1: float = 0.0) -> UnipotentDensity:
    if n < 1 or kappa < 1:
        raise DomainError("n and kappa must be positive")
    om = omega(n, 1)
    half_k = Fraction(kappa, 2)
    d = 2 ** (n - 1)
    shift = float(half_k * om.psi1_coefficient) * specfun.digamma(1.0) + c_T1
    return UnipotentDensity(n, kappa, om.polynomial * half_k, shift, Fraction(-kappa * d, 2))


def unipotent_unreduced(n: int, kappa: int, c_T1: float, lam):
    """(kappa/2)(Omega - (d/2)[(psi(x+1/2)+psi(-x+1/2)) - (psi(x+n+1/2)+psi(-x+n+1/2))]) + c_T1.

    Omega is taken from its defining sum (omega_direct), so this path shares
    no algebra with unipotent_density.
    """
    d = 2 ** (n - 1)
    lam = np.atleast_1d(np.asarray(lam, dtype=float))
    x = 1j * lam
    b = specfun.digamma(x + 0.5) + specfun.digamma(-x + 0.5)
    c = specfun.digamma(x + n + 0.5) + specfun.digamma(-x + n + 0.5)
    val = 0.5 * kappa * (omega_direct(n, 1, lam) - 0.5 * d * (b - c)) + c_T1
    return np.real(val)
