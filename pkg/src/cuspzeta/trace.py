"""Heat-trace terms, Selberg zeta functions of odd and even type, eta/zeta functions,
the eta invariant, regularized determinants and functional-equation checks.

Two kinds of input are supported. A GeometricFamily carries a manifold
configuration and a length spectrum; its traces are the geometric sides
I + H + U (even) and H (odd), and its zeta functions are Dirichlet series. A
SpectralFamily carries a point spectrum and a scattering model; its traces are
the spectral sides, and its zeta functions are defined through the trace
formula (log-derivative = transformed spectral side), which continues them to
all of C in closed form.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import quadrature, rootsys, specfun
from .errors import (ConvergenceError, DomainError, NumericError, PoleError,
                     ValidationError)
from .geodesic import LengthSpectrum
from .scattering import (LedgerEntry, PoleLedger, ScatteringModel,
                         constant_model, large_time_coeffs, log_deriv_det)

SMALL_T0 = 1e-2      # below this the unipotent term is replaced by its small-time series
SMALL_K = 10         # number of positive-index small-time terms kept
S_REF = 1.0          # reference point fixing the determinant constant
_POLE_TOL = 1e-12


# --- configuration and data types ----------------------------------------------------------

@dataclass(frozen=True)
class ManifoldConfig:
    n: int
    kappa: int = 1
    volume: float = 1.0
    plancherel_scale: float = 1.0
    c_T1: float = 0.0

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise ValidationError("n must be a positive integer")
        if int(self.kappa) != self.kappa or self.kappa < 1:
            raise ValidationError("kappa must be a positive integer")
        if not self.volume > 0 or not self.plancherel_scale > 0:
            raise ValidationError("volume and plancherel_scale must be positive")

    @property
    def d(self) -> int:
        return 2 ** (self.n - 1)

    def p_identity(self) -> list[float]:
        """Coefficients of P_I = 2 pi Vol scale p(lam) in powers lam^{2k}."""
        p = rootsys.plancherel_from_c(self.n).floats()
        return [2 * math.pi * self.volume * self.plancherel_scale * c for c in p]

    def unipotent(self) -> rootsys.UnipotentDensity:
        return _unipotent(self.n, self.kappa, self.c_T1)


_UNI_CACHE: dict = {}


def _unipotent(n: int, kappa: int, c_T1: float) -> rootsys.UnipotentDensity:
    key = (n, kappa, c_T1)
    if key not in _UNI_CACHE:
        _UNI_CACHE[key] = rootsys.unipotent_density(n, kappa, c_T1)
    return _UNI_CACHE[key]


@dataclass(frozen=True)
class Eigenvalue:
    lam: float
    mult: int = 1
    sign: int = 1  # +1 for sigma_p^+, -1 for sigma_p^-

    def __post_init__(self):
        if self.lam == 0:
            raise ValidationError("zero eigenvalues belong in kernel_dim")
        if int(self.mult) != self.mult or self.mult < 1:
            raise ValidationError("multiplicity must be a positive integer")
        if self.sign not in (1, -1):
            raise ValidationError("sign must be +1 or -1")


@dataclass(frozen=True)
class SpectralDatum:
    eigenvalues: tuple[Eigenvalue, ...] = ()
    kernel_dim: int = 0
    scattering: ScatteringModel = field(default_factory=lambda: constant_model(1))

    def __post_init__(self):
        ev = tuple(e if isinstance(e, Eigenvalue) else Eigenvalue(*e) for e in self.eigenvalues)
        object.__setattr__(self, "eigenvalues", ev)
        if int(self.kernel_dim) != self.kernel_dim or self.kernel_dim < 0:
            raise ValidationError("kernel_dim must be a nonnegative integer")

    @property
    def n(self) -> int:
        return self.scattering.n

    @property
    def d(self) -> int:
        return self.scattering.d

    def arrays(self):
        lam = np.array([e.lam for e in self.eigenvalues], dtype=float)
        m = np.array([e.mult for e in self.eigenvalues], dtype=float)
        sg = np.array([e.sign for e in self.eigenvalues], dtype=float)
        return lam, m, sg


@dataclass(frozen=True)
class HeatTraceExpansion:
    """beta[k] multiplies t^{k-1/2} (k = -n..K), beta_prime0 multiplies t^{-1/2} log t.

    gamma / gamma_prime are the large-time coefficients of the windowed
    scattering integrals (see scattering.large_time_coeffs); c is the
    shortest closed geodesic (None when unknown).
    """

    beta: dict
    beta_prime0: float
    gamma: tuple = ()
    gamma_prime: tuple = ()
    c: float | None = None


@dataclass(frozen=True)
class ZetaEvaluation:
    value: complex
    log_value: complex
    truncation_count: int
    tail_bound: float


# --- lambda quadrature ---------------------------------------------------------------------------

def _lambda_nodes(t: float, scales: Sequence[tuple[float, float]] = ()):
    """Nodes/weights on [0, inf) for integrands carrying e^{-t lam^2}.

    `scales` lists (centre, width) pairs of nearby complex singularities
    (lam = centre +- i width); panels are refined around them.
    """
    hi = math.sqrt(46.0 / t)
    lo = min(0.05, 0.1 / math.sqrt(t))
    for c, w in scales:
        lo = min(lo, 0.1 * math.hypot(c, w))
    edges = [0.0, lo]
    edges += list(np.exp(np.arange(math.log(lo), math.log(hi), 0.15))[1:])
    edges.append(hi)
    extra = []
    for c, w in scales:
        for j in range(-8, 9):
            x = c + 0.5 * j * w
            if lo < x < hi:
                extra.append(x)
    edges = np.unique(np.concatenate([edges, extra]))
    return quadrature.gauss_panels(edges, 16)


def _pole_scales(model: ScatteringModel):
    return [(abs(q.imag), abs(q.real)) for q, _, _ in model.all_poles()]


# --- identity, hyperbolic and unipotent terms ------------------------------------------------

def _check_t(t: float) -> None:
    if not t > 0:
        raise DomainError("t must be positive")


def identity_term(t: float, cfg: ManifoldConfig, parity: str = "even") -> float:
    """I(K_t): 2 Vol scale int e^{-t lam^2} p(lam) dlam for even parity, exactly 0 for odd."""
    _check_t(t)
    if parity == "odd":
        return 0.0
    _parity(parity)
    p = rootsys.plancherel_from_c(cfg.n).floats()
    return 2 * cfg.volume * cfg.plancherel_scale * sum(c * specfun.gaussian_moment(t, k) for k, c in enumerate(p))


def hyperbolic_term(t: float, spectrum: LengthSpectrum, n: int, parity: str = "even") -> tuple[complex, float]:
    """H(K_t) and a bound on the omitted tail.

    even: (4 pi t)^{-1/2} sum l w_e e^{-nl} e^{-l^2/4t};
    odd:  2 pi i (4 pi t)^{-3/2} sum l^2 w_o e^{-nl} e^{-l^2/4t};
    w_e, w_o = (conj chi_+ +- conj chi_-)/(j * det factor). The tail bound is 0 for a
    spectrum without a growth parameter (the list is taken as complete).
    """
    _check_t(t)
    _parity(parity)
    if len(spectrum) == 0:
        return 0j, 0.0
    l, wo, we = spectrum.arrays()
    g = np.exp(-n * l - l * l / (4 * t))
    if parity == "even":
        val = complex(np.sum(l * we * g)) / math.sqrt(4 * math.pi * t)
    else:
        val = 2j * math.pi * complex(np.sum(l * l * wo * g)) / (4 * math.pi * t) ** 1.5
    return val, _heat_tail(t, spectrum, n, parity)


def _heat_tail(t: float, spectrum: LengthSpectrum, n: int, parity: str) -> float:
    if spectrum.growth is None:
        return 0.0
    L = spectrum.classes[-1].length
    gr = spectrum.growth
    pw = 1 if parity == "even" else 2
    amp = 2 ** n / (1 - math.exp(-L)) ** (2 * n)
    pref = 1 / math.sqrt(4 * math.pi * t) if parity == "even" else 2 * math.pi / (4 * math.pi * t) ** 1.5

    def f(x):
        return gr * x ** pw * math.exp((gr - n) * x - x * x / (4 * t))

    try:
        val = quadrature.adaptive(f, L, math.inf, epsabs=1e-300, epsrel=1e-6, tol=math.inf)
    except NumericError:
        return math.inf
    return amp * pref * val


def _q_integral(t: float, a: float) -> float:
    """a * int_R e^{-t lam^2} (psi(1/2 + i lam) + psi(1/2 - i lam)) dlam."""
    x, w = _lambda_nodes(t)
    f = np.exp(-t * x * x) * 2 * np.real(specfun.digamma(0.5 + 1j * x))
    return a * 2 * float(np.dot(w, f))


def unipotent_term(t: float, cfg: ManifoldConfig, parity: str = "even") -> float:
    """U(K_t) = (1/pi) int e^{-t lam^2}(P_U + Q) dlam (even), exactly 0 (odd)."""
    _check_t(t)
    if parity == "odd":
        return 0.0
    _parity(parity)
    u = cfg.unipotent()
    poly = sum(c * specfun.gaussian_moment(t, k) for k, c in enumerate(u.p_u_coefficients()))
    return (poly + _q_integral(t, float(u.digamma_coefficient))) / math.pi


def geometric_trace(t: float, cfg: ManifoldConfig, spectrum: LengthSpectrum, parity: str = "even") -> complex:
    return identity_term(t, cfg, parity) + hyperbolic_term(t, spectrum, cfg.n, parity)[0] + unipotent_term(t, cfg, parity)


def _parity(parity: str) -> None:
    if parity not in ("even", "odd"):
        raise DomainError(f"parity must be 'even' or 'odd', got {parity!r}")


# --- spectral side -----------------------------------------------------------------------------------

def scattering_heat_integral(t: float, model: ScatteringModel, parity: str) -> float:
    """int_R e^{-t lam^2} Psi(i lam) dlam (even) or int_R lam e^{-t lam^2} Phi(i lam) dlam (odd)."""
    x, w = _lambda_nodes(t, _pole_scales(model))
    g = np.exp(-t * x * x)
    if parity == "even":
        f = g * np.real(log_deriv_det(model, "sum", 1j * x))
    else:
        f = x * g * np.real(log_deriv_det(model, "difference", 1j * x))
    return 2 * float(np.dot(w, f))


def relative_trace_spectral(t: float, datum: SpectralDatum, parity: str = "even") -> float:
    """even: sum m e^{-t lam^2} + h - (d/4 pi) int e^{-t lam^2} Psi(i lam) dlam;
    odd: sum sign m lam e^{-t lam^2} - (d/4 pi) int lam e^{-t lam^2} Phi(i lam) dlam."""
    _check_t(t)
    _parity(parity)
    lam, m, sg = datum.arrays()
    d = datum.d
    if parity == "even":
        disc = float(np.sum(m * np.exp(-t * lam * lam))) + datum.kernel_dim
    else:
        disc = float(np.sum(sg * m * lam * np.exp(-t * lam * lam)))
    return disc - d / (4 * math.pi) * scattering_heat_integral(t, datum.scattering, parity)


def selberg_consistency_residual(t: float, cfg: ManifoldConfig, spectrum: LengthSpectrum,
                                 datum: SpectralDatum, parity: str = "even") -> float:
    """|spectral side - (I + H + U)| (a diagnostic; 0 only for consistent inputs)."""
    return abs(relative_trace_spectral(t, datum, parity) - geometric_trace(t, cfg, spectrum, parity))


# --- Dirichlet-series zeta functions -------------------------------------------------------------

def _dirichlet(s: complex, spectrum: LengthSpectrum, n: int, kind: str, abscissa: float | None) -> ZetaEvaluation:
    s = complex(s)
    if abscissa is None:
        abscissa = spectrum.growth
    if abscissa is not None and s.real <= abscissa:
        raise ConvergenceError(f"Re(s) = {s.real} is not above the abscissa {abscissa}", math.inf)
    if len(spectrum) == 0:
        return ZetaEvaluation(1 + 0j, 0j, 0, 0.0)
    l, wo, we = spectrum.arrays()
    w = wo if kind == "odd" else we
    logz = -complex(np.sum(w * np.exp(-s * l)))
    tail = 0.0
    if spectrum.growth is not None:
        L = spectrum.classes[-1].length
        gr = spectrum.growth
        tail = 2 ** n * gr * math.exp(-(s.real - gr) * L) / ((s.real - gr) * (1 - math.exp(-L)) ** (2 * n))
    return ZetaEvaluation(cmath.exp(logz), logz, len(spectrum), tail)


def zeta_odd(s: complex, spectrum: LengthSpectrum, n: int, abscissa: float | None = None) -> ZetaEvaluation:
    """Z^o(s) = exp(-sum (conj chi_+ - conj chi_-) e^{-s l} / (j det factor))."""
    return _dirichlet(s, spectrum, n, "odd", abscissa)


def zeta_even(s: complex, spectrum: LengthSpectrum, n: int, abscissa: float | None = None) -> ZetaEvaluation:
    """Z^e(s) = exp(-sum (conj chi_+ + conj chi_-) e^{-s l} / (j det factor))."""
    return _dirichlet(s, spectrum, n, "even", abscissa)


def zeta_log_derivative(s: complex, spectrum: LengthSpectrum, n: int, kind: str = "odd") -> complex:
    """d/ds log Z(s) = sum l w e^{-s l}."""
    if len(spectrum) == 0:
        return 0j
    l, wo, we = spectrum.arrays()
    w = wo if kind == "odd" else we
    return complex(np.sum(l * w * np.exp(-complex(s) * l)))


# --- closed-form integrals of the polynomial parts -----------------------------------------------

def _int_poly_i(coeffs: Sequence[float], s: complex) -> complex:
    """int_0^s P(i lam) dlam for P = sum c_k lam^{2k}."""
    return sum(c * (-1) ** k * complex(s) ** (2 * k + 1) / (2 * k + 1) for k, c in enumerate(coeffs))


def _poly_i(coeffs: Sequence[float], s: complex) -> complex:
    return sum(c * (-1) ** k * complex(s) ** (2 * k) for k, c in enumerate(coeffs))


def log_Z_U(s: complex, cfg: ManifoldConfig) -> complex:
    """log Z_U(s) = -2 kappa d log Gamma(s + 1/2) + 2 int_0^s P_U(i lam) dlam."""
    u = cfg.unipotent()
    return -2 * cfg.kappa * cfg.d * complex(specfun.log_gamma(complex(s) + 0.5)) + 2 * _int_poly_i(u.p_u_coefficients(), s)


def dlog_Z_U(s: complex, cfg: ManifoldConfig) -> complex:
    u = cfg.unipotent()
    return -2 * cfg.kappa * cfg.d * complex(specfun.digamma(complex(s) + 0.5)) + 2 * _poly_i(u.p_u_coefficients(), s)


def log_Z_I(s: complex, cfg: ManifoldConfig) -> complex:
    """log Z_I(s) = 2 int_0^s P_I(i lam) dlam."""
    return 2 * _int_poly_i(cfg.p_identity(), s)


def dlog_Z_I(s: complex, cfg: ManifoldConfig) -> complex:
    return 2 * _poly_i(cfg.p_identity(), s)


# --- small-time expansion --------------------------------------------------------------------------

def small_time_expansion(cfg: ManifoldConfig, spectrum: LengthSpectrum | None = None, K: int = SMALL_K,
                         datum: SpectralDatum | None = None, K_large: int = 2) -> HeatTraceExpansion:
    """beta_k (k = -n..K) and beta'_0 of I + H + U as t -> 0.

    identity: beta_{-k} = 2 Vol scale p_k Gamma(k + 1/2);
    unipotent polynomial part: beta_{-k} += u_k Gamma(k + 1/2)/pi;
    digamma part a(psi(1/2+i lam) + psi(1/2-i lam)), a = -kappa d/2, expanded through
    psi(z + 1/2) ~ log z - sum B_2k(1/2)/(2k z^2k):
      beta'_0 = -a/sqrt(pi), beta_0 += a psi(1/2)/sqrt(pi),
      beta_k += -(a/pi)(-1)^k B_2k(1/2) Gamma(1/2 - k)/k   (k >= 1).
    The hyperbolic term is O(e^{-c^2/4t}) and contributes nothing.
    With a datum, the large-time coefficients are attached as well.
    """
    beta: dict = {k: 0.0 for k in range(-cfg.n, K + 1)}
    for k, c in enumerate(cfg.p_identity()):
        beta[-k] += c / math.pi * math.gamma(k + 0.5)
    u = cfg.unipotent()
    for k, c in enumerate(u.p_u_coefficients()):
        beta[-k] += c * math.gamma(k + 0.5) / math.pi
    a = float(u.digamma_coefficient)
    beta[0] += a * specfun.digamma(0.5) / math.sqrt(math.pi)
    for k in range(1, K + 1):
        beta[k] += -(a / math.pi) * (-1) ** k * float(specfun.bernoulli_half(k)) * math.gamma(0.5 - k) / k
    bp = -a / math.sqrt(math.pi)
    gam, gamp = (), ()
    if datum is not None:
        g1, g2 = large_time_coeffs(datum.scattering, K_large, "series")
        gam, gamp = tuple(g1), tuple(g2)
    c = spectrum.min_length if spectrum is not None else None
    return HeatTraceExpansion(beta, bp, gam, gamp, c)


# --- Mellin machinery -------------------------------------------------------------------------------

@dataclass(frozen=True)
class Term:
    """coeff * t^power * (log t)^log_power."""

    power: complex
    coeff: complex
    log_power: int = 0


def _mellin_head(term: Term, w: complex, s2: float, t0: float) -> complex:
    """int_0^t0 t^{w-1} e^{-t s2} term(t) dt, continued analytically in w."""
    total = 0j
    m = 0
    fact = 1.0
    while True:
        b = w + term.power + m
        if abs(b) < 1e-14:
            raise PoleError(f"Mellin transform has a pole at w = {w}", None)
        if term.log_power == 0:
            j = t0 ** b / b
        else:
            j = t0 ** b * (math.log(t0) / b - 1 / (b * b))
        c = (-s2) ** m / fact
        inc = c * j
        total += inc
        m += 1
        fact *= m
        if s2 == 0 or (m > 4 and abs(inc) < 1e-18 * max(1.0, abs(total))) or m > 200:
            break
    return term.coeff * total


def _mellin_tail(term: Term, w: complex) -> complex:
    """int_1^inf t^{w-1} term(t) dt continued analytically (no e^{-ts^2} factor)."""
    b = w + term.power
    if abs(b) < 1e-14:
        raise PoleError(f"Mellin transform has a pole at w = {w}", None)
    if term.log_power == 0:
        return -term.coeff / b
    return -term.coeff / (b * b)


def _u_integral(f, a: float, b: float, w: complex, epsrel: float = 1e-11) -> complex:
    """int_a^b t^{w-1} f(t) dt with t = e^u."""
    def g(u):
        t = math.exp(u)
        return t ** w * f(t)
    lo, hi = math.log(a), math.log(b)
    re = quadrature.adaptive(lambda u: complex(g(u)).real, lo, hi, epsabs=1e-14, epsrel=epsrel, limit=600)
    if isinstance(w, complex) and w.imag != 0 or _is_complex_valued(f):
        im = quadrature.adaptive(lambda u: complex(g(u)).imag, lo, hi, epsabs=1e-14, epsrel=epsrel, limit=600)
        return complex(re, im)
    return re


def _is_complex_valued(f) -> bool:
    return bool(getattr(f, "complex_valued", False))


def mellin_split(F, w: complex, small: Sequence[Term], large: Sequence[Term], tmax: float = 1e12) -> complex:
    """Regularized int_0^inf t^{w-1} F(t) dt, split at t = 1.

    `small` / `large` are the terms subtracted near 0 / infinity (enough of
    them to make the remainders integrable at w); their transforms are added
    back in closed form.
    """
    w = complex(w)
    def head(t):
        return F(t) - sum(tm.coeff * t ** tm.power * math.log(t) ** tm.log_power for tm in small)

    def tail(t):
        return F(t) - sum(tm.coeff * t ** tm.power * math.log(t) ** tm.log_power for tm in large)
    head.complex_valued = tail.complex_valued = _is_complex_valued(F)
    h = _u_integral(head, 1e-16, 1.0, w)
    tl = _u_integral(tail, 1.0, tmax, w)
    return (h + sum(_mellin_head(tm, w, 0.0, 1.0) for tm in small)
            + tl + sum(_mellin_tail(tm, w) for tm in large))


# --- families --------------------------------------------------------------------------------------------

class GeometricFamily:
    """Geometric sides built from a configuration and a length spectrum."""

    def __init__(self, cfg: ManifoldConfig, spectrum: LengthSpectrum):
        self.cfg = cfg
        self.spectrum = spectrum
        self.n = cfg.n

    def odd_trace(self, t: float) -> complex:
        return hyperbolic_term(t, self.spectrum, self.n, "odd")[0]

    def even_trace(self, t: float) -> complex:
        return geometric_trace(t, self.cfg, self.spectrum, "even")

    def log_Zo(self, s: complex) -> complex:
        """log Z^o(n + s), Dirichlet series."""
        return zeta_odd(self.n + complex(s), self.spectrum, self.n, abscissa=-math.inf).log_value

    def log_Ze(self, s: complex) -> complex:
        return zeta_even(self.n + complex(s), self.spectrum, self.n, abscissa=-math.inf).log_value

    def log_Zo_at_zero(self) -> complex:
        return self.log_Zo(0.0)

    def kernel_dim(self) -> int:
        return 0

    def odd_small_terms(self, K: int) -> list[Term]:
        return []

    def odd_large_terms(self, K: int) -> list[Term]:
        """H^o(t) = 2 pi i (4 pi)^{-3/2} sum_m sum l^2 W (-l^2/4)^m/m! t^{-3/2-m}."""
        if len(self.spectrum) == 0:
            return []
        l, wo, _ = self.spectrum.arrays()
        W = wo * np.exp(-self.n * l)
        pref = 2j * math.pi / (4 * math.pi) ** 1.5
        return [Term(-1.5 - m, pref * complex(np.sum(l * l * W * (-l * l / 4) ** m)) / math.factorial(m))
                for m in range(K)]

    def log_det_mellin(self, s: float) -> float:
        """-zeta'(0, s) for I + H + U: identity in closed form, H and U by quadrature.

        The unipotent term is replaced below SMALL_T0 by its small-time series.
        """
        if not s > 0:
            raise DomainError("route (a) needs s > 0")
        cfg = self.cfg
        s2 = s * s
        out = 0.0
        for k, c in enumerate(cfg.p_identity()):
            a = -k - 0.5
            out -= c / math.pi * math.gamma(k + 0.5) * math.gamma(a) * s ** (-2 * a)
        out -= _unipotent_mellin(cfg, s, 0.0).real
        if len(self.spectrum):
            f = lambda t: hyperbolic_term(t, self.spectrum, self.n, "even")[0].real * math.exp(-t * s2)
            out -= _u_integral(f, 1e-6, max(60.0 / s2, 10.0), 0.0, epsrel=1e-12)
        return out


def _unipotent_small_terms(cfg: ManifoldConfig, K: int = SMALL_K) -> list[Term]:
    u = cfg.unipotent()
    a = float(u.digamma_coefficient)
    terms = [Term(-k - 0.5, c * math.gamma(k + 0.5) / math.pi) for k, c in enumerate(u.p_u_coefficients())]
    terms.append(Term(-0.5, a * specfun.digamma(0.5) / math.sqrt(math.pi)))
    terms.append(Term(-0.5, -a / math.sqrt(math.pi), 1))
    for k in range(1, K + 1):
        terms.append(Term(k - 0.5, -(a / math.pi) * (-1) ** k * float(specfun.bernoulli_half(k)) * math.gamma(0.5 - k) / k))
    return terms


def _unipotent_mellin(cfg: ManifoldConfig, s: float, w: complex, t0: float = SMALL_T0) -> complex:
    """Regularized int_0^inf t^{w-1} e^{-t s^2} U(K_t) dt (series below t0, quadrature above)."""
    s2 = s * s
    head = sum(_mellin_head(tm, w, s2, t0) for tm in _unipotent_small_terms(cfg))
    f = lambda t: unipotent_term(t, cfg) * math.exp(-t * s2)
    tmax = max(60.0 / s2, 10.0) if s2 > 0 else 1e8
    return head + _u_integral(f, t0, tmax, w, epsrel=1e-12)


class SpectralFamily:
    """Spectral sides and the zeta functions they determine through the trace formula.

    log Z^o(n+s) = -sum sign m log((s - i lam)/(s + i lam)) - d sum_{q in Q_+} b log((s - q)/(s - conj q)),
    log Z^e(n+s) = sum m log(s^2 + lam^2) + 2h log s + d sum_{all q} b log(s - q) - (d/2) s log(p_+ p_-)
                   + 2 kappa d log Gamma(s + 1/2) - 2 int_0^s (P_I + P_U)(i lam) dlam - kappa d log(2 pi).
    The constants are fixed so that the large-s asymptotic expansions have no constant term,
    as for a Dirichlet series; the determinant constant is then (2 pi)^{kappa d} for both families.
    """

    def __init__(self, cfg: ManifoldConfig, datum: SpectralDatum):
        if cfg.n != datum.n:
            raise ValidationError("configuration and scattering model disagree on n")
        self.cfg = cfg
        self.datum = datum
        self.n = cfg.n
        self.d = cfg.d

    # traces
    def odd_trace(self, t: float) -> float:
        return relative_trace_spectral(t, self.datum, "odd")

    def even_trace(self, t: float) -> float:
        return relative_trace_spectral(t, self.datum, "even")

    def kernel_dim(self) -> int:
        return self.datum.kernel_dim

    # zeta functions
    def _check(self, s: complex) -> None:
        for e in spectral_pole_ledger(self.datum, "odd").entries + spectral_pole_ledger(self.datum, "even").entries:
            if abs(s - e.location) < _POLE_TOL or abs(-s - e.location) < _POLE_TOL:
                raise PoleError(f"s = {s} meets a zero or pole of the zeta function", e)

    def log_Zo(self, s: complex) -> complex:
        s = complex(s)
        out = 0j
        for e in self.datum.eigenvalues:
            out -= e.sign * e.mult * (cmath.log(s - 1j * e.lam) - cmath.log(s + 1j * e.lam))
        blk = self.datum.scattering.plus
        for q, b in zip(blk.poles, blk.orders):
            out -= self.d * b * (cmath.log(s - q) - cmath.log(s - q.conjugate()))
        return out

    def log_Zo_at_zero(self) -> complex:
        """log Z^o(n), continued along the real axis from +infinity."""
        return self.log_Zo(0.0)

    def log_Ze(self, s: complex) -> complex:
        s = complex(s)
        cfg = self.cfg
        out = 0j
        for e in self.datum.eigenvalues:
            out += e.mult * cmath.log(s * s + e.lam * e.lam)
        if self.datum.kernel_dim:
            out += 2 * self.datum.kernel_dim * cmath.log(s)
        sc = self.datum.scattering
        for q, b, _ in sc.all_poles():
            out += self.d * b * cmath.log(s - q)
        out -= 0.5 * self.d * s * math.log(sc.plus.p_const * sc.minus.p_const)
        out += 2 * cfg.kappa * cfg.d * complex(specfun.log_gamma(s + 0.5))
        out -= 2 * (_int_poly_i(cfg.p_identity(), s) + _int_poly_i(cfg.unipotent().p_u_coefficients(), s))
        return out - cfg.kappa * cfg.d * math.log(2 * math.pi)

    # expansions for the Mellin split
    def odd_small_terms(self, K: int) -> list[Term]:
        """Exact small-time series of the odd trace in powers t^{k/2}.

        Uses int lam e^{-t lam^2} phi_q(i lam) dlam = -2 pi sum_k Im(q^{k+1}) t^{k/2}/Gamma(k/2+1)
        (from the erfcx representation) for each q in Q_+ and its mirror.
        """
        lam, m, sg = self.datum.arrays()
        coeff: dict = {}
        for j in range((K + 1) // 2 + 1):
            c = float(np.sum(sg * m * lam ** (2 * j + 1))) * (-1) ** j / math.factorial(j)
            coeff[2 * j] = coeff.get(2 * j, 0.0) + c
        blk = self.datum.scattering.plus
        for q, b in zip(blk.poles, blk.orders):
            for k in range(K + 1):
                val = 2 * (-2 * math.pi) * (q ** (k + 1)).imag / math.gamma(k / 2 + 1)
                coeff[k] = coeff.get(k, 0.0) - self.d / (4 * math.pi) * b * val
        return [Term(k / 2, c) for k, c in sorted(coeff.items()) if k <= K and c != 0]

    def odd_large_terms(self, K: int) -> list[Term]:
        gam, _ = large_time_coeffs(self.datum.scattering, K, "series")
        return [Term(-k - 1.5, -gam[k] / (4 * math.pi)) for k in range(K) if gam[k] != 0]

    def even_small_terms(self, K: int) -> list[Term]:
        """Small-time series of (even trace - h) in powers t^{k/2 - 1/2}."""
        lam, m, _ = self.datum.arrays()
        sc = self.datum.scattering
        coeff: dict = {}
        for j in range(K // 2 + 1):
            coeff[2 * j + 1] = coeff.get(2 * j + 1, 0.0) + float(np.sum(m * lam ** (2 * j))) * (-1) ** j / math.factorial(j)
        P = math.log(sc.plus.p_const * sc.minus.p_const)
        coeff[0] = coeff.get(0, 0.0) - self.d / (4 * math.pi) * P * math.sqrt(math.pi)
        for q, b, _ in sc.all_poles():
            for k in range(K + 1):
                val = -math.pi * 2 * (q ** k).real / math.gamma(k / 2 + 1)
                coeff[k + 1] = coeff.get(k + 1, 0.0) - self.d / (4 * math.pi) * b * val
        return [Term((k - 1) / 2, c) for k, c in sorted(coeff.items()) if k <= K and c != 0]

    def even_large_terms(self, K: int) -> list[Term]:
        _, gamp = large_time_coeffs(self.datum.scattering, K, "series")
        return [Term(-k - 0.5, -gamp[k] / (4 * math.pi)) for k in range(K + 1) if gamp[k] != 0]

    def log_det_mellin(self, s: float) -> float:
        """-zeta'(0, s) of the spectral side, with the Mellin transform done per lam.

        Each e^{-t(lam^2 + s^2)} contributes log(lam^2 + s^2); the scattering
        part becomes -(d/4 pi) int (Psi(i lam) - log p) log(lam^2 + s^2) dlam
        by quadrature, and the constant part of Psi gives -(d/2) s log p.
        """
        if not s > 0:
            raise DomainError("route (a) needs s > 0")
        lam, m, _ = self.datum.arrays()
        out = float(np.sum(m * np.log(lam * lam + s * s)))
        if self.datum.kernel_dim:
            out += 2 * self.datum.kernel_dim * math.log(s)
        sc = self.datum.scattering
        P = math.log(sc.plus.p_const * sc.minus.p_const)
        out -= 0.5 * self.d * s * P
        if sc.all_poles():
            scales = _pole_scales(sc) + [(0.0, s)]
            tail = sum(2 * b * q.real for q, b, _ in sc.all_poles())
            val = 2 * _half_line_panels(lambda y: (np.real(log_deriv_det(sc, "sum", 1j * y)) - P) * np.log(y * y + s * s),
                                        scales, tail)
            out -= self.d / (4 * math.pi) * val
        return out


def _half_line_panels(f, scales, tail: float) -> float:
    """int_0^inf f on log panels refined around the given singularities.

    Beyond the last panel f ~ tail * log(x^2) / x^2 is integrated in closed form.
    """
    lo, hi = 1e-8, 1e6
    edges = list(np.exp(np.arange(math.log(lo), math.log(hi), 0.1)))
    for c, w in scales:
        edges += [c + 0.5 * j * w for j in range(-8, 9) if lo < c + 0.5 * j * w < hi]
    edges = np.unique(np.concatenate([[0.0], edges, [hi]]))
    x, w = quadrature.gauss_panels(edges, 16)
    return float(np.dot(w, f(x))) + tail * 2 * (math.log(hi) + 1) / hi


# --- spectral pole ledgers and log-derivatives ---------------------------------------------------------

def spectral_pole_ledger(datum: SpectralDatum, kind: str = "odd") -> PoleLedger:
    """Simple poles of the continued spectral side.

    odd: +-i lam_j with residues +-sign m_j; q in Q_+ (+d b), conj q (-d b).
    even: +-i lam_j with residue m_j each; 0 with residue 2h; every q with residue d b.
    """
    ent = []
    d = datum.d
    for e in datum.eigenvalues:
        if kind == "odd":
            ent.append(LedgerEntry(1j * e.lam, 1, complex(e.sign * e.mult), "odd:eigen"))
            ent.append(LedgerEntry(-1j * e.lam, 1, complex(-e.sign * e.mult), "odd:eigen"))
        else:
            ent.append(LedgerEntry(1j * e.lam, 1, complex(e.mult), "even:eigen"))
            ent.append(LedgerEntry(-1j * e.lam, 1, complex(e.mult), "even:eigen"))
    if kind == "even" and datum.kernel_dim:
        ent.append(LedgerEntry(0j, 1, complex(2 * datum.kernel_dim), "even:kernel"))
    sc = datum.scattering
    if kind == "odd":
        for q, b in zip(sc.plus.poles, sc.plus.orders):
            if q.imag != 0:
                ent.append(LedgerEntry(q, 1, complex(d * b), "odd:plus"))
                ent.append(LedgerEntry(q.conjugate(), 1, complex(-d * b), "odd:minus"))
    elif kind == "even":
        for q, b, name in sc.all_poles():
            ent.append(LedgerEntry(q, 1, complex(d * b), f"even:{name}"))
    else:
        raise DomainError(f"unknown kind {kind!r}")
    return PoleLedger(tuple(ent)).merged()


@dataclass(frozen=True)
class TestFunction:
    """Smoothed step g(u) = sign(u)^parity * S((|u| - gap)/width), S a C-infinity step.

    gap = width = 0 is the limiting profile (sign(u) or 1). H_s(lam) = int g(u) e^{-s|u|} e^{i lam u} du.
    """

    gap: float = 0.0
    width: float = 0.0
    parity: str = "odd"

    __test__ = False

    def __post_init__(self):
        if self.gap < 0 or self.width < 0 or (self.gap > 0 and self.width == 0):
            raise DomainError("need gap >= 0 and width > 0 when gap > 0")
        _parity(self.parity)

    @property
    def c(self) -> float:
        return self.gap + self.width

    def g(self, u):
        u = np.asarray(u, dtype=float)
        au = np.abs(u)
        if self.width == 0:
            S = np.ones_like(au)
        else:
            x = np.clip((au - self.gap) / self.width, 0, 1)
            with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
                f1 = np.where(x > 0, np.exp(-1 / np.where(x > 0, x, 1)), 0.0)
                f2 = np.where(x < 1, np.exp(-1 / np.where(x < 1, 1 - x, 1)), 0.0)
            S = f1 / (f1 + f2)
        return S * np.sign(u) if self.parity == "odd" else S

    def transform(self, s: complex, lam):
        """H_s(lam); the profile's deviation from its limit is integrated on [0, c]."""
        s = complex(s)
        lam = np.asarray(lam, dtype=float)
        if self.parity == "odd":
            base = 2j * lam / (s * s + lam * lam)
        else:
            base = 2 * s / (s * s + lam * lam)
        if self.c == 0:
            return base
        u, w = quadrature.gauss_panels(np.linspace(0, self.c, 9), 24)
        kern = (np.abs(self.g(u)) - 1) * np.exp(-s * u) * w
        osc = 2j * np.sin(np.outer(lam, u)) if self.parity == "odd" else 2 * np.cos(np.outer(lam, u))
        return base + osc @ kern


def spectral_log_deriv(s: complex, datum: SpectralDatum, kind: str = "odd",
                       testfn: TestFunction | None = None, mode: str = "continued") -> complex:
    """Spectral side sum H_s(lam_j) - (d/4 pi) int H_s(lam) tr(...) dlam.

    odd: sum sign m H_s(lam_j) - (d/4 pi) int H_s Phi(i lam) dlam; it equals -d/ds log Z^o(n+s).
    even: sum m H_s(lam_j) + h H_s(0) - (d/4 pi) int H_s Psi(i lam) dlam; adding 2 kappa d psi(s+1/2)
    and -2(P_I + P_U)(is) gives d/ds log Z^e(n+s).
    mode 'continued' uses the residue form (limiting profile, valid off the ledger);
    mode 'direct' integrates numerically (Re s > 0, any profile).
    """
    s = complex(s)
    if kind not in ("odd", "even"):
        raise DomainError(f"unknown kind {kind!r}")
    if mode == "continued":
        for e in spectral_pole_ledger(datum, kind).entries:
            if abs(s - e.location) < _POLE_TOL:
                raise PoleError(f"s = {s} is a pole of the spectral side (residue {e.residue})", e)
        return _continued_side(s, datum, kind)
    if mode != "direct":
        raise DomainError(f"unknown mode {mode!r}")
    if s.real <= 0:
        raise ConvergenceError("direct mode needs Re(s) > 0", math.inf)
    tf = testfn or TestFunction(parity=kind)
    if tf.parity != kind:
        raise DomainError("test function parity does not match")
    lam, m, sg = datum.arrays()
    d = datum.d
    sc = datum.scattering
    if kind == "odd":
        disc = complex(np.sum(sg * m * tf.transform(s, lam))) if lam.size else 0j
    else:
        disc = complex(np.sum(m * tf.transform(s, lam))) if lam.size else 0j
        disc += datum.kernel_dim * complex(tf.transform(s, np.zeros(1))[0])
    x, w = quadrature.real_line_nodes(max(abs(s), 1.0), 32, 120)
    comb = "difference" if kind == "odd" else "sum"
    integrand = tf.transform(s, x) * np.real(log_deriv_det(sc, comb, 1j * x))
    if kind == "even":
        P = math.log(sc.plus.p_const * sc.minus.p_const)
        # constant part of Psi against the limiting profile: int 2s/(s^2+lam^2) dlam = 2 pi
        integrand = tf.transform(s, x) * (np.real(log_deriv_det(sc, comb, 1j * x)) - P)
        const = P * complex(_profile_integral(tf, s))
    else:
        const = 0j
    return disc - d / (4 * math.pi) * (complex(np.dot(w, integrand)) + const)


def _profile_integral(tf: TestFunction, s: complex) -> complex:
    """int H_s(lam) dlam = 2 pi g(0) e^0 ... for the even limit: 2 pi."""
    if tf.c == 0:
        return 2 * math.pi
    return 0.0  # a profile vanishing near 0 integrates to 2 pi g(0) = 0


def _continued_side(s: complex, datum: SpectralDatum, kind: str) -> complex:
    d = datum.d
    sc = datum.scattering
    out = 0j
    for e in datum.eigenvalues:
        a, b = 1 / (s - 1j * e.lam), 1 / (s + 1j * e.lam)
        out += e.sign * e.mult * (a - b) if kind == "odd" else e.mult * (a + b)
    if kind == "odd":
        for q, b in zip(sc.plus.poles, sc.plus.orders):
            out += d * b * (1 / (s - q) - 1 / (s - q.conjugate()))
    else:
        if datum.kernel_dim:
            out += 2 * datum.kernel_dim / s
        for q, b, _ in sc.all_poles():
            out += d * b / (s - q)
        out -= 0.5 * d * math.log(sc.plus.p_const * sc.minus.p_const)
    return out


# --- eta invariant ---------------------------------------------------------------------------------------

def eta_invariant(family, route: str = "heat") -> complex:
    """heat: (1/sqrt pi) int_0^inf t^{-1/2} (odd trace) dt, split at t = 1 with the
    small- and large-time terms handled in closed form;
    zeta: (1/(pi i)) log Z^o(n)."""
    if route == "zeta":
        return family.log_Zo_at_zero() / (1j * math.pi)
    if route != "heat":
        raise DomainError(f"unknown route {route!r}")
    return eta_function(0.0, family)


# --- eta and zeta functions ----------------------------------------------------------------------------

def eta_function(z: complex, family, K: int = 4) -> complex:
    """eta(z) = Gamma((z+1)/2)^{-1} int_0^inf t^{(z-1)/2} (odd trace) dt via the Mellin split."""
    w = (complex(z) + 1) / 2
    f = lambda t: complex(family.odd_trace(t))
    f.complex_valued = True
    small = [tm for tm in family.odd_small_terms(K) if (w + tm.power).real <= 1.0]
    large = [tm for tm in family.odd_large_terms(K) if (w + tm.power).real >= -1.5]
    val = mellin_split(f, w, small, large)
    return val / complex(specfun.gamma(w))


def zeta_function(z: complex, family, K: int = 4) -> complex:
    """zeta(z) = Gamma(z)^{-1} int_0^inf t^{z-1} (even trace - h) dt via the Mellin split."""
    if not isinstance(family, SpectralFamily):
        raise DomainError("the zeta function needs the large-time behaviour of a spectral family")
    w = complex(z)
    h = family.kernel_dim()
    f = lambda t: family.even_trace(t) - h
    small = [tm for tm in family.even_small_terms(K) if (w + tm.power).real <= 1.0]
    large = [tm for tm in family.even_large_terms(K) if (w + tm.power).real >= -1.5]
    val = mellin_split(f, w, small, large)
    return val / complex(specfun.gamma(w))


@dataclass(frozen=True)
class EtaZetaLedger:
    """Poles of Gamma((z+1)/2) eta(z) and Gamma(z) zeta(z)."""

    eta: PoleLedger
    zeta: PoleLedger

    def function_poles(self, which: str) -> list[LedgerEntry]:
        """Poles of eta or zeta themselves: simple poles at poles of the Gamma factor cancel."""
        led = self.eta if which == "eta" else self.zeta
        out = []
        for e in led.entries:
            z = e.location
            if which == "zeta":
                gpole = abs(z.imag) < 1e-12 and z.real <= 1e-12 and abs(z.real - round(z.real)) < 1e-12
            else:
                w = (z + 1) / 2
                gpole = abs(w.imag) < 1e-12 and w.real <= 1e-12 and abs(w.real - round(w.real)) < 1e-12
            if gpole and e.order <= 1:
                continue
            if e.residue == 0 and e.order == 1:
                continue
            out.append(e)
        return out

    def regular_at_zero(self) -> bool:
        return not any(abs(e.location) < 1e-12 for w in ("eta", "zeta") for e in self.function_poles(w))


def eta_zeta_ledger(cfg: ManifoldConfig, datum: SpectralDatum, spectrum: LengthSpectrum | None = None,
                    K: int = SMALL_K, K_large: int = 3) -> EtaZetaLedger:
    """Pole ledgers assembled from the small-time expansion of I + H + U and the large-time
    coefficients of the scattering model.

    zeta: beta_k at z = 1/2 - k; a double pole at 1/2 with coefficient -beta'_0 (the Mellin
    transform of t^{-1/2} log t on (0,1] is -1/(z-1/2)^2); -h at 0; -c'_k at k + 1/2 where
    c'_k = -gamma'_k/(4 pi) are the large-time coefficients of (even trace - h).
    eta: -2 c_k at 2k + 2 with c_k = -gamma_k/(4 pi); the geometric odd trace is O(e^{-c^2/4t})
    at t = 0, so there are no small-time poles.
    """
    if cfg.n != datum.n:
        raise ValidationError("configuration and scattering model disagree on n")
    exp = small_time_expansion(cfg, spectrum, K, datum, K_large)
    z_ent = [LedgerEntry(complex(0.5 - k, 0), 1, complex(b), "zeta:small") for k, b in exp.beta.items() if b != 0]
    z_ent.append(LedgerEntry(0.5 + 0j, 2, complex(-exp.beta_prime0), "zeta:small-log"))
    if datum.kernel_dim:
        z_ent.append(LedgerEntry(0j, 1, complex(-datum.kernel_dim), "zeta:kernel"))
    for k, g in enumerate(exp.gamma_prime):
        if g != 0:
            z_ent.append(LedgerEntry(complex(k + 0.5, 0), 1, complex(g / (4 * math.pi)), "zeta:large"))
    e_ent = [LedgerEntry(complex(2 * k + 2, 0), 1, complex(-2 * (-g / (4 * math.pi))), "eta:large")
             for k, g in enumerate(exp.gamma) if g != 0]
    return EtaZetaLedger(PoleLedger(tuple(e_ent)), _merge_orders(z_ent))


def _merge_orders(entries) -> PoleLedger:
    """Merge entries at one location; the order is the highest order present."""
    out: dict = {}
    for e in entries:
        key = (round(e.location.real, 12), round(e.location.imag, 12))
        out.setdefault(key, []).append(e)
    merged = []
    for es in out.values():
        simple = sum((e.residue for e in es if e.order == 1), 0j)
        for e in es:
            if e.order > 1:
                merged.append(e)
        if simple != 0 or all(e.order == 1 for e in es):
            merged.append(LedgerEntry(es[0].location, 1, simple, "+".join(e.source for e in es if e.order == 1)))
    return PoleLedger(tuple(merged))


def eta_zeta_functions(z: complex, family, mode: str = "value", K: int = 4):
    """value mode: (eta(z), zeta(z)); ledger mode: EtaZetaLedger (z ignored)."""
    if mode == "ledger":
        if not isinstance(family, SpectralFamily):
            raise DomainError("ledger mode needs a spectral family")
        return eta_zeta_ledger(family.cfg, family.datum)
    if mode != "value":
        raise DomainError(f"unknown mode {mode!r}")
    if isinstance(family, SpectralFamily):
        led = eta_zeta_ledger(family.cfg, family.datum)
        for e in led.function_poles("zeta"):
            if abs(complex(z) - e.location) < 1e-9:
                raise PoleError(f"z = {z} is a ledger pole", e)
    return eta_function(z, family, K), zeta_function(z, family, K)


# --- determinants -------------------------------------------------------------------------------------------

def _product_part(family, s: complex) -> complex:
    """log Z^e(n+s) - 2 kappa d log Gamma(s+1/2) + 2 int_0^s (P_I + P_U)(i lam) dlam."""
    cfg = family.cfg
    return (family.log_Ze(s) - 2 * cfg.kappa * cfg.d * complex(specfun.log_gamma(complex(s) + 0.5))
            + 2 * (_int_poly_i(cfg.p_identity(), s) + _int_poly_i(cfg.unipotent().p_u_coefficients(), s)))


def determinant_constant(family, s_ref: float = S_REF) -> float:
    """log C: route (a) minus the product part at s_ref."""
    return family.log_det_mellin(s_ref) - _product_part(family, s_ref).real


def regularized_determinant(s: complex, family, route: str = "mellin", s_ref: float = S_REF) -> complex:
    """log Det(D^2 + s^2).

    route 'mellin': -zeta'(0, s) from the relative trace with the factor e^{-ts^2} (real s > 0);
    route 'product': log C + log Z^e(n+s) - 2 kappa d log Gamma(s+1/2) + 2 int_0^s P(i lam) dlam,
    with C fixed at s_ref by route 'mellin'; this continues to complex s.
    """
    if route == "mellin":
        if isinstance(s, complex) and s.imag != 0:
            raise DomainError("route 'mellin' needs real s")
        s = float(np.real(s))
        if s <= 0:
            raise DomainError("route 'mellin' needs s > 0; use route 'product' to continue")
        return family.log_det_mellin(s)
    if route == "product":
        return determinant_constant(family, s_ref) + _product_part(family, s)
    raise DomainError(f"unknown route {route!r}")


def resolvent_trace(s: float, cfg: ManifoldConfig, which: str) -> float:
    """Regularized int_0^inf e^{-t s^2} X(K_t) dt for X = U or I, by quadrature.

    Singular small-time terms are subtracted on (0, 1] and added back in closed form.
    """
    if not s > 0:
        raise DomainError("s must be positive")
    s2 = s * s
    if which == "U":
        return _unipotent_mellin(cfg, s, 1.0).real
    if which != "I":
        raise DomainError(f"unknown term {which!r}")
    sing = [Term(-k - 0.5, c / math.pi * math.gamma(k + 0.5)) for k, c in enumerate(cfg.p_identity())]

    def num(t):  # identity term by lam-quadrature (independent of the Gaussian moments)
        x, w = _lambda_nodes(t)
        p = rootsys.plancherel_from_c(cfg.n)
        return 2 * cfg.volume * cfg.plancherel_scale * 2 * float(np.dot(w, np.exp(-t * x * x) * p(x)))

    f = lambda t: (num(t) - sum(tm.coeff * t ** tm.power for tm in sing)) * math.exp(-t * s2)
    # the subtraction removes the whole small-time series, so (0, 1e-2) only carries rounding noise
    head = _u_integral(f, 1e-2, 1.0, 1.0, epsrel=1e-10)
    head += sum(_mellin_head(tm, 1.0, s2, 1.0) for tm in sing)
    tail = _u_integral(lambda t: num(t) * math.exp(-t * s2), 1.0, max(60 / s2, 10.0), 1.0)
    return float(np.real(head + tail))


def hyperbolic_resolvent(s: float, spectrum: LengthSpectrum, n: int) -> float:
    """int_0^inf e^{-t s^2} H(K^e_t) dt by quadrature."""
    f = lambda t: hyperbolic_term(t, spectrum, n, "even")[0].real * math.exp(-t * s * s)
    return _u_integral(f, 1e-6, max(60 / (s * s), 10.0), 1.0)


# --- functional equations ----------------------------------------------------------------------------------

def _ledger_check(family, s: complex) -> None:
    if isinstance(family, SpectralFamily):
        for kind in ("odd", "even"):
            for e in spectral_pole_ledger(family.datum, kind).entries:
                if abs(s - e.location) < 1e-9 or abs(-s - e.location) < 1e-9:
                    raise PoleError(f"s = {s} collides with a ledger entry", e)


def verify_fe_odd(s: complex, family, eta: complex | None = None) -> float:
    """|Z^o(n+s) Z^o(n-s) - exp(2 pi i eta) (det C_+(s) det C_-(0) / (det C_-(s) det C_+(0)))^d|.

    eta comes from the heat route unless given.
    """
    if not isinstance(family, SpectralFamily):
        raise DomainError("the functional equation needs a trace-formula-consistent spectral family")
    s = complex(s)
    _ledger_check(family, s)
    if eta is None:
        eta = eta_invariant(family, "heat")
    sc = family.datum.scattering
    lhs = cmath.exp(family.log_Zo(s) + family.log_Zo(-s))
    ratio = complex(sc.plus.det(s) * sc.minus.det(0.0) / (sc.minus.det(s) * sc.plus.det(0.0)))
    rhs = cmath.exp(2j * math.pi * eta) * ratio ** family.d
    return abs(lhs - rhs)


def verify_fe_even(s: complex, family, s_ref: float = S_REF) -> float:
    """Relative residual of Det(s)^2 = C^2 det C_Gamma(s)^{-d} Z^e(n+s) Z^e(n-s) (Gamma(s+1/2)Gamma(1/2-s))^{-2 kappa d}.

    Det(s) comes from route 'mellin' for real s > 0 and from route 'product' otherwise;
    C is fixed at s_ref, so it drops out of the comparison at s_ref itself.
    """
    if not isinstance(family, SpectralFamily):
        raise DomainError("the functional equation needs a trace-formula-consistent spectral family")
    s = complex(s)
    _ledger_check(family, s)
    cfg = family.cfg
    logC = determinant_constant(family, s_ref)
    if s.imag == 0 and s.real > 0:
        logdet = family.log_det_mellin(s.real)
    else:
        logdet = logC + _product_part(family, s)
    sc = family.datum.scattering
    kd2 = 2 * cfg.kappa * cfg.d
    rhs = (2 * logC - family.d * cmath.log(complex(sc.det_gamma(s)))
           + family.log_Ze(s) + family.log_Ze(-s)
           - kd2 * (complex(specfun.log_gamma(s + 0.5)) + complex(specfun.log_gamma(0.5 - s))))
    return abs(cmath.exp(2 * logdet - rhs) - 1)
