"""Synthetic scattering determinants of Blaschke type and the quantities derived from them.

Each block determinant is det C_b(z) = base_b * p_b^z * prod_q ((z + conj q)/(z - q))^{order}.
The functional equation C(z)C(-z) = Id and the adjoint relation C(z)* = C(conj z)
for the off-diagonal block operator tie the two blocks together:
det C_+(z) det C_-(-z) = 1, which forces Q_- = conj(Q_+) (with orders),
p_- = p_+ and base_- = conj(base_+) = 1/base_+. `build_model` mirrors the
minus block from the plus block when it is omitted.
"""

from __future__ import annotations

import cmath
import io
import math
from dataclasses import dataclass, field
import numpy as np
from scipy import special

from . import quadrature
from .errors import (DomainError, ParseError, PoleError, RangeError,
                     ValidationError)

FE_TOL = 1e-12
_POLE_EPS = 1e-12


@dataclass(frozen=True)
class Block:
    poles: tuple[complex, ...] = ()
    orders: tuple[int, ...] = ()
    p_const: float = 1.0
    base: complex = 1.0 + 0j

    def mirrored(self) -> "Block":
        return Block(tuple(q.conjugate() for q in self.poles), self.orders, self.p_const, self.base.conjugate())

    def det(self, z):
        z = np.asarray(z, dtype=complex)
        out = self.base * np.exp(z * math.log(self.p_const))
        for q, b in zip(self.poles, self.orders):
            out = out * ((z + q.conjugate()) / (z - q)) ** b
        return out

    def log_det(self, z):
        """Sum of principal logarithms of the factors (a logarithm of det, not the principal one)."""
        z = np.asarray(z, dtype=complex)
        out = np.log(self.base) + z * math.log(self.p_const)
        for q, b in zip(self.poles, self.orders):
            out = out + b * (np.log(z + q.conjugate()) - np.log(z - q))
        return out

    def log_deriv(self, z):
        """d/dz log det = log p + sum b (1/(z + conj q) - 1/(z - q))."""
        z = np.asarray(z, dtype=complex)
        out = np.full(z.shape, math.log(self.p_const), dtype=complex)
        for q, b in zip(self.poles, self.orders):
            out = out + b * (1.0 / (z + q.conjugate()) - 1.0 / (z - q))
        return out


@dataclass(frozen=True)
class ScatteringModel:
    kappa: int
    n: int
    plus: Block = field(default_factory=Block)
    minus: Block = field(default_factory=Block)

    @property
    def d(self) -> int:
        return 2 ** (self.n - 1)

    def block(self, name: str) -> Block:
        if name == "plus":
            return self.plus
        if name == "minus":
            return self.minus
        raise DomainError(f"unknown block {name!r}")

    def det_gamma(self, z):
        """Determinant-level model of det C_Gamma(sigma_+, z): det C_+(z) det C_-(z)."""
        return self.plus.det(z) * self.minus.det(z)

    def all_poles(self):
        """(q, order, block) for every pole of both blocks."""
        out = [(q, b, "plus") for q, b in zip(self.plus.poles, self.plus.orders)]
        out += [(q, b, "minus") for q, b in zip(self.minus.poles, self.minus.orders)]
        return out

    def nearest_pole_distance(self) -> float:
        qs = [abs(q) for q, _, _ in self.all_poles()]
        return min(qs) if qs else math.inf


def _block_from(data) -> Block:
    if data is None:
        return None
    if isinstance(data, Block):
        return data
    poles, orders = [], []
    for item in data.get("poles", ()):
        q, b = item
        poles.append(complex(q))
        orders.append(b)
    return Block(tuple(poles), tuple(orders), float(data.get("p_const", 1.0)),
                 complex(data.get("base", 1.0)))


def _validate_block(name: str, blk: Block) -> None:
    for q, b in zip(blk.poles, blk.orders):
        if not q.real < 0:
            raise ValidationError(f"{name} block: pole {q} has Re >= 0 (det C must be holomorphic on Re z >= 0)")
        if int(b) != b or b < 1:
            raise ValidationError(f"{name} block: order {b} is not a positive integer")
    if len(blk.poles) != len(blk.orders):
        raise ValidationError(f"{name} block: pole and order lists differ in length")
    if not blk.p_const > 0:
        raise ValidationError(f"{name} block: p_const must be positive")
    if abs(abs(blk.base) - 1) > FE_TOL:
        raise ValidationError(f"{name} block: base value must have unit modulus")


FE_GRID = np.array([0.0, 0.37, -0.81, 1.3 + 0.4j, -1.7 + 1.1j, 0.2 - 1.9j, 1.9 - 0.6j, -0.4 + 0.05j])


def fe_residual(model: ScatteringModel, grid=FE_GRID) -> float:
    """max |det C_+(s) det C_-(-s) - 1| over grid points away from poles."""
    s = np.asarray(grid, dtype=complex)
    keep = np.ones(s.shape, dtype=bool)
    for q, _, _ in model.all_poles():
        for p in (q, -q.conjugate()):
            keep &= (np.abs(s - p) > 1e-3) & (np.abs(-s - p) > 1e-3)
    s = s[keep]
    return float(np.max(np.abs(model.plus.det(s) * model.minus.det(-s) - 1))) if s.size else 0.0


def build_model(data) -> ScatteringModel:
    """Validate raw data into a ScatteringModel.

    `data` is a mapping with keys kappa, n, plus, minus (minus optional); each
    block is a mapping with poles [(q, order), ...], p_const, base. A missing
    minus block is mirrored from the plus block.
    """
    if isinstance(data, ScatteringModel):
        data = {"kappa": data.kappa, "n": data.n, "plus": data.plus, "minus": data.minus}
    kappa = int(data.get("kappa", 1))
    n = int(data.get("n", 1))
    if kappa < 1 or n < 1:
        raise ValidationError("kappa and n must be positive integers")
    plus = _block_from(data.get("plus")) or Block()
    _validate_block("plus", plus)
    minus = _block_from(data.get("minus"))
    if minus is None:
        minus = plus.mirrored()
    _validate_block("minus", minus)
    model = ScatteringModel(kappa, n, plus, minus)
    r = fe_residual(model)
    if r > FE_TOL:
        raise ValidationError(f"functional equation det C_+(s) det C_-(-s) = 1 violated (residual {r:.3e})")
    return model


def constant_model(n: int = 1, kappa: int = 1, p: float = 1.0) -> ScatteringModel:
    return build_model({"kappa": kappa, "n": n, "plus": {"p_const": p}})


# --- log-derivatives ---------------------------------------------------------------------

def _check_not_pole(model: ScatteringModel, z: complex) -> None:
    for q, b, name in model.all_poles():
        for loc, what in ((q, "pole"), (-q.conjugate(), "zero")):
            if abs(z - loc) < _POLE_EPS:
                raise PoleError(f"z = {z} is a {what} of det C_{name}",
                                LedgerEntry(loc, b, -b if what == "pole" else b, f"{name}:{what}"))


def log_deriv_det(model: ScatteringModel, block: str, z):
    """plus / minus: d/dz log det C_b(z); difference: Phi = plus - minus; sum: Psi = plus + minus."""
    if np.ndim(z) == 0:
        _check_not_pole(model, complex(z))
    if block in ("plus", "minus"):
        out = model.block(block).log_deriv(z)
    elif block == "difference":
        out = model.plus.log_deriv(z) - model.minus.log_deriv(z)
    elif block == "sum":
        out = model.plus.log_deriv(z) + model.minus.log_deriv(z)
    else:
        raise DomainError(f"unknown block combination {block!r}")
    return complex(out) if np.ndim(z) == 0 else out


def phi_on_axis(model: ScatteringModel, lam):
    """Phi(i lam), real for real lam."""
    return np.real(log_deriv_det(model, "difference", 1j * np.asarray(lam, dtype=float)))


def psi_on_axis(model: ScatteringModel, lam):
    """Psi(i lam), real for real lam."""
    return np.real(log_deriv_det(model, "sum", 1j * np.asarray(lam, dtype=float)))


# --- Taylor and large-time coefficients -----------------------------------------------------

def _parity_fit(F, h: float, M: int, parity: int) -> np.ndarray:
    """Coefficients of lam^(2k+parity), k < M, from the symmetric part of F on the stencil jh, 1 <= j <= M."""
    x = np.arange(1, M + 1) * h
    y = (F(x) + (-1) ** parity * F(-x)) / 2
    if parity == 0:
        x = np.concatenate([[0.0], x[:-1]])
        y = np.concatenate([[F(np.zeros(1))[0]], y[:-1]])
    V = np.stack([x ** (2 * k + parity) for k in range(M)], axis=1)
    return np.linalg.solve(V, y)


def _richardson_coeffs(F, radius: float, parity: int, M: int = 6, levels: int = 3) -> np.ndarray:
    """Central-difference Taylor coefficients of one parity, refined by Richardson extrapolation in h^2.

    With M symmetric sample pairs the error of the coefficient of lam^m
    behaves like h^(2M+parity-m) + h^(2M+parity-m+2) + ...; each level
    removes the leading power.
    """
    m = 2 * np.arange(M) + parity
    tables = [_parity_fit(F, radius / M / 2 ** k, M, parity) for k in range(levels)]
    for it in range(levels - 1):
        fac = 2.0 ** (2 * M + parity - m + 2 * it)
        tables = [(fac * tables[k + 1] - tables[k]) / (fac - 1) for k in range(len(tables) - 1)]
    return tables[0]


def _parity_defect(F, radius: float, parity: int, M: int = 6) -> float:
    """Largest part of F on the stencil with the wrong parity (should vanish)."""
    x = np.linspace(radius / M, radius, M)
    return float(np.max(np.abs(F(x) - (-1) ** parity * F(-x)) / 2))


def taylor_coeffs(model: ScatteringModel, K: int, method: str = "richardson"):
    """f_{2k+1} (k < K) of d*Phi(i lam) and g_{2k} (k <= K) of d*Psi(i lam) in powers of lam.

    method 'richardson': central-difference stencils with Richardson extrapolation;
    method 'series': exact geometric-series expansion of the partial fractions.
    """
    if K < 0:
        raise DomainError("K must be nonnegative")
    d = model.d
    if method == "series":
        return _taylor_series(model, K)
    dist = model.nearest_pole_distance()
    radius = min(0.5 * dist, 0.5)
    if radius < 1e-2:
        raise RangeError(f"a pole lies within {dist:.3g} of 0; differentiation stencil unusable")
    if K > 5:
        raise RangeError("finite-difference coefficients are only resolved up to K = 5; use method='series'")
    Fo = lambda x: d * phi_on_axis(model, x)
    Fe = lambda x: d * psi_on_axis(model, x)
    scale = max(1.0, float(np.max(np.abs(Fo(np.array([radius]))))), float(np.max(np.abs(Fe(np.array([radius]))))))
    if _parity_defect(Fo, radius, 1) > 1e-9 * scale or _parity_defect(Fe, radius, 0) > 1e-9 * scale:
        raise RangeError("parity of the Taylor coefficients not resolved to 1e-9")
    cf = _richardson_coeffs(Fo, radius, 1)
    cg = _richardson_coeffs(Fe, radius, 0)
    return [float(cf[k]) for k in range(K)], [float(cg[k]) for k in range(K + 1)]


def _taylor_series(model: ScatteringModel, K: int):
    d = model.d

    def coeff(blk: Block, m: int) -> complex:
        # 1/(i lam + conj q) - 1/(i lam - q) = sum_m [(-i)^m / conj(q)^(m+1) + i^m / q^(m+1)] lam^m
        c = math.log(blk.p_const) if m == 0 else 0.0
        for q, b in zip(blk.poles, blk.orders):
            c += b * ((-1j) ** m / q.conjugate() ** (m + 1) + (1j) ** m / q ** (m + 1))
        return c

    f = [d * (coeff(model.plus, 2 * k + 1) - coeff(model.minus, 2 * k + 1)).real for k in range(K)]
    g = [d * (coeff(model.plus, 2 * k) + coeff(model.minus, 2 * k)).real for k in range(K + 1)]
    return f, g


def large_time_coeffs(model: ScatteringModel, K: int, method: str = "richardson"):
    """gamma_k = f_{2k+1} Gamma(k+3/2), gamma'_k = g_{2k} Gamma(k+1/2).

    These are the coefficients of t^{-(k+3/2)} and t^{-(k+1/2)} in the
    large-t expansions of int_{-1}^{1} lam e^{-t lam^2} d Phi(i lam) dlam and
    int_{-1}^{1} e^{-t lam^2} d Psi(i lam) dlam.
    """
    f, g = taylor_coeffs(model, K, method)
    gam = [f[k] * math.gamma(k + 1.5) for k in range(K)]
    gamp = [g[k] * math.gamma(k + 0.5) for k in range(K + 1)]
    return gam, gamp


def windowed_expansion(model: ScatteringModel, t: float, K: int, method: str = "series"):
    """Term-by-term integration of the Taylor series over the window [-1, 1].

    Uses int_{-1}^{1} lam^{2m} e^{-t lam^2} dlam = Gamma(m+1/2) P(m+1/2, t) t^{-m-1/2}
    with P the regularized lower incomplete gamma function; it differs from
    the pure large-t sum of large_time_coeffs by terms of size e^{-t}.
    """
    f, g = taylor_coeffs(model, K, method)
    odd = sum(f[k] * math.gamma(k + 1.5) * special.gammainc(k + 1.5, t) * t ** -(k + 1.5) for k in range(K))
    even = sum(g[k] * math.gamma(k + 0.5) * special.gammainc(k + 0.5, t) * t ** -(k + 0.5) for k in range(K + 1))
    return odd, even


def windowed_integrals(model: ScatteringModel, t: float):
    """Direct quadrature of the two windowed integrals on [-1, 1] (oracle for large_time_coeffs)."""
    d = model.d
    odd = 2 * quadrature.adaptive(lambda x: x * math.exp(-t * x * x) * d * float(phi_on_axis(model, x)), 0, 1)
    even = 2 * quadrature.adaptive(lambda x: math.exp(-t * x * x) * d * float(psi_on_axis(model, x)), 0, 1)
    return odd, even


# --- pole ledger ---------------------------------------------------------------------------------

@dataclass(frozen=True)
class LedgerEntry:
    location: complex
    order: int
    residue: complex
    source: str


@dataclass(frozen=True)
class PoleLedger:
    entries: tuple[LedgerEntry, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(sorted(
            self.entries, key=lambda e: (e.location.real, e.location.imag, e.source))))

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def at(self, z: complex, tol: float = 1e-9) -> list[LedgerEntry]:
        return [e for e in self.entries if abs(e.location - z) <= tol]

    def merged(self) -> "PoleLedger":
        """Combine entries at the same location (orders of simple poles add via residues)."""
        out: dict = {}
        for e in self.entries:
            key = (round(e.location.real, 12), round(e.location.imag, 12))
            if key in out:
                o = out[key]
                out[key] = LedgerEntry(o.location, max(o.order, e.order), o.residue + e.residue, o.source + "+" + e.source)
            else:
                out[key] = e
        return PoleLedger(tuple(out.values()))


def pole_ledger(model: ScatteringModel, kind: str = "odd") -> PoleLedger:
    """Poles of the continued scattering contribution.

    odd: simple poles at q in Q_+ with residue +d*b and at q in Q_- with residue -d*b;
    even: simple poles at every q with residue d*b.
    """
    d = model.d
    ent = []
    for q, b, name in model.all_poles():
        if kind == "odd":
            sgn = 1 if name == "plus" else -1
            ent.append(LedgerEntry(q, 1, complex(sgn * d * b), f"odd:{name}"))
        elif kind == "even":
            ent.append(LedgerEntry(q, 1, complex(d * b), f"even:{name}"))
        else:
            raise DomainError(f"unknown ledger kind {kind!r}")
    return PoleLedger(tuple(ent))


# --- Maass-Selberg cylinder model ------------------------------------------------------------

@dataclass(frozen=True)
class ModelEisenstein:
    """kappa = 1 cylinder model of an Eisenstein section on the cusp r >= 0.

    Constant term e^{nr}(e^{-i lam r} phi_a + c e^{i lam r} phi_b) with orthonormal
    phi_a, phi_b (c(H) phi_a = i phi_a, c(H) phi_b = -i phi_b), plus one
    transverse mode e^{nr} amplitude e^{-mu r} w that decays into the cusp;
    the transverse operator has gap nu = sqrt(lam^2 + mu^2). For the + section
    c = det C_-(-i lam) = 1/det C_+(i lam), and symmetrically for the - section.
    """

    n: int
    lam: float
    sign: int
    c: complex
    mu: float
    amplitude: float

    @property
    def nu(self) -> float:
        return math.hypot(self.lam, self.mu)

    def w(self, lam: float) -> np.ndarray:
        nu = self.nu
        mu = math.sqrt(max(nu * nu - lam * lam, 0.0))
        return np.array([nu, lam + 1j * mu]) / (math.sqrt(2) * nu)

    def section(self, r):
        """E(r) as a 4-vector (constant-term channel, transverse channel)."""
        r = np.asarray(r, dtype=float)
        ct = np.stack([np.exp(-1j * self.lam * r), self.c * np.exp(1j * self.lam * r)])
        tr = self.amplitude * np.exp(-self.mu * r)[None, :] * self.w(self.lam)[:, None] if r.ndim else \
            self.amplitude * math.exp(-self.mu * r) * self.w(self.lam)
        return np.exp(self.n * r) * np.concatenate([ct, tr])


def model_eisenstein(model: ScatteringModel, lam: float, sign: int = 1, mu: float = 0.5,
                     amplitude: float = 1.0) -> ModelEisenstein:
    if model.kappa != 1:
        raise DomainError("the cylinder model needs kappa = 1")
    if lam == 0:
        raise DomainError("lam = 0 is degenerate for the Maass-Selberg relation")
    other = model.minus if sign > 0 else model.plus
    c = complex(other.det(-1j * lam))
    return ModelEisenstein(model.n, float(lam), sign, c, mu, amplitude)


def _flux(model: ScatteringModel, sec: ModelEisenstein, lam: float, lam2: float, r: float) -> complex:
    """<c(H) E_lam(r), E_lam2(r)> e^{-2nr} for the cylinder model."""
    other = model.minus if sec.sign > 0 else model.plus
    c1 = complex(other.det(-1j * lam))
    c2 = complex(other.det(-1j * lam2))
    ct = 1j * cmath.exp(-1j * (lam - lam2) * r) - 1j * c1 * c2.conjugate() * cmath.exp(1j * (lam - lam2) * r)
    nu = sec.nu
    mu1 = math.sqrt(nu * nu - lam * lam)
    mu2 = math.sqrt(nu * nu - lam2 * lam2)
    w1, w2 = sec.w(lam), sec.w(lam2)
    cw = 1j * w1[0] * w2[0].conjugate() - 1j * w1[1] * w2[1].conjugate()
    return ct + sec.amplitude ** 2 * math.exp(-(mu1 + mu2) * r) * cw


def _minus_dlam2(F, lam: float, h: float = 1e-2, levels: int = 5) -> complex:
    """-d/dlam2 F(lam2) at lam2 = lam by Richardson-extrapolated central differences."""
    T = [(F(lam + h / 2 ** k) - F(lam - h / 2 ** k)) / (2 * h / 2 ** k) for k in range(levels)]
    p = 2
    while len(T) > 1:
        T = [(4 ** (p // 2) * T[k + 1] - T[k]) / (4 ** (p // 2) - 1) for k in range(len(T) - 1)]
        p += 2
    return -T[0]


def maass_selberg_check(model: ScatteringModel, lam: float, R: float, sign: int = 1,
                        mu: float = 0.5, amplitude: float = 1.0):
    """(lhs, rhs, residual) for the truncated norm of the model Eisenstein section.

    lhs = N_core + int_0^R |E|^2 e^{-2nr} dr. The cusp integral is closed form
    ((1 + |c|^2) R plus the transverse term); N_core follows from Green's
    formula on the core, -d/dlam' of the boundary flux at r = 0, evaluated by
    numerical differentiation of det C values. rhs = 2R - Psi_b(i lam) with
    Psi_b the log-derivative of det C_b, b the section sign. The residual is
    amplitude^2 e^{-2 mu R}/(2 mu).
    """
    if R <= 0:
        raise DomainError("R must be positive")
    sec = model_eisenstein(model, lam, sign, mu, amplitude)
    cusp = (1 + abs(sec.c) ** 2) * R + amplitude ** 2 * (1 - math.exp(-2 * mu * R)) / (2 * mu)
    core = _minus_dlam2(lambda l2: _flux(model, sec, lam, l2, 0.0), lam).real
    lhs = core + cusp
    blk = "plus" if sign > 0 else "minus"
    rhs = 2 * R - log_deriv_det(model, blk, 1j * lam).real
    return lhs, rhs, abs(lhs - rhs)


def maass_selberg_forms(model: ScatteringModel, lam: float, sign: int = 1) -> tuple[complex, complex]:
    """The two displayed forms of the log-derivative term.

    first:  det C_b(i lam) * (d/dz det C_b')(-i lam), b' the other block (numerical derivative);
    second: det C_b'(-i lam) * (d/dz det C_b)(i lam).
    """
    b, bp = (model.plus, model.minus) if sign > 0 else (model.minus, model.plus)

    def deriv(blk: Block, z: complex) -> complex:
        h = 1e-3
        T = [(complex(blk.det(z + h / 2 ** k)) - complex(blk.det(z - h / 2 ** k))) / (2 * h / 2 ** k) for k in range(5)]
        p = 1
        while len(T) > 1:
            T = [(4 ** p * T[k + 1] - T[k]) / (4 ** p - 1) for k in range(len(T) - 1)]
            p += 1
        return T[0]

    first = complex(b.det(1j * lam)) * deriv(bp, -1j * lam)
    second = complex(bp.det(-1j * lam)) * deriv(b, 1j * lam)
    return first, second


# --- file format -----------------------------------------------------------------------------------

def parse_scattering(source) -> ScatteringModel:
    """Read the key-value scattering format.

    kappa K / n N / block plus|minus / pole RE IM ORDER / p_const P / base RE IM.
    Blank lines and '#' comments are ignored; an absent minus block is mirrored.
    """
    raw = _parse_blocks(source)
    return build_model(raw)


def _parse_blocks(source) -> dict:
    if isinstance(source, (bytes, bytearray)):
        source = source.decode("utf-8")
    if isinstance(source, str):
        source = io.StringIO(source)
    data: dict = {}
    cur = None
    for lineno, line in enumerate(source, 1):
        if isinstance(line, bytes):
            line = line.decode("utf-8")
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, *vals = line.split()
        try:
            if key in ("kappa", "n"):
                _arity(vals, 1, lineno)
                v = float(vals[0])
                if v != int(v):
                    raise ParseError(f"{key} must be an integer", lineno)
                data[key] = int(v)
            elif key == "block":
                _arity(vals, 1, lineno)
                if vals[0] not in ("plus", "minus"):
                    raise ParseError(f"unknown block {vals[0]!r}", lineno)
                if vals[0] in data:
                    raise ParseError(f"block {vals[0]} given twice", lineno)
                cur = data.setdefault(vals[0], {"poles": []})
            elif key in ("pole", "p_const", "base"):
                if cur is None:
                    raise ParseError(f"{key} outside a block", lineno)
                if key == "pole":
                    _arity(vals, 3, lineno)
                    o = float(vals[2])
                    if o != int(o):
                        raise ParseError("pole order must be an integer", lineno)
                    cur["poles"].append((complex(float(vals[0]), float(vals[1])), int(o)))
                elif key == "p_const":
                    _arity(vals, 1, lineno)
                    cur["p_const"] = float(vals[0])
                else:
                    _arity(vals, 2, lineno)
                    cur["base"] = complex(float(vals[0]), float(vals[1]))
            else:
                raise ParseError(f"unknown key {key!r}", lineno)
        except ValueError as e:
            if isinstance(e, ParseError):
                raise
            raise ParseError(f"bad number in {line!r}", lineno) from None
    return data


def _arity(vals, k: int, lineno: int) -> None:
    if len(vals) != k:
        raise ParseError(f"expected {k} values, got {len(vals)}", lineno)


def serialize_scattering(model: ScatteringModel) -> str:
    lines = [f"kappa {model.kappa}", f"n {model.n}"]
    for name in ("plus", "minus"):
        blk = model.block(name)
        lines.append(f"block {name}")
        lines.append(f"p_const {blk.p_const!r}")
        lines.append(f"base {blk.base.real!r} {blk.base.imag!r}")
        for q, b in zip(blk.poles, blk.orders):
            lines.append(f"pole {q.real!r} {q.imag!r} {b}")
    return "\n".join(lines) + "\n"


def single_pole_model(q: complex, order: int = 1, n: int = 1, kappa: int = 1, p: float = 1.0,
                      base: complex = 1.0) -> ScatteringModel:
    return build_model({"kappa": kappa, "n": n, "plus": {"poles": [(q, order)], "p_const": p, "base": base}})
