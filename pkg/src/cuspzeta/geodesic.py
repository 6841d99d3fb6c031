"""Length-spectrum data: geodesic classes, file I/O, half-spin characters, synthetic spectra.

The underlying lattice is assumed to have no eigenvalue group containing a root of
unity. That condition cannot be checked from angle data, so only lengths, indices and
det factors are validated.
"""

from __future__ import annotations

import io
import math
import warnings
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import DomainError, ParseError, RangeError, ValidationError

COLUMNS = ("length", "primitive_index", "chi_plus_re", "chi_plus_im",
           "chi_minus_re", "chi_minus_im", "ad_det_factor")


@dataclass(frozen=True)
class GeodesicClass:
    length: float
    primitive_index: int
    chi_plus: complex
    chi_minus: complex
    ad_det_factor: float

    def __post_init__(self):
        if not self.length > 0:
            raise ValidationError(f"length must be positive, got {self.length}")
        if int(self.primitive_index) != self.primitive_index or self.primitive_index < 1:
            raise ValidationError(f"primitive index must be a positive integer, got {self.primitive_index}")
        if not self.ad_det_factor > 0:
            raise ValidationError(f"det factor must be positive, got {self.ad_det_factor}")

    def odd_weight(self) -> complex:
        """(conj chi_+ - conj chi_-) / (j * det factor)."""
        return (self.chi_plus.conjugate() - self.chi_minus.conjugate()) / (self.primitive_index * self.ad_det_factor)

    def even_weight(self) -> complex:
        return (self.chi_plus.conjugate() + self.chi_minus.conjugate()) / (self.primitive_index * self.ad_det_factor)


@dataclass(frozen=True)
class LengthSpectrum:
    classes: tuple[GeodesicClass, ...] = ()
    growth: float | None = None  # counting-function exponent, when known

    def __post_init__(self):
        object.__setattr__(self, "classes", tuple(sorted(self.classes, key=lambda c: (c.length, c.primitive_index))))

    @property
    def min_length(self) -> float | None:
        """Smallest length c, or None for an empty spectrum."""
        return self.classes[0].length if self.classes else None

    def __len__(self) -> int:
        return len(self.classes)

    def arrays(self):
        """lengths, odd weights, even weights as numpy arrays (without the e^{-n l} part)."""
        l = np.array([c.length for c in self.classes], dtype=float)
        wo = np.array([c.odd_weight() for c in self.classes], dtype=complex)
        we = np.array([c.even_weight() for c in self.classes], dtype=complex)
        return l, wo, we


@dataclass(frozen=True)
class HolonomyAngles:
    angles: tuple[float, ...]

    def __post_init__(self):
        a = tuple(float(x) % (2 * math.pi) for x in self.angles)
        object.__setattr__(self, "angles", a)


def weight_D(entry: GeodesicClass, n: int) -> float:
    """D(gamma) = e^{n l} * det factor."""
    x = n * entry.length
    if x > 700:
        raise RangeError(f"e^({x:.1f}) overflows double precision")
    return math.exp(x) * entry.ad_det_factor


# --- half-spin characters ------------------------------------------------------------

def half_spin_characters(angles: HolonomyAngles | Iterable[float], n: int | None = None) -> tuple[complex, complex]:
    """Characters of the half-spin representations of Spin(2n) at rotation angles theta_j.

    Weyl character formula: chi_+ + chi_- = prod 2cos(theta/2), chi_+ - chi_- = prod 2i sin(theta/2);
    chi_+ collects the weights with an even number of minus signs.
    """
    th = np.asarray(angles.angles if isinstance(angles, HolonomyAngles) else list(angles), dtype=float)
    if n is not None and len(th) != n:
        raise DomainError(f"expected {n} angles, got {len(th)}")
    s = complex(np.prod(2 * np.cos(th / 2)))
    d = complex(np.prod(2j * np.sin(th / 2)))
    return (s + d) / 2, (s - d) / 2


def _gamma_matrices(n: int) -> list[np.ndarray]:
    """2n Hermitian generators of Cl(2n) on C^(2^n) via the Jordan-Wigner construction."""
    sx = np.array([[0, 1], [1, 0]], dtype=complex)
    sy = np.array([[0, -1j], [1j, 0]], dtype=complex)
    sz = np.array([[1, 0], [0, -1]], dtype=complex)
    eye = np.eye(2, dtype=complex)
    out = []
    for k in range(n):
        for s in (sx, sy):
            ops = [sz] * k + [s] + [eye] * (n - k - 1)
            m = ops[0]
            for o in ops[1:]:
                m = np.kron(m, o)
            out.append(m)
    return out


def half_spin_characters_matrix(angles: HolonomyAngles | Iterable[float], n: int) -> tuple[complex, complex]:
    """Same characters via explicit spinor matrices (exact oracle path, n <= 4)."""
    th = np.asarray(angles.angles if isinstance(angles, HolonomyAngles) else list(angles), dtype=float)
    if n > 4:
        raise RangeError("matrix path limited to n <= 4")
    g = _gamma_matrices(n)
    dim = 2 ** n
    rot = np.eye(dim, dtype=complex)
    chir = np.eye(dim, dtype=complex)
    for j in range(n):
        b = g[2 * j] @ g[2 * j + 1]  # squares to -1, eigenvalues +-i
        rot = rot @ (math.cos(th[j] / 2) * np.eye(dim) + math.sin(th[j] / 2) * b)
        chir = chir @ (-1j * b)
    p_plus = (np.eye(dim) + chir) / 2
    p_minus = (np.eye(dim) - chir) / 2
    return complex(np.trace(p_plus @ rot)), complex(np.trace(p_minus @ rot))


def det_factor_from_angles(length: float, angles: Iterable[float]) -> float:
    """|det(Ad(a m)^{-1} - I)| on n: prod_j |1 - e^{-l + i theta_j}|^2 (synthetic convention)."""
    th = np.asarray(list(angles), dtype=float)
    return float(np.prod(np.abs(1 - np.exp(-length + 1j * th)) ** 2))


# --- synthetic spectra -----------------------------------------------------------------

def synthesize_spectrum(count: int, min_length: float, growth: float, seed: int, n: int = 2,
                        max_power: int = 2) -> LengthSpectrum:
    """Deterministic synthetic spectrum.

    Primitive lengths follow N(l) ~ exp(growth (l - min_length)): the k-th is
    min_length + log(k + u_k)/growth with u_k uniform in [0,1). Holonomy angles
    are uniform; classes gamma_0^j (j <= max_power) are added for the first
    few primitives with length j*l and angles j*theta. Characters come from
    half_spin_characters, det factors from det_factor_from_angles.
    """
    if count < 0 or min_length <= 0 or growth <= 0:
        raise DomainError("count >= 0, min_length > 0 and growth > 0 required")
    rng = np.random.default_rng(seed)
    out: list[GeodesicClass] = []
    prim = []
    for k in range(count):
        u = rng.random()
        l = min_length + math.log(k + u if k else 1.0) / growth
        th = rng.uniform(0, 2 * math.pi, n)
        prim.append((l, th))
    for i, (l, th) in enumerate(prim):
        for j in range(1, max_power + 1):
            if j > 1 and (i >= 3 or len(out) >= count):
                break
            if len(out) >= count:
                break
            cp, cm = half_spin_characters(j * th, n)
            out.append(GeodesicClass(j * l, j, cp, cm, det_factor_from_angles(j * l, j * th)))
    return LengthSpectrum(tuple(out), growth=growth)


# --- file format ------------------------------------------------------------------------

def parse_length_spectrum(source, n: int | None = None) -> LengthSpectrum:
    """Parse the comma-separated length-spectrum format.

    Default columns: length, primitive_index, chi_plus_re, chi_plus_im,
    chi_minus_re, chi_minus_im, ad_det_factor. After a `#format angles`
    directive records read: length, primitive_index, theta_1, ..., theta_n[,
    chi_plus_re, chi_plus_im, chi_minus_re, chi_minus_im][, ad_det_factor];
    characters are computed from the angles unless supplied (supplied values
    win, with a warning when they disagree).
    """
    if isinstance(source, (bytes, bytearray)):
        source = io.StringIO(source.decode("utf-8"))
    elif hasattr(source, "read") and isinstance(source, io.BufferedIOBase):
        source = io.TextIOWrapper(source, encoding="utf-8")
    fmt = "chars"
    growth = None
    seen = set()
    out = []
    for lineno, raw in enumerate(source, 1):
        if isinstance(raw, bytes):
            raw = raw.decode("utf-8")
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("format"):
                parts = body.split()
                if len(parts) != 2 or parts[1] not in ("angles", "chars"):
                    raise ParseError(f"bad format directive {body!r}", lineno)
                fmt = parts[1]
            elif body.startswith("growth"):
                try:
                    growth = float(body.split()[1])
                except (IndexError, ValueError):
                    raise ParseError("bad growth directive", lineno) from None
            continue
        fields = [f.strip() for f in line.split(",")]
        try:
            vals = [float(f) for f in fields]
        except ValueError:
            raise ParseError(f"non-numeric field in {line!r}", lineno) from None
        try:
            if fmt == "chars":
                if len(vals) != 7:
                    raise ParseError(f"expected 7 columns, got {len(vals)}", lineno)
                l, j = vals[0], vals[1]
                cls = GeodesicClass(l, _as_index(j, lineno), complex(vals[2], vals[3]),
                                    complex(vals[4], vals[5]), vals[6])
            else:
                if n is None:
                    raise ParseError("angle records need n", lineno)
                if len(vals) not in (2 + n, 3 + n, 6 + n, 7 + n):
                    raise ParseError(f"unexpected column count {len(vals)} for angle records", lineno)
                l, j, th = vals[0], vals[1], vals[2:2 + n]
                rest = vals[2 + n:]
                cp, cm = half_spin_characters(th, n)
                if len(rest) >= 4:
                    fp, fm = complex(rest[0], rest[1]), complex(rest[2], rest[3])
                    if abs(fp - cp) > 1e-9 or abs(fm - cm) > 1e-9:
                        warnings.warn(f"line {lineno}: supplied characters differ from the angle values; using supplied")
                    cp, cm = fp, fm
                    rest = rest[4:]
                factor = rest[0] if rest else det_factor_from_angles(l, th)
                cls = GeodesicClass(l, _as_index(j, lineno), cp, cm, factor)
        except ValidationError as e:
            raise ValidationError(f"line {lineno}: {e}") from None
        key = (cls.length, cls.primitive_index)
        if key in seen:
            raise ValidationError(f"line {lineno}: duplicate record (length {cls.length}, index {cls.primitive_index})")
        seen.add(key)
        out.append(cls)
    return LengthSpectrum(tuple(out), growth=growth)


def _as_index(j: float, lineno: int) -> int:
    if j != int(j):
        raise ParseError(f"primitive index {j} is not an integer", lineno)
    return int(j)


def serialize_length_spectrum(spec: LengthSpectrum) -> str:
    lines = ["# " + ", ".join(COLUMNS)]
    if spec.growth is not None:
        lines.append(f"# growth {spec.growth!r}")
    for c in spec.classes:
        lines.append(", ".join(repr(float(v)) if not isinstance(v, int) else str(v) for v in (
            c.length, c.primitive_index, c.chi_plus.real, c.chi_plus.imag,
            c.chi_minus.real, c.chi_minus.imag, c.ad_det_factor)))
    return "\n".join(lines) + "\n"
