import io
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cuspzeta import geodesic
from cuspzeta.errors import DomainError, ParseError, RangeError, ValidationError

angles = st.lists(st.floats(0, 2 * math.pi), min_size=1, max_size=4)


@settings(max_examples=60, deadline=None)
@given(angles)
def test_characters_formula_matches_spinor_matrices(th):
    n = len(th)
    a = geodesic.half_spin_characters(th, n)
    b = geodesic.half_spin_characters_matrix(th, n)
    assert abs(a[0] - b[0]) < 1e-10 and abs(a[1] - b[1]) < 1e-10


@pytest.mark.parametrize("n", range(1, 5))
def test_characters_at_identity(n):
    cp, cm = geodesic.half_spin_characters([0.0] * n, n)
    assert cp == pytest.approx(2 ** (n - 1))
    assert cm == pytest.approx(2 ** (n - 1))


def test_characters_angle_count():
    with pytest.raises(DomainError):
        geodesic.half_spin_characters([0.1, 0.2], 3)
    with pytest.raises(RangeError):
        geodesic.half_spin_characters_matrix([0.1] * 5, 5)


def test_class_validation():
    with pytest.raises(ValidationError):
        geodesic.GeodesicClass(-1.0, 1, 1, 1, 1.0)
    with pytest.raises(ValidationError):
        geodesic.GeodesicClass(1.0, 0, 1, 1, 1.0)
    with pytest.raises(ValidationError):
        geodesic.GeodesicClass(1.0, 1, 1, 1, 0.0)


def test_weights_and_D():
    c = geodesic.GeodesicClass(1.5, 2, 1 + 1j, 0.5, 0.8)
    assert c.odd_weight() == pytest.approx((1 - 1j - 0.5) / (2 * 0.8))
    assert c.even_weight() == pytest.approx((1.5 - 1j) / 1.6)
    assert geodesic.weight_D(c, 2) == pytest.approx(math.exp(3.0) * 0.8)
    with pytest.raises(RangeError):
        geodesic.weight_D(geodesic.GeodesicClass(400.0, 1, 1, 1, 1.0), 2)


def test_det_factor():
    assert geodesic.det_factor_from_angles(1.0, [0.0]) == pytest.approx((1 - math.exp(-1)) ** 2)


def test_synthetic_spectrum_deterministic():
    a = geodesic.synthesize_spectrum(25, 1.0, 0.8, 11, n=3)
    b = geodesic.synthesize_spectrum(25, 1.0, 0.8, 11, n=3)
    assert a == b
    assert len(a) == 25
    assert a.min_length == pytest.approx(1.0)
    lengths = [c.length for c in a.classes]
    assert lengths == sorted(lengths)
    with pytest.raises(DomainError):
        geodesic.synthesize_spectrum(5, 1.0, 0.0, 1)


def test_round_trip():
    spec = geodesic.synthesize_spectrum(12, 0.7, 1.1, 3, n=2)
    text = geodesic.serialize_length_spectrum(spec)
    back = geodesic.parse_length_spectrum(io.StringIO(text), 2)
    assert back == spec
    assert geodesic.serialize_length_spectrum(back) == text


def test_parse_angles_format():
    text = "#format angles\n1.0, 1, 0.3, 1.1\n"
    spec = geodesic.parse_length_spectrum(io.StringIO(text), 2)
    cp, cm = geodesic.half_spin_characters([0.3, 1.1], 2)
    c = spec.classes[0]
    assert c.chi_plus == pytest.approx(cp) and c.chi_minus == pytest.approx(cm)
    assert c.ad_det_factor == pytest.approx(geodesic.det_factor_from_angles(1.0, [0.3, 1.1]))


@pytest.mark.parametrize("text, exc", [
    ("1.0, 1, 1, 0, 1\n", ParseError),
    ("1.0, x, 1, 0, 1, 0, 1\n", ParseError),
    ("1.0, 1.5, 1, 0, 1, 0, 1\n", ParseError),
    ("1.0, 1, 1, 0, 1, 0, 1\n1.0, 1, 1, 0, 1, 0, 1\n", ValidationError),
    ("-1.0, 1, 1, 0, 1, 0, 1\n", ValidationError),
    ("#format nonsense\n", ParseError),
])
def test_parse_errors(text, exc):
    with pytest.raises(exc):
        geodesic.parse_length_spectrum(io.StringIO(text), 2)


def test_parse_error_carries_line():
    with pytest.raises(ParseError) as e:
        geodesic.parse_length_spectrum(io.StringIO("# comment\n1.0, 1, 1\n"), 2)
    assert e.value.line == 2


def test_growth_directive():
    spec = geodesic.parse_length_spectrum(io.StringIO("# growth 0.9\n1.0, 1, 1, 0, 1, 0, 1\n"), 2)
    assert spec.growth == 0.9


def test_arrays_exclude_exponential():
    spec = geodesic.LengthSpectrum((geodesic.GeodesicClass(2.0, 1, 2, 1, 0.5),))
    l, wo, we = spec.arrays()
    assert l[0] == 2.0 and wo[0] == pytest.approx(2.0) and we[0] == pytest.approx(6.0)
    assert np.iscomplexobj(wo)
