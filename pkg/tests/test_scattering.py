import io
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate

from cuspzeta import scattering as S
from cuspzeta.errors import DomainError, ParseError, PoleError, RangeError, ValidationError

MODEL = S.build_model({"kappa": 1, "n": 2, "plus": {"poles": [(-0.7 + 1.3j, 1), (-2 + 0.5j, 2)], "p_const": 1.5}})

poles = st.complex_numbers(min_magnitude=0.3, max_magnitude=4, allow_nan=False, allow_infinity=False).map(
    lambda q: complex(-abs(q.real) - 0.2, q.imag))


@st.composite
def models(draw):
    qs = draw(st.lists(poles, min_size=0, max_size=3))
    orders = draw(st.lists(st.integers(1, 3), min_size=len(qs), max_size=len(qs)))
    n = draw(st.integers(1, 3))
    p = draw(st.floats(0.5, 2.0))
    ph = draw(st.floats(0, 2 * math.pi))
    return S.build_model({"kappa": 1, "n": n, "plus": {"poles": list(zip(qs, orders)), "p_const": p,
                                                        "base": complex(math.cos(ph), math.sin(ph))}})


@settings(max_examples=40, deadline=None)
@given(models())
def test_functional_equation_of_blocks(model):
    assert S.fe_residual(model) <= 1e-12
    s = np.array([0.3, 0.5 + 0.2j, -0.8 + 1.7j])
    assert np.max(np.abs(model.plus.det(s) * model.minus.det(-s) - 1)) < 1e-12


@settings(max_examples=40, deadline=None)
@given(models(), st.floats(-5, 5))
def test_axis_symmetries(model, lam):
    phi = S.phi_on_axis(model, lam)
    psi = S.psi_on_axis(model, lam)
    assert abs(phi + S.phi_on_axis(model, -lam)) <= 1e-12 * max(1, abs(phi))
    assert abs(psi - S.psi_on_axis(model, -lam)) <= 1e-12 * max(1, abs(psi))
    z = 0.1 + 1j * lam  # zeros sit at Re >= 0.2, poles at Re <= -0.2
    a = S.log_deriv_det(model, "difference", z)
    b = S.log_deriv_det(model, "difference", np.conj(z))
    assert abs(b + np.conj(a)) <= 1e-12 * max(1, abs(a))


def test_minus_block_is_mirrored():
    assert MODEL.minus.poles == tuple(q.conjugate() for q in MODEL.plus.poles)
    assert MODEL.minus.p_const == MODEL.plus.p_const
    assert MODEL.d == 2


def test_validation_errors():
    with pytest.raises(ValidationError):
        S.build_model({"n": 1, "plus": {"poles": [(0.5 + 1j, 1)]}})
    with pytest.raises(ValidationError):
        S.build_model({"n": 1, "plus": {"poles": [(-0.5 + 1j, 1)]}, "minus": {"poles": [(-0.5 + 1j, 1)]}})
    with pytest.raises(ValidationError):
        S.build_model({"n": 1, "plus": {"poles": [], "base": 2.0}})


def test_single_real_pole():
    m = S.single_pole_model(-1.0, order=1)
    lam = np.linspace(-3, 3, 7)
    assert np.max(np.abs(S.phi_on_axis(m, lam))) < 1e-15
    assert S.log_deriv_det(m, "plus", 0.0).real == pytest.approx(-2.0)


def test_pole_error_carries_entry():
    m = S.single_pole_model(-1 + 2j)
    with pytest.raises(PoleError) as e:
        S.log_deriv_det(m, "plus", -1 + 2j)
    assert e.value.entry is not None


def test_taylor_richardson_against_series():
    f1, g1 = S.taylor_coeffs(MODEL, 3)
    f2, g2 = S.taylor_coeffs(MODEL, 3, "series")
    for a, b in zip(f1, f2):
        assert abs(a - b) <= 1e-5 * max(1, abs(b))
    for a, b in zip(g1, g2):
        assert abs(a - b) <= 1e-5 * max(1, abs(b))


def test_taylor_series_against_numeric_derivative():
    # g_0 = d Psi(0), f_1 = d Phi'(0) by an independent finite difference
    f, g = S.taylor_coeffs(MODEL, 1, "series")
    h = 1e-5
    d = MODEL.d
    assert g[0] == pytest.approx(d * S.psi_on_axis(MODEL, 0.0), rel=1e-12)
    fd = d * (S.phi_on_axis(MODEL, h) - S.phi_on_axis(MODEL, -h)) / (2 * h)
    assert f[0] == pytest.approx(fd, rel=1e-8)


def test_taylor_range_errors():
    with pytest.raises(RangeError):
        S.taylor_coeffs(S.single_pole_model(-0.001 + 0.001j), 2)
    with pytest.raises(RangeError):
        S.taylor_coeffs(MODEL, 6)
    with pytest.raises(DomainError):
        S.taylor_coeffs(MODEL, -1)


def test_large_time_expansion_matches_windowed_quadrature():
    t = 100.0
    gam, gamp = S.large_time_coeffs(MODEL, 4, "series")
    odd = sum(gam[k] * t ** -(k + 1.5) for k in range(4))
    even = sum(gamp[k] * t ** -(k + 0.5) for k in range(5))
    qo, qe = S.windowed_integrals(MODEL, t)
    assert odd == pytest.approx(qo, rel=1e-7)
    assert even == pytest.approx(qe, rel=1e-7)


def test_windowed_expansion_moderate_t():
    wo, we = S.windowed_expansion(MODEL, 10.0, 8)
    qo, qe = S.windowed_integrals(MODEL, 10.0)
    assert wo == pytest.approx(qo, rel=1e-6)
    assert we == pytest.approx(qe, rel=1e-6)


def test_pole_ledger_signs():
    m = S.single_pole_model(-1 + 0.5j, order=2, n=3)
    odd = S.pole_ledger(m, "odd")
    assert odd.at(-1 + 0.5j)[0].residue == 8
    assert odd.at(-1 - 0.5j)[0].residue == -8
    even = S.pole_ledger(m, "even")
    assert all(e.residue == 8 for e in even)


def test_ledger_matches_numeric_residue():
    q = -0.7 + 1.3j
    r = 1e-6
    th = np.linspace(0, 2 * np.pi, 400, endpoint=False)
    z = q + r * np.exp(1j * th)
    vals = S.log_deriv_det(MODEL, "difference", z)
    res = np.mean(vals * r * np.exp(1j * th))
    # the block determinant has a pole at q, so the zeta residue is minus d times this one
    assert abs(-res * MODEL.d - S.pole_ledger(MODEL, "odd").at(q)[0].residue) < 1e-6


def test_maass_selberg_pure_section():
    m = S.constant_model(2)
    for R in (1.0, 5.0, 10.0):
        lhs, rhs, res = S.maass_selberg_check(m, 0.7, R, amplitude=0.0)
        assert lhs == 2 * R


def test_maass_selberg_exponential_decay():
    m = S.single_pole_model(-0.8 + 0.6j)
    r5 = S.maass_selberg_check(m, 0.7, 5.0)[2]
    r10 = S.maass_selberg_check(m, 0.7, 10.0)[2]
    assert r10 < r5
    assert r10 / r5 == pytest.approx(math.exp(-2 * 0.5 * 5), rel=1e-6)


def test_maass_selberg_forms_agree():
    a, b = S.maass_selberg_forms(MODEL, 0.9)
    assert abs(a - b) < 1e-9
    assert a.real == pytest.approx(S.log_deriv_det(MODEL, "plus", 0.9j).real, rel=1e-9)


def test_model_eisenstein_domain():
    with pytest.raises(DomainError):
        S.model_eisenstein(S.constant_model(1, kappa=2), 0.5)
    with pytest.raises(DomainError):
        S.model_eisenstein(MODEL, 0.0)


def test_file_round_trip():
    text = S.serialize_scattering(MODEL)
    back = S.parse_scattering(io.StringIO(text))
    assert back == MODEL
    assert S.serialize_scattering(back) == text


@pytest.mark.parametrize("text, line", [
    ("kappa 1\nn 1\npole -1 0 1\n", 3),
    ("kappa 1\nn x\n", 2),
    ("n 1\nblock middle\n", 2),
    ("n 1\nblock plus\npole -1 0\n", 3),
    ("n 1\nfoo 2\n", 2),
])
def test_parse_errors(text, line):
    with pytest.raises(ParseError) as e:
        S.parse_scattering(io.StringIO(text))
    assert e.value.line == line


def test_heat_integral_constant_model():
    # int_R e^{-t lam^2} Psi(i lam) dlam for a constant model is 2 log p sqrt(pi/t)
    m = S.constant_model(1, p=2.0)
    num = integrate.quad(lambda x: math.exp(-x * x) * S.psi_on_axis(m, x), -np.inf, np.inf)[0]
    assert num == pytest.approx(2 * math.log(2.0) * math.sqrt(math.pi), rel=1e-12)
