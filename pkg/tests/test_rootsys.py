from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cuspzeta import rootsys, specfun
from cuspzeta.errors import ConsistencyError, DomainError


@pytest.mark.parametrize("n", range(1, 6))
def test_root_datum_counts(n):
    d = rootsys.build_root_datum(n)
    assert len(d.sigma_A_roots) == 2 * n
    assert rootsys.weyl_dimension(n) == 2 ** (n - 1)


@pytest.mark.parametrize("n", range(1, 6))
@pytest.mark.parametrize("sign", [1, -1])
def test_reflection_sum_identity(n, sign):
    assert rootsys.reflection_sum_identity(n, sign)


def test_r_sum_terms():
    # n = 3, j = 2: a = 1/2, 3/2 enter positively; no negative terms
    assert rootsys.r_sum(3, 2).terms == ((Fraction(1, 2), Fraction(1)), (Fraction(3, 2), Fraction(1)))
    t = rootsys.r_sum(3, 4).terms
    assert t == ((Fraction(3, 2), Fraction(-1)), (Fraction(5, 2), Fraction(-1)))
    with pytest.raises(DomainError):
        rootsys.r_sum(3, 1)


def test_reflected_products_n3():
    got = [(c, p.coefficients) for c, p in rootsys.reflected_products(3, 1)]
    assert got[0] == (Fraction(2), (Fraction(9, 8), Fraction(5), Fraction(2)))
    assert got[1][0] == Fraction(6)
    assert rootsys.reflected_products(1, 1) == []


@pytest.mark.parametrize("n", range(1, 6))
def test_omega_exact_structure(n):
    op, om = rootsys.omega(n, 1), rootsys.omega(n, -1)
    assert op.polynomial == om.polynomial
    assert op.digamma_coefficient == om.digamma_coefficient == Fraction(-(2 ** (n - 1)), 2)
    assert op.psi1_coefficient == 2 ** n
    assert op.polynomial.degree <= max(2 * n - 4, 0)


def test_omega_constant_parts():
    # P^n polynomial parts, frozen from the exact assembly
    expected = {1: (), 2: (Fraction(2),), 3: (Fraction(6),), 4: (Fraction(44, 3),), 5: (Fraction(100, 3),)}
    for n, c in expected.items():
        assert rootsys.omega(n, 1).polynomial.coefficients == c


@pytest.mark.parametrize("n", range(1, 5))
def test_omega_matches_defining_sum(n):
    lam = np.linspace(-10, 10, 41)
    om = rootsys.omega(n, 1)
    assert np.max(np.abs(rootsys.omega_direct(n, 1, lam) - om(lam))) < 1e-10


def test_coroot_factor_reading_disagrees():
    lam = np.linspace(-3, 3, 7)
    om = rootsys.omega(2, 1)
    assert np.max(np.abs(rootsys.omega_direct(2, 1, lam, coroot_factor=True) - om(lam))) > 1.0


@pytest.mark.parametrize("n", range(1, 5))
def test_plancherel_proportional_to_c(n):
    lam = np.linspace(-7, 7, 100)
    p = rootsys.plancherel_from_c(n)(lam)
    c = np.array([rootsys.harish_chandra_c(n, x) for x in lam])
    ratio = p * np.abs(c) ** 2
    k = np.median(ratio)
    assert np.max(np.abs(ratio / k - 1)) < 1e-9


def test_plancherel_n1():
    assert rootsys.plancherel_from_c(1).coefficients == (Fraction(1, 4), Fraction(1))


@pytest.mark.parametrize("n", [2, 3])
@pytest.mark.parametrize("kappa", [1, 3])
def test_unipotent_reduction(n, kappa):
    lam = np.linspace(-10, 10, 2001)
    u = rootsys.unipotent_density(n, kappa, 0.37)
    assert np.max(np.abs(rootsys.unipotent_unreduced(n, kappa, 0.37, lam) - u(lam))) <= 1e-10


def test_unipotent_n1_constant():
    u = rootsys.unipotent_density(1, 1)
    assert u.degree == 0
    assert u.digamma_coefficient == Fraction(-1, 2)
    assert u.p_u_coefficients()[0] == pytest.approx(float(specfun.digamma(1.0)))


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.floats(-2, 2))
def test_unipotent_density_even(n, kappa, cT):
    u = rootsys.unipotent_density(n, kappa, cT)
    lam = np.linspace(0.1, 9, 13)
    assert np.allclose(u(lam), u(-lam), rtol=0, atol=1e-12)
    assert u.digamma_coefficient == Fraction(-kappa * 2 ** (n - 1), 2)


def test_harish_chandra_c_pole():
    with pytest.raises(DomainError):
        rootsys.harish_chandra_c(2, 0.5j)


def test_even_polynomial_division():
    p = rootsys.EvenPolynomial.from_roots([Fraction(1, 2), Fraction(3, 2)])
    q, r = p.divmod_linear(Fraction(1, 4))
    assert r == 0
    assert q == rootsys.EvenPolynomial((Fraction(9, 4), Fraction(1)))
    with pytest.raises(ConsistencyError):
        rootsys.PartialFractionSum(((Fraction(5, 2), Fraction(1)),)).times(p)
