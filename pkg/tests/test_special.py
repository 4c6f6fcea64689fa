import cmath
import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polerecovery.errors import DomainError
from polerecovery.special import (ScaledComplex, complex_log_gamma, gamma, log_gamma,
                                  pollaczek_p, pollaczek_p_asymptotic,
                                  pollaczek_p_hypergeometric, pollaczek_scaled, psi_n, q_n,
                                  q_table)

finite_complex = st.builds(complex, st.floats(-8, 8), st.floats(-8, 8))


def rel(a, b):
    return abs(a - b) / abs(b)


def gauss_legendre(f, a, b, panels=96, order=40):
    """Composite Gauss-Legendre used as an independent quadrature oracle."""
    x, w = np.polynomial.legendre.leggauss(order)
    edges = np.linspace(a, b, panels + 1)
    total = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        y = 0.5 * (hi + lo) + 0.5 * (hi - lo) * x
        total = total + 0.5 * (hi - lo) * np.sum(w * f(y))
    return total


# ----------------------------------------------------------------------------
# log Gamma
# ----------------------------------------------------------------------------

def test_log_gamma_trivial_values():
    assert abs(complex_log_gamma(1)) < 1e-15
    assert abs(complex_log_gamma(5) - math.log(24)) < 1e-14


def test_reflection_at_half_plus_i():
    val = cmath.exp(complex_log_gamma(0.5 + 1j)) * cmath.exp(complex_log_gamma(0.5 - 1j))
    assert abs(val - math.pi / math.cosh(math.pi)) < 1e-12
    assert abs(val.real - 0.271) < 1e-3


@pytest.mark.parametrize("z", [0, -1, -7])
def test_log_gamma_pole_names_integer(z):
    with pytest.raises(DomainError, match=str(z)):
        complex_log_gamma(z)


@pytest.mark.parametrize("z", [0.3 + 0.1j, 2.5 - 4j, 17 + 30j, -3.7 + 0.2j, -12.5 - 7j,
                               0.5 + 60j, 80 + 50j, 1e-3 + 0j])
def test_log_gamma_matches_mpmath(z):
    ref = complex(mpmath.loggamma(mpmath.mpc(z)))
    assert abs(complex_log_gamma(z) - ref) <= 1e-13 * max(1.0, abs(ref))


@settings(max_examples=200)
@given(st.floats(-70, 70), st.floats(-70, 70))
def test_log_gamma_principal_branch_random(x, y):
    z = complex(x, y)
    if abs(y) < 1e-6 and x <= 0.5:
        return  # negative real axis: branch cut and poles
    ref = complex(mpmath.loggamma(mpmath.mpc(z)))
    assert abs(complex_log_gamma(z) - ref) <= 1e-13 * max(1.0, abs(ref))


@given(st.floats(-10, 10))
def test_reflection_identity_on_imaginary_line(y):
    val = np.exp(log_gamma(0.5 + 1j * y) + log_gamma(0.5 - 1j * y))
    assert abs(val - math.pi / math.cosh(math.pi * y)) <= 1e-12


@given(finite_complex.filter(lambda z: abs(z) > 0.1 and not
                             (abs(z.imag) < 1e-3 and z.real < 0.5)))
def test_gamma_functional_equation(z):
    lhs = gamma(z + 1)
    rhs = z * gamma(z)
    assert abs(lhs - rhs) <= 1e-11 * abs(rhs)


def test_log_gamma_vectorized_agrees_with_scalar():
    zs = np.array([0.7 + 1j, 3 - 2j, -2.3 + 0.4j])
    vec = log_gamma(zs)
    for z, v in zip(zs, vec):
        assert v == complex_log_gamma(z)


# ----------------------------------------------------------------------------
# ScaledComplex
# ----------------------------------------------------------------------------

def test_scaled_complex_normalization():
    s = ScaledComplex.from_complex(12.0 - 5j)
    assert 1 <= abs(s.mantissa) < 2
    assert s.to_complex() == 12.0 - 5j
    assert ScaledComplex.from_complex(0) == ScaledComplex(0j, 0)


def test_scaled_complex_beyond_double_range():
    big = ScaledComplex.from_parts(1.5, 3000) * ScaledComplex.from_parts(1.0, -2990)
    assert big.to_complex() == 1.5 * 2 ** 10


@given(finite_complex, finite_complex)
def test_scaled_complex_product(a, b):
    got = (ScaledComplex.from_complex(a) * ScaledComplex.from_complex(b)).to_complex()
    assert abs(got - a * b) <= 1e-15 * max(abs(a * b), 1e-300)


# ----------------------------------------------------------------------------
# Pollaczek polynomials
# ----------------------------------------------------------------------------

def test_pollaczek_base_cases():
    assert pollaczek_p(0, 3 + 4j).to_complex() == 1
    assert pollaczek_p(1, 0.5).to_complex() == 1.0


def test_pollaczek_recurrence_vs_hypergeometric_example():
    a = pollaczek_p(7, -3.5j).to_complex()
    b = pollaczek_p_hypergeometric(7, -3.5j).to_complex()
    assert rel(a, b) <= 1e-10


def test_hypergeometric_trivial_values():
    assert pollaczek_p_hypergeometric(0, 2 + 1j).to_complex() == 1
    y = 0.8
    assert abs(pollaczek_p_hypergeometric(1, y).to_complex() - 2 * y) < 1e-15
    a = pollaczek_p_hypergeometric(5, 1.25).to_complex()
    assert rel(a, pollaczek_p(5, 1.25).to_complex()) <= 1e-12


@pytest.mark.parametrize("w", [0, 1.7, -1.7, -0.5j, -6.2j, 2 - 0.3j])
def test_recurrence_hypergeometric_grid(w):
    for n in range(26):
        a = pollaczek_p(n, w).to_complex()
        b = pollaczek_p_hypergeometric(n, w).to_complex()
        if b == 0:
            assert abs(a) < 1e-12
        else:
            assert rel(a, b) <= 1e-10, n


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 25), st.floats(0.05, 12), st.floats(-2, 2))
def test_recurrence_hypergeometric_random_half_plane(n, x, y):
    w = -1j * complex(x, y)  # w = -i z with Re z > 0
    a = pollaczek_p(n, w).to_complex()
    b = pollaczek_p_hypergeometric(n, w).to_complex()
    assert rel(a, b) <= 1e-10


def test_delannoy_values_on_nodes():
    # P_n[-i(N + 1/2)] = (-i)^n D(N, n), with D the Delannoy numbers
    def delannoy(m, n):
        return sum(math.comb(m, j) * math.comb(n, j) * 2 ** j for j in range(min(m, n) + 1))
    for big_n in range(6):
        for n in range(12):
            val = pollaczek_p(n, -1j * (big_n + 0.5)).to_complex()
            assert val == (-1j) ** n * delannoy(big_n, n)


def test_scaled_recurrence_survives_large_degree():
    mant, expo = pollaczek_scaled(600, np.array([-60.5j]))
    assert np.all(np.isfinite(mant)) and expo[-1, 0] > 0
    # D(60, 600) exactly, compared through the logarithm
    ref = sum(mpmath.binomial(60, j) * mpmath.binomial(600, j) * 2 ** j for j in range(61))
    log2_got = expo[-1, 0] + math.log2(abs(mant[-1, 0]))
    assert abs(log2_got - float(mpmath.log(ref, 2))) < 1e-12 * log2_got


def test_orthonormality():
    # P_10^2 / cosh(pi y) still carries ~1e-2 of its mass beyond |y| = 12,
    # so the check integrates over [-40, 40] where the tail is below 1e-20.
    n_max = 10
    def integrand(y):
        mant, expo = pollaczek_scaled(n_max, y)
        return np.ldexp(mant, expo)
    x, w = np.polynomial.legendre.leggauss(40)
    edges = np.linspace(-40, 40, 321)
    gram = np.zeros((n_max + 1, n_max + 1))
    for lo, hi in zip(edges[:-1], edges[1:]):
        y = 0.5 * (hi + lo) + 0.5 * (hi - lo) * x
        p = integrand(y)
        wt = 0.5 * (hi - lo) * w / np.cosh(np.pi * y)
        gram += (p * wt) @ p.T
    assert np.max(np.abs(gram - np.eye(n_max + 1))) <= 1e-8


def test_orthonormality_low_degrees_on_short_interval():
    x, w = np.polynomial.legendre.leggauss(40)
    edges = np.linspace(-12, 12, 97)
    gram = np.zeros((4, 4))
    for lo, hi in zip(edges[:-1], edges[1:]):
        y = 0.5 * (hi + lo) + 0.5 * (hi - lo) * x
        mant, expo = pollaczek_scaled(3, y)
        p = np.ldexp(mant, expo)
        gram += (p * 0.5 * (hi - lo) * w / np.cosh(np.pi * y)) @ p.T
    assert np.max(np.abs(gram - np.eye(4))) <= 1e-8


def test_asymptotic_trivial_half():
    for n in (1, 2, 3, 17):
        assert abs(pollaczek_p_asymptotic(n, 0.5).to_complex() - (-1j) ** n) < 1e-15


def test_asymptotic_ratio_at_400():
    ratio = (pollaczek_p(400, -1j) / pollaczek_p_asymptotic(400, 1.0)).to_complex()
    assert abs(ratio - 1) <= 0.05
    exact = pollaczek_p(400, -3.5j).to_complex()
    assert abs(exact / ((-1j) ** 400 * 800 ** 3 / 6) - 1) <= 0.05


@pytest.mark.parametrize("z", [0.3, 1.0, 2.7 + 0.5j, 6.2 + 0.15j, 9.45 + 0.37j, 10.0])
def test_asymptotic_ratio_approaches_one_monotonically(z):
    errs = [abs((pollaczek_p(n, -1j * z) / pollaczek_p_asymptotic(n, z)).to_complex() - 1)
            for n in (100, 200, 400)]
    assert errs[0] >= errs[1] >= errs[2]


def test_asymptotic_rejects_bad_input():
    with pytest.raises(DomainError):
        pollaczek_p_asymptotic(0, 1.0)
    with pytest.raises(DomainError):
        pollaczek_p_asymptotic(5, -1.0)


# ----------------------------------------------------------------------------
# psi_n
# ----------------------------------------------------------------------------

def test_psi_trivial_values():
    assert abs(psi_n(0, 0.0) - 1) < 1e-15
    assert abs(psi_n(1, 0.0)) < 1e-15


def test_psi0_normalization():
    val = gauss_legendre(lambda y: np.abs(psi_n(0, y)) ** 2, -12, 12)
    assert abs(val - 1) <= 1e-8


# ----------------------------------------------------------------------------
# Q_n kernel
# ----------------------------------------------------------------------------

def _q_reference(n, x, dps=20):
    """High-precision Q_n by mpmath quadrature over the whole real line."""
    with mpmath.workdps(dps):
        def f(y):
            p = [mpmath.mpf(1), 2 * y]
            for k in range(1, n):
                p.append((2 * y * p[k] - k * p[k - 1]) / (k + 1))
            return p[n] * mpmath.gamma(0.5 + 1j * y) / ((1j * (x + 0.5) + y) * mpmath.cosh(mpmath.pi * y))
        val = mpmath.quad(f, [-mpmath.inf, -5, 0, 5, mpmath.inf])
        return complex(1j / (2 * mpmath.sqrt(mpmath.pi)) * val)


def test_q0_against_reference_quadrature():
    assert abs(q_n(0, 0.0) - _q_reference(0, 0.0)) <= 1e-10


@pytest.mark.parametrize("n,x", [(3, 1.0), (7, 4.5), (12, 0.2)])
def test_qn_against_reference_quadrature(n, x):
    assert abs(q_n(n, x) - _q_reference(n, x)) <= 1e-10


def test_q0_equals_psi0_integral():
    x = 1.3
    lhs = gauss_legendre(lambda y: 0.5 * psi_n(0, y) / ((x + 0.5 - 1j * y) * np.cosh(np.pi * y)),
                         -14, 14)
    assert abs(lhs - q_n(0, x)) <= 1e-9


def test_q_decreases_with_x():
    assert abs(q_n(3, 50.0)) < abs(q_n(3, 1.0))


def test_q_table_rows_match_single_values():
    tab = q_table(6, [0.0, 2.5])
    assert tab.shape == (7, 2)
    assert abs(tab[6, 1] - q_n(6, 2.5)) < 1e-13


def test_q_rejects_left_of_domain():
    with pytest.raises(DomainError):
        q_n(0, -0.5)
