import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shimlift import worked_instance
from shimlift.errors import WindowExceeded
from shimlift.quadfield import chi_prime
from shimlift.thetalift import (
    NSParams,
    QExpansion,
    SymbolicValue,
    analytic_identity_check,
    chi_t,
    constant_term_check,
    constant_term_closed,
    hermite,
    ns_kernel_poincare,
    ns_kernel_sharp,
    poisson_twisted_check,
    shimura_lift_coeffs,
    theta_mu,
)

inst = worked_instance()
finite = st.floats(-1e6, 1e6, allow_nan=False)
symbolic = st.builds(SymbolicValue, finite, finite, finite)
rational = st.fractions(min_value=-100, max_value=100, max_denominator=50)


def qexp(values, ring="rational", window=(0, 40)):
    return st.dictionaries(st.integers(*window), values, max_size=12).map(lambda d: QExpansion(d, ring, window))


@given(symbolic)
def test_symbolic_text_round_trip(s):
    assert SymbolicValue.parse(str(s)) == s


@given(qexp(rational))
def test_rational_round_trip(f):
    g = QExpansion.from_text(f.to_text(), "rational", f.window)
    assert g.coeffs == f.coeffs


@given(qexp(symbolic, "symbolic"))
def test_symbolic_expansion_round_trip(f):
    g = QExpansion.from_text(f.to_text(), "symbolic", f.window)
    assert g.coeffs == f.coeffs


@given(qexp(rational), qexp(rational), rational)
def test_linearity(f, g, a):
    h = f.scale(a) + g
    for n in range(0, 41):
        assert h[n] == a * f[n] + g[n]


def test_window():
    f = QExpansion({3: Fraction(1)}, "rational", (0, 10))
    with pytest.raises(WindowExceeded):
        f[11]
    with pytest.raises(WindowExceeded):
        QExpansion({12: Fraction(1)}, "rational", (0, 10))
    with pytest.raises(ValueError):
        f + QExpansion({}, "float", (0, 10))


P = NSParams(35, 2)


def chi(m):
    return chi_t(m, P)


@settings(max_examples=40, deadline=None)
@given(qexp(rational, window=(0, 200)), qexp(rational, window=(0, 200)), rational)
def test_shimura_lift_linear(f, g, a):
    lhs = shimura_lift_coeffs(f.scale(a) + g, 2, 1, chi)
    F, G = shimura_lift_coeffs(f, 2, 1, chi), shimura_lift_coeffs(g, 2, 1, chi)
    for ell in range(1, 11):
        assert lhs[ell] == a * F[ell] + G[ell]


@pytest.mark.parametrize("lam", [1, 2, 3])
def test_shimura_lift_of_single_term(lam):
    # c = q^t: only m = ell contributes, so A(ell) = chi(ell) ell^(lam - 1)
    t = 2
    f = QExpansion({t: Fraction(1)}, "rational", (0, 400))
    A = shimura_lift_coeffs(f, t, lam, chi)
    for ell in range(1, 15):
        assert A[ell] == chi(ell) * ell ** (lam - 1)


def test_shimura_lift_window():
    f = QExpansion({}, "rational", (0, 50))
    with pytest.raises(WindowExceeded):
        shimura_lift_coeffs(f, 2, 1, chi, ell_max=6)


def test_chi_t_matches_field_character():
    C = inst.chars
    assert all(chi_t(a, P) == chi_prime(C, a) for a in range(1, 281))


@pytest.mark.parametrize("N,t", [(35, 2), (51, 10), (3, 1), (5, 1), (7, 3)])
def test_lattice_even(N, t):
    assert NSParams(N, t).check_even()


def test_params_reject():
    with pytest.raises(ValueError):
        NSParams(35, 4)
    with pytest.raises(ValueError):
        NSParams(0, 1)


@given(st.floats(-5, 5))
def test_hermite_low_degree(x):
    assert hermite(0, x) == 1
    assert hermite(1, x) == pytest.approx(x)
    for n in range(1, 6):
        assert hermite(n + 1, x) == pytest.approx(x * hermite(n, x) - n * hermite(n - 1, x), abs=1e-8)


@settings(max_examples=30, deadline=None)
@given(st.floats(-1, 1), st.floats(0.3, 2.0), st.floats(-1, 1), st.integers(0, 3))
def test_theta_mu_periodic(u, v, alpha, mu):
    tau = complex(u, v)
    base = theta_mu(tau, alpha, mu)
    assert abs(theta_mu(tau + 1, alpha, mu) - base) <= 1e-10 * max(1.0, abs(base))
    assert abs(theta_mu(tau, alpha + 0.5, mu) - base) <= 1e-10 * max(1.0, abs(base))


def test_theta_mu_weight_zero_is_jacobi_theta():
    tau = 0.1 + 0.7j
    ref = sum(np.exp(2j * math.pi * tau * l * l) for l in range(-50, 51))
    assert abs(theta_mu(tau, 0.0, 0) - ref) < 1e-12


@pytest.mark.parametrize("N,t", [(35, 2), (51, 10)])
def test_kernel_routes(N, t):
    params = NSParams(N, t)
    tau, w = 0.001 + 0.004j, 0.01 + 0.05j
    if params.level > 280:
        tau = complex(tau.real, tau.imag * 280 / params.level)
    d = ns_kernel_sharp(tau, w, params)
    p = ns_kernel_poincare(tau, w, params)
    assert abs(d.value - p.value) <= 1e-6 * abs(d.value)
    assert p.cosets > 1


@pytest.mark.parametrize("v,eta", [(1.0, 1.0), (0.3, 2.0), (4.0, 0.25)])
def test_twisted_poisson(v, eta):
    assert poisson_twisted_check(v, eta, inst.chars, 35, 2) <= 1e-8


def test_constant_term_frozen():
    r = constant_term_check(1.0, inst.chars, 35, 2)
    q = r.quadrature
    assert q.c0 == pytest.approx(0.0, abs=1e-9)
    assert q.c1 == pytest.approx(-2.0, abs=1e-9)
    assert q.c2 == pytest.approx(-17.626127326858, abs=1e-9)
    assert r.closed.max_abs_diff(q) <= 1e-6
    assert r.hodge.max_abs_diff(q) <= 1e-6


def test_constant_term_opposite_sign_disagrees():
    L1, L1p = 4j * math.pi, -22.59917790307798j
    good = constant_term_closed(1.0, L1, L1p, 35, 2)
    bad = constant_term_closed(1.0, L1, L1p, 35, 2, l_prime_sign=-1)
    assert good.c2 == pytest.approx(-17.626127326858, abs=1e-9)
    assert bad.c2 == pytest.approx(-32.01321081921, abs=1e-9)


@pytest.mark.parametrize("ell,eta", [(1, 0.5), (-1, 0.5), (2, 1.0)])
def test_analytic_identity_sample(ell, eta):
    r = analytic_identity_check(inst, ell, eta, 0.1 + 0.9j)
    rec = r.record()
    assert rec["pass"]
    assert rec["residual"] <= 1e-6 + rec["budget"]
