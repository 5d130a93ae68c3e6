import math

import mpmath
import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from shimlift import archimedean as arch
from shimlift import worked_instance
from shimlift.embeddings import orbit_map
from shimlift.errors import DomainError

inst = worked_instance()
frame = inst.frame()
pos = st.floats(0.2, 5.0)
upper = st.builds(complex, st.floats(-1.0, 1.0), st.floats(0.4, 2.0))


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(arch.KINDS), pos, pos)
def test_bessel_closed_forms(kind, a, b):
    q = arch.bessel_quad(kind, a, b)
    assert abs(arch.bessel_closed(kind, a, b) - q) <= 1e-8 * abs(q)


def test_bessel_frozen():
    assert arch.bessel_closed(-1.5, 1.0, 2.0) == pytest.approx(0.011761980531389124, rel=1e-14)
    assert arch.bessel_closed(0.5, 1.0, 2.0) == pytest.approx(0.02881871255414418, rel=1e-14)


@given(st.floats(0.01, 2000.0))
def test_scaled_e1(x):
    ref = float(mpmath.exp(x) * mpmath.e1(x))
    assert arch.scaled_e1(x) == pytest.approx(ref, rel=1e-12)


@given(st.floats(0.05, 3.0))
def test_beta1_routes(r):
    e = arch.beta1(r)
    assert arch.beta1_quad(r) == pytest.approx(e, rel=1e-10)
    assert arch.beta1_series(r) == pytest.approx(e, rel=1e-9)


def test_beta1_domain():
    with pytest.raises(DomainError):
        arch.beta1(0.0)


@pytest.mark.parametrize("ell", [1, -1, 2, -2, 3])
@pytest.mark.parametrize("eta", [0.5, 1.0, 2.0])
def test_i_o_closed_vs_quad(ell, eta):
    c, q = arch.i_o(ell, eta, -2), arch.i_o_quad(ell, eta, -2)
    assert abs(c - q) <= 1e-9 * abs(q)


def test_i_o_frozen():
    assert arch.i_o(1, 1.0, -2) == pytest.approx(5.550277742443992e-07, rel=1e-12)
    assert arch.i_o(-1, 1.0, -2) == pytest.approx(2.0508255194150635e-08, rel=1e-10)


@settings(max_examples=25, deadline=None)
@given(st.floats(2.0, 40.0), st.sampled_from([1, -1, 2]), st.sampled_from([1, 2, 3]), st.sampled_from([0.5, 1.0]))
def test_io_per_point(S, ell, m, eta):
    q = arch.io_x_quad(S, ell, m, eta, -2)
    c = arch.io_x_closed(S, ell, m, eta, -2)
    assert abs(c - q) <= 1e-8 * max(abs(q), 1e-300)


@settings(max_examples=100, deadline=None)
@given(st.tuples(*[st.integers(-2, 2)] * 4), st.integers(1, 3), upper)
def test_majorant_identity(c, t, z):
    y = inst.O.element(c)
    assume(y.nrd() != 0)
    x = orbit_map(y, t, inst.phi)
    assert arch.majorant_identity(x, y, t, frame, z) <= 1e-9 * max(1.0, abs(float(x.nrd())))


@given(upper)
def test_r_o_nonnegative(z):
    for r in ([0, 1, 0, 0], [0, 0, 1, 0], [0, 1, 1, 1]):
        v = inst.A.elt(*r)
        assert arch.r_o(v, z, inst.split) >= -1e-9


def test_domain_errors():
    with pytest.raises(DomainError):
        arch.j_z(1 - 0.5j)
    with pytest.raises(DomainError):
        arch.check_disk(1.2)
    with pytest.raises(DomainError):
        arch.r_o(inst.A.one(), 1j, inst.split)


def test_splitting():
    assert inst.split.residual() < 1e-12
    x, y = inst.A.elt(1, 2, 0, 1), inst.A.elt(0, 1, 3, -1)
    M = inst.split.matrix
    assert np.allclose(M(x * y), M(x) @ M(y))
    assert np.linalg.det(M(x)) == pytest.approx(float(x.nrd()))


def test_ddc_both_sides():
    rng = np.random.default_rng(1)
    for c in ([1, 0, 0, 0], [0, 1, 1, 0], [1, 1, 0, 1]):
        b = inst.O.element(c)
        xi1, xi2 = frame.disk_coords(b)
        side = "+" if abs(xi1) > abs(xi2) else "-"
        assert arch.ddc_check(b, frame, side, rng=rng) <= 1e-4
