from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from shimlift import worked_instance
from shimlift.embeddings import (
    conductor,
    fiber_enumerate,
    fiber_prediction,
    frobenius_type,
    orbit_map,
    units_of_norm,
)
from shimlift.quatlattice import membership

inst = worked_instance()
O = inst.O
small = st.tuples(*[st.integers(-2, 2)] * 4)


def test_embedding_generator():
    g = inst.phi.g
    assert g.coords == (0, 1, 0, 0)
    assert g.trd() == 0 and g.nrd() == 2
    assert inst.phi.is_optimal_in(O)


def test_theta():
    th = inst.theta
    assert th.coords == (0, Fraction(-35, 4), Fraction(-3, 2), Fraction(-3, 4))
    assert th.nrd() == -35 or th.nrd() == 35
    assert membership(th, O)


def test_embedding_classes():
    reps = inst.embedding_classes()
    assert len(reps) == 8
    for phi in reps:
        assert phi.g.nrd() == 2 and phi.g.trd() == 0
        assert membership(phi.g, O)


def test_units():
    assert len(units_of_norm(O, 1)) == 2


@settings(max_examples=40, deadline=None)
@given(small, st.integers(1, 6))
def test_orbit_map_norm(c, t):
    y = O.element(c)
    assume(y.nrd() != 0)
    x = orbit_map(y, t, inst.phi)
    assert x.trd() == 0
    assert x.nrd() == 2 * t * t


@settings(max_examples=40, deadline=None)
@given(small)
def test_fiber_contains_its_source(c):
    # b in phi(a)^-1 O gives xi = m b^-1 g b; the fiber over xi must contain b
    L, N = inst.lattices()[0]
    b = L.element(c)
    assume(b.nrd() != 0)
    m = abs(int(b.nrd() * abs(inst.delta) * N))
    xi = orbit_map(b, m, inst.phi)
    assume(membership(xi, O))
    pts = fiber_enumerate(xi, m, inst.phi, inst.class_reps, O, return_points=True)
    assert b in pts
    assert len(pts) == fiber_prediction(inst.K, xi, m, inst.phi, inst.theta, O)


@pytest.mark.parametrize(
    "coords,m,phi,c,nu,count",
    [
        ((0, 2, 0, 0), 2, 0, 1, 1, 2),
        ((0, -2, 0, 0), 2, 6, 1, 1, 2),
        ((0, -10, 0, 0), 10, 4, 1, 5, 2),
    ],
)
def test_frozen_fibers(coords, m, phi, c, nu, count):
    xi = inst.A.elt(*coords)
    e = inst.embedding_classes()[phi]
    assert conductor(xi, m, O) == c
    assert frobenius_type(xi, m, e, inst.theta, O) == nu
    assert fiber_prediction(inst.K, xi, m, e, inst.theta, O) == count
    assert fiber_enumerate(xi, m, e, inst.class_reps, O) == count
