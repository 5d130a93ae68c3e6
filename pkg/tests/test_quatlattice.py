from fractions import Fraction

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from shimlift import exact, worked_instance
from shimlift.errors import NotAnOrder
from shimlift.quadfield import prime_factors
from shimlift.quatlattice import (
    MajorantForm,
    OrderLattice,
    box_scan,
    fincke_pohst,
    hilbert_symbol,
    is_order_lattice,
    make_algebra,
    maximal_order,
    membership,
    reduced_discriminant,
    standard_order,
    trace_zero_basis,
)

nonzero = st.integers(-30, 30).filter(bool)
coord = st.fractions(min_value=-5, max_value=5, max_denominator=6)
elt4 = st.tuples(coord, coord, coord, coord)
A = make_algebra(-2, 35)


@settings(max_examples=80)
@given(nonzero, nonzero)
def test_hilbert_product_formula(a, b):
    places = {0, 2} | set(prime_factors(a)) | set(prime_factors(b))
    prod = 1
    for p in places:
        prod *= hilbert_symbol(a, b, p)
    assert prod == 1


@given(nonzero, nonzero)
def test_ramified_set_even(a, b):
    alg = make_algebra(a, b)
    real = 0 if alg.indefinite else 1
    assert (len(alg.ramified_primes) + real) % 2 == 0


def test_hilbert_rejects_bad_place():
    with pytest.raises(ValueError):
        hilbert_symbol(2, 3, -1)


def test_worked_algebra():
    assert A.ramified_primes == [5, 7]
    assert A.d_b == 35
    assert A.indefinite
    assert make_algebra(-1, -1).ramified_primes == [2]


@given(elt4, elt4)
def test_norm_multiplicative(x, y):
    x, y = A.elt(*x), A.elt(*y)
    assert (x * y).nrd() == x.nrd() * y.nrd()
    assert (x * y).conj() == y.conj() * x.conj()
    assert (x + y).trd() == x.trd() + y.trd()


@given(elt4)
def test_inverse(x):
    x = A.elt(*x)
    assume(x.nrd() != 0)
    assert x * x.inv() == A.one()
    assert x.conj().conj() == x


def test_worked_order_is_maximal():
    O = worked_instance().O
    assert is_order_lattice(O)
    assert reduced_discriminant(O) == 35
    assert O.covolume() == Fraction(1, 8)


def test_maximal_order_from_scratch():
    M = maximal_order(A)
    assert reduced_discriminant(M) == 35
    assert reduced_discriminant(standard_order(A)) == 280


def test_not_an_order():
    L = OrderLattice.from_generators(A, [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, Fraction(1, 3), 0], [0, 0, 0, 1]])
    assert not is_order_lattice(L)
    with pytest.raises(NotAnOrder):
        reduced_discriminant(L)


def test_text_round_trip():
    O = worked_instance().O
    assert OrderLattice.from_text(A, O.to_text()).basis == O.basis


def test_membership():
    O = worked_instance().O
    assert membership(A.elt(Fraction(1, 2), 0, Fraction(1, 2), Fraction(1, 2)), O)
    assert not membership(A.elt(Fraction(1, 2), 0, 0, 0), O)


def test_trace_zero_basis():
    O = worked_instance().O
    rows = trace_zero_basis(O)
    assert len(rows) == 3
    assert all(A.elt(*r).trd() == 0 and membership(A.elt(*r), O) for r in rows)


@st.composite
def pos_forms(draw):
    n = draw(st.integers(1, 4))
    B = np.array(draw(st.lists(st.integers(-3, 3), min_size=n * n, max_size=n * n)), dtype=float).reshape(n, n)
    eps = draw(st.floats(0.2, 2.0))
    return B @ B.T + eps * np.eye(n), draw(st.floats(0.5, 10.0))


@settings(max_examples=60, deadline=None)
@given(pos_forms())
def test_fincke_pohst_matches_box_scan(form):
    G, bound = form
    fp = {tuple(int(x) for x in p) for p in fincke_pohst(G, bound)}
    bs = {tuple(int(x) for x in p) for p in box_scan(G, bound)}
    assert fp == bs
    assert all(np.array(p) @ G @ np.array(p) <= bound + 1e-9 for p in fp)


def test_majorant_certify():
    assert MajorantForm(np.array([[2.0, 1.0], [1.0, 2.0]])).certify()
    assert not MajorantForm(np.array([[1.0, 2.0], [2.0, 1.0]])).certify()


@given(st.lists(st.integers(-9, 9), min_size=9, max_size=9))
def test_exact_det_matches_numpy(vals):
    M = [vals[0:3], vals[3:6], vals[6:9]]
    assert abs(float(exact.det(M)) - np.linalg.det(np.array(M, dtype=float))) < 1e-6


@given(st.lists(st.integers(-9, 9), min_size=12, max_size=12))
def test_hnf_preserves_span(vals):
    rows = [vals[0:3], vals[3:6], vals[6:9], vals[9:12]]
    H = exact.hnf(rows)
    assert exact.hnf(H) == H
    # every original row lies in the span of H
    for r in rows:
        assert exact.hnf(H + [r]) == H
