"""Embeddings of o_k into a maximal order and their local invariants."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import exact
from .errors import EmptySolutionSpace, InconsistentLocalData, NoneFound
from .quadfield import QuadField, prime_factors, rho_of
from .quatlattice import (
    OrderLattice,
    QuatElement,
    fincke_pohst,
    membership,
    norm_gram,
    p_adic_membership,
    scaled_lattice,
    trace_zero_basis,
)


@dataclass(frozen=True)
class Embedding:
    """phi(x + y sqrt(delta)) = x + y g."""

    g: QuatElement
    delta: int

    def __post_init__(self):
        if self.g.trd() != 0 or self.g.nrd() != -self.delta:
            raise ValueError("g must have trace 0 and norm |delta|")

    def __call__(self, x, y=0):
        return self.g.scale(y) + self.g.alg.one().scale(x)

    def conjugated(self, u: QuatElement) -> "Embedding":
        """Ad_u o phi, i.e. g -> u g u^{-1}."""
        return Embedding(u * self.g * u.inv(), self.delta)

    def is_optimal_in(self, O: OrderLattice) -> bool:
        if not membership(self.g, O):
            return False
        one = self.g.alg.one()
        return not any(membership((self.g + one.scale(m)).scale(Fraction(1, 2)), O) for m in (0, 1))


def _int_norm_gram(rows, alg):
    G = norm_gram(alg, rows)
    return np.array([[int(2 * x) for x in row] for row in G], dtype=np.int64)


def _box_points(radius, n=4):
    ax = np.arange(-radius, radius + 1)
    return np.stack([a.ravel() for a in np.meshgrid(*([ax] * n), indexing="ij")], axis=1)


def _search(O: OrderLattice, target_nrd: int, radius: int):
    """Trace-zero elements of norm target_nrd with trace-zero coordinates in
    [-radius, radius], scanned one slab at a time."""
    rows = trace_zero_basis(O)
    G2 = _int_norm_gram(rows, O.alg)
    plane = _box_points(radius, 2)
    out = []
    for c0 in range(-radius, radius + 1):
        pts = np.concatenate([np.full((len(plane), 1), c0), plane], axis=1)
        vals = np.einsum("ij,jk,ik->i", pts, G2, pts)
        for p in pts[vals == 2 * target_nrd]:
            coords = [sum(int(ci) * r[k] for ci, r in zip(p, rows)) for k in range(4)]
            out.append(O.alg.elt(*coords))
    return out


def find_embeddings(O: OrderLattice, delta: int, radius: int = 20) -> list[Embedding]:
    found = [Embedding(g, delta) for g in _search(O, -delta, radius)]
    if not found:
        raise NoneFound(f"no embedding within radius {radius}; increase radius")
    return found


def find_theta(O: OrderLattice, d_b: int, phi: Embedding, radius: int = 20, max_radius: int = 320) -> QuatElement:
    """theta in O with theta^2 = -d_b and Trd(theta phi(sqrt delta)) > 0.

    The radius doubles until a candidate shows up.
    """
    while radius <= max_radius:
        cands = [th for th in _search(O, d_b, radius) if (th * phi.g).trd() != 0]
        if cands:
            th = min(cands, key=lambda x: (max(abs(c) for c in x.coords), x.coords))
            return th if (th * phi.g).trd() > 0 else -th
        radius *= 2
    raise NoneFound(f"no theta within radius {max_radius}")


def conductor(xi: QuatElement, t: int, O: OrderLattice) -> int:
    c = 1
    for x in O.coordinates(xi.scale(Fraction(1, t))):
        c = math.lcm(c, x.denominator)
    if t % c:
        raise InconsistentLocalData(f"conductor {c} does not divide {t}")
    return c


def frobenius_type(xi, t, phi: Embedding, theta, O: OrderLattice) -> int:
    d_b = -int(theta.nrd()) if theta.nrd() < 0 else int(theta.nrd())
    x = xi.scale(Fraction(1, t))
    th_inv = theta.inv()
    nu = 1
    for p in prime_factors(d_b):
        if not p_adic_membership(x, O, p):
            raise InconsistentLocalData(f"xi/t is not {p}-integral")
        if p_adic_membership((x - phi.g) * th_inv, O, p):
            continue
        if p_adic_membership((x + phi.g) * th_inv, O, p):
            nu *= p
            continue
        raise InconsistentLocalData(f"reductions at {p} neither agree nor differ by Frobenius")
    return nu


def orbit_map(y: QuatElement, m, phi: Embedding) -> QuatElement:
    return (y.inv() * phi.g * y).scale(m)


def conjugator_space(xi, m, phi: Embedding):
    """Rational basis of {b : b xi = m g b}."""
    alg = xi.alg
    cols = []
    for e in alg.basis():
        cols.append((e * xi - (phi.g * e).scale(m)).coords)
    # cols[k] is the image of basis vector k; kernel of the 4x4 matrix with those columns
    A = [[cols[k][r] for k in range(4)] for r in range(4)]
    return [alg.elt(*v) for v in exact.rational_kernel(A)]


def _height_key(b):
    v = exact.primitive(list(b.coords))
    return (max(abs(x) for x in v), v)


def solve_conjugator(xi, m, phi: Embedding) -> QuatElement | None:
    space = conjugator_space(xi, m, phi)
    if not space:
        return None
    cands = [b for b in space] + [phi.g * b for b in space]
    best = min(cands, key=_height_key)
    return best.alg.elt(*exact.primitive(list(best.coords)))


def phi_sign(xi, m, phi: Embedding) -> str:
    b0 = solve_conjugator(xi, m, phi)
    if b0 is None:
        return "none"
    return "pos" if phi.delta * b0.nrd() > 0 else "neg"


def _binary_points(L: OrderLattice, b0, g, target: Fraction):
    """Points of L on phi(k) b0 with Nrd = target."""
    u = L.coordinates(b0)
    w = L.coordinates(g * b0)
    S = exact.saturate([u, w], 4)
    # each saturated vector s = x u + y w
    uv = [[u[k], w[k]] for k in range(4)]
    coeffs = []
    for s in S:
        # least squares is exact here: pick two independent rows
        for r1, r2 in itertools.combinations(range(4), 2):
            M = [[uv[r1][0], uv[r2][0]], [uv[r1][1], uv[r2][1]]]
            if exact.det(M) != 0:
                xy = exact.solve_left(M, [Fraction(s[r1]), Fraction(s[r2])])
                coeffs.append(xy)
                break
    n0 = b0.nrd()
    delta = -g.nrd()  # g^2 = delta, Nrd(g) = -delta
    # Nrd(x b0 + y g b0) = n0 (x^2 - delta y^2)
    want = target / n0
    if want <= 0:
        return []
    (x1, y1), (x2, y2) = coeffs
    E = [
        [x1 * x1 - delta * y1 * y1, x1 * x2 - delta * y1 * y2],
        [x1 * x2 - delta * y1 * y2, x2 * x2 - delta * y2 * y2],
    ]
    pts = fincke_pohst(np.array([[float(v) for v in row] for row in E]), float(want))
    out = []
    for n1, n2 in pts:
        n1, n2 = int(n1), int(n2)
        val = E[0][0] * n1 * n1 + 2 * E[0][1] * n1 * n2 + E[1][1] * n2 * n2
        if val == want:
            x, y = n1 * x1 + n2 * x2, n1 * y1 + n2 * y2
            out.append(b0.scale(x) + (g * b0).scale(y))
    return out


def fiber_enumerate(xi, m, phi: Embedding, class_reps, O: OrderLattice, return_points=False):
    """Count b in the disjoint union of phi(a_i)^{-1} O with m b^{-1} g b = xi
    and Nrd(b) matching the side of xi."""
    b0 = solve_conjugator(xi, m, phi)
    if b0 is None:
        raise EmptySolutionSpace("xi is not conjugate to a multiple of g")
    sign = 1 if b0.nrd() > 0 else -1
    delta = phi.delta
    pts = []
    for a in class_reps:
        L = scaled_lattice(phi.g, a, O)
        target = Fraction(sign * m) / (abs(delta) * a.norm)
        pts.extend(_binary_points(L, b0, phi.g, target))
    return pts if return_points else len(pts)


def fiber_prediction(K: QuadField, xi, m, phi, theta, O) -> int:
    c = conductor(xi, m, O)
    nu = frobenius_type(xi, m, phi, theta, O)
    return K.unit_count * rho_of(K, Fraction(m, c * nu * abs(K.delta)))


def units_of_norm(O: OrderLattice, n: int, radius: int = 3) -> list[QuatElement]:
    rows = [list(r) for r in O.basis]
    G2 = _int_norm_gram(rows, O.alg)
    pts = _box_points(radius)
    vals = np.einsum("ij,jk,ik->i", pts, G2, pts)
    return [O.element([int(c) for c in p]) for p in pts[vals == 2 * n]]


def omega_plus_minus(L: OrderLattice, phi: Embedding, m, norm_a, gram, bound):
    """Points y of L with |Delta| N(a) |Nrd(y)| = |m| under a majorant bound.

    Returns (plus, minus) lists: plus has Delta Nrd(y) N(a) = m, minus has
    Delta Nrd(y) N(a) = -m.
    """
    from .quatlattice import exact_quadratic_value

    pts = fincke_pohst(gram, bound)
    ng = norm_gram(L.alg, [list(r) for r in L.basis])
    want_plus = Fraction(m) / (phi.delta * norm_a)
    plus, minus = [], []
    for c in pts:
        v = exact_quadratic_value(ng, c)
        if v == want_plus:
            plus.append(L.element([int(x) for x in c]))
        elif v == -want_plus:
            minus.append(L.element([int(x) for x in c]))
    return plus, minus


def rescale_embedding(mu: QuatElement, phi: Embedding) -> Embedding:
    """phi' = Ad_{mu^{-1}} o phi."""
    return phi.conjugated(mu.inv())
