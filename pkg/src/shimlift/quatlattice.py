"""Quaternion algebras over Q, orders, and lattice point enumeration."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import exact
from .errors import BudgetExceeded, NotAnOrder
from .quadfield import kronecker, prime_factors


def _split_square(x: Fraction, p: int):
    """x = p^v * u with u a p-unit (rational)."""
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v, num * den  # u up to the square den^2


def hilbert_symbol(a, b, p) -> int:
    """Hilbert symbol (a, b)_p; p = 0 stands for the real place."""
    a, b = Fraction(a), Fraction(b)
    if p < 0 or p == 1:
        raise ValueError(f"place must be a prime or 0, got {p}")
    if p == 0:
        return -1 if a < 0 and b < 0 else 1
    al, u = _split_square(a, p)
    be, v = _split_square(b, p)
    if p != 2:
        e = (p - 1) // 2
        s = -1 if (al * be * e) % 2 else 1
        return s * kronecker(u, p) ** (be % 2) * kronecker(v, p) ** (al % 2)

    def eps(x):
        return ((x - 1) // 2) % 2

    def omega(x):
        return ((x * x - 1) // 8) % 2

    ex = eps(u) * eps(v) + al * omega(v) + be * omega(u)
    return -1 if ex % 2 else 1


@dataclass(frozen=True)
class QuatAlgebra:
    a: Fraction
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        if self.a == 0 or self.b == 0:
            raise ValueError("structure constants must be nonzero")

    @property
    def ramified_primes(self) -> list[int]:
        cands = set()
        for x in (self.a, self.b):
            cands |= set(prime_factors(x.numerator)) | set(prime_factors(x.denominator))
        cands.add(2)
        return sorted(p for p in cands if hilbert_symbol(self.a, self.b, p) == -1)

    @property
    def d_b(self) -> int:
        return math.prod(self.ramified_primes)

    @property
    def indefinite(self) -> bool:
        return self.a > 0 or self.b > 0

    def elt(self, *coords) -> "QuatElement":
        return QuatElement(self, tuple(Fraction(c) for c in coords))

    def one(self):
        return self.elt(1, 0, 0, 0)

    def basis(self):
        return [self.elt(*(int(i == j) for j in range(4))) for i in range(4)]


def make_algebra(a, b) -> QuatAlgebra:
    return QuatAlgebra(Fraction(a), Fraction(b))


@dataclass(frozen=True)
class QuatElement:
    alg: QuatAlgebra
    coords: tuple

    def __add__(self, o):
        return QuatElement(self.alg, tuple(x + y for x, y in zip(self.coords, o.coords)))

    def __sub__(self, o):
        return QuatElement(self.alg, tuple(x - y for x, y in zip(self.coords, o.coords)))

    def __neg__(self):
        return QuatElement(self.alg, tuple(-x for x in self.coords))

    def scale(self, c):
        c = Fraction(c)
        return QuatElement(self.alg, tuple(c * x for x in self.coords))

    def __mul__(self, o):
        if not isinstance(o, QuatElement):
            return self.scale(o)
        a, b = self.alg.a, self.alg.b
        x0, x1, x2, x3 = self.coords
        y0, y1, y2, y3 = o.coords
        return QuatElement(
            self.alg,
            (
                x0 * y0 + a * x1 * y1 + b * x2 * y2 - a * b * x3 * y3,
                x0 * y1 + x1 * y0 - b * x2 * y3 + b * x3 * y2,
                x0 * y2 + x2 * y0 + a * x1 * y3 - a * x3 * y1,
                x0 * y3 + x3 * y0 + x1 * y2 - x2 * y1,
            ),
        )

    __rmul__ = scale

    def conj(self):
        x0, x1, x2, x3 = self.coords
        return QuatElement(self.alg, (x0, -x1, -x2, -x3))

    def nrd(self) -> Fraction:
        a, b = self.alg.a, self.alg.b
        x0, x1, x2, x3 = self.coords
        return x0 * x0 - a * x1 * x1 - b * x2 * x2 + a * b * x3 * x3

    def trd(self) -> Fraction:
        return 2 * self.coords[0]

    def inv(self):
        n = self.nrd()
        if n == 0:
            raise ZeroDivisionError("element has reduced norm 0")
        return self.conj().scale(1 / n)

    def is_zero(self):
        return not any(self.coords)

    def __repr__(self):
        return "Quat(" + ", ".join(str(c) for c in self.coords) + ")"


def nrd(x):
    return x.nrd()


def trd(x):
    return x.trd()


def mul(x, y):
    return x * y


def conj(x):
    return x.conj()


def inv(x):
    return x.inv()


def norm_gram(alg: QuatAlgebra, rows):
    """Gram matrix of Nrd on the given rational coordinate rows: Nrd(c.rows) = c G c^T."""
    els = [alg.elt(*r) for r in rows]
    n = len(els)
    G = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            G[i][j] = (els[i] * els[j].conj()).trd() / 2
    return G


@dataclass(frozen=True)
class OrderLattice:
    basis: tuple  # rows of Fractions over (1, i, j, k)
    alg: QuatAlgebra
    is_order: bool = False

    @classmethod
    def from_generators(cls, alg, gens, check_order=False):
        H = exact.rational_hnf([[Fraction(c) for c in (g.coords if isinstance(g, QuatElement) else g)] for g in gens])
        L = cls(tuple(tuple(r) for r in H), alg)
        if check_order:
            return cls(L.basis, alg, is_order_lattice(L))
        return L

    @property
    def rank(self):
        return len(self.basis)

    def elements(self):
        return [self.alg.elt(*r) for r in self.basis]

    def coordinates(self, x):
        coords = x.coords if isinstance(x, QuatElement) else x
        return exact.solve_left([list(r) for r in self.basis], list(coords))

    def element(self, c):
        out = [Fraction(0)] * 4
        for ci, row in zip(c, self.basis):
            if ci:
                out = [o + ci * r for o, r in zip(out, row)]
        return self.alg.elt(*out)

    def covolume(self) -> Fraction:
        return abs(exact.det([list(r) for r in self.basis]))

    def to_text(self) -> str:
        return "\n".join(" ".join(str(x) for x in row) for row in self.basis) + "\n"

    @classmethod
    def from_text(cls, alg, text):
        rows = [[Fraction(t) for t in line.split()] for line in text.strip().splitlines()]
        return cls.from_generators(alg, rows)


def membership(x, L: OrderLattice) -> bool:
    return all(c.denominator == 1 for c in L.coordinates(x))


def p_adic_membership(x, L: OrderLattice, p: int) -> bool:
    return all(c.denominator % p for c in L.coordinates(x))


def is_order_lattice(L: OrderLattice) -> bool:
    if len(L.basis) != 4 or not membership(L.alg.one(), L):
        return False
    els = L.elements()
    for x in els:
        for y in els:
            if not membership(x * y, L):
                return False
    return True


def reduced_discriminant(L: OrderLattice, A: QuatAlgebra | None = None) -> int:
    A = A or L.alg
    if not is_order_lattice(L):
        raise NotAnOrder("lattice is not closed under multiplication")
    els = L.elements()
    D = abs(exact.det([[(x * y).trd() for y in els] for x in els]))
    r = math.isqrt(int(D))
    if D.denominator != 1 or r * r != D:
        raise NotAnOrder("discriminant is not a square integer")
    return r


def standard_order(A: QuatAlgebra) -> OrderLattice:
    if A.a.denominator != 1 or A.b.denominator != 1:
        raise ValueError("standard order needs integral structure constants")
    return OrderLattice.from_generators(A, [e.coords for e in A.basis()], check_order=True)


def _integral_on(L, els):
    for x in els:
        if x.nrd().denominator != 1 or x.trd().denominator != 1:
            return False
    return True


def _ring_closure(A, gens, max_rounds=12):
    """Smallest ring containing the generators, or None if it leaves the
    integral elements."""
    L = OrderLattice.from_generators(A, gens)
    for _ in range(max_rounds):
        els = L.elements()
        if not _integral_on(L, els):
            return None
        for x in els:
            for y in els:
                if (x * y).trd().denominator != 1:
                    return None
        prods = [(x * y).coords for x in els for y in els]
        L2 = OrderLattice.from_generators(A, [r for r in L.basis] + prods)
        if L2.basis == L.basis:
            return OrderLattice(L.basis, A, True)
        L = L2
    return None


def maximal_order(A: QuatAlgebra, seed: OrderLattice | None = None) -> OrderLattice:
    """Maximal order by p-saturation of a seed order."""
    O = seed or standard_order(A)
    target = A.d_b
    disc = reduced_discriminant(O, A)
    while disc != target:
        progressed = False
        for p in prime_factors(disc // target if disc % target == 0 else disc):
            if progressed:
                break
            els = O.elements()
            for c in itertools.product(range(p), repeat=4):
                if not any(c):
                    continue
                y = sum((e.scale(ci) for e, ci in zip(els, c) if ci), A.elt(0, 0, 0, 0)).scale(Fraction(1, p))
                if y.nrd().denominator != 1 or y.trd().denominator != 1:
                    continue
                O2 = _ring_closure(A, list(O.basis) + [y.coords])
                if O2 is None:
                    continue
                d2 = reduced_discriminant(O2, A)
                if d2 < disc:
                    O, disc, progressed = O2, d2, True
                    break
        if not progressed:
            raise NotAnOrder(f"saturation stalled at discriminant {disc}")
    return O


def scaled_lattice(g: QuatElement, ideal, O: OrderLattice) -> OrderLattice:
    """phi(ideal)^{-1} O_B where phi(sqrt(delta)) = g, in HNF."""
    gens = []
    for x, y in ideal.inverse().basis():
        beta = g.scale(y) + O.alg.one().scale(x)
        for e in O.elements():
            gens.append((beta * e).coords)
    return OrderLattice.from_generators(O.alg, gens)


# ---------------------------------------------------------------- enumeration


@dataclass(frozen=True)
class MajorantForm:
    gram: np.ndarray
    tag: str = ""
    exact_gram: tuple | None = None

    def value(self, c):
        c = np.asarray(c, dtype=float)
        return float(c @ self.gram @ c)

    def certify(self) -> bool:
        """Positive definiteness from exact Cholesky pivots."""
        G = self.exact_gram or tuple(tuple(Fraction(float(x)) for x in row) for row in self.gram)
        n = len(G)
        M = [list(r) for r in G]
        for k in range(n):
            if M[k][k] <= 0:
                return False
            for i in range(k + 1, n):
                f = M[i][k] / M[k][k]
                M[i] = [a - f * b for a, b in zip(M[i], M[k])]
        return True


def predicted_count(gram, bound) -> float:
    n = len(gram)
    vol = math.pi ** (n / 2) / math.gamma(n / 2 + 1)
    return vol * (max(bound, 0.0) ** (n / 2)) / math.sqrt(abs(np.linalg.det(gram)))


def box_radii(gram, bound):
    Gi = np.linalg.inv(np.asarray(gram, dtype=float))
    return [int(math.floor(math.sqrt(max(bound, 0.0) * Gi[i, i]) * (1 + 1e-9) + 1e-9)) for i in range(len(gram))]


def fincke_pohst(gram, bound, budget=10 ** 7):
    """All integer vectors c with c G c^T <= bound (float Cholesky recursion).

    Candidates are produced with the bound inflated by 1e-6 relative; the
    caller re-checks with whatever exact value it trusts. Returns an int
    array of shape (k, n) sorted lexicographically.
    """
    G = np.asarray(gram, dtype=float)
    n = len(G)
    if bound < 0:
        return np.zeros((0, n), dtype=np.int64)
    B = bound * (1 + 1e-6) + 1e-12
    if predicted_count(G, B) > budget:
        raise BudgetExceeded(f"predicted {predicted_count(G, B):.3g} points > budget {budget}")
    # G = R^T R with R upper triangular; Q(c) = sum_i q_ii (c_i + sum_{j>i} q_ij c_j)^2
    R = np.linalg.cholesky(G).T
    q = np.zeros((n, n))
    for i in range(n):
        q[i, i] = R[i, i] ** 2
        for j in range(i + 1, n):
            q[i, j] = R[i, j] / R[i, i]
    out = []
    count = 0
    c = [0] * n

    def rec(i, rem):
        nonlocal count
        centre = -sum(q[i, j] * c[j] for j in range(i + 1, n))
        r = math.sqrt(max(rem, 0.0) / q[i, i])
        lo, hi = math.ceil(centre - r - 1e-9), math.floor(centre + r + 1e-9)
        if i == 0:
            if hi >= lo:
                k = hi - lo + 1
                count += k
                if count > budget:
                    raise BudgetExceeded(f"enumeration exceeded budget {budget}")
                block = np.empty((k, n), dtype=np.int64)
                block[:, 0] = np.arange(lo, hi + 1)
                block[:, 1:] = c[1:]
                out.append(block)
            return
        for v in range(lo, hi + 1):
            c[i] = v
            rec(i - 1, rem - q[i, i] * (v - centre) ** 2)
        c[i] = 0

    rec(n - 1, B)
    if not out:
        return np.zeros((0, n), dtype=np.int64)
    pts = np.concatenate(out)
    # exact-ish re-check in float with the uninflated bound plus margin
    vals = np.einsum("ij,jk,ik->i", pts.astype(float), G, pts.astype(float))
    pts = pts[vals <= B]
    order = np.lexsort(pts.T[::-1])
    return pts[order]


def box_scan(gram, bound):
    """Oracle: scan the exact bounding box of the ellipsoid."""
    G = np.asarray(gram, dtype=float)
    n = len(G)
    if bound < 0:
        return np.zeros((0, n), dtype=np.int64)
    B = bound * (1 + 1e-6) + 1e-12
    rad = box_radii(G, B)
    axes = [np.arange(-r, r + 1) for r in rad]
    pts = np.stack([a.ravel() for a in np.meshgrid(*axes, indexing="ij")], axis=1).astype(np.int64)
    vals = np.einsum("ij,jk,ik->i", pts.astype(float), G, pts.astype(float))
    pts = pts[vals <= B]
    order = np.lexsort(pts.T[::-1])
    return pts[order]


def exact_quadratic_value(exact_gram, c) -> Fraction:
    n = len(c)
    return sum(exact_gram[i][j] * int(c[i]) * int(c[j]) for i in range(n) for j in range(n))


def enumerate_under_majorant(L: OrderLattice, M: MajorantForm, bound, trd_zero=False, nrd=None, budget=10 ** 7, rows=None):
    """Lattice points with M(x) <= bound and optional trace/norm filters.

    `rows` overrides the basis the Gram is expressed in (e.g. a trace-zero
    sublattice). Returns QuatElements sorted by coordinates.
    """
    basis = rows if rows is not None else [list(r) for r in L.basis]
    pts = fincke_pohst(M.gram, bound, budget)
    out = []
    ng = norm_gram(L.alg, basis) if nrd is not None else None
    for c in pts:
        if M.exact_gram is not None and exact_quadratic_value(M.exact_gram, c) > bound:
            continue
        if nrd is not None and exact_quadratic_value(ng, c) != nrd:
            continue
        coords = [sum(int(ci) * Fraction(r[k]) for ci, r in zip(c, basis)) for k in range(4)]
        x = L.alg.elt(*coords)
        if trd_zero and x.trd() != 0:
            continue
        out.append(x)
    return out


def trace_zero_basis(O: OrderLattice):
    """Z-basis (rational rows) of the trace-zero sublattice of O."""
    ker = exact.integer_left_kernel([[r[0]] for r in O.basis])
    rows = [[sum(k * Fraction(O.basis[i][c]) for i, k in enumerate(v)) for c in range(4)] for v in ker]
    return exact.rational_hnf(rows)
