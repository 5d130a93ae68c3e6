"""A validated (k, B) pair with everything derived from it."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .archimedean import Splitting, UnitaryFrame, ortho_gram
from .embeddings import Embedding, find_embeddings, find_theta, frobenius_type
from .errors import InvalidInstance, NoneFound
from .quadfield import QuadField, chi_k, class_group_reps, make_chardata, prime_factors
from .quatlattice import (
    OrderLattice,
    fincke_pohst,
    make_algebra,
    maximal_order,
    norm_gram,
    exact_quadratic_value,
    reduced_discriminant,
    scaled_lattice,
    trace_zero_basis,
)


@dataclass
class FieldInstance:
    delta: int
    a: Fraction
    b: Fraction
    order_basis: list | None = None
    embedding_radius: int = 20

    def __post_init__(self):
        self.K = QuadField(self.delta)  # validates delta
        self.A = make_algebra(self.a, self.b)
        if not self.A.indefinite:
            raise InvalidInstance("indefinite", f"({self.a}, {self.b}) is definite")
        ram = self.A.ramified_primes
        if len(ram) % 2:
            raise InvalidInstance("even ramification", str(ram))
        if 2 in ram:
            raise InvalidInstance("unramified at 2", str(ram))
        if self.A.d_b <= 1:
            raise InvalidInstance("D_B > 1", "algebra is split")
        for p in ram:
            if chi_k(self.K, p) != -1:
                raise InvalidInstance("inert", f"{p} is not inert in Q(sqrt({self.delta}))")

    @property
    def d_b(self) -> int:
        return self.A.d_b

    @cached_property
    def O(self) -> OrderLattice:
        if self.order_basis is not None:
            O = OrderLattice.from_generators(self.A, self.order_basis, check_order=True)
            if reduced_discriminant(O) != self.d_b:
                raise InvalidInstance("maximal order", "supplied basis is not maximal")
            return O
        return maximal_order(self.A)

    @cached_property
    def chars(self):
        return make_chardata(self.K, self.d_b)

    @cached_property
    def class_reps(self):
        return class_group_reps(self.K)

    @cached_property
    def split(self) -> Splitting:
        return Splitting(self.A)

    @cached_property
    def phi(self) -> Embedding:
        embs = find_embeddings(self.O, self.delta, self.embedding_radius)
        return min(embs, key=lambda e: (max(abs(c) for c in e.g.coords), [-c for c in e.g.coords]))

    @cached_property
    def theta(self):
        return find_theta(self.O, self.d_b, self.phi)

    def frame(self, phi: Embedding | None = None) -> UnitaryFrame:
        return UnitaryFrame((phi or self.phi).g, self.split)

    def lattices(self, phi: Embedding | None = None):
        phi = phi or self.phi
        return [(scaled_lattice(phi.g, a, self.O), a.norm) for a in self.class_reps]

    def fingerprint(self) -> str:
        import hashlib

        key = f"delta={self.delta};a={self.a};b={self.b};O={self.O.to_text()}"
        return hashlib.sha256(key.encode()).hexdigest()[:16]

    def embedding_classes(self, z=0.1 + 1.1j, bound=4.0, max_bound=4096.0):
        """One embedding per (Frobenius type, orientation) pair, relative to self.phi.

        For h(k) = 1 these pairs separate the classes of optimal embeddings
        modulo the norm-one units, so the list is a full set of
        representatives.
        """
        if self.K.class_number != 1:
            raise NotImplementedError("class representatives are only classified for h(k) = 1")
        want = 2 ** (len(prime_factors(self.d_b)) + 1)
        rows = trace_zero_basis(self.O)
        G = ortho_gram(rows, z, self.split)
        ng = norm_gram(self.A, rows)
        n = -self.delta
        found = {}
        while bound <= max_bound and len(found) < want:
            for c in fincke_pohst(G, bound):
                if exact_quadratic_value(ng, c) != n:
                    continue
                coords = [sum(int(ci) * r[k] for ci, r in zip(c, rows)) for k in range(4)]
                e = Embedding(self.A.elt(*coords), self.delta)
                nu = frobenius_type(e.g, 1, self.phi, self.theta, self.O)
                key = (nu, UnitaryFrame(e.g, self.split).orientation)
                found.setdefault(key, e)
            bound *= 2
        if len(found) < want:
            raise NoneFound(f"found {len(found)} of {want} embedding classes")
        return [found[k] for k in sorted(found)]


def worked_instance() -> FieldInstance:
    return FieldInstance(-2, Fraction(-2), Fraction(35))
