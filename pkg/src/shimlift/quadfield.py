"""Arithmetic of k = Q(sqrt(delta)) for negative even squarefree delta."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache

import mpmath
import numpy as np

from . import exact
from .errors import AccuracyError, InvalidInstance


def is_squarefree(n: int) -> bool:
    n = abs(n)
    if n == 0:
        return False
    p = 2
    while p * p <= n:
        if n % (p * p) == 0:
            return False
        p += 1
    return True


def prime_factors(n: int) -> list[int]:
    n = abs(n)
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def divisors(n: int) -> list[int]:
    n = abs(n)
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n)."""
    if n == 0:
        return 1 if abs(a) == 1 else 0
    res = 1
    if n < 0:
        n = -n
        if a < 0:
            res = -res
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v:
        if a % 2 == 0:
            return 0
        if v % 2 and a % 8 in (3, 5):
            res = -res
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                res = -res
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            res = -res
        a %= n
    return res if n == 1 else 0


def reduced_forms(D: int) -> list[tuple[int, int, int]]:
    """Reduced positive definite forms (a, b, c) with b^2 - 4ac = D < 0."""
    out = []
    a = 1
    while 3 * a * a <= -D:
        for b in range(-a + 1, a + 1):
            if (b * b - D) % (4 * a):
                continue
            c = (b * b - D) // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            out.append((a, b, c))
        a += 1
    return out


@dataclass(frozen=True)
class QuadField:
    delta: int

    def __post_init__(self):
        d = self.delta
        if d >= 0:
            raise InvalidInstance("delta negative", f"delta={d}")
        if d % 2:
            raise InvalidInstance("delta even", f"delta={d}")
        if not is_squarefree(d):
            raise InvalidInstance("delta squarefree", f"delta={d}")

    @property
    def disc(self) -> int:
        return 4 * self.delta

    @property
    def unit_count(self) -> int:
        return 2

    @cached_property
    def class_number(self) -> int:
        return len(reduced_forms(self.disc))


@dataclass(frozen=True)
class IdealRep:
    """scale * (a Z + (b + sqrt(delta)) Z)."""

    a: int
    b: int
    delta: int
    scale: Fraction = Fraction(1)

    def __post_init__(self):
        if self.a <= 0:
            raise ValueError("a must be positive")
        object.__setattr__(self, "b", self.b % self.a)
        object.__setattr__(self, "scale", Fraction(self.scale))
        if (self.b * self.b - self.delta) % self.a:
            raise ValueError("not closed under sqrt(delta)")

    @property
    def norm(self) -> Fraction:
        return self.scale ** 2 * self.a

    def basis(self):
        """Z-basis as (rational part, sqrt(delta) coefficient) pairs."""
        s = self.scale
        return [(s * self.a, Fraction(0)), (s * self.b, s)]

    @classmethod
    def from_generators(cls, gens, delta):
        # HNF in (sqrt coefficient, rational part) ordering
        H = exact.rational_hnf([[Fraction(y), Fraction(x)] for x, y in gens])
        if len(H) != 2:
            raise ValueError("generators do not span a rank 2 lattice")
        (d, e), (_, n) = H
        a, b = n / d, e / d
        if a.denominator != 1 or b.denominator != 1:
            raise ValueError("lattice is not a fractional ideal")
        return cls(int(a), int(b), delta, d)

    def __mul__(self, other):
        D = self.delta
        gens = []
        for x1, y1 in self.basis():
            for x2, y2 in other.basis():
                gens.append((x1 * x2 + D * y1 * y2, x1 * y2 + x2 * y1))
        return IdealRep.from_generators(gens, D)

    def conjugate(self):
        return IdealRep.from_generators([(x, -y) for x, y in self.basis()], self.delta)

    def inverse(self):
        N = self.norm
        return IdealRep.from_generators([(x / N, -y / N) for x, y in self.basis()], self.delta)

    def contains(self, x, y) -> bool:
        (p, _), (q, s) = self.basis()
        k = Fraction(y) / s
        if k.denominator != 1:
            return False
        return ((Fraction(x) - k * q) / p).denominator == 1


def form_to_ideal(form, delta) -> IdealRep:
    a, b, _ = form
    return IdealRep(a, (-b // 2) % a, delta)


def class_group_reps(K: QuadField) -> list[IdealRep]:
    forms = sorted(reduced_forms(K.disc))
    return [form_to_ideal(f, K.delta) for f in forms]


def chi_k(K: QuadField, a: int) -> int:
    return kronecker(K.disc, a)


def _stable_count(delta, N):
    """Count HNF sublattices (a, b; 0, d) of index N in Z + Z sqrt(delta)
    that are closed under sqrt(delta). Vectorized over b."""
    count = 0
    for a in divisors(N):
        d = N // a
        # lattice spanned by a and b + d sqrt(delta)
        if a % d:
            # a*sqrt(delta) needs a multiple of d as its sqrt coefficient
            continue
        b = np.arange(a, dtype=np.int64)
        in1 = ((a // d) * b) % a == 0
        # sqrt(delta) (b + d sqrt(delta)) = d delta + b sqrt(delta)
        in2 = (b % d == 0) & ((d * delta - (b // d) * b) % a == 0)
        count += int(np.count_nonzero(in1 & in2))
    return count


def _stable_count_generic(delta, N):
    """Same count, one lattice at a time through exact membership."""
    count = 0
    for a in divisors(N):
        d = N // a
        for b in range(a):
            basis = [[Fraction(a), Fraction(0)], [Fraction(b), Fraction(d)]]

            def member(x, y):
                c = exact.solve_left(basis, [x, y])
                return all(t.denominator == 1 for t in c)

            if member(0, a) and member(d * delta, b):
                count += 1
    return count


def rho(K: QuadField, N: int) -> int:
    """Number of integral ideals of norm N, by brute force over sublattices."""
    if N < 1:
        return 0
    return _stable_count(K.delta, int(N))


def rho_generic(K: QuadField, N: int) -> int:
    if N < 1:
        return 0
    return _stable_count_generic(K.delta, int(N))


def rho_of(K: QuadField, x) -> int:
    """rho extended by zero to non-integers."""
    x = Fraction(x)
    if x.denominator != 1 or x < 1:
        return 0
    return rho(K, int(x))


def rho_divisor_sum(K: QuadField, N: int) -> int:
    return sum(chi_k(K, a) for a in divisors(N))


def rho_lemma_check(K: QuadField, d_b: int, chars: "CharData", m: int):
    """Returns (lhs, rhs, number of nu with nonzero rho)."""
    terms = [rho_of(K, Fraction(m, nu)) for nu in divisors(d_b)]
    lhs = sum(terms)
    rhs = sum(chi_prime(chars, a) for a in divisors(m))
    return lhs, rhs, sum(1 for t in terms if t)


@dataclass(frozen=True)
class CharData:
    modulus: int
    chi_k_table: tuple
    chi_prime_table: tuple
    gauss_table: tuple = field(repr=False)

    def __post_init__(self):
        if sum(self.chi_prime_table) != 0:
            raise ValueError("character sum does not vanish")


def gauss_sums(table) -> np.ndarray:
    M = len(table)
    chi = np.asarray(table, dtype=float)
    h = np.arange(M)
    phase = np.outer(h, h) % M
    return np.exp(2j * np.pi * phase / M) @ chi


def make_chardata(K: QuadField, d_b: int) -> CharData:
    M = 4 * d_b * abs(K.delta)
    ck = tuple(chi_k(K, h) for h in range(M))
    cp = tuple(ck[h] if math.gcd(h, M) == 1 else 0 for h in range(M))
    return CharData(M, ck, cp, tuple(complex(z) for z in gauss_sums(cp)))


def chi_prime(C: CharData, a: int) -> int:
    return C.chi_prime_table[a % C.modulus]


def gauss_sum(C: CharData, a: int) -> complex:
    return C.gauss_table[a % C.modulus]


@lru_cache(maxsize=None)
def _hurwitz(M, gauss):
    mpmath.mp.dps = 30
    s_psi = mpmath.mpc(0)
    s_g1 = mpmath.mpc(0)
    for h in range(1, M + 1):
        g = gauss[h % M]
        if abs(g) < 1e-9:
            continue
        x = mpmath.mpf(h) / M
        s_psi += mpmath.mpc(g) * mpmath.psi(0, x)
        s_g1 += mpmath.mpc(g) * mpmath.stieltjes(1, x)
    L1 = -s_psi / M
    L1p = (-s_g1 + mpmath.log(M) * s_psi) / M
    mpmath.mp.dps = 15
    return complex(L1), complex(L1p)


def l_values_hurwitz(gauss) -> tuple[complex, complex]:
    gauss = tuple(complex(g) for g in gauss)
    return _hurwitz(len(gauss), gauss)


def l_values_summation(gauss, K_blocks: int = 400) -> tuple[complex, complex]:
    """Partial sums up to K_blocks*M plus an Euler-Maclaurin tail per class.

    The divergent parts of the tail integrals cancel because the table sums
    to zero, so only the log terms are kept.
    """
    M = len(gauss)
    g = np.asarray(gauss, dtype=complex)
    n = np.arange(1, K_blocks * M + 1)
    coef = g[n % M]
    ln = np.log(n)
    s0 = complex(math.fsum((coef / n).real), math.fsum((coef / n).imag))
    s1 = complex(math.fsum((coef * ln / n).real), math.fsum((coef * ln / n).imag))
    t0 = t1 = 0j
    for h in range(M):
        if g[h] == 0:
            continue
        x = K_blocks * M + (h if h else M)
        lx = math.log(x)
        t0 += g[h] * (-lx / M + 1 / (2 * x) + M / (12 * x * x) - M ** 3 / (120 * x ** 4))
        t1 += g[h] * (
            -lx * lx / (2 * M)
            + lx / (2 * x)
            - M * (1 - lx) / (12 * x * x)
            + M ** 3 * (11 - 6 * lx) / (720 * x ** 4)
        )
    return s0 + t0, -(s1 + t1)


def l1_abel(chi_table) -> complex:
    """L(1) from -sum chi(h) log(1 - e(h/M)), valid for the transform of chi."""
    M = len(chi_table)
    return -sum(c * cmath.log(1 - cmath.exp(2j * math.pi * h / M)) for h, c in enumerate(chi_table) if c)


def l_values(C: CharData, tol: float = 1e-8) -> tuple[complex, complex]:
    """L(1) and L'(1) of the Gauss-sum series.

    Values are purely imaginary for the odd induced character; they are
    returned as complex numbers.
    """
    g = C.gauss_table
    if max(abs(z) for z in g) == 0:
        return 0j, 0j
    if abs(sum(g)) > 1e-8 * C.modulus:
        raise AccuracyError("pole does not cancel")
    L1, L1p = l_values_hurwitz(g)
    S1, S1p = l_values_summation(g)
    if abs(L1 - S1) > tol or abs(L1p - S1p) > tol:
        raise AccuracyError(f"L-value routes disagree: {L1} vs {S1}, {L1p} vs {S1p}")
    return L1, L1p
