"""Majorants, Green functions, densities and the definite integrals around them."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np
from scipy import integrate, special

from .errors import DomainError, OnCycle, QuadratureFailure
from .quatlattice import QuatAlgebra, QuatElement, fincke_pohst, norm_gram, exact_quadratic_value


# ------------------------------------------------------------------ splitting


class Splitting:
    """A fixed isomorphism B_R -> M_2(R)."""

    def __init__(self, alg: QuatAlgebra):
        a, b = float(alg.a), float(alg.b)
        if a > 0:
            s = math.sqrt(a)
            self.mi = np.array([[s, 0.0], [0.0, -s]])
            self.mj = np.array([[0.0, 1.0], [b, 0.0]])
        elif b > 0:
            s = math.sqrt(b)
            self.mj = np.array([[s, 0.0], [0.0, -s]])
            self.mi = np.array([[0.0, 1.0], [a, 0.0]])
        else:
            raise DomainError("algebra is definite")
        self.mk = self.mi @ self.mj
        self.alg = alg
        self._basis = np.stack([np.eye(2), self.mi, self.mj, self.mk])

    def residual(self) -> float:
        a, b = float(self.alg.a), float(self.alg.b)
        I = np.eye(2)
        r = [
            self.mi @ self.mi - a * I,
            self.mj @ self.mj - b * I,
            self.mi @ self.mj + self.mj @ self.mi,
        ]
        return max(float(np.abs(x).max()) for x in r)

    def matrix(self, x) -> np.ndarray:
        c = x.coords if isinstance(x, QuatElement) else x
        return np.tensordot(np.array([float(t) for t in c]), self._basis, axes=1)

    def matrices(self, coords) -> np.ndarray:
        return np.tensordot(np.asarray(coords, dtype=float), self._basis, axes=1)


def adj(X):
    """Main involution on 2x2 matrices (works on stacks)."""
    out = np.empty_like(X)
    out[..., 0, 0] = X[..., 1, 1]
    out[..., 1, 1] = X[..., 0, 0]
    out[..., 0, 1] = -X[..., 0, 1]
    out[..., 1, 0] = -X[..., 1, 0]
    return out


def check_upper(z):
    if not z.imag > 0:
        raise DomainError(f"{z} is not in the upper half plane")


def check_disk(Z):
    if not abs(Z) < 1:
        raise DomainError(f"{Z} is not in the unit disk")


def j_z(z: complex) -> np.ndarray:
    check_upper(z)
    x, y = z.real, z.imag
    return np.array([[x, -x * x - y * y], [1.0, -x]]) / y


def j_z_exact(x, y):
    x, y = Fraction(x), Fraction(y)
    if y <= 0:
        raise DomainError("imaginary part must be positive")
    return [[x / y, (-x * x - y * y) / y], [1 / y, -x / y]]


# ------------------------------------------------------------ orthogonal side


def r_o_matrix(X, J):
    """-2 det of the projection of trace-zero X onto the plane orthogonal to J."""
    c = -np.trace(X @ J, axis1=-2, axis2=-1) / 2  # <X,J>/<J,J> with <J,J> = 2
    P = X - c[..., None, None] * J
    return -2 * np.linalg.det(P)


def r_o(v, z, split: Splitting) -> float:
    if v.trd() != 0:
        raise DomainError("R^o needs a trace-zero vector")
    return float(r_o_matrix(split.matrix(v), j_z(z)))


def ortho_gram(rows, z, split: Splitting) -> np.ndarray:
    """Gram of the majorant R^o + Nrd on the given rows at z."""
    J = j_z(z)
    X = split.matrices([[float(t) for t in r] for r in rows])
    t = np.trace(X @ J, axis1=-2, axis2=-1)
    N = 0.5 * np.trace(X[:, None] @ adj(X)[None, :], axis1=-2, axis2=-1)
    return 0.5 * np.outer(t, t) - N


# -------------------------------------------------------------- unitary side


def herm_form(x: QuatElement, y: QuatElement, g: QuatElement):
    """(x, y)_phi as (rational part, sqrt(delta) coefficient)."""
    delta = -g.nrd()
    p = x * y.conj()
    return delta * p.trd() / 2, (g * p).trd() / 2


class UnitaryFrame:
    """Everything archimedean attached to one embedding (via g = phi(sqrt delta))."""

    def __init__(self, g: QuatElement, split: Splitting):
        self.g = g
        self.split = split
        self.delta = float(-g.nrd())
        self.sq = math.sqrt(-self.delta)
        self.G = split.matrix(g)
        self.Gi = self.G / self.sq  # image of the complex unit
        self.orientation = 1 if self.G[1, 0] > 0 else -1
        f = np.eye(2) / self.sq
        X = np.array([[1.0, 0.0], [0.0, -1.0]])
        th = X + self.Gi @ X @ self.Gi
        if np.abs(th).max() < 1e-8:
            X = np.array([[0.0, 1.0], [0.0, 0.0]])
            th = X + self.Gi @ X @ self.Gi
        self.e = th / math.sqrt(self.herm(th, th).real)
        self.f = f

    def herm(self, X, Y):
        P = X @ adj(Y)
        return self.delta / 2 * np.trace(P, axis1=-2, axis2=-1) + 0.5j * self.sq * np.trace(self.G @ P, axis1=-2, axis2=-1)

    def scalar(self, c: complex) -> np.ndarray:
        return c.real * np.eye(2) + c.imag * self.Gi

    def zeta(self, z: complex):
        """Spanning vector of the negative line attached to z.

        Uses {v : v J_z = -Gi v}; when that line is positive (opposite
        orientation) the conjugate point is used instead.
        """
        J = j_z(z)
        for s in (1, -1):
            Js = s * J
            for X in (np.eye(2), self.split.mj, self.split.mi):
                v = X + self.Gi @ X @ Js
                if np.abs(v).max() > 1e-9:
                    break
            if self.herm(v, v).real < 0:
                return v
        raise DomainError("no negative line found")

    def r_phi(self, b, z) -> float:
        B = b if isinstance(b, np.ndarray) else self.split.matrix(b)
        v = self.zeta(z)
        return float(-2 * abs(self.herm(B, v)) ** 2 / self.herm(v, v).real)

    def disk_coords(self, b):
        """(xi1, xi2) with b = phi(conj xi1) e + phi(conj xi2) f."""
        B = b if isinstance(b, np.ndarray) else self.split.matrix(b)
        return complex(self.herm(self.e, B)), complex(-self.herm(self.f, B))

    def to_disk(self, z) -> complex:
        v = self.zeta(z)
        return complex(self.herm(v, self.e) / -self.herm(v, self.f))

    def from_disk(self, Z) -> np.ndarray:
        return self.scalar(Z) @ self.e + self.f

    def gram(self, rows, z) -> np.ndarray:
        """Gram of the majorant R_phi + (.,.)_phi on the given rows."""
        X = self.split.matrices([[float(t) for t in r] for r in rows])
        v = self.zeta(z)
        L = self.herm(X, v[None])
        vv = abs(self.herm(v, v).real)
        N = 0.5 * np.trace(X[:, None] @ adj(X)[None, :], axis1=-2, axis2=-1)
        return 2 * np.real(np.outer(L, np.conj(L))) / vv + self.delta * N

    def r_phi_many(self, coords, rows, z):
        X = self.split.matrices([[float(t) for t in r] for r in rows])
        v = self.zeta(z)
        L = self.herm(X, v[None])
        vv = abs(self.herm(v, v).real)
        w = np.asarray(coords, dtype=float) @ L
        return 2 * np.abs(w) ** 2 / vv


def r_disk(xi1, xi2, Z):
    return 2 * abs(Z * xi1 - xi2) ** 2 / (1 - abs(Z) ** 2)


def r_disk_minus(xi1, xi2, Z):
    """R_phi + 2(b, b) in disk coordinates."""
    return 2 * abs(xi1 - np.conj(Z) * xi2) ** 2 / (1 - abs(Z) ** 2)


def majorant_identity(x, y, t, frame: UnitaryFrame, z) -> float:
    split = frame.split
    lhs = r_o(x, z, split) + 2 * float(x.nrd())
    ny = float(y.nrd())
    rhs = 2 * t * t / (abs(frame.delta) * ny * ny) * (frame.r_phi(y, z) + frame.delta * ny) ** 2
    return abs(lhs - rhs)


# ------------------------------------------------------------ special funcs


def beta1(r):
    """E_1(r) = int_1^inf e^{-ur} du/u."""
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise DomainError("beta1 needs r > 0")
    out = special.exp1(r)
    return float(out) if out.ndim == 0 else out


def scaled_e1(x: float) -> float:
    """e^x E_1(x) for x > 0 without overflow."""
    if x < 700:
        return math.exp(x) * float(special.exp1(x))
    return float(mpmath.exp(x) * mpmath.e1(x))


def beta1_quad(r: float) -> float:
    if r <= 0:
        raise DomainError("beta1 needs r > 0")
    val, _ = integrate.quad(lambda s: math.exp(-r * (s - 1)) / s, 1, np.inf, epsabs=0, epsrel=1e-13)
    return val * math.exp(-r)


def beta1_series(r: float, terms=80) -> float:
    s = 0.0
    p = 1.0
    for k in range(1, terms):
        p *= -r / k
        s -= p / k
    return -np.euler_gamma - math.log(r) + s


def gr_plus(b_coords, Z):
    return beta1(2 * math.pi * r_disk(*b_coords, Z))


def gr_minus(b_coords, Z):
    return beta1(2 * math.pi * r_disk_minus(*b_coords, Z))


def phi_plus(b_coords, Z):
    xi1, xi2 = b_coords
    R = r_disk(xi1, xi2, Z)
    Q = abs(xi1) ** 2 - abs(xi2) ** 2
    return 0.5 * (2 * math.pi * (R + 2 * Q) - 1) * math.exp(-2 * math.pi * R)


def phi_minus(b_coords, Z):
    xi1, xi2 = b_coords
    R = r_disk(xi1, xi2, Z)
    Q = abs(xi1) ** 2 - abs(xi2) ** 2
    return 0.5 * (2 * math.pi * R - 1) * math.exp(-2 * math.pi * (R + 2 * Q))


def _laplacian(G, b_coords, Z, h, order):
    def f(W):
        return G(b_coords, W)

    if order == 2:
        return (f(Z + h) + f(Z - h) + f(Z + 1j * h) + f(Z - 1j * h) - 4 * f(Z)) / h ** 2
    out = -60 * f(Z)
    for d in (h, 1j * h):
        out += 16 * (f(Z + d) + f(Z - d)) - (f(Z + 2 * d) + f(Z - 2 * d))
    return out / (12 * h ** 2)


def ddc_residual(b_coords, which="+", points=None, h=None, rng=None, n=40, exclusion=0.1, order=4):
    """Finite-difference Laplacian of Gr^{+/-} against the density.

    dd^c G = phi c_1 with c_1 = (2/pi) r dr dtheta / (1-r^2)^2 becomes
    Lap G = 8 phi / (1 - |Z|^2)^2 in the flat coordinates of the disk.
    Returns max |fd - exact| / max |exact| over the sample points. The
    default step shrinks with |xi|^2, which sets the gradient scale.
    """
    if h is None:
        h = min(1e-3, 0.01 / (abs(b_coords[0]) ** 2 + abs(b_coords[1]) ** 2))
    G = gr_plus if which == "+" else gr_minus
    dens = phi_plus if which == "+" else phi_minus
    xi1, xi2 = b_coords
    sing = xi2 / xi1 if which == "+" else np.conj(xi1 / xi2)
    if points is None:
        rng = rng or np.random.default_rng(0)
        points = []
        while len(points) < n:
            Z = complex(*rng.uniform(-0.7, 0.7, 2))
            if abs(Z) < 0.7 and abs(Z - sing) > exclusion:
                points.append(Z)
    errs, sizes = [], []
    for Z in points:
        lap = _laplacian(G, b_coords, Z, h, order)
        ex = 8 * dens(b_coords, Z) / (1 - abs(Z) ** 2) ** 2
        errs.append(abs(lap - ex))
        sizes.append(abs(ex))
    return max(errs) / max(sizes)


def ddc_check(b, frame: UnitaryFrame, which="+", **kw):
    xi = frame.disk_coords(b)
    if which == "+" and abs(xi[0]) ** 2 - abs(xi[1]) ** 2 <= 0:
        raise DomainError("Gr+ check needs (b,b) > 0")
    return ddc_residual(xi, which, **kw)


# ------------------------------------------------------------------- bessel

KINDS = (-1.5, -0.5, 0.5)


def bessel_closed(kind, a, b):
    s = math.sqrt(a * b)
    e = math.exp(-math.pi * s)
    if kind == -1.5:
        return math.sqrt(2 / b) * e
    if kind == -0.5:
        return math.sqrt(2 / a) * e
    if kind == 0.5:
        return math.sqrt(2) * (1 + math.pi * s) / (math.pi * a ** 1.5) * e
    raise DomainError(f"unsupported kind {kind}")


def bessel_quad(kind, a, b):
    """int_0^inf v^kind exp(-(pi/2)(a v + b/v)) dv by adaptive quadrature.

    With v = sqrt(b/a) e^t the exponent becomes -pi sqrt(ab) cosh t, and the
    factor exp(-pi sqrt(ab)) is pulled out exactly.
    """
    s = math.sqrt(a * b)
    c = math.sqrt(b / a)

    def f(t):
        if abs(t) > 60:
            return 0.0
        return c ** (kind + 1) * math.exp((kind + 1) * t - math.pi * s * (math.cosh(t) - 1))

    val, err = integrate.quad(f, -np.inf, np.inf, epsabs=0, epsrel=1e-12, limit=200)
    return val * math.exp(-math.pi * s)


# -------------------------------------------------------------- I integrals


def i_o(ell, eta, delta):
    L = abs(ell * delta) * eta
    base = math.exp(-2 * math.pi * L) / (math.pi * L)
    if ell > 0:
        return base
    if ell < 0:
        # e^{2 pi L} E_1(4 pi L) = e^{-2 pi L} (e^x E_1(x)) at x = 4 pi L
        return math.exp(-2 * math.pi * L) * (1 / (math.pi * L) - 4 * scaled_e1(4 * math.pi * L))
    raise DomainError("ell must be nonzero")


def i_o_quad(ell, eta, delta):
    """The defining s-integral."""
    sg = 1 if ell > 0 else -1
    c = 2 * math.pi * abs(delta * ell) * eta

    def f(s):
        return 2 * (1 + sg / s) * math.exp(-c * (s - 1)) * s / (s + 1)

    val, _ = integrate.quad(f, 1, np.inf, epsabs=0, epsrel=1e-12, limit=200)
    return val * math.exp(-c)


def io_inner_closed(ell, s, eta, delta):
    return 2 * (1 + np.sign(ell) / s) * math.exp(-2 * math.pi * abs(delta * ell) * eta * s)


def io_inner_quad(ell, m, s, eta, delta):
    """The v-integral before Bessel evaluation; independent of m."""
    A = abs(delta) * ell / m

    def f(v):
        return v ** -0.5 * (eta * m / v + 4 * A) * math.exp(-math.pi * eta ** 2 * m ** 2 / (4 * v) - 4 * math.pi * v * A * A * s * s)

    # peak near v ~ eta m^2 / (4 |Delta ell| s)
    v0 = eta * m * m / (4 * abs(delta * ell) * s)
    pieces = [0, v0 / 10, v0, 10 * v0, np.inf]
    return sum(integrate.quad(f, lo, hi, epsabs=0, epsrel=1e-12, limit=200)[0] for lo, hi in zip(pieces, pieces[1:]))


def io_x_closed(S, ell, m, eta, delta):
    """Per-x term of I^o(ell, m, eta)(z); S = R^o(x,z) + 2 Nrd(x)."""
    r = math.sqrt(2 * abs(delta) * S)
    return 0.5 * (math.pi * eta * m * (r + 2 * abs(delta) * ell / m) - 1) * math.exp(-math.pi * m * eta * r)


def io_x_quad(S, ell, m, eta, delta):
    """Per-x v-integral in its original form."""
    A = abs(delta) * ell / m
    D = abs(delta)

    def f(v):
        return 0.25 * v ** -0.5 * (eta * m / v + 4 * A) * math.exp(
            -math.pi * eta ** 2 * m ** 2 / (4 * v) - 4 * math.pi * v * A * A - 2 * math.pi * D * v * (S - 2 * ell * ell * D / m ** 2)
        ) * (4 * math.pi * D * v * S - 1)

    # R^o = S - 2 Nrd(x) with Nrd(x) = |Delta| ell^2 / m^2
    v0 = eta * m / (2 * math.sqrt(2 * D * S)) if S > 0 else 1.0
    pieces = [0, v0 / 10, v0, 10 * v0, np.inf]
    return sum(integrate.quad(f, lo, hi, epsabs=0, epsrel=1e-12, limit=200)[0] for lo, hi in zip(pieces, pieces[1:]))


def _mobius(W, c):
    return (W + c) / (1 + np.conj(c) * W)


def i_phi(y, eta, frame: UnitaryFrame, norm_a, side="+", rtol=1e-9):
    """Disk integral of the Green function against c_1, times e^{-2 pi ell |Delta| eta}.

    side '+' means y is in Omega^+ (uses R_phi), '-' means Omega^- (uses
    R_phi + 2 (y,y)). Returns (value, ell).
    """
    xi1, xi2 = frame.disk_coords(y)
    Q = abs(xi1) ** 2 - abs(xi2) ** 2
    D = abs(frame.delta)
    N = float(norm_a)
    ell = (Q * N / D) if side == "+" else (-Q * N / D)
    R = r_disk if side == "+" else r_disk_minus
    # recentre at the point where the argument is smallest
    c = xi2 / xi1 if Q > 0 else np.conj(xi1 / xi2)
    c = complex(c)
    k = 2 * math.pi * N * eta

    def inner(r, th):
        if r >= 1:
            return 0.0
        Z = _mobius(r * complex(math.cos(th), math.sin(th)), c)
        arg = k * R(xi1, xi2, Z)
        if arg > 700:
            return 0.0
        if arg <= 0:
            arg = 1e-300
        return float(special.exp1(arg)) * r / (1 - r * r) ** 2

    def over_r(th):
        val, err = integrate.quad(inner, 0, 1, args=(th,), epsabs=0, epsrel=rtol, limit=200, points=[0.5, 0.9, 0.99])
        return val

    val, err = integrate.quad(over_r, 0, 2 * math.pi, epsabs=0, epsrel=rtol, limit=200)
    if not np.isfinite(val) or err > 1e-6 * abs(val) + 1e-300:
        raise QuadratureFailure(f"disk quadrature error estimate {err}")
    return 2 / math.pi * math.exp(-2 * math.pi * ell * D * eta) * val, round(ell)


# --------------------------------------------------------- certified sums


def box_count(gram, R) -> float:
    """Upper bound for #{c : c G c^T <= R} via the bounding box."""
    if R <= 0:
        return 1.0
    Gi = np.linalg.inv(gram)
    return float(np.prod([2 * math.floor(math.sqrt(R * Gi[i, i])) + 1 for i in range(len(gram))]))


def tail_bound(gram, T, shell_bound, ratio=1.25, max_shells=4000) -> float:
    """Sum over shells [T_j, T_{j+1}] of (point count) * (term bound on shell)."""
    total = 0.0
    lo = T
    for _ in range(max_shells):
        hi = lo * ratio
        t = box_count(gram, hi) * shell_bound(lo, hi)
        total += t
        if t < 1e-60 or (t < 1e-25 * total and lo > 4 * T):
            break
        lo = hi
    else:
        return math.inf
    return total


def choose_cutoff(gram, shell_bound, tol, T0=1.0, T_max=1e7):
    T = T0
    while T < T_max:
        b = tail_bound(gram, T, shell_bound)
        if b <= tol:
            return T, b
        T *= 1.5
    raise QuadratureFailure("no cutoff certifies the requested tolerance")


@dataclass
class SumResult:
    value: float
    budget: float
    cutoff: float
    count: int


def _ortho_points(O, n, z, split, shell_bound, tol, budget=10 ** 7, cutoff=None):
    from .quatlattice import trace_zero_basis

    rows = trace_zero_basis(O)
    G = ortho_gram(rows, z, split)
    if cutoff is None:
        T, tb = choose_cutoff(G, shell_bound, tol, T0=max(1.0, abs(n)))
    else:
        T, tb = cutoff, tail_bound(G, cutoff, shell_bound)
    pts = fincke_pohst(G, T, budget)
    ng = norm_gram(O.alg, rows)
    keep = [p for p in pts if exact_quadratic_value(ng, p) == n]
    X = split.matrices(np.array([[sum(int(c) * float(r[k]) for c, r in zip(p, rows)) for k in range(4)] for p in keep]).reshape(-1, 4))
    return X, T, tb


def _ro_values(X, z):
    if len(X) == 0:
        return np.zeros(0)
    return r_o_matrix(X, j_z(z))


def gr_o(O, n, v, z, split, tol=1e-10, cutoff=None) -> SumResult:
    def sb(lo, hi):
        return beta1(2 * math.pi * v * (lo - n)) if lo > n else math.inf

    X, T, tb = _ortho_points(O, n, z, split, sb, tol, cutoff=cutoff)
    R = _ro_values(X, z)
    if np.any(R <= 1e-13):
        raise OnCycle("z lies on a special cycle")
    vals = np.sort(beta1(2 * math.pi * v * R)) if len(R) else np.zeros(0)
    return SumResult(math.fsum(vals), tb, T, len(R))


def psi_o(O, n, v, z, split, tol=1e-10, cutoff=None) -> SumResult:
    def sb(lo, hi):
        # R^o = M - n and R^o + 2 Nrd = M + n on the slice Nrd = n
        return (4 * math.pi * v * (hi + abs(n)) + 1) * math.exp(-2 * math.pi * v * (lo - n))

    X, T, tb = _ortho_points(O, n, z, split, sb, tol, cutoff=cutoff)
    R = _ro_values(X, z)
    terms = (4 * math.pi * v * (R + 2 * n) - 1) * np.exp(-2 * math.pi * v * R)
    return SumResult(math.fsum(np.sort(terms)), tb, T, len(R))


def unitary_points(L, norm_a, m, frame: UnitaryFrame, z, shell_bound, tol, budget=10 ** 7, cutoff=None):
    """Points of Omega^+ and Omega^- (m, a, phi) inside L = phi(a)^{-1} O_B."""
    rows = [list(r) for r in L.basis]
    G = frame.gram(rows, z)
    if cutoff is None:
        T, tb = choose_cutoff(G, shell_bound, tol, T0=max(1.0, abs(m) / float(norm_a)))
    else:
        T, tb = cutoff, tail_bound(G, cutoff, shell_bound)
    pts = fincke_pohst(G, T, budget)
    ng = norm_gram(L.alg, rows)
    want = Fraction(m) / (Fraction(int(round(frame.delta))) * Fraction(norm_a))
    plus = [p for p in pts if exact_quadratic_value(ng, p) == want]
    minus = [p for p in pts if exact_quadratic_value(ng, p) == -want]
    return rows, np.array(plus).reshape(-1, 4), np.array(minus).reshape(-1, 4), T, tb


def _unitary_sum(lattices, m, frame, eta, z, tol, term_plus, term_minus, shell_factory, cutoff=None, point_budget=10 ** 7):
    total, budget, count, T_used = [], 0.0, 0, 0.0
    for L, N in lattices:
        N = float(N)
        sb = shell_factory(N)
        rows, P, M, T, tb = unitary_points(L, N, m, frame, z, sb, tol / max(1, len(lattices)), point_budget, cutoff)
        budget += tb
        T_used = max(T_used, T)
        q = m / N  # (y,y) on Omega^+, minus that on Omega^-
        if len(P):
            R = frame.r_phi_many(P, rows, z)
            total.extend(term_plus(R, q, N))
        if len(M):
            R = frame.r_phi_many(M, rows, z)
            total.extend(term_minus(R, -q, N))
        count += len(P) + len(M)
    return SumResult(math.fsum(sorted(total)), budget, T_used, count)


def gr_u(lattices, m, frame, eta, z, tol=1e-10, units=2, cutoff=None) -> SumResult:
    def tp(R, q, N):
        if np.any(R <= 1e-13):
            raise OnCycle("z lies on a special cycle")
        return beta1(2 * math.pi * N * eta * R)

    def tm(R, q, N):
        return beta1(2 * math.pi * N * eta * (R + 2 * q))

    def sf(N):
        # both arguments are Maj -+ |m|/N with Maj the majorant value
        return lambda lo, hi: beta1(2 * math.pi * N * eta * (lo - abs(m) / N)) if lo > abs(m) / N else math.inf

    r = _unitary_sum(lattices, m, frame, eta, z, tol * units, tp, tm, sf, cutoff)
    return SumResult(r.value / units, r.budget / units, r.cutoff, r.count)


def psi_u(lattices, m, frame, eta, z, tol=1e-10, cutoff=None, point_budget=10 ** 7) -> SumResult:
    def tp(R, q, N):
        return 0.5 * (2 * math.pi * N * eta * (R + 2 * q) - 1) * np.exp(-2 * math.pi * N * eta * R)

    def tm(R, q, N):
        return 0.5 * (2 * math.pi * N * eta * R - 1) * np.exp(-2 * math.pi * N * eta * (R + 2 * q))

    def sf(N):
        a = abs(m) / N
        return lambda lo, hi: 0.5 * (2 * math.pi * N * eta * (hi + a) + 1) * math.exp(-2 * math.pi * N * eta * (lo - a))

    return _unitary_sum(lattices, m, frame, eta, z, tol, tp, tm, sf, cutoff, point_budget)
