"""Classical exact lattice algorithms over Z and Q.

Vectors are tuples; a basis is a sequence of vectors (rows).  Matrices that
act on bases follow the column convention: ``reduced = input * U`` means the
i-th reduced vector is sum_k U[k][i] * input[k].
"""
import itertools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, List, Optional, Sequence, Tuple

from sympy import Matrix, Rational

from errors import DependentInput, EmptyBasis
from polyring import Poly, RatFunc

logger = logging.getLogger(__name__)

Vector = Tuple
HALF = Fraction(1, 2)


# vector helpers

def dot(a: Sequence, b: Sequence):
    return sum((x * y for x, y in zip(a, b)), 0)


def norm2(a: Sequence):
    return dot(a, a)


def add(a: Sequence, b: Sequence) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Sequence, b: Sequence) -> Vector:
    return tuple(x - y for x, y in zip(a, b))


def scale(c, a: Sequence) -> Vector:
    return tuple(c * x for x in a)


def combine(coeffs: Sequence, basis: Sequence[Sequence]) -> Vector:
    """sum_i coeffs[i] * basis[i]; the zero vector of the ambient dimension for an empty sum."""
    m = len(basis[0]) if basis else 0
    out = [0] * m
    for c, v in zip(coeffs, basis):
        if c:
            for k, x in enumerate(v):
                out[k] += c * x
    return tuple(out)


def round_half_up(x) -> int:
    return math.floor(x + HALF)


def transpose(rows: Sequence[Sequence]) -> List[Tuple]:
    return [tuple(col) for col in zip(*rows)] if rows else []


def _as_field(x):
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, Poly):
        return RatFunc(x)
    return x


def _integral(v: Sequence) -> Vector:
    return tuple(int(x) if Fraction(x).denominator == 1 else x for x in v)


def _to_fraction(x) -> Fraction:
    x = Rational(x)
    return Fraction(int(x.p), int(x.q))


# Gram-Schmidt

@dataclass(frozen=True)
class GramSchmidtData:
    """Orthogonal vectors, coefficients mu[i][j] (j < i) and squared norms."""
    orthogonal: Tuple[Vector, ...]
    mu: Tuple[Tuple, ...]
    norms: Tuple


def gram_schmidt(vectors: Sequence[Sequence]) -> GramSchmidtData:
    """Gram-Schmidt without normalization over Q or Q(t).

    Integer entries are promoted to Fraction and Poly entries to RatFunc.
    """
    basis = [tuple(_as_field(x) for x in v) for v in vectors]
    ortho: List[Vector] = []
    mu: List[Tuple] = []
    norms: List = []
    for i, b in enumerate(basis):
        row = []
        star = b
        for j in range(i):
            coeff = dot(b, ortho[j]) / norms[j]
            row.append(coeff)
            if coeff:
                star = sub(star, scale(coeff, ortho[j]))
        size = norm2(star)
        if not size:
            raise DependentInput(f"vector {i + 1} lies in the span of the previous ones")
        ortho.append(star)
        mu.append(tuple(row))
        norms.append(size)
    return GramSchmidtData(tuple(ortho), tuple(mu), tuple(norms))


# LLL

class _Reducer:
    """LLL state: working basis, coefficient rows and Gram-Schmidt data."""

    def __init__(self, basis: Sequence[Sequence], delta: Fraction, incremental: bool):
        self.b = [list(v) for v in basis]
        self.n = len(self.b)
        self.coeffs = [[int(i == k) for k in range(self.n)] for i in range(self.n)]
        self.delta = Fraction(delta)
        self.incremental = incremental
        self.swaps = 0
        self._recompute()

    def _recompute(self) -> None:
        data = gram_schmidt(self.b)
        self.mu = [list(row) + [Fraction(0)] * (self.n - len(row)) for row in data.mu]
        self.norms = list(data.norms)

    def size_reduce(self, k: int, j: int) -> None:
        q = round_half_up(self.mu[k][j])
        if q == 0 or abs(self.mu[k][j]) <= HALF:
            return
        self.b[k] = [x - q * y for x, y in zip(self.b[k], self.b[j])]
        self.coeffs[k] = [x - q * y for x, y in zip(self.coeffs[k], self.coeffs[j])]
        if self.incremental:
            for i in range(j):
                self.mu[k][i] -= q * self.mu[j][i]
            self.mu[k][j] -= q
        else:
            self._recompute()

    def swap(self, k: int) -> None:
        self.b[k - 1], self.b[k] = self.b[k], self.b[k - 1]
        self.coeffs[k - 1], self.coeffs[k] = self.coeffs[k], self.coeffs[k - 1]
        self.swaps += 1
        if not self.incremental:
            self._recompute()
            return
        mu, norms = self.mu, self.norms
        m = mu[k][k - 1]
        new_norm = norms[k] + m * m * norms[k - 1]
        mu[k][k - 1] = m * norms[k - 1] / new_norm
        norms[k] = norms[k - 1] * norms[k] / new_norm
        norms[k - 1] = new_norm
        for j in range(k - 1):
            mu[k - 1][j], mu[k][j] = mu[k][j], mu[k - 1][j]
        for i in range(k + 1, self.n):
            t = mu[i][k]
            mu[i][k] = mu[i][k - 1] - m * t
            mu[i][k - 1] = t + mu[k][k - 1] * mu[i][k]

    def run(self) -> None:
        k = 1
        while k < self.n:
            for j in range(k - 1, -1, -1):
                self.size_reduce(k, j)
            if self.norms[k] >= (self.delta - self.mu[k][k - 1] ** 2) * self.norms[k - 1]:
                k += 1
            else:
                self.swap(k)
                k = max(k - 1, 1)


def lll_reduce(
    basis: Sequence[Sequence],
    delta: Fraction = Fraction(3, 4),
    incremental: bool = True,
) -> Tuple[List[Vector], List[Tuple[int, ...]]]:
    """LLL-reduce ``basis``; returns (reduced, U) with reduced = basis * U."""
    delta = Fraction(delta)
    if not Fraction(1, 4) < delta < 1:
        raise ValueError(f"delta must lie strictly between 1/4 and 1, got {delta}")
    if not basis:
        return [], []
    reducer = _Reducer(basis, delta, incremental)
    reducer.run()
    logger.debug(f"lll_reduce: n={reducer.n}, swaps={reducer.swaps}, incremental={incremental}")
    reduced = [_integral(v) for v in reducer.b]
    return reduced, transpose(reducer.coeffs)


def lll_conditions(basis: Sequence[Sequence], delta: Fraction = Fraction(3, 4)) -> Tuple[bool, bool]:
    """(size reduced, Lovasz) for ``basis``, decided exactly."""
    if not basis:
        return True, True
    data = gram_schmidt(basis)
    size_reduced = all(abs(c) <= HALF for row in data.mu for c in row)
    lovasz = all(
        data.norms[i] >= (Fraction(delta) - data.mu[i][i - 1] ** 2) * data.norms[i - 1]
        for i in range(1, len(basis))
    )
    return size_reduced, lovasz


def is_lll_reduced(basis: Sequence[Sequence], delta: Fraction = Fraction(3, 4)) -> bool:
    return all(lll_conditions(basis, delta))


# Hermite normal form

def _extgcd(a: int, b: int) -> Tuple[int, int, int]:
    """(g, x, y) with x*a + y*b = g = gcd(a, b) >= 0."""
    if a != 0 and b % a == 0:
        return abs(a), (1 if a > 0 else -1), 0
    if a == 0:
        return abs(b), 0, (1 if b > 0 else -1)
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def hnf_column(A: Sequence[Sequence[int]]) -> Tuple[List[Tuple[int, ...]], List[Tuple[int, ...]]]:
    """Column-style Hermite normal form: (H, U) with H = A * U and U unimodular.

    Pivots are positive, entries left of a pivot lie in [0, pivot), and zero
    columns are moved to the right.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    cols = [[A[i][j] for i in range(m)] for j in range(n)]
    ucols = [[int(i == j) for i in range(n)] for j in range(n)]

    def lincomb(x, c, y, d):
        return [x * p + y * q for p, q in zip(c, d)]

    pivot = 0
    for row in range(m):
        if pivot == n:
            break
        for j in range(pivot + 1, n):
            b = cols[j][row]
            if b == 0:
                continue
            a = cols[pivot][row]
            g, x, y = _extgcd(a, b)
            cols[pivot], cols[j] = lincomb(x, cols[pivot], y, cols[j]), lincomb(-b // g, cols[pivot], a // g, cols[j])
            ucols[pivot], ucols[j] = lincomb(x, ucols[pivot], y, ucols[j]), lincomb(-b // g, ucols[pivot], a // g, ucols[j])
        a = cols[pivot][row]
        if a == 0:
            continue
        if a < 0:
            cols[pivot] = [-v for v in cols[pivot]]
            ucols[pivot] = [-v for v in ucols[pivot]]
            a = -a
        for j in range(pivot):
            q = cols[j][row] // a
            if q:
                cols[j] = lincomb(1, cols[j], -q, cols[pivot])
                ucols[j] = lincomb(1, ucols[j], -q, ucols[pivot])
        pivot += 1

    H = [tuple(cols[j][i] for j in range(n)) for i in range(m)]
    U = [tuple(ucols[j][i] for j in range(n)) for i in range(n)]
    return H, U


def lattice_hnf(vectors: Sequence[Sequence[int]]) -> Tuple[Vector, ...]:
    """Canonical generators of the lattice spanned by ``vectors``: the nonzero HNF columns."""
    if not vectors:
        return ()
    H, _ = hnf_column(transpose(vectors))
    return tuple(col for col in transpose(H) if any(col))


def same_lattice(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> bool:
    return lattice_hnf(a) == lattice_hnf(b)


def lattice_contains(basis: Sequence[Sequence[int]], v: Sequence[int]) -> bool:
    if any(Fraction(x).denominator != 1 for x in v):
        return False
    return lattice_hnf(list(basis) + [tuple(int(x) for x in v)]) == lattice_hnf(basis)


# sympy-backed linear algebra

def gram_matrix(basis: Sequence[Sequence]) -> Matrix:
    return Matrix([[Rational(str(Fraction(dot(u, v)))) for v in basis] for u in basis])


def lattice_determinant_squared(basis: Sequence[Sequence]) -> Fraction:
    if not basis:
        return Fraction(1)
    return _to_fraction(gram_matrix(basis).det())


def coordinates(basis: Sequence[Sequence], v: Sequence) -> Tuple[Fraction, ...]:
    """Coordinates of the projection of v onto span(basis), in that basis."""
    gram = gram_matrix(basis)
    if gram.det() == 0:
        raise DependentInput("basis is linearly dependent")
    rhs = Matrix([Rational(str(Fraction(dot(b, v)))) for b in basis])
    return tuple(_to_fraction(x) for x in gram.LUsolve(rhs))


# Babai and enumeration oracles

def babai_nearest_plane(basis: Sequence[Sequence], target: Sequence) -> Tuple[Vector, Tuple[int, ...]]:
    """Nearest-plane lattice vector w near ``target`` and its coefficients."""
    data = gram_schmidt(basis)
    residual = tuple(Fraction(x) for x in target)
    coeffs = [0] * len(basis)
    for j in range(len(basis) - 1, -1, -1):
        c = round_half_up(dot(residual, data.orthogonal[j]) / data.norms[j])
        coeffs[j] = c
        if c:
            residual = sub(residual, scale(c, basis[j]))
    return _integral(sub(tuple(Fraction(x) for x in target), residual)), tuple(coeffs)


def _sphere_points(data: GramSchmidtData, tau: Sequence[Fraction], radius: Fraction) -> Iterator[Tuple[int, ...]]:
    """Coefficient vectors x with sum_i (x_i + sum_{j>i} x_j mu_ji - tau_i)^2 B_i <= radius."""
    n = len(data.norms)
    mu, norms = data.mu, data.norms
    x = [0] * n

    def walk(i: int, remaining: Fraction):
        center = tau[i] - sum((x[j] * mu[j][i] for j in range(i + 1, n)), Fraction(0))
        first = math.ceil(center)
        for start, step in ((first, 1), (first - 1, -1)):
            xi = start
            while True:
                cost = (xi - center) ** 2 * norms[i]
                if cost > remaining:
                    break
                x[i] = xi
                if i == 0:
                    yield tuple(x)
                else:
                    yield from walk(i - 1, remaining - cost)
                xi += step

    if n:
        yield from walk(n - 1, Fraction(radius))


def svp_bruteforce(
    basis: Sequence[Sequence[int]],
    method: str = "sphere",
    box_radius: Optional[int] = None,
    delta: Fraction = Fraction(3, 4),
) -> Vector:
    """A shortest nonzero vector; ties broken by the smaller vector tuple.

    ``sphere`` enumerates every lattice point inside the ball of radius
    ||b_1|| around the origin after LLL; ``box`` enumerates coefficients
    |m_i| <= box_radius (default 3^n) over the LLL-reduced basis.
    """
    if not basis:
        raise EmptyBasis("shortest vector of an empty basis")
    reduced, _ = lll_reduce(basis, delta)
    n = len(reduced)
    best = None
    if method == "box":
        bound = 3 ** n if box_radius is None else box_radius
        candidates = itertools.product(range(-bound, bound + 1), repeat=n)
    elif method == "sphere":
        data = gram_schmidt(reduced)
        candidates = _sphere_points(data, [Fraction(0)] * n, Fraction(norm2(reduced[0])))
    else:
        raise ValueError(f"unknown enumeration method {method!r}")
    for coeffs in candidates:
        if not any(coeffs):
            continue
        v = combine(coeffs, reduced)
        key = (norm2(v), v)
        if best is None or key < best:
            best = key
    return best[1]


def cvp_bruteforce(
    basis: Sequence[Sequence[int]],
    target: Sequence,
    radius: Optional[Fraction] = None,
    delta: Fraction = Fraction(3, 4),
) -> Tuple[Vector, Fraction]:
    """Closest lattice vector to ``target`` and its squared distance.

    Searches the ball of squared radius ``radius`` around the target,
    defaulting to the Babai nearest-plane distance.
    """
    if not basis:
        raise EmptyBasis("closest vector in an empty basis")
    target = tuple(Fraction(x) for x in target)
    reduced, _ = lll_reduce(basis, delta)
    data = gram_schmidt(reduced)
    if radius is None:
        w, _ = babai_nearest_plane(reduced, target)
        radius = Fraction(norm2(sub(w, target)))
    tau = [dot(target, b) / size for b, size in zip(data.orthogonal, data.norms)]
    projected = combine(tau, data.orthogonal)
    offset = norm2(sub(target, projected))
    best = None
    for coeffs in _sphere_points(data, tau, Fraction(radius) - offset):
        v = combine(coeffs, reduced)
        key = (norm2(sub(v, target)), v)
        if best is None or key < best:
            best = key
    if best is None:
        raise ValueError(f"no lattice point within squared distance {radius} of the target")
    return best[1], Fraction(best[0])
