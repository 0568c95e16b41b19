"""Parametric shortest and closest vector problems.

Both solvers first reduce the basis with ``parametric_lll`` at delta = 3/4.
SVP then compares the squared norms of all small coefficient combinations of
each leaf basis; CVP recurses on the last coordinate of the projected target,
trying a small window of integers around its floor.
"""
import itertools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterator, List, Optional, Sequence, Tuple

from config import get_settings
from eqp import BranchTree, EqpFunc, Leaf, branch, dominates, eqp_eventual_min, floor_ratfunc, lcm, rebase
from errors import DimensionTooLarge, RankZero, SingularGram
from lattice_core import dot
from paramlat import ParamBasis, ReducedOutput, apply_rounding, determinant, parametric_lll
from polyring import Poly, RatFunc, eventual_sign, poly_lcm

logger = logging.getLogger(__name__)

SOLVER_DELTA = Fraction(3, 4)


@dataclass(frozen=True)
class FormulaPiece:
    """Answer on one progression: vector, coefficients in the leaf basis, squared norm or distance."""
    vector: Tuple[Poly, ...]
    coefficients: Tuple[Poly, ...]
    value: RatFunc

    def substitute(self, k, j) -> "FormulaPiece":
        return FormulaPiece(
            tuple(e.compose_affine(k, j) for e in self.vector),
            tuple(c.compose_affine(k, j) for c in self.coefficients),
            self.value.compose_affine(k, j),
        )


@dataclass(frozen=True)
class EqpVectorFormula:
    problem: str
    tree: BranchTree
    reduced: ReducedOutput
    target: Optional[Tuple[RatFunc, ...]] = None

    @property
    def leaves(self) -> Tuple[Leaf, ...]:
        return self.tree.leaves

    @property
    def modulus(self) -> int:
        return self.tree.modulus

    @property
    def threshold(self) -> int:
        return self.tree.threshold

    @property
    def dim(self) -> int:
        return self.reduced.source.dim

    def evaluate(self, t: int) -> Tuple[int, ...]:
        leaf = self.tree.leaf_for(t)
        s = leaf.local(t)
        return tuple(int(e(s)) for e in leaf.payload.vector)

    def value(self, t: int) -> Fraction:
        """Squared norm (svp) or squared distance to the target (cvp) at t."""
        leaf = self.tree.leaf_for(t)
        return leaf.payload.value(leaf.local(t))

    def coordinates(self) -> List[EqpFunc]:
        return [self.tree.flatten(lambda piece, k=k: piece.vector[k]) for k in range(self.dim)]


def _check_rank(n: int, max_rank: Optional[int]) -> None:
    limit = get_settings().max_rank if max_rank is None else max_rank
    if n > limit:
        raise DimensionTooLarge(f"rank {n} exceeds the enumeration limit {limit}")


# SVP

def _sign_normalised_box(n: int, radius: int) -> Iterator[Tuple[int, ...]]:
    """Nonzero a with |a_i| <= radius whose first nonzero entry is positive."""
    for p in range(n):
        for head in range(1, radius + 1):
            for tail in itertools.product(range(-radius, radius + 1), repeat=n - p - 1):
                yield (0,) * p + (head,) + tail


def _shortest_on_leaf(basis: ParamBasis, radius: int, limit: Optional[int]) -> Tuple[Tuple[int, ...], int]:
    vectors = list(basis)
    n = len(vectors)
    gram = [[vectors[i].dot(vectors[j]) for j in range(n)] for i in range(n)]
    width = max(max(g.degree for row in gram for g in row if g), 0)
    forms = [
        [[int(gram[i][j].coeff(k)) for j in range(n)] for i in range(n)]
        for k in range(width, -1, -1)
    ]

    def norm_key(a: Tuple[int, ...]) -> Tuple[int, ...]:
        return tuple(
            sum(a[i] * a[i] * q[i][i] for i in range(n))
            + 2 * sum(a[i] * a[j] * q[i][j] for i in range(n) for j in range(i + 1, n))
            for q in forms
        )

    box = sorted(_sign_normalised_box(n, radius))
    keys = [norm_key(a) for a in box]
    first = min(range(len(box)), key=keys.__getitem__)
    # dominated coefficient vectors never beat the minimum for t >= 0
    contenders = [first] + [i for i in range(len(box)) if i != first and not dominates(keys[i], keys[first])]
    selection = eqp_eventual_min([EqpFunc.from_poly(Poly(reversed(keys[i]))) for i in contenders], limit)
    return box[contenders[selection.choices[0]]], selection.threshold


def parametric_svp(
    basis,
    limit: Optional[int] = None,
    radius: Optional[int] = None,
    max_rank: Optional[int] = None,
) -> EqpVectorFormula:
    """Shortest nonzero vector of the lattice spanned by basis(t), per progression of t."""
    basis = basis if isinstance(basis, ParamBasis) else ParamBasis(basis)
    n = len(basis)
    if n == 0:
        raise RankZero("shortest vector of the zero lattice")
    _check_rank(n, max_rank)
    reduced = parametric_lll(basis, SOLVER_DELTA, limit)
    settings = get_settings()
    bound = radius or settings.enum_radius or 3 ** n
    leaves = []
    for leaf in reduced.leaves:
        coeffs, local = _shortest_on_leaf(leaf.payload, bound, limit)
        vector = [Poly()] * basis.dim
        for c, f in zip(coeffs, leaf.payload):
            vector = [v + c * e for v, e in zip(vector, f)]
        value = RatFunc(sum((v * v for v in vector), Poly()))
        piece = FormulaPiece(tuple(vector), tuple(Poly.const(c) for c in coeffs), value)
        leaves.append(leaf.with_payload(piece).lift(local).note(f"svp: coefficients {list(coeffs)}"))
    tree = BranchTree(tuple(leaves)).sorted()
    logger.info(f"parametric_svp: {len(tree)} leaves, modulus {tree.modulus}, threshold {tree.threshold}")
    return EqpVectorFormula("svp", tree, reduced)


# CVP

def _window_bound(n: int) -> int:
    """ceil(2^(n/2 - 1))."""
    if n <= 1:
        return 1
    v = 2 ** (n - 2)
    r = math.isqrt(v)
    return r if r * r == v else r + 1


def cvp_window(n: int) -> List[int]:
    w = _window_bound(n)
    return list(range(-w, w + 2))


def adjugate(matrix: Sequence[Sequence]) -> List[List]:
    n = len(matrix)
    if n == 1:
        return [[1]]
    adj = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [row[:i] + row[i + 1:] for k, row in enumerate(matrix) if k != j]
            cof = determinant(minor)
            adj[i][j] = cof if (i + j) % 2 == 0 else -cof
    return adj


def project_to_span(vectors: Sequence[Sequence], x: Sequence) -> Tuple[Tuple[RatFunc, ...], Tuple[RatFunc, ...]]:
    """Orthogonal projection y of x onto span(vectors) over Q(t), and its coordinates."""
    rows = [[RatFunc(e) if not isinstance(e, RatFunc) else e for e in v] for v in vectors]
    x = [RatFunc(e) if not isinstance(e, RatFunc) else e for e in x]
    if not rows:
        return tuple(RatFunc.zero() for _ in x), ()
    gram = [[dot(u, v) for v in rows] for u in rows]
    det = determinant(gram)
    if not det:
        raise SingularGram("Gram matrix is singular over Q(t)")
    rhs = [dot(u, x) for u in rows]
    adj = adjugate(gram)
    coords = tuple(sum((adj[i][j] * rhs[j] for j in range(len(rows))), RatFunc.zero()) / det for i in range(len(rows)))
    y = tuple(sum((coords[i] * rows[i][k] for i in range(len(rows))), RatFunc.zero()) for k in range(len(x)))
    return y, coords


def _closest(leaf: Leaf, limit: Optional[int]) -> List[Leaf]:
    vectors, target = leaf.payload
    n = len(vectors)
    if n == 0:
        distance = sum((x * x for x in target), RatFunc.zero())
        return [leaf.with_payload(FormulaPiece(tuple(Poly() for _ in target), (), distance))]
    _, coords = project_to_span(vectors, target)
    floor_c = floor_ratfunc(coords[-1].num, coords[-1].den, limit)
    children = apply_rounding(
        leaf,
        [floor_c],
        lambda payload, qs: (payload, qs[0]),
        lambda qs: f"cvp: floor(c_{n}) = {qs[0].to_string('s')}",
    )
    out = []
    for child in children:
        payload, base = child.payload
        out.extend(_best_offset(child.with_payload(payload), base, limit))
    return out


def _nearest_candidate(values: Sequence[RatFunc], limit: Optional[int]) -> Tuple[int, int]:
    """Index of the eventually smallest distance and the threshold it holds from."""
    common = reduce(poly_lcm, (v.den for v in values))
    scaled = [EqpFunc.from_poly(v.num * (common // v.den)) for v in values]
    selection = eqp_eventual_min(scaled, limit)
    return selection.choices[0], max(selection.threshold, eventual_sign(common, limit)[1])


def _best_offset(child: Leaf, base: Poly, limit: Optional[int]) -> List[Leaf]:
    vectors, target = child.payload
    n = len(vectors)
    top = vectors[-1]
    per_offset = []
    for i in cvp_window(n):
        a = base + i
        shifted = tuple(x - a * e for x, e in zip(target, top))
        per_offset.append((a, _closest(child.with_payload((vectors[:-1], shifted)), limit)))

    modulus = lcm(*(res.modulus for _, results in per_offset for res in results))
    out = []
    for fine in branch(child, modulus):
        fine_top = fine.payload[0][-1]
        candidates = []
        threshold = fine.threshold
        for a, results in per_offset:
            res = next(r for r in results if fine.residue % r.modulus == r.residue)
            piece = rebase(res.payload, res, fine)
            a_fine = rebase(a, child, fine)
            vector = tuple(v + a_fine * e for v, e in zip(piece.vector, fine_top))
            candidates.append(FormulaPiece(vector, piece.coefficients + (a_fine,), piece.value))
            threshold = max(threshold, res.threshold)
        best, local = _nearest_candidate([c.value for c in candidates], limit)
        chosen = Leaf(fine.modulus, fine.residue, threshold, candidates[best], fine.transcript)
        out.append(chosen.lift(local))
    return out


def parametric_cvp(
    basis,
    target: Sequence,
    limit: Optional[int] = None,
    max_rank: Optional[int] = None,
) -> EqpVectorFormula:
    """Lattice vector closest to target(t), per progression of t."""
    basis = basis if isinstance(basis, ParamBasis) else ParamBasis(basis, dim=len(target))
    target = tuple(x if isinstance(x, RatFunc) else RatFunc(x) for x in target)
    if len(target) != basis.dim:
        raise ValueError(f"target has {len(target)} entries, expected {basis.dim}")
    _check_rank(len(basis), max_rank)
    reduced = parametric_lll(basis, SOLVER_DELTA, limit)
    leaves = []
    for leaf in reduced.leaves:
        local_target = tuple(x.substitute(leaf.modulus, leaf.residue) for x in target)
        start = Leaf(leaf.modulus, leaf.residue, leaf.threshold, (tuple(leaf.payload), local_target), leaf.transcript)
        poles = max((eventual_sign(x.den, limit)[1] for x in local_target), default=0)
        leaves.extend(_closest(start.lift(poles), limit))
    tree = BranchTree(tuple(leaves)).sorted()
    logger.info(f"parametric_cvp: {len(tree)} leaves, modulus {tree.modulus}, threshold {tree.threshold}")
    return EqpVectorFormula("cvp", tree, reduced, target)
