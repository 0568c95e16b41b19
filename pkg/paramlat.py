"""Parametric lattice reduction over Z[t].

The pipeline turns a basis f_1(t), ..., f_n(t) with polynomial entries into
a branch tree of bases that are LLL-reduced for every large enough t in each
progression:

1. drop zero vectors, repair same-degree blocks whose pilots are dependent,
   sort by degree;
2. make every pair of degree blocks asymptotically orthogonal, looping back
   to step 1 whenever a degree drops;
3. LLL the pilot vectors of each block and fix the pairs whose coefficient
   tends to exactly +-1/2 from the wrong side;
4. size-reduce across degrees.

Every rounding of a rational function is an EQP; the leaf is branched on its
modulus so that the rounding becomes a polynomial again.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from config import get_settings
from eqp import BranchTree, EqpFunc, Leaf, branch, lcm, nearest, substitute_payload
from errors import CertificationError, DegreeOutOfRange, DependentInput, DependentPilots, RankDeficient
from lattice_core import GramSchmidtData, gram_schmidt, hnf_column, lattice_hnf, lll_reduce
from polyring import NEG_INF, Ordering, Poly, RatFunc, as_poly, eventual_compare, eventual_sign

logger = logging.getLogger(__name__)

HALF = Fraction(1, 2)


def _int_if_integral(x):
    x = Fraction(x)
    return int(x) if x.denominator == 1 else x


class ParamVector:
    """Vector of polynomials; degree is the largest entry degree."""

    __slots__ = ("entries",)

    def __init__(self, entries: Sequence):
        self.entries: Tuple[Poly, ...] = tuple(as_poly(e) for e in entries)

    @classmethod
    def zero(cls, dim: int) -> "ParamVector":
        return cls([Poly()] * dim)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[Poly]:
        return iter(self.entries)

    def __getitem__(self, k: int) -> Poly:
        return self.entries[k]

    @property
    def degree(self):
        return max((e.degree for e in self.entries), default=NEG_INF)

    def is_zero(self) -> bool:
        return all(e.is_zero() for e in self.entries)

    def degree_part(self, d: int) -> Tuple:
        if self.is_zero() or not 0 <= d <= self.degree:
            raise DegreeOutOfRange(f"degree {d} outside 0..{self.degree}")
        return tuple(_int_if_integral(e.coeff(d)) for e in self.entries)

    @property
    def pilot(self) -> Tuple:
        if self.is_zero():
            return tuple(0 for _ in self.entries)
        return self.degree_part(self.degree)

    def evaluate(self, t) -> Tuple:
        return tuple(_int_if_integral(e(t)) for e in self.entries)

    def substitute(self, k, j) -> "ParamVector":
        return ParamVector(e.compose_affine(k, j) for e in self.entries)

    def dot(self, other: "ParamVector") -> Poly:
        return sum((a * b for a, b in zip(self.entries, other.entries)), Poly())

    def scaled(self, q) -> "ParamVector":
        return ParamVector(q * e for e in self.entries)

    def __add__(self, other: "ParamVector") -> "ParamVector":
        return ParamVector(a + b for a, b in zip(self.entries, other.entries))

    def __sub__(self, other: "ParamVector") -> "ParamVector":
        return ParamVector(a - b for a, b in zip(self.entries, other.entries))

    def __neg__(self) -> "ParamVector":
        return ParamVector(-e for e in self.entries)

    def __eq__(self, other) -> bool:
        return isinstance(other, ParamVector) and self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def to_string(self, var: str = "t") -> str:
        return "(" + ", ".join(e.to_string(var) for e in self.entries) + ")"

    def __repr__(self) -> str:
        return f"ParamVector{self.to_string()}"


def pilot(f: ParamVector) -> Tuple:
    return f.pilot


def degree_part(f: ParamVector, d: int) -> Tuple:
    return f.degree_part(d)


class ParamBasis:
    """Ordered list of parametric vectors in a common ambient dimension."""

    __slots__ = ("vectors", "dim")

    def __init__(self, vectors: Sequence, dim: Optional[int] = None):
        self.vectors: Tuple[ParamVector, ...] = tuple(
            v if isinstance(v, ParamVector) else ParamVector(v) for v in vectors
        )
        if dim is None:
            if not self.vectors:
                raise ValueError("the ambient dimension of an empty basis must be given")
            dim = len(self.vectors[0])
        if any(len(v) != dim for v in self.vectors):
            raise ValueError(f"every basis vector must have {dim} entries")
        self.dim = dim

    def __len__(self) -> int:
        return len(self.vectors)

    def __iter__(self) -> Iterator[ParamVector]:
        return iter(self.vectors)

    def __getitem__(self, i: int) -> ParamVector:
        return self.vectors[i]

    def __eq__(self, other) -> bool:
        return isinstance(other, ParamBasis) and self.vectors == other.vectors and self.dim == other.dim

    def __hash__(self) -> int:
        return hash((self.vectors, self.dim))

    @property
    def degrees(self) -> Tuple:
        return tuple(v.degree for v in self.vectors)

    @property
    def pilots(self) -> List[Tuple]:
        return [v.pilot for v in self.vectors]

    def is_sorted(self) -> bool:
        degs = self.degrees
        return all(a <= b for a, b in zip(degs, degs[1:]))

    def blocks(self) -> List[Tuple[int, Tuple[int, ...]]]:
        """Runs of equal degree as (degree, indices), in basis order."""
        out: List[Tuple[int, List[int]]] = []
        for i, d in enumerate(self.degrees):
            if out and out[-1][0] == d:
                out[-1][1].append(i)
            else:
                out.append((d, [i]))
        return [(d, tuple(idx)) for d, idx in out]

    def evaluate(self, t) -> List[Tuple]:
        return [v.evaluate(t) for v in self.vectors]

    def substitute(self, k, j) -> "ParamBasis":
        return ParamBasis([v.substitute(k, j) for v in self.vectors], self.dim)

    def with_vector(self, index: int, vector: ParamVector) -> "ParamBasis":
        vectors = list(self.vectors)
        vectors[index] = vector
        return ParamBasis(vectors, self.dim)

    def transform(self, indices: Sequence[int], U: Sequence[Sequence[int]]) -> "ParamBasis":
        """Replace vectors[indices] by their combination with U (column convention)."""
        vectors = list(self.vectors)
        block = [self.vectors[i] for i in indices]
        for col, target in enumerate(indices):
            acc = ParamVector.zero(self.dim)
            for row, f in enumerate(block):
                if U[row][col]:
                    acc = acc + f.scaled(U[row][col])
            vectors[target] = acc
        return ParamBasis(vectors, self.dim)

    def to_string(self, var: str = "t") -> str:
        return "[" + ", ".join(v.to_string(var) for v in self.vectors) + "]"

    def __repr__(self) -> str:
        return f"ParamBasis{self.to_string()}"


# Gram-Schmidt over Q(t)

def param_gram_schmidt(basis: Sequence[ParamVector]) -> GramSchmidtData:
    return gram_schmidt([v.entries for v in basis])


MuTable = Tuple[Tuple[RatFunc, ...], ...]


def _as_ratfunc(x) -> RatFunc:
    return x if isinstance(x, RatFunc) else RatFunc(x)


def gram_schmidt_mu(basis: Sequence[ParamVector]) -> MuTable:
    return tuple(tuple(_as_ratfunc(x) for x in row) for row in param_gram_schmidt(basis).mu)


def reduce_mu(mu: MuTable, k: int, j: int, q) -> MuTable:
    """Coefficients after f_k -= q*f_j with j < k; the orthogonal vectors do not change."""
    if not q:
        return mu
    row = list(mu[k])
    for i in range(j):
        if mu[j][i]:
            row[i] = row[i] - mu[j][i] * q
    row[j] = row[j] - q
    return mu[:k] + (tuple(row),) + mu[k + 1:]


def determinant(matrix: Sequence[Sequence]):
    """Laplace expansion; entries may be Poly, RatFunc or rationals."""
    n = len(matrix)
    if n == 0:
        return 1
    if n == 1:
        return matrix[0][0]
    total = 0
    for j, a in enumerate(matrix[0]):
        if not a:
            continue
        minor = [row[:j] + row[j + 1:] for row in matrix[1:]]
        term = a * determinant(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def gram_determinant(basis: Sequence[ParamVector]) -> Poly:
    vectors = list(basis)
    gram = [[u.dot(v) for v in vectors] for u in vectors]
    return as_poly(determinant(gram)) if vectors else Poly.one()


def is_independent(basis: Sequence[ParamVector]) -> bool:
    return not gram_determinant(basis).is_zero()


def projection_coefficients(block: Sequence[ParamVector], h: ParamVector) -> List[RatFunc]:
    """alpha with proj(h onto span(block)) = sum_j alpha_j * block_j.

    From f*_i = sum_j beta_ij f_j and sigma_i = <h, f*_i>/<f*_i, f*_i>,
    alpha_j = sum_{i >= j} beta_ij sigma_i.
    """
    data = param_gram_schmidt(block)
    k = len(block)
    beta: List[List] = []
    for i in range(k):
        row = [RatFunc.zero()] * k
        row[i] = RatFunc.one()
        for j in range(i):
            mu = data.mu[i][j]
            if mu:
                row = [x - mu * y for x, y in zip(row, beta[j])]
        beta.append(row)
    h_field = [RatFunc(e) for e in h.entries]
    sigma = [sum((a * b for a, b in zip(h_field, star)), 0) / size for star, size in zip(data.orthogonal, data.norms)]
    return [sum((beta[i][j] * sigma[i] for i in range(j, k)), RatFunc.zero()) for j in range(k)]


# step 1

def hermite_degree_reduce(block: Sequence[ParamVector]) -> List[ParamVector]:
    """Column HNF of the pilot matrix applied to a same-degree block.

    The first rank-many outputs keep the block degree with independent
    pilots; the others drop to lower degree.
    """
    block = list(block)
    if not block:
        return []
    pilots = [v.pilot for v in block]
    matrix = [tuple(p[k] for p in pilots) for k in range(len(pilots[0]))]
    _, U = hnf_column(matrix)
    return list(ParamBasis(block).transform(range(len(block)), U))


def _pilots_dependent(vectors: Sequence[ParamVector]) -> bool:
    return len(lattice_hnf([v.pilot for v in vectors])) < len(vectors)


def _step1(basis: ParamBasis) -> Tuple[ParamBasis, List[str]]:
    notes: List[str] = []
    vectors = [v for v in basis if not v.is_zero()]
    if len(vectors) < len(basis):
        notes.append(f"step1: dropped {len(basis) - len(vectors)} zero vector(s)")
    while True:
        by_degree: Dict[int, List[ParamVector]] = {}
        for v in vectors:
            by_degree.setdefault(v.degree, []).append(v)
        changed = False
        rebuilt = []
        for d in sorted(by_degree):
            block = by_degree[d]
            if len(block) > 1 and _pilots_dependent(block):
                block = hermite_degree_reduce(block)
                notes.append(f"step1: pilot HNF repair of the degree-{d} block")
                changed = True
            rebuilt.extend(block)
        vectors = [v for v in rebuilt if not v.is_zero()]
        if not changed:
            break
    ordered = ParamBasis(sorted(vectors, key=lambda v: v.degree), basis.dim)
    return ordered, notes


def sort_and_reduce_degrees(basis: ParamBasis, strict: bool = False) -> ParamBasis:
    reduced, _ = _step1(basis)
    if strict and len(reduced) < len(basis):
        raise RankDeficient(f"only {len(reduced)} of {len(basis)} vectors survive degree reduction")
    return reduced


# step 2

def _first_unorthogonal(basis: ParamBasis) -> Optional[Tuple[Tuple[int, ...], int]]:
    blocks = basis.blocks()
    pilots = basis.pilots
    for e_pos, (_, e_idx) in enumerate(blocks):
        for _, d_idx in blocks[:e_pos]:
            for h in e_idx:
                if any(sum(x * y for x, y in zip(pilots[f], pilots[h])) for f in d_idx):
                    return d_idx, h
    return None


# rounding with branching

def _exceeds_half(rho: RatFunc, limit: Optional[int]) -> bool:
    return (
        eventual_compare(rho, HALF, limit)[0] == Ordering.GT
        or eventual_compare(rho, -HALF, limit)[0] == Ordering.LT
    )


def _integral_modulus(e: EqpFunc) -> int:
    """A multiple of e.modulus on whose progressions every piece has integer coefficients."""
    return lcm(e.modulus, *(p.integer_form()[1] for p in e.pieces))


def apply_rounding(
    leaf: Leaf,
    roundings: Sequence[EqpFunc],
    apply: Callable[[object, List[Poly]], object],
    describe: Callable[[List[Poly]], str],
) -> List[Leaf]:
    """Branch ``leaf`` until every rounding is an integral polynomial, then apply it."""
    if roundings:
        leaf = leaf.lift(max(e.threshold for e in roundings))
    k = lcm(*(_integral_modulus(e) for e in roundings))
    out = []
    for j, child in enumerate(branch(leaf, leaf.modulus * k)):
        qs = [e.local_piece(k, j) for e in roundings]
        out.append(child.with_payload(apply(child.payload, qs)).note(describe(qs)))
    if k > 1:
        logger.debug(f"branched leaf t = {leaf.modulus}*s + {leaf.residue} into {k} progressions")
    return out


# pipeline

@dataclass(frozen=True)
class _Task:
    leaf: Leaf
    stage: int
    position: int = 0
    # Gram-Schmidt coefficients of leaf.payload, in the leaf's variable
    mu: Optional[MuTable] = None


@dataclass(frozen=True)
class ReducedOutput:
    """Branch tree of eventually LLL-reduced bases, payloads in each leaf's local variable."""
    delta: Fraction
    delta_prime: Fraction
    tree: BranchTree
    source: ParamBasis

    @property
    def leaves(self) -> Tuple[Leaf, ...]:
        return self.tree.leaves

    @property
    def modulus(self) -> int:
        return self.tree.modulus

    @property
    def threshold(self) -> int:
        return self.tree.threshold

    def leaf_for(self, t: int) -> Leaf:
        return self.tree.leaf_for(t)

    def evaluate(self, t: int) -> List[Tuple]:
        leaf = self.leaf_for(t)
        return leaf.payload.evaluate(leaf.local(t))


class _Pipeline:
    def __init__(self, delta: Fraction, limit: Optional[int]):
        self.delta = delta
        self.delta_prime = (delta + 1) / 2
        self.limit = limit

    def run(self, basis: ParamBasis) -> List[Leaf]:
        stack = [_Task(Leaf(1, 0, 0, basis), 1)]
        finished: List[Leaf] = []
        stages = {1: self.orthogonalize, 3: self.pilot_lll, 4: self.cross_degree, 5: self.certify}
        while stack:
            task = stack.pop()
            result = stages[task.stage](task)
            if isinstance(result, Leaf):
                finished.append(result)
            else:
                stack.extend(reversed(result))
        return finished

    def orthogonalize(self, task: _Task) -> List[_Task]:
        basis, notes = _step1(task.leaf.payload)
        leaf = task.leaf.with_payload(basis).note(*notes)
        found = _first_unorthogonal(basis)
        if found is None:
            return [_Task(leaf, 3)]
        d_idx, h = found
        alphas = projection_coefficients([basis[i] for i in d_idx], basis[h])
        roundings = [nearest(a, self.limit) for a in alphas]
        if all(p.is_zero() for e in roundings for p in e.pieces):
            raise CertificationError(f"no progress reducing vector {h + 1} against its lower-degree block")

        def reduce_h(payload: ParamBasis, qs: List[Poly]) -> ParamBasis:
            vec = payload[h]
            for i, q in zip(d_idx, qs):
                if q:
                    vec = vec - payload[i].scaled(q)
            return payload.with_vector(h, vec)

        def describe(qs: List[Poly]) -> str:
            terms = " + ".join(f"({q.to_string('s')})*f{i + 1}" for i, q in zip(d_idx, qs) if q)
            return f"step2: f{h + 1} -= {terms or '0'}"

        children = apply_rounding(leaf, roundings, reduce_h, describe)
        return [_Task(child, 1) for child in children]

    def pilot_lll(self, task: _Task) -> List[_Task]:
        leaf = task.leaf
        basis: ParamBasis = leaf.payload
        mu = task.mu
        if task.position == 0:
            mu = None
            for d, idx in basis.blocks():
                if len(idx) < 2:
                    continue
                _, U = lll_reduce([basis[i].pilot for i in idx], self.delta_prime)
                if any(U[r][c] != int(r == c) for r in range(len(idx)) for c in range(len(idx))):
                    basis = basis.transform(idx, U)
                    leaf = leaf.note(f"step3: pilot LLL on the degree-{d} block, U = {[list(r) for r in U]}")
            leaf = leaf.with_payload(basis)
        schedule = [
            (k, j)
            for _, idx in basis.blocks()
            for pos, k in enumerate(idx)
            for j in reversed(idx[:pos])
        ]
        return self._size_reduce(leaf, schedule, max(task.position - 1, 0), stage=3, offset=1, mu=mu)

    def cross_degree(self, task: _Task) -> List[_Task]:
        basis: ParamBasis = task.leaf.payload
        degrees = basis.degrees
        schedule = [
            (k, j)
            for k in range(len(basis))
            for j in range(k - 1, -1, -1)
            if degrees[j] < degrees[k]
        ]
        return self._size_reduce(task.leaf, schedule, task.position, stage=4, offset=0, mu=task.mu)

    def _size_reduce(self, leaf: Leaf, schedule, start: int, stage: int, offset: int, mu: Optional[MuTable]):
        if mu is None:
            mu = gram_schmidt_mu(leaf.payload)
        for pos in range(start, len(schedule)):
            k, j = schedule[pos]
            rho = mu[k][j]
            if not _exceeds_half(rho, self.limit):
                continue
            rounding = nearest(rho, self.limit)
            applied: List[Poly] = []

            def subtract(payload: ParamBasis, qs: List[Poly], k=k, j=j) -> ParamBasis:
                applied.append(qs[0])
                return payload.with_vector(k, payload[k] - payload[j].scaled(qs[0]))

            def describe(qs: List[Poly], k=k, j=j) -> str:
                return f"step{stage}: f{k + 1} -= ({qs[0].to_string('s')})*f{j + 1}"

            children = apply_rounding(leaf, [rounding], subtract, describe)
            if len(children) > 1:
                split = len(children)
                return [
                    _Task(child, stage, pos + 1 + offset, reduce_mu(substitute_payload(mu, split, r), k, j, q))
                    for r, (child, q) in enumerate(zip(children, applied))
                ]
            leaf = children[0]
            mu = reduce_mu(mu, k, j, applied[0])
        return [_Task(leaf, stage + 1, mu=mu)]

    def certify(self, task: _Task) -> Leaf:
        local = certify_leaf(task.leaf.payload, self.delta, self.limit)
        leaf = task.leaf.lift(local)
        return leaf.note(f"certified from t >= {leaf.threshold}")


def certify_leaf(basis: Sequence[ParamVector], delta: Fraction, limit: Optional[int] = None) -> int:
    """Threshold from which the basis is size-reduced and satisfies Lovasz with ``delta``."""
    vectors = list(basis)
    if not vectors:
        return 0
    try:
        data = param_gram_schmidt(vectors)
    except DependentInput as e:
        raise CertificationError(str(e))
    threshold = 0
    for i, size in enumerate(data.norms):
        sign, bound = eventual_sign(size, limit)
        if sign <= 0:
            raise CertificationError(f"Gram-Schmidt norm {i + 1} is not eventually positive")
        threshold = max(threshold, bound)
    for i, row in enumerate(data.mu):
        for j, rho in enumerate(row):
            upper, t_upper = eventual_compare(rho, HALF, limit)
            lower, t_lower = eventual_compare(rho, -HALF, limit)
            if upper == Ordering.GT or lower == Ordering.LT:
                raise CertificationError(f"|rho_{i + 1},{j + 1}| = |{rho}| is eventually above 1/2")
            threshold = max(threshold, t_upper, t_lower)
    for i in range(1, len(vectors)):
        rho = data.mu[i][i - 1]
        lovasz = data.norms[i] / data.norms[i - 1] + rho * rho
        order, bound = eventual_compare(lovasz, delta, limit)
        if order == Ordering.LT:
            raise CertificationError(f"Lovasz condition fails eventually at index {i + 1}")
        threshold = max(threshold, bound)
    return threshold


def _resolve_delta(delta) -> Fraction:
    delta = get_settings().delta if delta is None else Fraction(delta)
    if not Fraction(1, 4) < delta < 1:
        raise ValueError(f"delta must lie strictly between 1/4 and 1, got {delta}")
    return delta


def _as_basis(basis) -> ParamBasis:
    return basis if isinstance(basis, ParamBasis) else ParamBasis(basis)


def parametric_lll(basis, delta=None, limit: Optional[int] = None) -> ReducedOutput:
    """Eventually LLL-reduced basis, one leaf per progression of t."""
    basis = _as_basis(basis)
    delta = _resolve_delta(delta)
    if not is_independent(basis):
        raise RankDeficient("basis vectors are linearly dependent over Q(t)")
    logger.info(f"parametric_lll: n={len(basis)}, m={basis.dim}, degrees={list(basis.degrees)}, delta={delta}")
    pipeline = _Pipeline(delta, limit)
    leaves = pipeline.run(basis)
    tree = BranchTree(tuple(leaves)).sorted()
    logger.info(f"parametric_lll: {len(tree)} leaves, modulus {tree.modulus}, threshold {tree.threshold}")
    return ReducedOutput(delta, pipeline.delta_prime, tree, basis)


# individual stages

def asym_orthogonalize(basis, limit: Optional[int] = None) -> BranchTree:
    """Steps 1 and 2 only: every leaf has pairwise asymptotically orthogonal degree blocks."""
    pipeline = _Pipeline(Fraction(3, 4), limit)
    stack = [_Task(Leaf(1, 0, 0, _as_basis(basis)), 1)]
    done = []
    while stack:
        task = stack.pop()
        if task.stage == 1:
            stack.extend(reversed(pipeline.orthogonalize(task)))
        else:
            done.append(task.leaf)
    return BranchTree(tuple(done)).sorted()


def lift_pilot_lll(block: Sequence[ParamVector], delta_prime, limit: Optional[int] = None) -> List[ParamVector]:
    """LLL on the pilots of a same-degree block, then the +-f_j corrections."""
    block = list(block)
    if len(block) < 2:
        return block
    if _pilots_dependent(block):
        raise DependentPilots("pilot vectors of the block are linearly dependent")
    pipeline = _Pipeline(Fraction(3, 4), limit)
    pipeline.delta_prime = Fraction(delta_prime)
    tasks = pipeline.pilot_lll(_Task(Leaf(1, 0, 0, ParamBasis(block)), 3))
    if len(tasks) != 1:
        raise CertificationError("same-degree correction required branching")
    return list(tasks[0].leaf.payload)


def final_cross_degree_size_reduce(basis, limit: Optional[int] = None) -> BranchTree:
    pipeline = _Pipeline(Fraction(3, 4), limit)
    stack = [_Task(Leaf(1, 0, 0, _as_basis(basis)), 4)]
    done = []
    while stack:
        task = stack.pop()
        if task.stage == 4:
            stack.extend(reversed(pipeline.cross_degree(task)))
        else:
            done.append(task.leaf)
    return BranchTree(tuple(done)).sorted()


# diagnostics

@dataclass(frozen=True)
class AsymptoticReport:
    rho_limits: Dict[Tuple[int, int], Fraction] = field(default_factory=dict)
    pilot_mu: Dict[Tuple[int, int], Fraction] = field(default_factory=dict)
    lovasz_limits: Tuple = ()

    def pilots_agree(self) -> bool:
        return bool(self.pilot_mu) and all(self.rho_limits[key] == self.pilot_mu[key] for key in self.pilot_mu)


def asymptotic_report(basis, delta=None) -> AsymptoticReport:
    """Limits of rho_ij / t^(d_i - d_j) and of the Lovasz quantities."""
    vectors = list(_as_basis(basis))
    data = param_gram_schmidt(vectors)
    degrees = [v.degree for v in vectors]
    rho_limits = {}
    for i, row in enumerate(data.mu):
        for j, rho in enumerate(row):
            gap = degrees[i] - degrees[j]
            scale = RatFunc(Poly.monomial(abs(gap)))
            rho_limits[(i, j)] = (rho / scale if gap >= 0 else rho * scale).limit()
    try:
        pilot_data = gram_schmidt([v.pilot for v in vectors])
        pilot_mu = {(i, j): mu for i, row in enumerate(pilot_data.mu) for j, mu in enumerate(row)}
    except DependentInput:
        pilot_mu = {}
    lovasz = tuple(
        (data.norms[i] / data.norms[i - 1] + data.mu[i][i - 1] * data.mu[i][i - 1]).limit()
        for i in range(1, len(vectors))
    )
    if delta is not None:
        logger.debug(f"asymptotic Lovasz limits {lovasz} against delta {delta}")
    return AsymptoticReport(rho_limits, pilot_mu, lovasz)
