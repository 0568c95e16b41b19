"""Eventually quasi-polynomial functions and branch trees.

An EqpFunc stores one polynomial per residue class modulo its period, in the
original parameter t.  A BranchTree splits {t >= T} into arithmetic
progressions t = M*s + r; leaf payloads live in the local variable s.
"""
import logging
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import reduce
from typing import Any, Callable, Generic, Iterator, List, Optional, Sequence, Tuple, TypeVar

from errors import DivByZero, InvalidRefinement
from polyring import (
    Poly,
    RatFunc,
    as_poly,
    cauchy_bound,
    eventual_sign,
    eventually_nonnegative,
    poly_divmod,
)

logger = logging.getLogger(__name__)

P = TypeVar("P")


def lcm(*values: int) -> int:
    return reduce(lambda a, b: a * b // math.gcd(a, b), values, 1)


class EqpFunc:
    """Function of t equal to ``pieces[t % modulus](t)`` for every integer t >= threshold."""

    __slots__ = ("threshold", "modulus", "pieces", "integer_valued")

    def __init__(self, threshold: int, modulus: int, pieces: Sequence, integer_valued: bool = False):
        if modulus < 1 or len(pieces) != modulus:
            raise ValueError(f"an EQP of modulus {modulus} needs exactly {modulus} pieces, got {len(pieces)}")
        self.threshold = max(0, int(threshold))
        self.modulus = modulus
        self.pieces: Tuple[Poly, ...] = tuple(as_poly(p) for p in pieces)
        self.integer_valued = integer_valued

    @classmethod
    def from_poly(cls, f, threshold: int = 0) -> "EqpFunc":
        f = as_poly(f)
        return cls(threshold, 1, (f,), integer_valued=f.is_integral())

    def piece(self, t: int) -> Poly:
        return self.pieces[t % self.modulus]

    def __call__(self, t: int) -> Fraction:
        return self.piece(t)(t)

    def refine(self, modulus: int) -> "EqpFunc":
        if modulus % self.modulus:
            raise InvalidRefinement(f"modulus {modulus} is not a multiple of {self.modulus}")
        if modulus == self.modulus:
            return self
        pieces = [self.pieces[i % self.modulus] for i in range(modulus)]
        return EqpFunc(self.threshold, modulus, pieces, self.integer_valued)

    def is_mild(self) -> bool:
        first = self.pieces[0]
        return all(p.degree == first.degree and p.lc == first.lc for p in self.pieces)

    @property
    def degree(self):
        return max(p.degree for p in self.pieces)

    def local_piece(self, modulus: int, residue: int) -> Poly:
        """The piece valid on t = modulus*s + residue, written in s; self.modulus must divide modulus."""
        if modulus % self.modulus:
            raise InvalidRefinement(f"modulus {modulus} is not a multiple of {self.modulus}")
        return self.pieces[residue % self.modulus].compose_affine(modulus, residue)

    # arithmetic

    @staticmethod
    def _coerce(other) -> Optional["EqpFunc"]:
        if isinstance(other, EqpFunc):
            return other
        if isinstance(other, (Poly, int, Fraction)):
            return EqpFunc.from_poly(other)
        return None

    def _combine(self, other, op: Callable[[Poly, Poly], Poly]) -> "EqpFunc":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        modulus = lcm(self.modulus, other.modulus)
        a, b = self.refine(modulus), other.refine(modulus)
        pieces = [op(x, y) for x, y in zip(a.pieces, b.pieces)]
        return EqpFunc(max(a.threshold, b.threshold), modulus, pieces, a.integer_valued and b.integer_valued)

    def __add__(self, other):
        return self._combine(other, lambda x, y: x + y)

    __radd__ = __add__

    def __sub__(self, other):
        return self._combine(other, lambda x, y: x - y)

    def __rsub__(self, other):
        return self._combine(other, lambda x, y: y - x)

    def __mul__(self, other):
        return self._combine(other, lambda x, y: x * y)

    __rmul__ = __mul__

    def __neg__(self) -> "EqpFunc":
        return EqpFunc(self.threshold, self.modulus, [-p for p in self.pieces], self.integer_valued)

    def __eq__(self, other) -> bool:
        if not isinstance(other, EqpFunc):
            return NotImplemented
        modulus = lcm(self.modulus, other.modulus)
        return self.threshold == other.threshold and self.refine(modulus).pieces == other.refine(modulus).pieces

    def __hash__(self) -> int:
        return hash((self.threshold, self.modulus, self.pieces))

    def __repr__(self) -> str:
        return f"EqpFunc(threshold={self.threshold}, modulus={self.modulus}, pieces={list(self.pieces)!r})"


# rounding

def _period(values: Sequence) -> int:
    n = len(values)
    for p in range(1, n + 1):
        if n % p == 0 and all(values[i] == values[i % p] for i in range(n)):
            return p
    return n


def floor_ratfunc(f, h, limit: Optional[int] = None) -> EqpFunc:
    """floor(f(t)/h(t)) as an integer-valued mild EQP.

    With f = q*h + r and q = p/D (p integral), the fractional part of q(t)
    on t = i (mod D) is the constant c_i = (p(i) mod D)/D.  The tail r/h is
    certified to stay inside (-c_i, 1 - c_i), or to keep a fixed sign when
    c_i = 0, from the returned threshold on.
    """
    f, h = as_poly(f), as_poly(h)
    if h.is_zero():
        raise DivByZero("floor of a rational function with zero denominator")
    q, r = poly_divmod(f, h)
    if q.is_zero():
        p, denom = (), 1
    else:
        p, denom = q.integer_form()
    fractional = [Fraction(_horner(p, i) % denom, denom) for i in range(denom)]
    period = _period(fractional)
    fractional = fractional[:period]

    s_h, threshold = eventual_sign(h, limit)
    tail_sign = 0
    if not r.is_zero():
        if any(c == 0 for c in fractional):
            s_r, t_r = eventual_sign(r, limit)
            tail_sign = s_r * s_h
            threshold = max(threshold, t_r)
        for eps in sorted({min(c, 1 - c) if c else Fraction(1) for c in fractional}):
            bound = h * (eps * s_h)
            for g in (bound - r, bound + r):
                threshold = max(threshold, eventual_sign(g, limit)[1])

    pieces = []
    for c in fractional:
        piece = q - c
        if c == 0 and tail_sign < 0:
            piece = piece - 1
        pieces.append(piece)
    result = EqpFunc(threshold, period, pieces, integer_valued=True)
    logger.debug(f"floor(({f}) / ({h})): modulus {period}, threshold {threshold}")
    return result


def nearest_ratfunc(f, h, limit: Optional[int] = None) -> EqpFunc:
    """Nearest integer to f(t)/h(t), ties rounded up: floor((2f + h) / (2h))."""
    f, h = as_poly(f), as_poly(h)
    if h.is_zero():
        raise DivByZero("rounding a rational function with zero denominator")
    return floor_ratfunc(f * 2 + h, h * 2, limit)


def nearest(value: RatFunc, limit: Optional[int] = None) -> EqpFunc:
    return nearest_ratfunc(value.num, value.den, limit)


def _horner(coeffs: Sequence[int], x: int) -> int:
    result = 0
    for c in reversed(coeffs):
        result = result * x + c
    return result


# minimum selection

@dataclass(frozen=True)
class MinSelection:
    """Per residue class modulo ``modulus``, the index of the eventually smallest candidate."""
    modulus: int
    choices: Tuple[int, ...]
    threshold: int

    def choice(self, t: int) -> int:
        return self.choices[t % self.modulus]


def top_key(f: Poly, degree: int) -> Tuple[Fraction, ...]:
    """Coefficients from t^degree down to t^0; tuple order is eventual order."""
    return tuple(f.coeff(k) for k in range(degree, -1, -1))


def dominates(key: Sequence, best: Sequence) -> bool:
    """True when every coefficient of key - best is >= 0, so key >= best for all t >= 0."""
    return all(x >= y for x, y in zip(key, best))


def eqp_eventual_min(candidates: Sequence[EqpFunc], limit: Optional[int] = None) -> MinSelection:
    """Per residue class, the eventually smallest candidate; ties go to the earliest index."""
    if not candidates:
        raise ValueError("eventual minimum of an empty candidate list")
    modulus = lcm(*(c.modulus for c in candidates))
    threshold = max(c.threshold for c in candidates)
    choices = []
    for residue in range(modulus):
        polys = [c.piece(residue) for c in candidates]
        width = max((p.degree for p in polys if p), default=0)
        keys = [top_key(p, width) for p in polys]
        best = min(range(len(keys)), key=keys.__getitem__)
        for i, key in enumerate(keys):
            if i == best or dominates(key, keys[best]):
                continue
            diff = [x - y for x, y in zip(reversed(key), reversed(keys[best]))]
            while diff[-1] == 0:
                diff.pop()
            if cauchy_bound(diff) > threshold:
                threshold = max(threshold, eventually_nonnegative(diff, limit))
        choices.append(best)
    return MinSelection(modulus, tuple(choices), threshold)


# branch trees

def substitute_payload(payload: Any, k: int, j: int) -> Any:
    """Rewrite a payload in s as one in s', where s = k*s' + j."""
    if isinstance(payload, (Poly, RatFunc)):
        return payload.compose_affine(k, j)
    if isinstance(payload, (tuple, list)):
        return type(payload)(substitute_payload(p, k, j) for p in payload)
    if hasattr(payload, "substitute"):
        return payload.substitute(k, j)
    return payload


@dataclass(frozen=True)
class Leaf(Generic[P]):
    """Progression t = modulus*s + residue, s >= 0, valid from t >= threshold."""
    modulus: int
    residue: int
    threshold: int
    payload: P
    transcript: Tuple[str, ...] = field(default=())

    def contains(self, t: int) -> bool:
        return t >= self.threshold and t % self.modulus == self.residue

    def local(self, t: int) -> int:
        if t % self.modulus != self.residue:
            raise ValueError(f"t = {t} is not congruent to {self.residue} mod {self.modulus}")
        return (t - self.residue) // self.modulus

    def original(self, s: int) -> int:
        return self.modulus * s + self.residue

    def local_threshold(self) -> int:
        """Smallest s with M*s + r >= threshold."""
        return max(0, -(-(self.threshold - self.residue) // self.modulus))

    def lift(self, local_threshold: int) -> "Leaf[P]":
        """Raise the threshold to cover a certificate that holds for s >= local_threshold."""
        return replace(self, threshold=max(self.threshold, self.original(local_threshold)))

    def with_payload(self, payload: P) -> "Leaf[P]":
        return replace(self, payload=payload)

    def note(self, *lines: str) -> "Leaf[P]":
        return replace(self, transcript=self.transcript + tuple(lines))

    def to_original(self, f: Poly) -> Poly:
        """Re-express a polynomial in s as one in t."""
        return as_poly(f).compose_affine(Fraction(1, self.modulus), Fraction(-self.residue, self.modulus))


def branch(leaf: Leaf[P], modulus: int) -> List[Leaf[P]]:
    """Split ``leaf`` into modulus/leaf.modulus sub-progressions."""
    if modulus < 1 or modulus % leaf.modulus:
        raise InvalidRefinement(f"cannot refine modulus {leaf.modulus} to {modulus}")
    k = modulus // leaf.modulus
    if k == 1:
        return [leaf]
    children = []
    for j in range(k):
        residue = leaf.residue + j * leaf.modulus
        children.append(
            Leaf(
                modulus,
                residue,
                leaf.threshold,
                substitute_payload(leaf.payload, k, j),
                leaf.transcript + (f"branch t = {modulus}*s + {residue}",),
            )
        )
    return children


def rebase(f: Any, coarse: Leaf, fine: Leaf) -> Any:
    """Express a payload written in ``coarse``'s variable in ``fine``'s variable."""
    if fine.modulus % coarse.modulus or fine.residue % coarse.modulus != coarse.residue:
        raise InvalidRefinement("fine leaf is not contained in the coarse leaf")
    k = fine.modulus // coarse.modulus
    j = (fine.residue - coarse.residue) // coarse.modulus
    return substitute_payload(f, k, j)


@dataclass(frozen=True)
class BranchTree(Generic[P]):
    leaves: Tuple[Leaf[P], ...]

    @classmethod
    def single(cls, payload: P, threshold: int = 0) -> "BranchTree[P]":
        return cls((Leaf(1, 0, threshold, payload),))

    def __iter__(self) -> Iterator[Leaf[P]]:
        return iter(self.leaves)

    def __len__(self) -> int:
        return len(self.leaves)

    @property
    def modulus(self) -> int:
        return lcm(*(leaf.modulus for leaf in self.leaves))

    @property
    def threshold(self) -> int:
        return max((leaf.threshold for leaf in self.leaves), default=0)

    def branch(self, index: int, modulus: int) -> "BranchTree[P]":
        leaves = list(self.leaves)
        leaves[index:index + 1] = branch(leaves[index], modulus)
        return BranchTree(tuple(leaves))

    def leaf_for(self, t: int) -> Leaf[P]:
        for leaf in self.leaves:
            if t % leaf.modulus == leaf.residue:
                return leaf
        raise ValueError(f"no leaf covers t = {t}")

    def is_partition(self) -> bool:
        modulus = self.modulus
        for residue in range(modulus):
            hits = sum(1 for leaf in self.leaves if residue % leaf.modulus == leaf.residue)
            if hits != 1:
                return False
        return True

    def sorted(self) -> "BranchTree[P]":
        return BranchTree(tuple(sorted(self.leaves, key=lambda leaf: (leaf.modulus, leaf.residue))))

    def flatten(self, select: Callable[[P], Poly] = lambda payload: payload) -> EqpFunc:
        """Collect one polynomial per leaf into an EqpFunc in the original variable."""
        modulus = self.modulus
        pieces, integral = [], True
        for residue in range(modulus):
            leaf = self.leaf_for(residue)
            local = as_poly(select(leaf.payload))
            integral = integral and local.is_integral()
            pieces.append(leaf.to_original(local))
        return EqpFunc(self.threshold, modulus, pieces, integer_valued=integral)
