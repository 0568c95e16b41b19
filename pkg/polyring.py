"""Exact arithmetic in Q[t] and Q(t) with certified eventual-sign analysis.

``Poly`` wraps a sympy ``Poly`` in t over the exact domain QQ; division,
gcd and cancellation are sympy's.  Coefficients are exposed as a tuple of
``fractions.Fraction``, lowest degree first.  Every "for all sufficiently
large t" statement made by this module comes with an integer threshold: a
Cauchy root bound, walked down by exact evaluation while the required sign
still holds.
"""
import logging
import math
from enum import IntEnum
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence, Tuple, Union

from sympy import Poly as SympyPoly, QQ, Symbol

from errors import DivByZero

logger = logging.getLogger(__name__)

NEG_INF = float("-inf")

VAR = Symbol("t")

Scalar = Union[int, Fraction]


def _frac(value) -> Fraction:
    return value if isinstance(value, Fraction) else Fraction(value)


def _qq(value):
    value = _frac(value)
    return QQ(value.numerator, value.denominator)


def _sympy_poly(coeffs: Sequence[Fraction]) -> SympyPoly:
    return SympyPoly.from_list([_qq(c) for c in reversed(coeffs)] or [QQ.zero], VAR, domain=QQ)


def _sign(value) -> int:
    return (value > 0) - (value < 0)


class Ordering(IntEnum):
    LT = -1
    EQ = 0
    GT = 1


class Poly:
    """Univariate polynomial over Q; ``coeffs[k]`` is the coefficient of t^k."""

    __slots__ = ("rep", "_coeffs")

    def __init__(self, coeffs: Iterable = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self._coeffs: Optional[Tuple[Fraction, ...]] = tuple(cs)
        self.rep: SympyPoly = _sympy_poly(cs)

    @classmethod
    def wrap(cls, rep: SympyPoly) -> "Poly":
        out = cls.__new__(cls)
        out.rep, out._coeffs = rep, None
        return out

    @property
    def coeffs(self) -> Tuple[Fraction, ...]:
        if self._coeffs is None:
            if self.rep.is_zero:
                self._coeffs = ()
            else:
                self._coeffs = tuple(Fraction(int(c.p), int(c.q)) for c in reversed(self.rep.all_coeffs()))
        return self._coeffs

    # constructors

    @classmethod
    def zero(cls) -> "Poly":
        return cls()

    @classmethod
    def one(cls) -> "Poly":
        return cls((1,))

    @classmethod
    def const(cls, value: Scalar) -> "Poly":
        return cls((value,))

    @classmethod
    def monomial(cls, k: int, coeff: Scalar = 1) -> "Poly":
        return cls([0] * k + [coeff])

    @classmethod
    def t(cls) -> "Poly":
        return cls((0, 1))

    # structure

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def is_zero(self) -> bool:
        return self.rep.is_zero

    def __bool__(self) -> bool:
        return not self.rep.is_zero

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    # arithmetic

    @staticmethod
    def _coerce(other) -> Optional["Poly"]:
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return Poly.wrap(self.rep.add(other.rep))

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly.wrap(self.rep.neg())

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return Poly.wrap(self.rep.sub(other.rep))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return Poly.wrap(other.rep.sub(self.rep))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return Poly()
            return Poly.wrap(self.rep.mul_ground(_qq(other)))
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return Poly.wrap(self.rep.mul(other.rep))

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Poly":
        if exponent < 0:
            raise ValueError("negative exponent")
        return Poly.wrap(self.rep.pow(exponent))

    def __divmod__(self, other):
        return poly_divmod(self, other)

    def __floordiv__(self, other):
        return poly_divmod(self, other)[0]

    def __mod__(self, other):
        return poly_divmod(self, other)[1]

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(("Poly", self.coeffs))

    def __call__(self, x):
        result = Fraction(0)
        for c in reversed(self.coeffs):
            result = result * x + c
        return result

    def monic(self) -> "Poly":
        if self.is_zero() or self.lc == 1:
            return self
        return Poly.wrap(self.rep.monic())

    def compose_affine(self, a: Scalar, b: Scalar) -> "Poly":
        """Return g with g(s) = f(a*s + b)."""
        if self.degree == NEG_INF or self.degree == 0:
            return self
        return Poly.wrap(self.rep.compose(_sympy_poly((_frac(b), _frac(a)))))

    def substitute(self, modulus: int, residue: int) -> "Poly":
        return self.compose_affine(modulus, residue)

    def integer_form(self) -> Tuple[Tuple[int, ...], int]:
        """Return (p, D) with p integral, D a positive integer and self = p / D."""
        if self.is_zero():
            return (), 1
        denom, cleared = self.rep.clear_denoms(convert=True)
        return tuple(int(c) for c in reversed(cleared.all_coeffs())), int(denom)

    def to_string(self, var: str = "t") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                power = var if k == 1 else f"{var}^{k}"
                body = power if mag == 1 else f"{mag}*{power}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __str__(self) -> str:
        return self.to_string()

    def __repr__(self) -> str:
        return f"Poly([{', '.join(str(c) for c in self.coeffs)}])"


PolyLike = Union[Poly, int, Fraction]


def as_poly(value: PolyLike) -> Poly:
    coerced = Poly._coerce(value)
    if coerced is None:
        raise TypeError(f"cannot interpret {value!r} as a polynomial")
    return coerced


def poly_divmod(f: Poly, h: Poly) -> Tuple[Poly, Poly]:
    """Division with remainder over Q: f = q*h + r with deg r < deg h."""
    f, h = as_poly(f), as_poly(h)
    if h.is_zero():
        raise DivByZero("polynomial division by zero")
    q, r = f.rep.div(h.rep)
    return Poly.wrap(q), Poly.wrap(r)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor in Q[t]; gcd(0, 0) = 0."""
    a, b = as_poly(a), as_poly(b)
    if a.is_zero() and b.is_zero():
        return Poly()
    return Poly.wrap(a.rep.gcd(b.rep)).monic()


def poly_lcm(a: Poly, b: Poly) -> Poly:
    """Monic least common multiple in Q[t]; zero if either argument is."""
    a, b = as_poly(a), as_poly(b)
    if a.is_zero() or b.is_zero():
        return Poly()
    return Poly.wrap(a.rep.lcm(b.rep)).monic()


class RatFunc:
    """Element of Q(t) kept in canonical form: coprime, monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: PolyLike, den: Optional[PolyLike] = None):
        num = as_poly(num)
        den = Poly.one() if den is None else as_poly(den)
        if den.is_zero():
            raise DivByZero("rational function with zero denominator")
        if num.is_zero():
            self.num, self.den = Poly(), Poly.one()
            return
        if den.degree > 0:
            p, q = num.rep.cancel(den.rep, include=True)
            num, den = Poly.wrap(p), Poly.wrap(q)
        lead = den.lc
        if lead != 1:
            num = num * (1 / lead)
            den = den * (1 / lead)
        self.num, self.den = num, den

    @classmethod
    def zero(cls) -> "RatFunc":
        return cls(Poly())

    @classmethod
    def one(cls) -> "RatFunc":
        return cls(Poly.one())

    @staticmethod
    def _coerce(other) -> Optional["RatFunc"]:
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, (Poly, int, Fraction)):
            return RatFunc(other)
        return None

    @property
    def degree(self):
        if self.num.is_zero():
            return NEG_INF
        return self.num.degree - self.den.degree

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        out = RatFunc.__new__(RatFunc)
        out.num, out.den = -self.num, self.den
        return out

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return RatFunc.zero()
            out = RatFunc.__new__(RatFunc)
            out.num, out.den = self.num * other, self.den
            return out
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            raise DivByZero("division by the zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash(("RatFunc", self.num.coeffs, self.den.coeffs))

    def __call__(self, x) -> Fraction:
        d = self.den(x)
        if d == 0:
            raise DivByZero(f"rational function has a pole at t = {x}")
        return self.num(x) / d

    def compose_affine(self, a: Scalar, b: Scalar) -> "RatFunc":
        return RatFunc(self.num.compose_affine(a, b), self.den.compose_affine(a, b))

    def substitute(self, modulus: int, residue: int) -> "RatFunc":
        return self.compose_affine(modulus, residue)

    def limit(self):
        """Limit as t -> infinity: a Fraction, or +/-inf for positive degree."""
        deg = self.degree
        if deg == NEG_INF or deg < 0:
            return Fraction(0)
        ratio = self.num.lc / self.den.lc
        if deg == 0:
            return ratio
        return float("inf") if ratio > 0 else float("-inf")

    def to_string(self, var: str = "t") -> str:
        if self.is_polynomial():
            return self.num.to_string(var)
        return f"({self.num.to_string(var)}) / ({self.den.to_string(var)})"

    def __str__(self) -> str:
        return self.to_string()

    def __repr__(self) -> str:
        return f"RatFunc({self.num!r}, {self.den!r})"


def substitute(f: Poly, modulus: int, residue: int) -> Poly:
    """g(s) = f(M*s + r)."""
    if modulus < 1 or not 0 <= residue < modulus:
        raise ValueError(f"need M >= 1 and 0 <= r < M, got M={modulus}, r={residue}")
    return as_poly(f).substitute(modulus, residue)


# eventual sign certificates

def cauchy_bound(coeffs: Sequence) -> int:
    """ceil(1 + max_k |a_k / a_d|): every real root lies strictly below it."""
    lead = abs(coeffs[-1])
    top = max((abs(c) for c in coeffs[:-1]), default=0)
    return 1 + math.ceil(Fraction(top) / lead)


def _integral(coeffs: Sequence) -> Tuple[int, ...]:
    denom = 1
    for c in coeffs:
        d = getattr(c, "denominator", 1)
        denom = denom * d // math.gcd(denom, d)
    return tuple(int(c * denom) for c in coeffs)


def _horner(coeffs: Sequence[int], x: int) -> int:
    result = 0
    for c in reversed(coeffs):
        result = result * x + c
    return result


def _default_limit() -> int:
    from config import get_settings

    return get_settings().tighten_limit


def _walk_down(coeffs: Sequence, start: int, holds: Callable[[int], bool], limit: Optional[int]) -> int:
    ints = _integral(coeffs)
    steps_left = _default_limit() if limit is None else limit
    threshold = start
    while threshold > 0 and steps_left > 0 and holds(_horner(ints, threshold - 1)):
        threshold -= 1
        steps_left -= 1
    return threshold


def poly_eventual_sign(coeffs: Sequence, limit: Optional[int] = None) -> Tuple[int, int]:
    """Sign and threshold for a raw coefficient sequence (trailing zeros stripped)."""
    if not coeffs:
        return 0, 0
    sign = _sign(coeffs[-1])
    if len(coeffs) == 1:
        return sign, 0
    start = cauchy_bound(coeffs)
    return sign, _walk_down(coeffs, start, lambda v: _sign(v) == sign, limit)


def eventual_sign(f: Union[Poly, RatFunc], limit: Optional[int] = None) -> Tuple[int, int]:
    """Return (s, T) such that sign(f(t)) = s for every integer t >= T."""
    if isinstance(f, RatFunc):
        s_num, t_num = poly_eventual_sign(f.num.coeffs, limit)
        if s_num == 0:
            return 0, 0
        s_den, t_den = poly_eventual_sign(f.den.coeffs, limit)
        return s_num * s_den, max(t_num, t_den)
    return poly_eventual_sign(as_poly(f).coeffs, limit)


def eventually_nonnegative(coeffs: Sequence, limit: Optional[int] = None) -> int:
    """Threshold T with p(t) >= 0 for every integer t >= T; p must have lc > 0 or be 0."""
    if not coeffs:
        return 0
    if coeffs[-1] < 0:
        raise ValueError("polynomial is eventually negative")
    if len(coeffs) == 1:
        return 0
    return _walk_down(coeffs, cauchy_bound(coeffs), lambda v: v >= 0, limit)


def eventual_compare(f, g, limit: Optional[int] = None) -> Tuple[Ordering, int]:
    """Eventual ordering of f(t) against g(t), with the threshold it holds from."""
    f, g = RatFunc._coerce(f), RatFunc._coerce(g)
    if f == g:
        return Ordering.EQ, 0
    sign, threshold = eventual_sign(f - g, limit)
    for den in (f.den, g.den):
        threshold = max(threshold, poly_eventual_sign(den.coeffs, limit)[1])
    return Ordering(sign), threshold
