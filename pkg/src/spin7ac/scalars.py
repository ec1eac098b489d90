"""Exact arithmetic in the real number field Q(sqrt5, sqrt581).

Every scalar in this package is an element

    a + b*sqrt(5) + c*sqrt(581) + d*sqrt(2905),        a, b, c, d in Q,

stored as four ``fractions.Fraction`` components.  The field is closed
under the four operations because sqrt(5)*sqrt(581) = sqrt(2905).  All
constants appearing in the rigidity computation (2/sqrt(5),
(sqrt5 - sqrt581)/5, (-55 + sqrt2905)/15, ...) live here, so the whole
pipeline runs without a single floating-point tolerance.

Sign determination is exact: the biquadratic structure lets us decide
sign(a + b*sqrt5) by comparing a^2 with 5 b^2, and then
sign(A + B*sqrt581) with A, B in Q(sqrt5) by comparing A^2 with 581 B^2.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

from .errors import InputError

RationalLike = Union[int, Fraction, str]

_SURD_KEYS = ("1", "sqrt5", "sqrt581", "sqrt2905")


def _frac(x: RationalLike) -> Fraction:
    if isinstance(x, float):
        raise InputError(f"refusing to coerce float {x!r} into an exact scalar")
    return Fraction(x)


def _sign_fraction(p: Fraction) -> int:
    return (p > 0) - (p < 0)


def _sign_q_sqrt5(p: Fraction, q: Fraction) -> int:
    """Exact sign of p + q*sqrt(5)."""
    if q == 0:
        return _sign_fraction(p)
    if p == 0:
        return _sign_fraction(q)
    if p > 0 and q > 0:
        return 1
    if p < 0 and q < 0:
        return -1
    # Opposite signs: |p| vs |q|*sqrt5 decided by squaring.  p^2 = 5 q^2
    # is impossible for rational p, q != 0, so cmp is never 0 here.
    cmp = _sign_fraction(p * p - 5 * q * q)
    if cmp == 0:  # pragma: no cover
        raise ArithmeticError(f"sqrt5 would be rational: p={p}, q={q}")
    return cmp if p > 0 else -cmp


def _sqrt_fraction(q: Fraction) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None."""
    if q < 0:
        return None
    num, den = q.numerator, q.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


class Scalar:
    """Immutable element of Q(sqrt5, sqrt581)."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(
        self,
        a: RationalLike = 0,
        b: RationalLike = 0,
        c: RationalLike = 0,
        d: RationalLike = 0,
    ) -> None:
        object.__setattr__(self, "a", _frac(a))
        object.__setattr__(self, "b", _frac(b))
        object.__setattr__(self, "c", _frac(c))
        object.__setattr__(self, "d", _frac(d))

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("Scalar is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def rational(cls, x: RationalLike) -> "Scalar":
        return cls(_frac(x))

    @classmethod
    def sqrt5(cls, coeff: RationalLike = 1) -> "Scalar":
        return cls(0, coeff)

    @classmethod
    def sqrt581(cls, coeff: RationalLike = 1) -> "Scalar":
        return cls(0, 0, coeff)

    @classmethod
    def sqrt2905(cls, coeff: RationalLike = 1) -> "Scalar":
        return cls(0, 0, 0, coeff)

    @classmethod
    def coerce(cls, x: "Scalar | RationalLike") -> "Scalar":
        if isinstance(x, Scalar):
            return x
        return cls(_frac(x))

    # -- ring structure -----------------------------------------------

    def __add__(self, other: "Scalar | RationalLike") -> "Scalar":
        o = Scalar.coerce(other)
        return Scalar(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        return Scalar(-self.a, -self.b, -self.c, -self.d)

    def __sub__(self, other: "Scalar | RationalLike") -> "Scalar":
        return self + (-Scalar.coerce(other))

    def __rsub__(self, other: "Scalar | RationalLike") -> "Scalar":
        return (-self) + other

    def __mul__(self, other: "Scalar | RationalLike") -> "Scalar":
        o = Scalar.coerce(other)
        a1, b1, c1, d1 = self.a, self.b, self.c, self.d
        a2, b2, c2, d2 = o.a, o.b, o.c, o.d
        # sqrt5^2 = 5, sqrt581^2 = 581, sqrt2905^2 = 2905,
        # sqrt5*sqrt581 = sqrt2905, sqrt5*sqrt2905 = 5 sqrt581,
        # sqrt581*sqrt2905 = 581 sqrt5.
        return Scalar(
            a1 * a2 + 5 * b1 * b2 + 581 * c1 * c2 + 2905 * d1 * d2,
            a1 * b2 + b1 * a2 + 581 * (c1 * d2 + d1 * c2),
            a1 * c2 + c1 * a2 + 5 * (b1 * d2 + d1 * b2),
            a1 * d2 + d1 * a2 + b1 * c2 + c1 * b2,
        )

    __rmul__ = __mul__

    def _conj_sqrt5(self) -> "Scalar":
        return Scalar(self.a, -self.b, self.c, -self.d)

    def _conj_sqrt581(self) -> "Scalar":
        return Scalar(self.a, self.b, -self.c, -self.d)

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise ZeroDivisionError("Scalar division by zero")
        # Product of the three nontrivial Galois conjugates.
        g1 = self._conj_sqrt5()
        g2 = self._conj_sqrt581()
        g3 = g1._conj_sqrt581()
        cofactor = g1 * g2 * g3
        norm = self * cofactor
        if not norm.is_rational() or norm.a == 0:  # pragma: no cover
            raise ArithmeticError("field norm must be a nonzero rational")
        return Scalar(
            cofactor.a / norm.a,
            cofactor.b / norm.a,
            cofactor.c / norm.a,
            cofactor.d / norm.a,
        )

    def __truediv__(self, other: "Scalar | RationalLike") -> "Scalar":
        return self * Scalar.coerce(other).inverse()

    def __rtruediv__(self, other: "Scalar | RationalLike") -> "Scalar":
        return Scalar.coerce(other) * self.inverse()

    def __pow__(self, n: int) -> "Scalar":
        if n < 0:
            return self.inverse() ** (-n)
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- predicates and order -----------------------------------------

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0 and self.c == 0 and self.d == 0

    def is_rational(self) -> bool:
        return self.b == 0 and self.c == 0 and self.d == 0

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise InputError(f"{self} is not rational")
        return self.a

    def sign(self) -> int:
        """Exact sign in {-1, 0, +1}, no floating point involved."""
        # Write self = A + B*sqrt581 with A = a + b sqrt5, B = c + d sqrt5.
        sa = _sign_q_sqrt5(self.a, self.b)
        sb = _sign_q_sqrt5(self.c, self.d)
        if sb == 0:
            return sa
        if sa == 0:
            return sb
        if sa == sb:
            return sa
        # A, B have opposite signs: compare A^2 with 581 B^2 in Q(sqrt5).
        # A^2 = (a^2 + 5 b^2) + 2ab sqrt5, B^2 = (c^2 + 5 d^2) + 2cd sqrt5.
        p = self.a * self.a + 5 * self.b * self.b - 581 * (self.c * self.c + 5 * self.d * self.d)
        q = 2 * (self.a * self.b - 581 * self.c * self.d)
        cmp = _sign_q_sqrt5(p, q)
        if cmp == 0:
            # |A| = sqrt581 |B| would put sqrt581 in Q(sqrt5).
            raise ArithmeticError("sqrt581 would lie in Q(sqrt5)")  # pragma: no cover
        return sa if cmp > 0 else sb

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Scalar.coerce(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return (
            self.a == other.a
            and self.b == other.b
            and self.c == other.c
            and self.d == other.d
        )

    def __hash__(self) -> int:
        return hash((self.a, self.b, self.c, self.d))

    def __lt__(self, other: "Scalar | RationalLike") -> bool:
        return (self - Scalar.coerce(other)).sign() < 0

    def __le__(self, other: "Scalar | RationalLike") -> bool:
        return (self - Scalar.coerce(other)).sign() <= 0

    def __gt__(self, other: "Scalar | RationalLike") -> bool:
        return (self - Scalar.coerce(other)).sign() > 0

    def __ge__(self, other: "Scalar | RationalLike") -> bool:
        return (self - Scalar.coerce(other)).sign() >= 0

    # -- conversions ---------------------------------------------------

    def __float__(self) -> float:
        return (
            float(self.a)
            + float(self.b) * math.sqrt(5.0)
            + float(self.c) * math.sqrt(581.0)
            + float(self.d) * math.sqrt(2905.0)
        )

    def __repr__(self) -> str:
        return f"Scalar({self.a!r}, {self.b!r}, {self.c!r}, {self.d!r})"

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for coeff, tag in zip((self.a, self.b, self.c, self.d), _SURD_KEYS):
            if coeff == 0:
                continue
            mag = coeff if coeff > 0 else -coeff
            if tag == "1":
                body = str(mag)
            elif mag == 1:
                body = tag
            else:
                body = f"{mag}*{tag}"
            if not parts:
                parts.append(body if coeff > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if coeff > 0 else f"- {body}")
        return " ".join(parts)

    # -- serialization -------------------------------------------------

    def to_json(self) -> dict[str, str]:
        out: dict[str, str] = {}
        for coeff, tag in zip((self.a, self.b, self.c, self.d), _SURD_KEYS):
            if coeff != 0:
                out[tag] = f"{coeff.numerator}/{coeff.denominator}"
        return out

    @classmethod
    def from_json(cls, obj: "dict[str, str] | str | int") -> "Scalar":
        if isinstance(obj, (str, int)):
            return cls.rational(obj)
        unknown = set(obj) - set(_SURD_KEYS)
        if unknown:
            raise InputError(f"unknown scalar keys {sorted(unknown)}")
        vals = [Fraction(obj.get(tag, "0")) for tag in _SURD_KEYS]
        return cls(*vals)


def sqrt_rational(q: Fraction) -> Scalar | None:
    """Square root of a nonnegative rational inside Q(sqrt5, sqrt581).

    Representable exactly iff q is s^2, 5 s^2, 581 s^2 or 2905 s^2 for
    rational s; returns None otherwise.
    """
    if q < 0:
        raise InputError("sqrt of a negative rational requested")
    root = _sqrt_fraction(q)
    if root is not None:
        return Scalar.rational(root)
    for divisor, ctor in ((5, Scalar.sqrt5), (581, Scalar.sqrt581), (2905, Scalar.sqrt2905)):
        root = _sqrt_fraction(q / divisor)
        if root is not None:
            return ctor(root)
    return None


ZERO = Scalar(0)
ONE = Scalar(1)
SQRT5 = Scalar.sqrt5()
SQRT581 = Scalar.sqrt581()
SQRT2905 = Scalar.sqrt2905()
