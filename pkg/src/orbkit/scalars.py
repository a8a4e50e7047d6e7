"""Exact arithmetic in Q and real quadratic fields Q(sqrt(d)).

Every scalar in orbkit is a :class:`NumberFieldElement` ``a + b*sqrt(d)`` with
rational ``a``, ``b`` and a square-free tag ``d >= 1``; ``d == 1`` encodes Q.
Python ints and Fractions are accepted as operands and coerced into the field
of the other operand.  Two elements with different tags never combine.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache

from .errors import MixedFields, NoSquareRootInField

__all__ = ["NumberFieldElement", "Field", "field_arith", "sqrt_in_field", "parse_scalar",
           "is_square_free", "rational_sqrt", "QQ"]

Rational = (int, Fraction)


@lru_cache(maxsize=None)
def is_square_free(d: int) -> bool:
    if d < 1:
        return False
    k = 2
    while k * k <= d:
        if d % (k * k) == 0:
            return False
        k += 1
    return True


def rational_sqrt(q: Fraction):
    """Nonnegative rational square root of ``q`` or ``None``."""
    q = Fraction(q)
    if q < 0:
        return None
    n, m = q.numerator, q.denominator
    rn, rm = math.isqrt(n), math.isqrt(m)
    if rn * rn == n and rm * rm == m:
        return Fraction(rn, rm)
    return None


class NumberFieldElement:
    __slots__ = ("a", "b", "d")

    def __init__(self, a=0, b=0, d: int = 1):
        a = a if type(a) is Fraction else Fraction(a)
        b = b if type(b) is Fraction else Fraction(b)
        if d != 1 and not is_square_free(d):
            raise ValueError(f"field tag must be square-free and >= 1, got {d}")
        if d == 1 and b:
            a, b = a + b, Fraction(0)
        self.a = a
        self.b = b
        self.d = d

    @classmethod
    def _raw(cls, a: Fraction, b: Fraction, d: int) -> NumberFieldElement:
        x = object.__new__(cls)
        x.a, x.b, x.d = a, b, d
        return x

    # -- coercion -------------------------------------------------------
    def _coerce(self, other) -> NumberFieldElement:
        if isinstance(other, NumberFieldElement):
            if other.d != self.d:
                raise MixedFields(f"cannot combine elements of Q(sqrt({self.d})) and Q(sqrt({other.d}))")
            return other
        if isinstance(other, Rational):
            return NumberFieldElement._raw(Fraction(other), Fraction(0), self.d)
        return NotImplemented

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return NumberFieldElement._raw(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return NumberFieldElement._raw(self.a - o.a, self.b - o.b, self.d)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __neg__(self):
        return NumberFieldElement._raw(-self.a, -self.b, self.d)

    def __pos__(self):
        return self

    def __mul__(self, other):
        if isinstance(other, Rational):
            q = Fraction(other)
            return NumberFieldElement._raw(self.a * q, self.b * q, self.d)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if not self.b and not o.b:
            return NumberFieldElement._raw(self.a * o.a, Fraction(0), self.d)
        return NumberFieldElement._raw(self.a * o.a + self.d * self.b * o.b,
                                       self.a * o.b + self.b * o.a, self.d)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.a * self.a - self.d * self.b * self.b

    def conjugate(self) -> NumberFieldElement:
        return NumberFieldElement._raw(self.a, -self.b, self.d)

    def inverse(self) -> NumberFieldElement:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in number field")
        return NumberFieldElement._raw(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = NumberFieldElement._raw(Fraction(1), Fraction(0), self.d)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- comparison -----------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, NumberFieldElement):
            if other.d != self.d:
                # elements of different fields compare equal only when both are rational
                return not self.b and not other.b and self.a == other.a
            return self.a == other.a and self.b == other.b
        if isinstance(other, Rational):
            return not self.b and self.a == other
        return NotImplemented

    def __hash__(self):
        if not self.b:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def sign(self) -> int:
        """Sign of the real number ``a + b*sqrt(d)`` with ``sqrt(d) > 0``."""
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        return sa if self.a * self.a > self.d * self.b * self.b else sb

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    # -- misc -----------------------------------------------------------
    def is_rational(self) -> bool:
        return not self.b

    def __str__(self):
        if not self.b:
            return str(self.a)
        rad = f"sqrt({self.d})" if self.b == 1 else f"{self.b}*sqrt({self.d})"
        if self.b == -1:
            rad = f"-sqrt({self.d})"
        if not self.a:
            return rad
        return f"{self.a}{'' if rad.startswith('-') else '+'}{rad}"

    def __repr__(self):
        return f"NumberFieldElement({self})" if self.d == 1 else f"NumberFieldElement({self}, d={self.d})"


class Field:
    """The field Q(sqrt(d)); ``Field(1)`` is Q.  Used to lift rationals and parse text."""

    __slots__ = ("d",)

    def __init__(self, d: int = 1):
        if not is_square_free(d):
            raise ValueError(f"field tag must be square-free and >= 1, got {d}")
        self.d = d

    def __call__(self, x=0, b=0) -> NumberFieldElement:
        if isinstance(x, NumberFieldElement):
            if x.d == self.d:
                return x
            if x.b:
                raise MixedFields(f"{x} does not lie in Q(sqrt({self.d}))")
            return NumberFieldElement._raw(x.a, Fraction(0), self.d)
        if isinstance(x, str):
            return parse_scalar(x, self.d)
        return NumberFieldElement(x, b, self.d)

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def sqrt_d(self) -> NumberFieldElement:
        return self(0, 1)

    def __eq__(self, other):
        return isinstance(other, Field) and other.d == self.d

    def __hash__(self):
        return hash(("Field", self.d))

    def __repr__(self):
        return "Field(Q)" if self.d == 1 else f"Field(Q(sqrt({self.d})))"


QQ = Field(1)


def field_arith(x: NumberFieldElement, y: NumberFieldElement, op: str) -> NumberFieldElement:
    """Apply ``op`` in {add, sub, mul, div}; raises ``MixedFields`` / ``ZeroDivisionError``."""
    if isinstance(x, NumberFieldElement) and isinstance(y, NumberFieldElement) and x.d != y.d:
        raise MixedFields(f"cannot combine elements of Q(sqrt({x.d})) and Q(sqrt({y.d}))")
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown field operation {op!r}")


def sqrt_in_field(x: NumberFieldElement) -> NumberFieldElement:
    """Square root of ``x`` inside its own field, choosing the nonnegative branch.

    Raises ``NoSquareRootInField`` when ``x`` is not a square there.
    """
    d = x.d
    F = Field(d)
    if x.sign() < 0:
        raise NoSquareRootInField(f"{x} is negative")
    if not x:
        return F(0)
    candidates = []
    if not x.b:
        r = rational_sqrt(x.a)
        if r is not None:
            candidates.append(F(r))
        if d != 1:
            r = rational_sqrt(x.a / d)
            if r is not None:
                candidates.append(F(0, r))
    else:
        # (p + q sqrt d)^2 = a + b sqrt d  =>  p^2 = (a +- sqrt(norm)) / 2, q = b / (2p)
        n = rational_sqrt(x.norm())
        if n is not None:
            for p2 in ((x.a + n) / 2, (x.a - n) / 2):
                p = rational_sqrt(p2)
                if p:
                    candidates.append(F(p, x.b / (2 * p)))
    for s in candidates:
        if s * s == x:
            return s if s.sign() >= 0 else -s
    raise NoSquareRootInField(f"{x} has no square root in {F!r}")


_TERM = re.compile(r"""
    \s*(?P<sign>[+-])?\s*
    (?:
        (?P<coef>\d+(?:/\d+)?)\s*(?:\*\s*(?P<rad1>sqrt\(\s*\d+\s*\)))?
      | (?P<rad2>sqrt\(\s*\d+\s*\))
    )\s*""", re.VERBOSE)


def parse_scalar(text, d: int = 1) -> NumberFieldElement:
    """Parse ``"a/b"`` or ``"a/b+c/e*sqrt(d)"`` (ints and bare ``sqrt(d)`` also allowed)."""
    F = Field(d)
    if isinstance(text, NumberFieldElement):
        return F(text)
    if isinstance(text, (int, Fraction)):
        return F(text)
    s = str(text).strip()
    if not s:
        raise ValueError("empty scalar")
    pos = 0
    a = Fraction(0)
    b = Fraction(0)
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse scalar {text!r}")
        sign = -1 if m.group("sign") == "-" else 1
        if pos and m.group("sign") is None:
            raise ValueError(f"cannot parse scalar {text!r}")
        rad = m.group("rad1") or m.group("rad2")
        coef = Fraction(m.group("coef")) if m.group("coef") else Fraction(1)
        if rad:
            rd = int(rad[rad.index("(") + 1:-1])
            if rd != d:
                raise MixedFields(f"sqrt({rd}) in a scalar tagged for Q(sqrt({d}))")
            b += sign * coef
        else:
            a += sign * coef
        pos = m.end()
    return F(a, b)
