"""Exact scalars: rationals and elements of one real quadratic field Q(sqrt(D))."""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Union

import mpmath

from tiling.errors import DivisionByZero, MixedRadicals, ScalarParseError

_ZERO = Fraction(0)
_ONE = Fraction(1)


@lru_cache(maxsize=4096)
def squarefree_split(n: int) -> tuple[int, int]:
    """Return ``(k, core)`` with ``n == k * k * core`` and ``core`` square-free."""
    if n <= 0:
        raise ValueError(f"radicand must be positive, got {n}")
    k = 1
    p = 2
    while p * p <= n:
        while n % (p * p) == 0:
            n //= p * p
            k *= p
        p += 1
    return k, n


class QuadScalar:
    """``a + b*sqrt(d)`` with rational ``a, b`` and square-free ``d``.

    Rational values always carry ``b == 0`` and ``d == 0``, so equality and
    hashing agree with :class:`fractions.Fraction`. Arithmetic between two
    irrational values needs the same radical, otherwise :class:`MixedRadicals`.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a=0, b=0, d: int = 0):
        a = Fraction(a)
        b = Fraction(b)
        d = int(d)
        if d < 0:
            raise ValueError("radicand must be non-negative")
        if b and d:
            k, d = squarefree_split(d)
            b *= k
            if d == 1:
                a += b
                b = _ZERO
        if not b or not d:
            b, d = _ZERO, 0
        self.a = a
        self.b = b
        self.d = d

    @classmethod
    def _make(cls, a: Fraction, b: Fraction, d: int) -> "QuadScalar":
        obj = object.__new__(cls)
        if b and d:
            obj.a, obj.b, obj.d = a, b, d
        else:
            obj.a, obj.b, obj.d = a, _ZERO, 0
        return obj

    @classmethod
    def rational(cls, value) -> "QuadScalar":
        return cls._make(Fraction(value), _ZERO, 0)

    # -- inspection ---------------------------------------------------------
    @property
    def is_rational(self) -> bool:
        return not self.b

    def as_fraction(self) -> Fraction:
        if self.b:
            raise ValueError(f"{self} is not rational")
        return self.a

    def conjugate(self) -> "QuadScalar":
        return QuadScalar._make(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        """Field norm ``a^2 - d*b^2``."""
        return self.a * self.a - self.d * self.b * self.b

    # -- arithmetic ---------------------------------------------------------
    @staticmethod
    def _radical(x: "QuadScalar", y: "QuadScalar") -> int:
        if not x.d:
            return y.d
        if not y.d or x.d == y.d:
            return x.d
        raise MixedRadicals(x.d, y.d)

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        d = QuadScalar._radical(self, other)
        return QuadScalar._make(self.a + other.a, self.b + other.b, d)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        d = QuadScalar._radical(self, other)
        return QuadScalar._make(self.a - other.a, self.b - other.b, d)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not self.b and not other.b:
            return QuadScalar._make(self.a * other.a, _ZERO, 0)
        d = QuadScalar._radical(self, other)
        a = self.a * other.a + self.b * other.b * d
        b = self.a * other.b + self.b * other.a
        return QuadScalar._make(a, b, d)

    __rmul__ = __mul__

    def inverse(self) -> "QuadScalar":
        if not self.b:
            if not self.a:
                raise DivisionByZero("division by zero")
            return QuadScalar._make(1 / self.a, _ZERO, 0)
        n = self.norm()
        return QuadScalar._make(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __neg__(self):
        return QuadScalar._make(-self.a, -self.b, self.d)

    def __pos__(self):
        return self

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = QuadScalar._make(_ONE, _ZERO, 0)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- ordering -----------------------------------------------------------
    def sign(self) -> int:
        """Exact sign, deciding ``a + b*sqrt(d)`` by comparing squares."""
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: the larger of a^2 and d*b^2 wins
        lhs = self.a * self.a
        rhs = self.d * self.b * self.b
        return sa if lhs > rhs else sb

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def _cmp(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            # unknown bounds such as portion's infinities answer the reflected comparison
            return NotImplemented
        if not self.b and not other.b:
            return (self.a > other.a) - (self.a < other.a)
        return (self - other).sign()

    def __lt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c >= 0

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.a == other.a and self.b == other.b and self.d == other.d

    def __hash__(self):
        if not self.b:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    # -- rounding -----------------------------------------------------------
    def floor(self) -> int:
        if not self.b:
            return math.floor(self.a)
        den = math.lcm(self.a.denominator, self.b.denominator)
        n1 = self.a.numerator * (den // self.a.denominator)
        n2 = self.b.numerator * (den // self.b.denominator)
        # n2*sqrt(d) is irrational, so it lies strictly between integers
        r = math.isqrt(n2 * n2 * self.d)
        f = r if n2 > 0 else -r - 1
        return (n1 + f) // den

    def ceil(self) -> int:
        return -((-self).floor())

    def round_half_up(self) -> int:
        return (self + Fraction(1, 2)).floor()

    def __floor__(self):
        return self.floor()

    def __ceil__(self):
        return self.ceil()

    # -- conversions --------------------------------------------------------
    def to_mpf(self) -> mpmath.mpf:
        value = mpmath.mpf(self.a.numerator) / self.a.denominator
        if self.b:
            value += mpmath.mpf(self.b.numerator) / self.b.denominator * mpmath.sqrt(self.d)
        return value

    def __float__(self):
        if not self.b:
            return float(self.a)
        return float(self.to_mpf())

    def __str__(self):
        if not self.b:
            return str(self.a)
        if self.b == 1:
            tail = f"sqrt({self.d})"
        elif self.b == -1:
            tail = f"-sqrt({self.d})"
        else:
            tail = f"{self.b}*sqrt({self.d})"
        if not self.a:
            return tail
        sep = "" if tail.startswith("-") else "+"
        return f"{self.a}{sep}{tail}"

    def __repr__(self):
        return f"QuadScalar({str(self)!r})"


ScalarLike = Union[QuadScalar, Fraction, int]


def _coerce(value):
    if isinstance(value, QuadScalar):
        return value
    if isinstance(value, (int, Fraction)):
        return QuadScalar._make(Fraction(value), _ZERO, 0)
    return NotImplemented


def as_scalar(value) -> QuadScalar:
    """Convert ints, Fractions, QuadScalars or scalar strings to a QuadScalar."""
    if isinstance(value, str):
        return parse_scalar(value)
    if isinstance(value, float):
        # JSON floats are read by their decimal text, never by binary value
        return QuadScalar.rational(Fraction(repr(value)))
    coerced = _coerce(value)
    if coerced is NotImplemented:
        raise TypeError(f"not a scalar: {value!r}")
    return coerced


def qs_sqrt(value) -> QuadScalar:
    """Exact square root of a non-negative rational."""
    r = Fraction(value.as_fraction() if isinstance(value, QuadScalar) else value)
    if r < 0:
        raise ValueError(f"square root of negative rational {r}")
    if not r:
        return QuadScalar.rational(0)
    return QuadScalar(0, Fraction(1, r.denominator), r.numerator * r.denominator)


ZERO = QuadScalar.rational(0)
ONE = QuadScalar.rational(1)


# -- parsing ------------------------------------------------------------------

class _Parser:
    """Recursive descent over ``+ - * / ( )``, decimals and ``sqrt(...)``."""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str, pos: int | None = None) -> ScalarParseError:
        return ScalarParseError(message, self.text, self.pos if pos is None else pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            raise self.error(f"expected {ch!r}")
        self.pos += 1

    def parse(self) -> QuadScalar:
        if not self.text.strip():
            raise self.error("empty scalar", 0)
        value = self.expr()
        if self.peek():
            raise self.error(f"unexpected {self.peek()!r}")
        return value

    def expr(self) -> QuadScalar:
        value = self.term()
        while self.peek() in ("+", "-"):
            op = self.text[self.pos]
            self.pos += 1
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> QuadScalar:
        value = self.unary()
        while self.peek() in ("*", "/"):
            op = self.text[self.pos]
            at = self.pos
            self.pos += 1
            rhs = self.unary()
            if op == "*":
                value = value * rhs
            else:
                if not rhs:
                    raise self.error("division by zero", at)
                value = value / rhs
        return value

    def unary(self) -> QuadScalar:
        ch = self.peek()
        if ch in ("+", "-"):
            self.pos += 1
            operand = self.unary()
            return -operand if ch == "-" else operand
        return self.atom()

    def atom(self) -> QuadScalar:
        ch = self.peek()
        start = self.pos
        if ch == "(":
            self.pos += 1
            value = self.expr()
            self.expect(")")
            return value
        if ch == "√":
            self.pos += 1
            return self._root(self.atom(), start)
        if self.text.startswith("sqrt", self.pos):
            self.pos += 4
            self.expect("(")
            inner = self.expr()
            self.expect(")")
            return self._root(inner, start)
        if ch.isdigit() or ch == ".":
            return self.number()
        if not ch:
            raise self.error("unexpected end of input")
        raise self.error(f"unexpected {ch!r}")

    def _root(self, inner: QuadScalar, at: int) -> QuadScalar:
        if not inner.is_rational:
            raise self.error("sqrt argument must be rational", at)
        if inner < 0:
            raise self.error("sqrt of a negative number", at)
        return qs_sqrt(inner.a)

    def number(self) -> QuadScalar:
        start = self.pos
        while self.pos < len(self.text) and (self.text[self.pos].isdigit() or self.text[self.pos] == "."):
            self.pos += 1
        token = self.text[start:self.pos]
        if token.count(".") > 1 or token == ".":
            raise self.error(f"malformed number {token!r}", start)
        return QuadScalar.rational(Fraction(token))


def parse_scalar(text: str) -> QuadScalar:
    """Parse strings such as ``"3/2"``, ``"0.25"`` or ``"-1/2+1/2*sqrt(3)"``."""
    return _Parser(text).parse()
