"""Exact scalar arithmetic over Q and real quadratic extensions Q(sqrt(d)).

Every coefficient in this package is an ``int``, a ``Fraction``, or a
``Quad`` (a + b*sqrt(d) with square-free d).  Floats never enter exact
computations; converting to float is always an explicit call.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import isqrt

Scalar = object  # int | Fraction | Quad, documented alias


def _square_free_split(n):
    """n > 0 as (s, f) with n = s * f**2 and s square-free."""
    s, f, p, m = 1, 1, 2, n
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            f *= p ** (e // 2)
            if e % 2:
                s *= p
        p += 1 if p == 2 else 2
    return s * m, f


class Quad:
    """a + b*sqrt(d) with rational a, b, b != 0, and square-free d > 1.

    Use the :func:`quad` factory; it demotes b == 0 to a Fraction and
    normalizes the radicand.  Mixing two different radicands raises, which
    keeps each computation inside a single quadratic field.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b, d):
        a, b = Fraction(a), Fraction(b)
        if b == 0:
            raise ValueError("Quad requires b != 0; use quad() to normalize")
        if d <= 1 or _square_free_split(d)[1] != 1:
            raise ValueError(f"radicand must be square-free and > 1, got {d}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", d)

    def __setattr__(self, *args):
        raise AttributeError("Quad is immutable")

    def _coerce(self, other):
        if isinstance(other, (int, Fraction)):
            return Fraction(other), Fraction(0)
        if isinstance(other, Quad):
            if other.d != self.d:
                raise ValueError(
                    f"incompatible radicands sqrt({self.d}) and sqrt({other.d})"
                )
            return other.a, other.b
        return None

    def __add__(self, other):
        co = self._coerce(other)
        if co is None:
            return NotImplemented
        return quad(self.a + co[0], self.b + co[1], self.d)

    __radd__ = __add__

    def __sub__(self, other):
        co = self._coerce(other)
        if co is None:
            return NotImplemented
        return quad(self.a - co[0], self.b - co[1], self.d)

    def __rsub__(self, other):
        co = self._coerce(other)
        if co is None:
            return NotImplemented
        return quad(co[0] - self.a, co[1] - self.b, self.d)

    def __mul__(self, other):
        co = self._coerce(other)
        if co is None:
            return NotImplemented
        x, y = co
        return quad(self.a * x + self.b * y * self.d, self.a * y + self.b * x, self.d)

    __rmul__ = __mul__

    def _inverse(self):
        n = self.a * self.a - self.b * self.b * self.d
        # n == 0 would force sqrt(d) rational, impossible for square-free d > 1
        return quad(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("scalar division by zero")
            return quad(self.a / other, self.b / other, self.d)
        if isinstance(other, Quad):
            return self * other._inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._inverse() * other
        return NotImplemented

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = Fraction(1)
        for _ in range(n):
            out = self * out
        return out

    def __neg__(self):
        return Quad(-self.a, -self.b, self.d)

    def __pos__(self):
        return self

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def sign(self):
        """Exact sign of a + b*sqrt(d)."""
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sa == 0:
            return sb
        if sa == sb:
            return sa
        # opposite signs: compare a^2 against d b^2
        return sa if self.a * self.a > self.d * self.b * self.b else sb

    def conjugate(self):
        return Quad(self.a, -self.b, self.d)

    def __eq__(self, other):
        if isinstance(other, Quad):
            return (self.a, self.b, self.d) == (other.a, other.b, other.d)
        if isinstance(other, (int, Fraction)):
            return False  # b != 0 makes the value irrational
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b, self.d))

    def __bool__(self):
        return True  # irrational, hence never zero

    def _cmp(self, other):
        diff = self - other
        return diff.sign() if isinstance(diff, Quad) else ((diff > 0) - (diff < 0))

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __float__(self):
        return float(self.a) + float(self.b) * self.d ** 0.5

    def __repr__(self):
        return format_scalar(self)


def quad(a, b, d):
    """Normalized a + b*sqrt(d): demotes b == 0, extracts square factors of d."""
    a, b = Fraction(a), Fraction(b)
    if d < 0:
        raise ValueError("negative radicand")
    s, f = _square_free_split(d) if d > 0 else (0, 0)
    b = b * f
    if b == 0 or s <= 1:
        return a + b * s if s else a
    return Quad(a, b, s)


def sqrt_scalar(x):
    """Exact square root of a nonnegative int or Fraction."""
    if isinstance(x, Quad):
        raise ValueError("square root of a quadratic irrational is not supported")
    x = Fraction(x)
    if x < 0:
        raise ValueError("square root of a negative scalar")
    if x == 0:
        return Fraction(0)
    # sqrt(p/q) = sqrt(p*q)/q
    n = x.numerator * x.denominator
    s, f = _square_free_split(n)
    return quad(0, Fraction(f, x.denominator), s)


def scalar_sign(x):
    if isinstance(x, Quad):
        return x.sign()
    return (x > 0) - (x < 0)


def scalar_float(x):
    return float(x)


def is_rational(x):
    return isinstance(x, (int, Fraction))


class Cx:
    """Complex scalar re + im*i with exact real and imaginary parts.

    Supports field arithmetic; used for complex matrix work (unitary Lie
    algebras, complex spinor representations).  No ordering.
    """

    __slots__ = ("re", "im")

    def __init__(self, re, im=0):
        object.__setattr__(self, "re", re if not isinstance(re, int) else Fraction(re))
        object.__setattr__(self, "im", im if not isinstance(im, int) else Fraction(im))

    def __setattr__(self, *args):
        raise AttributeError("Cx is immutable")

    def _coerce(self, other):
        if isinstance(other, Cx):
            return other
        if isinstance(other, (int, Fraction, Quad)):
            return Cx(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Cx(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Cx(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Cx(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = o.re * o.re + o.im * o.im
        if not n:
            raise ZeroDivisionError("complex scalar division by zero")
        return Cx(
            (self.re * o.re + self.im * o.im) / n,
            (self.im * o.re - self.re * o.im) / n,
        )

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return Cx(-self.re, -self.im)

    def conj(self):
        return Cx(self.re, -self.im)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"Cx({self.re!r}, {self.im!r})"


_RAT = r"[+-]?\d+(?:/\d+)?"
_TERM_RE = re.compile(
    rf"^(?:(?P<c1>{_RAT})\*)?sqrt\((?P<d>\d+)\)(?:\*(?P<c2>{_RAT}))?(?:/(?P<q>\d+))?$"
)


def _split_terms(text):
    """Split on top-level +/- into signed term strings."""
    terms, depth, start, sign = [], 0, 0, 1
    text = text.strip()
    if not text:
        raise ValueError("empty scalar")
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in "+-" and depth == 0 and i > start:
            if text[i - 1] not in "*/+-(":
                terms.append((sign, text[start:i].strip()))
                start, sign = i + 1, (1 if ch == "+" else -1)
    terms.append((sign, text[start:].strip()))
    return terms


def parse_scalar(text):
    """Parse 'p/q', 'p/q*sqrt(d)', 'sqrt(d)/m', or sums like '1/2+3*sqrt(5)'."""
    total = Fraction(0)
    for sign, term in _split_terms(text.replace(" ", "")):
        if not term:
            raise ValueError(f"malformed scalar {text!r}")
        neg = False
        while term and term[0] in "+-":
            neg ^= term[0] == "-"
            term = term[1:]
        if "sqrt" in term:
            m = _TERM_RE.match(term)
            if not m:
                raise ValueError(f"malformed radical term {term!r} in {text!r}")
            coeff = Fraction(1)
            if m.group("c1"):
                coeff *= Fraction(m.group("c1"))
            if m.group("c2"):
                coeff *= Fraction(m.group("c2"))
            if m.group("q"):
                coeff /= int(m.group("q"))
            val = quad(0, coeff, int(m.group("d")))
        else:
            val = Fraction(term)
        total = total + (-val if (neg ^ (sign < 0)) else val)
    return total


def format_scalar(x):
    """Canonical exact string; parse_scalar(format_scalar(x)) round-trips."""
    if isinstance(x, int):
        x = Fraction(x)
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, Quad):
        b = x.b
        rad = f"sqrt({x.d})" if abs(b) == 1 else f"{abs(b)}*sqrt({x.d})"
        rad = ("-" if b < 0 else "") + rad
        if x.a == 0:
            return rad
        joiner = "" if rad.startswith("-") else "+"
        return f"{x.a}{joiner}{rad}"
    raise TypeError(f"not an exact scalar: {x!r}")


def perfect_square_root(x):
    """Rational sqrt if x is a perfect rational square, else None."""
    if isinstance(x, Quad) or x < 0:
        return None
    x = Fraction(x)
    rn, rd = isqrt(x.numerator), isqrt(x.denominator)
    if rn * rn == x.numerator and rd * rd == x.denominator:
        return Fraction(rn, rd)
    return None
