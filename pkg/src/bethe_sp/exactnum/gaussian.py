"""Exact complex numbers with rational real and imaginary parts.

Components are ``gmpy2.mpq`` values, which are always kept in lowest terms
with a positive denominator.
"""

import re
from fractions import Fraction
from numbers import Rational

from gmpy2 import mpq

from ..errors import DivisionByZero, ParseError

_MPQ = type(mpq(0))
_ZERO = mpq(0)
_ONE = mpq(1)

_NUM = r"\d+(?:/\d+)?"
_TEXT_RE = re.compile(
    rf"(?:(?P<re>[+-]?{_NUM})(?=[+-]))?(?P<im>[+-]?(?:{_NUM})?)i"
)
_REAL_RE = re.compile(rf"[+-]?{_NUM}")


def _to_mpq(value):
    if isinstance(value, _MPQ):
        return value
    if isinstance(value, (int, Fraction)) or isinstance(value, Rational):
        return mpq(value.numerator, value.denominator)
    if isinstance(value, str):
        return _parse_rational(value)
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def _parse_rational(text, field=None):
    text = text.strip()
    if not _REAL_RE.fullmatch(text):
        raise ParseError(f"malformed rational {text!r}", field)
    num, _, den = text.partition("/")
    if den and int(den) == 0:
        raise ParseError(f"zero denominator in {text!r}", field)
    return mpq(int(num), int(den) if den else 1)


class GaussianRational:
    """An element of Q(i), immutable and hashable.

    >>> GaussianRational(1, 1) * GaussianRational(1, -1)
    GaussianRational('2')
    >>> GaussianRational.parse("-3/2+1/4i").im
    mpq(1,4)
    """

    __slots__ = ("re", "im", "_hash")

    def __init__(self, re=0, im=0):
        self.re = _to_mpq(re)
        self.im = _to_mpq(im)
        self._hash = None

    @classmethod
    def _make(cls, re, im):
        obj = object.__new__(cls)
        obj.re = re
        obj.im = im
        obj._hash = None
        return obj

    @classmethod
    def coerce(cls, value):
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, str):
            return cls.parse(value)
        if isinstance(value, complex):
            raise TypeError("floating complex values are not exact")
        return cls._make(_to_mpq(value), _ZERO)

    @classmethod
    def parse(cls, text, field=None):
        """Parse ``"p/q"``, ``"r/si"`` or ``"p/q+r/si"`` (signs optional)."""
        if not isinstance(text, str):
            raise ParseError(f"expected a string, got {type(text).__name__}", field)
        s = text.strip().replace(" ", "")
        if _REAL_RE.fullmatch(s):
            return cls._make(_parse_rational(s, field), _ZERO)
        m = _TEXT_RE.fullmatch(s)
        if m is None:
            raise ParseError(f"malformed Gaussian rational {text!r}", field)
        re_part = _parse_rational(m["re"], field) if m["re"] else _ZERO
        im_text = m["im"]
        if im_text in ("", "+"):
            im_part = _ONE
        elif im_text == "-":
            im_part = -_ONE
        else:
            im_part = _parse_rational(im_text, field)
        return cls._make(re_part, im_part)

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"

    def __repr__(self):
        return f"GaussianRational('{self}')"

    # --- field operations -------------------------------------------------

    def __add__(self, other):
        if isinstance(other, GaussianRational):
            return GaussianRational._make(self.re + other.re, self.im + other.im)
        if isinstance(other, (int, _MPQ, Fraction)):
            return GaussianRational._make(self.re + other, self.im)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, GaussianRational):
            return GaussianRational._make(self.re - other.re, self.im - other.im)
        if isinstance(other, (int, _MPQ, Fraction)):
            return GaussianRational._make(self.re - other, self.im)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, _MPQ, Fraction)):
            return GaussianRational._make(other - self.re, -self.im)
        return NotImplemented

    def __neg__(self):
        return GaussianRational._make(-self.re, -self.im)

    def __pos__(self):
        return self

    def __mul__(self, other):
        if isinstance(other, GaussianRational):
            a, b, c, d = self.re, self.im, other.re, other.im
            if not b and not d:
                return GaussianRational._make(a * c, _ZERO)
            return GaussianRational._make(a * c - b * d, a * d + b * c)
        if isinstance(other, (int, _MPQ, Fraction)):
            return GaussianRational._make(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def inverse(self):
        a, b = self.re, self.im
        if not b:
            if not a:
                raise DivisionByZero("inverse of zero")
            return GaussianRational._make(1 / a, _ZERO)
        n = a * a + b * b
        return GaussianRational._make(a / n, -b / n)

    def __truediv__(self, other):
        if isinstance(other, GaussianRational):
            c, d = other.re, other.im
            if not d:
                if not c:
                    raise DivisionByZero("division by zero")
                return GaussianRational._make(self.re / c, self.im / c)
            return self * other.inverse()
        if isinstance(other, (int, _MPQ, Fraction)):
            if not other:
                raise DivisionByZero("division by zero")
            return GaussianRational._make(self.re / other, self.im / other)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, _MPQ, Fraction)):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result, base = GaussianRational._make(_ONE, _ZERO), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self):
        return GaussianRational._make(self.re, -self.im)

    def norm2(self):
        """Squared modulus, an exact rational."""
        return self.re * self.re + self.im * self.im

    def height(self):
        """Largest absolute numerator or denominator among both components."""
        return max(
            abs(int(self.re.numerator)), int(self.re.denominator),
            abs(int(self.im.numerator)), int(self.im.denominator),
        )

    # --- comparisons --------------------------------------------------------

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, _MPQ, Fraction)):
            return not self.im and self.re == other
        return NotImplemented

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash(self.re) if not self.im else hash((self.re, self.im))
            self._hash = h
        return h

    def __reduce__(self):
        return (GaussianRational.parse, (str(self),))


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


def as_field(value):
    """Promote ints, rationals and strings to :class:`GaussianRational`.

    Values that already belong to a supported field pass through unchanged.
    """
    if isinstance(value, (int, _MPQ, Fraction, str)):
        return GaussianRational.coerce(value)
    return value
