"""Univariate polynomials and rational functions over the Gaussian rationals.

The variable is a formal parameter (written eps) used to take exact limits
and derivatives; :class:`PolyEps` doubles as a polynomial in a spectral
variable for the Hermite interpolants.
"""

from fractions import Fraction

from gmpy2 import mpq

from ..errors import DivisionByZero, PoleAtZero
from .gaussian import ONE, ZERO, GaussianRational

_SCALARS = (int, Fraction, type(mpq(0)))


def _trim(coeffs):
    coeffs = list(coeffs)
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return tuple(coeffs)


class PolyEps:
    """Polynomial with :class:`GaussianRational` coefficients, lowest power first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        self.coeffs = _trim(GaussianRational.coerce(c) for c in coeffs)

    @classmethod
    def _make(cls, coeffs):
        obj = object.__new__(cls)
        obj.coeffs = coeffs
        return obj

    @classmethod
    def constant(cls, value):
        value = GaussianRational.coerce(value)
        return cls._make((value,) if value else ())

    @property
    def degree(self):
        """Degree of the polynomial; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, PolyEps):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"PolyEps([{', '.join(str(c) for c in self.coeffs)}])"

    def __getitem__(self, k):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else ZERO

    def lc(self):
        return self.coeffs[-1]

    def __add__(self, other):
        if not isinstance(other, PolyEps):
            other = PolyEps.constant(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, v in enumerate(b):
            out[k] = out[k] + v
        return PolyEps._make(_trim(out))

    __radd__ = __add__

    def __neg__(self):
        return PolyEps._make(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        if not isinstance(other, PolyEps):
            other = PolyEps.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return PolyEps.constant(other) - self

    def __mul__(self, other):
        if not isinstance(other, PolyEps):
            other = GaussianRational.coerce(other)
            if not other:
                return PolyEps._make(())
            return PolyEps._make(tuple(c * other for c in self.coeffs))
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return PolyEps._make(())
        out = [ZERO] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
        return PolyEps._make(_trim(out))

    __rmul__ = __mul__

    def scale(self, value):
        return self * value

    def monic(self):
        if not self.coeffs:
            return self
        lead = self.coeffs[-1]
        if lead == 1:
            return self
        inv = lead.inverse()
        return PolyEps._make(tuple(c * inv for c in self.coeffs))

    def __divmod__(self, other):
        if not other:
            raise DivisionByZero("polynomial division by zero")
        rem = list(self.coeffs)
        dv = other.coeffs
        dlen = len(dv)
        if len(rem) < dlen:
            return PolyEps._make(()), self
        inv_lead = dv[-1].inverse()
        quot = [ZERO] * (len(rem) - dlen + 1)
        for k in range(len(rem) - dlen, -1, -1):
            q = rem[k + dlen - 1] * inv_lead
            quot[k] = q
            if q:
                for j in range(dlen):
                    rem[k + j] = rem[k + j] - q * dv[j]
        return PolyEps._make(_trim(quot)), PolyEps._make(_trim(rem[: dlen - 1]))

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def derivative(self):
        return PolyEps._make(
            _trim(c * k for k, c in enumerate(self.coeffs) if k)
        )

    def __call__(self, x):
        """Horner evaluation at ``x``; ``x`` may be any supported field element."""
        result = ZERO
        for c in reversed(self.coeffs):
            result = result * x + c
        return result


def poly_gcd(a, b):
    """Monic greatest common divisor (the zero polynomial only for gcd(0, 0))."""
    if a.degree == 0 or b.degree == 0:
        return PolyEps._make((ONE,))
    while b:
        a, b = b, (a % b).monic()
        if b.degree == 0:
            return PolyEps._make((ONE,))
    return a.monic()


_P_ONE = PolyEps._make((ONE,))
_P_ZERO = PolyEps._make(())


class RationalFunctionEps:
    """Reduced quotient of two :class:`PolyEps` with a monic denominator.

    >>> e = RationalFunctionEps.eps()
    >>> (e * e - 1) / (e - 1) == e + 1
    True
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None):
        if not isinstance(num, PolyEps):
            num = PolyEps.constant(num)
        if den is None:
            den = _P_ONE
        elif not isinstance(den, PolyEps):
            den = PolyEps.constant(den)
        if not den:
            raise DivisionByZero("zero denominator")
        g = poly_gcd(num, den) if num else den
        if g.degree > 0:
            num, den = num // g, den // g
        elif not num:
            den = _P_ONE
        self._set(*_monic_pair(num, den))

    def _set(self, num, den):
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def _make(cls, num, den):
        obj = object.__new__(cls)
        obj._set(num, den)
        return obj

    @classmethod
    def from_factored(cls, num, factors):
        """``num`` over the product of ``factors``, reduced factor by factor.

        Each gcd is taken against one small factor, which avoids a single
        Euclidean run on the full-degree pair.
        """
        if not num:
            return cls._make(_P_ZERO, _P_ONE)
        den = _P_ONE
        for d in factors:
            while d.degree > 0:
                g = poly_gcd(num, d)
                if g.degree <= 0:
                    break
                num, d = num // g, d // g
            den = den * d
        return cls._make(*_monic_pair(num, den))

    @classmethod
    def eps(cls):
        return cls._make(PolyEps._make((ZERO, ONE)), _P_ONE)

    @classmethod
    def constant(cls, value):
        return cls._make(PolyEps.constant(value), _P_ONE)

    @classmethod
    def coerce(cls, value):
        if isinstance(value, RationalFunctionEps):
            return value
        if isinstance(value, PolyEps):
            return cls._make(value, _P_ONE)
        return cls.constant(value)

    def __repr__(self):
        if self.den.degree == 0:
            return f"RationalFunctionEps({self.num!r})"
        return f"RationalFunctionEps({self.num!r}, {self.den!r})"

    def __bool__(self):
        return bool(self.num)

    def is_constant(self):
        return self.num.degree <= 0 and self.den.degree == 0

    def __eq__(self, other):
        if isinstance(other, RationalFunctionEps):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (GaussianRational,) + _SCALARS):
            return self.den.degree == 0 and self.num == PolyEps.constant(other)
        return NotImplemented

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __hash__(self):
        h = self._hash
        if h is None:
            if self.is_constant():
                h = hash(self.num[0])
            else:
                h = hash((self.num.coeffs, self.den.coeffs))
            self._hash = h
        return h

    # --- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, RationalFunctionEps):
            if isinstance(other, (GaussianRational,) + _SCALARS):
                other = RationalFunctionEps.constant(other)
            else:
                return NotImplemented
        if not other.num:
            return self
        if not self.num:
            return other
        a, b, c, d = self.num, self.den, other.num, other.den
        if b == d:
            if b.degree == 0:
                return RationalFunctionEps._make(a + c, b)
            return RationalFunctionEps(a + c, b)
        if b.degree == 0 and d.degree == 0:
            return RationalFunctionEps._make(a + c, _P_ONE)
        return RationalFunctionEps(a * d + c * b, b * d)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunctionEps._make(-self.num, self.den)

    def __sub__(self, other):
        if not isinstance(other, RationalFunctionEps):
            if isinstance(other, (GaussianRational,) + _SCALARS):
                other = RationalFunctionEps.constant(other)
            else:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, RationalFunctionEps):
            if isinstance(other, (GaussianRational,) + _SCALARS):
                other = GaussianRational.coerce(other)
                if not other:
                    return RationalFunctionEps._make(_P_ZERO, _P_ONE)
                return RationalFunctionEps._make(self.num * other, self.den)
            return NotImplemented
        a, b, c, d = self.num, self.den, other.num, other.den
        if not a or not c:
            return RationalFunctionEps._make(_P_ZERO, _P_ONE)
        # cross-cancel; inputs are already reduced so the result is too
        g1 = poly_gcd(a, d)
        if g1.degree > 0:
            a, d = a // g1, d // g1
        g2 = poly_gcd(c, b)
        if g2.degree > 0:
            c, b = c // g2, b // g2
        return RationalFunctionEps._make(*_monic_pair(a * c, b * d))

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise DivisionByZero("inverse of the zero rational function")
        return RationalFunctionEps._make(*_monic_pair(self.den, self.num))

    def __truediv__(self, other):
        if not isinstance(other, RationalFunctionEps):
            if isinstance(other, (GaussianRational,) + _SCALARS):
                other = GaussianRational.coerce(other)
                if not other:
                    raise DivisionByZero("division by zero")
                return RationalFunctionEps._make(self.num * other.inverse(), self.den)
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = RationalFunctionEps._make(_P_ONE, _P_ONE)
        for _ in range(n):
            result = result * self
        return result

    def __call__(self, x):
        """Evaluate at a Gaussian rational point."""
        d = self.den(x)
        if not d:
            raise DivisionByZero(f"pole at {x}")
        return self.num(x) / d


def _monic_pair(num, den):
    lead = den.lc()
    if lead == 1:
        return num, den
    inv = lead.inverse()
    return num * inv, den * inv


def eval_at_eps_zero(r):
    """Value of ``r`` at eps = 0; raises :class:`PoleAtZero` on a genuine pole."""
    if isinstance(r, GaussianRational):
        return r
    r = RationalFunctionEps.coerce(r)
    d0 = r.den[0]
    if not d0:
        raise PoleAtZero(f"{r!r} has a pole at eps = 0")
    return r.num[0] / d0


def first_derivative_at_zero(r):
    """Coefficient of eps in the Taylor expansion of ``r`` about 0."""
    if isinstance(r, GaussianRational):
        return ZERO
    r = RationalFunctionEps.coerce(r)
    d0 = r.den[0]
    if not d0:
        raise PoleAtZero(f"{r!r} has a pole at eps = 0")
    return (r.num[1] * d0 - r.num[0] * r.den[1]) / (d0 * d0)


EPS = RationalFunctionEps.eps()
