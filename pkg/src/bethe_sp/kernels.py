"""Elementary rational kernels, product shorthand and Vandermonde-type factors.

All functions are generic over the exact fields of :mod:`bethe_sp.exactnum`:
arguments may be :class:`GaussianRational` or :class:`RationalFunctionEps`.
"""

from collections import namedtuple
from dataclasses import dataclass, field
from functools import lru_cache

from .errors import CardinalityMismatch, MissingRValue, PoleError
from .exactnum import ONE, ScalarMatrix, as_field, det_exact
from .verdict import Verdict


class ParamSet(tuple):
    """An ordered set of Bethe parameters; tuple order is the natural order."""

    def __new__(cls, values=(), label=""):
        obj = super().__new__(cls, (as_field(v) for v in values))
        obj.label = label
        return obj

    def __repr__(self):
        inner = ", ".join(str(v) for v in self)
        return f"ParamSet({self.label or '?'}: [{inner}])"

    def shift(self, delta):
        """The set with every element shifted by ``delta`` (usually +-c)."""
        return ParamSet((x + delta for x in self), self.label)

    def subset(self, indices):
        return ParamSet((self[i] for i in indices), self.label)


def _pole(name, u, v):
    return PoleError(f"{name}({u}, {v}) is singular", pair=(u, v))


@lru_cache(maxsize=1 << 16)
def kernel_g(u, v, c):
    """g(u, v) = c / (u - v)."""
    d = u - v
    if not d:
        raise _pole("g", u, v)
    return c / d


@lru_cache(maxsize=1 << 16)
def kernel_f(u, v, c):
    """f(u, v) = (u - v + c) / (u - v)."""
    d = u - v
    if not d:
        raise _pole("f", u, v)
    return (d + c) / d


@lru_cache(maxsize=1 << 16)
def kernel_h(u, v, c):
    """h(u, v) = (u - v + c) / c; a polynomial, never singular."""
    return (u - v + c) / c


@lru_cache(maxsize=1 << 16)
def kernel_t(u, v, c):
    """t(u, v) = c^2 / ((u - v)(u - v + c))."""
    d = u - v
    s = d + c
    if not d or not s:
        raise _pole("t", u, v)
    return (c * c) / (d * s)


# Reciprocals vanish where the kernel itself has a pole; these are used to
# realize "1/f(vC, x) = 0 for x in vC" literally instead of by a limit.

@lru_cache(maxsize=1 << 16)
def inv_g(u, v, c):
    """1/g(u, v) = (u - v) / c."""
    return (u - v) / c


@lru_cache(maxsize=1 << 16)
def inv_f(u, v, c):
    """1/f(u, v) = (u - v) / (u - v + c)."""
    d = u - v
    s = d + c
    if not s:
        raise _pole("1/f", u, v)
    return d / s


@lru_cache(maxsize=1 << 16)
def inv_h(u, v, c):
    """1/h(u, v) = c / (u - v + c)."""
    s = u - v + c
    if not s:
        raise _pole("1/h", u, v)
    return c / s


KERNELS = {
    "g": kernel_g,
    "f": kernel_f,
    "h": kernel_h,
    "t": kernel_t,
    "inv_g": inv_g,
    "inv_f": inv_f,
    "inv_h": inv_h,
}


def _as_set(x):
    if isinstance(x, (tuple, list)):
        return x
    return (x,)


def prod_kernel(kernel, xs, ys, c):
    """Product of ``kernel(x, y)`` over all x in ``xs`` and y in ``ys``.

    ``kernel`` is a name from :data:`KERNELS` or a callable ``(u, v, c)``.
    Either argument may be a single point. Empty sets give 1. A zero factor
    short-circuits the product, so reciprocal kernels can annihilate
    factors that would otherwise be singular later in the same product.
    """
    fn = KERNELS[kernel] if isinstance(kernel, str) else kernel
    result = ONE
    for x in _as_set(xs):
        for y in _as_set(ys):
            val = fn(x, y, c)
            if not val:
                return val
            result = result * val
    return result


def delta_plus(xs, c):
    """Delta'(x) = prod_{j<k} g(x_j, x_k)."""
    result = ONE
    for j in range(len(xs)):
        for k in range(j + 1, len(xs)):
            result = result * kernel_g(xs[j], xs[k], c)
    return result


def delta_minus(xs, c):
    """Delta(x) = prod_{j>k} g(x_j, x_k)."""
    result = ONE
    for j in range(len(xs)):
        for k in range(j):
            result = result * kernel_g(xs[j], xs[k], c)
    return result


def cauchy_identities(us, vs, c):
    """Check the Cauchy determinant and its g- and 1/h-kernel corollaries."""
    n = len(us)
    if len(vs) != n:
        raise CardinalityMismatch(f"#u={n} but #v={len(vs)}")
    dd = delta_minus(us, c) * delta_plus(vs, c)
    g_det = det_exact([[kernel_g(u, v, c) for v in vs] for u in us])
    h_det = det_exact([[inv_h(u, v, c) for v in vs] for u in us])

    cauchy_det = det_exact([[1 / (u - v) if u != v else _singular(u, v) for v in vs] for u in us])
    num = ONE
    for k in range(n):
        for j in range(k + 1, n):
            num = num * (us[j] - us[k]) * (vs[k] - vs[j])
    den = ONE
    for u in us:
        for v in vs:
            den = den * (u - v)
    return Verdict.combine(
        "cauchy",
        [
            Verdict.compare("cauchy-product", cauchy_det, num / den),
            Verdict.compare("g-det", dd * g_det, prod_kernel("g", us, vs, c)),
            Verdict.compare("inv-h-det", dd * h_det, prod_kernel("inv_h", us, vs, c)),
        ],
        n=n,
    )


def _singular(u, v):
    raise PoleError(f"1/(u - v) singular at {u}", pair=(u, v))


RValue = namedtuple("RValue", ["value", "deriv"], defaults=[None])


def _pairwise_guard(points, c):
    pts = list(points)
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            d = pts[i] - pts[j]
            if not d or not (d - c) or not (d + c):
                raise PoleError(
                    f"parameters {pts[i]} and {pts[j]} differ by 0 or +-c",
                    pair=(pts[i], pts[j]),
                )


@dataclass(frozen=True)
class BetheConfig:
    """Every free symbol of one scalar-product problem.

    ``r1_table``/``r3_table`` map a point to an :class:`RValue` (value and
    optional derivative) for the ratios r1 = lambda1/lambda2 and
    r3 = lambda3/lambda2. Construction rejects any two parameters that
    differ by 0 or +-c unless ``check_poles`` is False.
    """

    c: object
    uC: tuple = ()
    vC: tuple = ()
    uB: tuple = ()
    vB: tuple = ()
    varkappa: object = ONE
    kappa: tuple = (ONE, ONE, ONE)
    r1_table: dict = field(default_factory=dict)
    r3_table: dict = field(default_factory=dict)
    check_poles: bool = True

    def __post_init__(self):
        set_ = object.__setattr__
        set_(self, "c", as_field(self.c))
        for name in ("uC", "vC", "uB", "vB"):
            set_(self, name, ParamSet(getattr(self, name), name))
        set_(self, "varkappa", as_field(self.varkappa))
        set_(self, "kappa", tuple(as_field(k) for k in self.kappa))
        set_(self, "r1_table", {as_field(k): _rvalue(v) for k, v in self.r1_table.items()})
        set_(self, "r3_table", {as_field(k): _rvalue(v) for k, v in self.r3_table.items()})
        if not self.c:
            raise ValueError("the crossing constant c must be nonzero")
        if len(self.kappa) != 3:
            raise ValueError("kappa must be a triple")
        if len(self.uC) != len(self.uB):
            raise CardinalityMismatch(f"#uC={len(self.uC)} but #uB={len(self.uB)}")
        if len(self.vC) != len(self.vB):
            raise CardinalityMismatch(f"#vC={len(self.vC)} but #vB={len(self.vB)}")
        for name in ("uC", "vC", "uB", "vB"):
            vals = getattr(self, name)
            if len(set(vals)) != len(vals):
                raise PoleError(f"{name} has repeated entries")
        if self.check_poles:
            _pairwise_guard(self.all_points(), self.c)

    @property
    def a(self):
        return len(self.uC)

    @property
    def b(self):
        return len(self.vC)

    def all_points(self):
        return tuple(self.uC) + tuple(self.vC) + tuple(self.uB) + tuple(self.vB)

    def replace(self, **changes):
        fields = {
            "c": self.c, "uC": self.uC, "vC": self.vC, "uB": self.uB, "vB": self.vB,
            "varkappa": self.varkappa, "kappa": self.kappa,
            "r1_table": self.r1_table, "r3_table": self.r3_table,
            "check_poles": self.check_poles,
        }
        fields.update(changes)
        return BetheConfig(**fields)

    def mirrored(self):
        """Swap the C and B parameter sets."""
        return self.replace(uC=self.uB, uB=self.uC, vC=self.vB, vB=self.vC)

    def r1(self, point):
        try:
            return self.r1_table[point].value
        except KeyError:
            raise MissingRValue(f"no r1 value at {point}") from None

    def r3(self, point):
        try:
            return self.r3_table[point].value
        except KeyError:
            raise MissingRValue(f"no r3 value at {point}") from None


def _rvalue(v):
    if isinstance(v, RValue):
        return RValue(as_field(v.value), None if v.deriv is None else as_field(v.deriv))
    if isinstance(v, (tuple, list)):
        return RValue(as_field(v[0]), None if len(v) < 2 or v[1] is None else as_field(v[1]))
    return RValue(as_field(v))


def tau_kappa(w, cfg, side="C"):
    """Twisted transfer-matrix eigenvalue normalized by lambda2(w).

    kappa1 r1(w) f(u, w) + kappa2 f(w, u) f(v, w) - kappa3 r3(w) f(v, w), with
    (u, v) the parameters of the requested side ("C" or "B").
    """
    w = as_field(w)
    us, vs = (cfg.uC, cfg.vC) if side == "C" else (cfg.uB, cfg.vB)
    k1, k2, k3 = cfg.kappa
    c = cfg.c
    fvw = prod_kernel("f", vs, w, c)
    return (
        k1 * cfg.r1(w) * prod_kernel("f", us, w, c)
        + k2 * prod_kernel("f", w, us, c) * fvw
        - k3 * cfg.r3(w) * fvw
    )


def kernel_matrix(kernel, us, vs, c):
    fn = KERNELS[kernel] if isinstance(kernel, str) else kernel
    return ScalarMatrix.from_rows([[fn(u, v, c) for v in vs] for u in us], len(vs))
