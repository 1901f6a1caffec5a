"""Highest coefficient Z_{a,b}(t; x | s; y) as two independent partition sums."""

from dataclasses import dataclass

from .dwpf import K
from .errors import CardinalityMismatch
from .exactnum import ZERO, as_field
from .kernels import inv_h, kernel_g, kernel_h, prod_kernel
from .partitions import splits


@dataclass(frozen=True)
class ZArgs:
    t: tuple
    x: tuple
    s: tuple
    y: tuple
    c: object

    def __post_init__(self):
        for name in ("t", "x", "s", "y"):
            object.__setattr__(self, name, tuple(as_field(v) for v in getattr(self, name)))
        object.__setattr__(self, "c", as_field(self.c))
        if len(self.t) != len(self.x) or len(self.s) != len(self.y):
            raise CardinalityMismatch("Z needs #t = #x and #s = #y")

    @property
    def a(self):
        return len(self.t)

    @property
    def b(self):
        return len(self.s)


def Z_omega(args, counter=None):
    """Sum over omega = {x, s} split into a + b.

    ``counter``, when given, is a one-element list incremented per term.
    """
    a, b, c = args.a, args.b, args.c
    omega = args.x + args.s
    total = ZERO
    for sp in splits(a + b, a):
        wI, wII = sp.pick(omega)
        if counter is not None:
            counter[0] += 1
        term = prod_kernel(kernel_g, wII, args.y, c)
        if not term:
            continue
        term = term * prod_kernel(kernel_g, wII, wI, c) * prod_kernel(kernel_h, wII, args.x, c)
        if term:
            total = total + term * K(wI, args.t, c)
    return total


def Z_eta(args, counter=None):
    """Sum over eta = {t, y + c} split into a + b."""
    a, b, c = args.a, args.b, args.c
    eta = args.t + tuple(y + c for y in args.y)
    total = ZERO
    for sp in splits(a + b, a):
        eI, eII = sp.pick(eta)
        if counter is not None:
            counter[0] += 1
        term = (prod_kernel(kernel_g, eI, eII, c) * prod_kernel(kernel_h, args.t, eII, c)
                * prod_kernel(inv_h, args.s, eII, c))
        if term:
            total = total + term * K(args.x, eI, c)
    return total * prod_kernel("f", args.s, args.t, c) * prod_kernel("f", args.y, args.x, c)
