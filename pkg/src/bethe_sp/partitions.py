"""Ordered two-way splits of an index range with permutation parity.

Indices are 0-based. A split (I, II) lists both parts in increasing order;
its sign is the parity of the permutation taking the concatenation I + II
back to 0..n-1, i.e. (-1) to the number of pairs (i in I, j in II, j < i).
"""

import itertools
from dataclasses import dataclass
from math import comb

from .errors import BadCardinality, CardinalityMismatch
from .exactnum import ZERO, det_exact
from .kernels import delta_minus, delta_plus, kernel_g, prod_kernel
from .verdict import Verdict


@dataclass(frozen=True)
class PartitionSplit:
    subsetI: tuple
    subsetII: tuple
    sign: int

    def pick(self, seq):
        """Apply the split to a sequence: (seq restricted to I, to II)."""
        return tuple(seq[i] for i in self.subsetI), tuple(seq[i] for i in self.subsetII)


def _check(n, k):
    if not (isinstance(n, int) and isinstance(k, int)) or n < 0 or not 0 <= k <= n:
        raise BadCardinality(f"cannot choose {k} of {n}")


def splits(n, k):
    """Stream every split of range(n) with #I = k, I in lexicographic order.

    The inversion count is carried along the recursion: choosing index i
    as the p-th element of I jumps over i - p elements of II.
    """
    _check(n, k)

    def rec(start, chosen, inversions):
        p = len(chosen)
        if p == k:
            taken = set(chosen)
            rest = tuple(i for i in range(n) if i not in taken)
            yield PartitionSplit(tuple(chosen), rest, -1 if inversions & 1 else 1)
            return
        for i in range(start, n - (k - p) + 1):
            chosen.append(i)
            yield from rec(i + 1, chosen, inversions + i - p)
            chosen.pop()

    return rec(0, [], 0)


def all_splits(n):
    """Splits of range(n) for every size of I, smallest I first."""
    for k in range(n + 1):
        yield from splits(n, k)


def multi_splits(spec):
    """Cartesian product of independent split streams, one per (n, k) pair."""
    spec = list(spec)
    for n, k in spec:
        _check(n, k)
    return itertools.product(*(list(splits(n, k)) for n, k in spec))


def split_count(spec):
    out = 1
    for n, k in spec:
        out *= comb(n, k)
    return out


def laplace_check(A, B, us, vs, c):
    """Laplace expansion of det(A + B) folded with Vandermonde prefactors.

    ``A`` and ``B`` are callables (u, v) -> field element.
    """
    n = len(us)
    if len(vs) != n:
        raise CardinalityMismatch(f"#u={n} but #v={len(vs)}")

    def weighted(fn, xs, ys):
        return delta_minus(xs, c) * delta_plus(ys, c) * det_exact(
            [[fn(x, y) for y in ys] for x in xs]
        )

    lhs = weighted(lambda x, y: A(x, y) + B(x, y), us, vs)
    rhs = ZERO
    for k in range(n + 1):
        for su in splits(n, k):
            uI, uII = su.pick(us)
            for sv in splits(n, k):
                vI, vII = sv.pick(vs)
                rhs = rhs + (
                    weighted(A, uI, vI) * weighted(B, uII, vII)
                    * prod_kernel(kernel_g, uII, uI, c) * prod_kernel(kernel_g, vI, vII, c)
                )
    return Verdict.compare("laplace", lhs, rhs, n=n)


def delta_factorization_check(xs, c):
    """Delta(x) = sign * Delta(x_I) Delta(x_II) g(x_II, x_I) for every split."""
    full = delta_minus(xs, c)
    parts = []
    for sp in all_splits(len(xs)):
        xI, xII = sp.pick(xs)
        rhs = sp.sign * delta_minus(xI, c) * delta_minus(xII, c) * prod_kernel(kernel_g, xII, xI, c)
        parts.append(Verdict.compare("delta-split", full, rhs, subsetI=list(sp.subsetI)))
        rhs_p = sp.sign * delta_plus(xI, c) * delta_plus(xII, c) * prod_kernel(kernel_g, xI, xII, c)
        parts.append(Verdict.compare("delta-prime-split", delta_plus(xs, c), rhs_p,
                                     subsetI=list(sp.subsetI)))
    return Verdict.combine("delta-factorization", parts, n=len(xs))
