"""Dense exact matrices and fraction-free determinants."""

from dataclasses import dataclass

from ..errors import NonSquare
from .gaussian import ONE, as_field
from .polynomial import _P_ONE, RationalFunctionEps


@dataclass(frozen=True)
class ScalarMatrix:
    """Row-major dense matrix over an exact field.

    Entries are :class:`GaussianRational` or :class:`RationalFunctionEps`;
    indices are 0-based ``(row, col)`` pairs.
    """

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if self.rows * self.cols != len(self.entries):
            raise ValueError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries,"
                f" got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows, ncols=None):
        rows = [list(r) for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), ncols, tuple(as_field(x) for r in rows for x in r))

    @classmethod
    def from_function(cls, nrows, ncols, fn):
        return cls(nrows, ncols, tuple(fn(i, j) for i in range(nrows) for j in range(ncols)))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i):
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j):
        return self.entries[j::self.cols]

    def as_rows(self):
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self):
        return ScalarMatrix.from_function(self.cols, self.rows, lambda i, j: self[j, i])

    def with_row(self, i, values):
        rows = self.as_rows()
        rows[i] = list(values)
        return ScalarMatrix.from_rows(rows, self.cols)

    def det(self):
        return det_exact(self)


def det_exact(m):
    """Determinant by Bareiss elimination with full pivot search.

    Accepts a :class:`ScalarMatrix` or a list of rows. Every division in
    the recurrence is exact, which keeps intermediate growth polynomial.
    The determinant of a 0x0 matrix is 1.
    """
    if isinstance(m, ScalarMatrix):
        if m.rows != m.cols:
            raise NonSquare(f"determinant of a {m.rows}x{m.cols} matrix")
        a = m.as_rows()
    else:
        a = [list(r) for r in m]
        if any(len(r) != len(a) for r in a):
            raise NonSquare("determinant of a non-square matrix")
    n = len(a)
    if n == 0:
        return ONE
    if n == 1:
        return as_field(a[0][0])
    if any(isinstance(x, RationalFunctionEps) for r in a for x in r):
        return _det_eps(a)
    return as_field(_bareiss(a, lambda x, d: x / d))


def _bareiss(a, exact_div):
    n = len(a)
    sign = 1
    prev = None
    for k in range(n - 1):
        pivot = None
        for i in range(k, n):
            for j in range(k, n):
                if a[i][j]:
                    pivot = (i, j)
                    break
            if pivot:
                break
        if pivot is None:
            # trailing block is identically zero
            return a[k][k]
        pi, pj = pivot
        if pi != k:
            a[k], a[pi] = a[pi], a[k]
            sign = -sign
        if pj != k:
            for row in a:
                row[k], row[pj] = row[pj], row[k]
            sign = -sign
        akk = a[k][k]
        rk = a[k]
        for i in range(k + 1, n):
            ri = a[i]
            aik = ri[k]
            for j in range(k + 1, n):
                val = ri[j] * akk - aik * rk[j]
                ri[j] = exact_div(val, prev) if prev is not None else val
        prev = akk
    result = a[n - 1][n - 1]
    return -result if sign < 0 else result


def _poly_exact_div(x, d):
    q, r = divmod(x, d)
    if r:
        raise ArithmeticError("inexact polynomial division in Bareiss step")
    return q


def _det_eps(a):
    """Clear each row's denominators, eliminate over polynomials, reduce once."""
    rows, factors = [], []
    for r in a:
        r = [RationalFunctionEps.coerce(x) for x in r]
        dens = []
        for x in r:
            if x.den.degree > 0 and x.den not in dens:
                dens.append(x.den)
        mult = _P_ONE
        for d in dens:
            mult = mult * d
        rows.append([x.num * (mult // x.den) for x in r])
        factors.extend(dens)
    num = _bareiss(rows, _poly_exact_div)
    return RationalFunctionEps.from_factored(num, factors)
