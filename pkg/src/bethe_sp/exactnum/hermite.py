from ..errors import DuplicatePoints
from .gaussian import GaussianRational
from .polynomial import PolyEps


def hermite_interpolant(points, values, derivs):
    """Return the polynomial P of degree <= 2n-1 with prescribed P and P'.

    Uses confluent divided differences over the doubled node sequence
    x0, x0, x1, x1, ... and expands the Newton form into monomials.
    """
    points = [GaussianRational.coerce(p) for p in points]
    values = [GaussianRational.coerce(v) for v in values]
    derivs = [GaussianRational.coerce(d) for d in derivs]
    n = len(points)
    if len(values) != n or len(derivs) != n:
        raise ValueError("points, values and derivs must have the same length")
    if len(set(points)) != n:
        raise DuplicatePoints("interpolation nodes must be pairwise distinct")
    if n == 0:
        return PolyEps()

    z = [p for p in points for _ in (0, 1)]
    col = [v for v in values for _ in (0, 1)]
    newton = [col[0]]
    # first-order differences: derivative on repeated nodes
    col = [
        derivs[i // 2] if i % 2 == 0 else (col[i + 1] - col[i]) / (z[i + 1] - z[i])
        for i in range(2 * n - 1)
    ]
    newton.append(col[0])
    for order in range(2, 2 * n):
        col = [
            (col[i + 1] - col[i]) / (z[i + order] - z[i])
            for i in range(len(col) - 1)
        ]
        newton.append(col[0])

    poly = PolyEps.constant(newton[-1])
    for k in range(2 * n - 2, -1, -1):
        poly = poly * PolyEps([-z[k], 1]) + newton[k]
    return poly
