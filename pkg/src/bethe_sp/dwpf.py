"""Domain-wall partition function and the multiple-sum identities built on it."""

from functools import lru_cache

from .errors import CardinalityMismatch
from .exactnum import ONE, ZERO, as_field, det_exact
from .kernels import (
    ParamSet,
    delta_minus,
    delta_plus,
    inv_g,
    inv_h,
    kernel_g,
    kernel_h,
    kernel_t,
    prod_kernel,
)
from .partitions import all_splits, splits
from .verdict import Verdict


def K(us, vs, c):
    """Delta'(u) Delta(v) h(u, v) det t(u_j, v_k); symmetric in each argument set."""
    if len(us) != len(vs):
        raise CardinalityMismatch(f"K needs #u = #v, got {len(us)} and {len(vs)}")
    return _K(tuple(us), tuple(vs), c)


@lru_cache(maxsize=1 << 15)
def _K(us, vs, c):
    n = len(us)
    if n == 0:
        return ONE
    if n == 1:
        return kernel_g(us[0], vs[0], c)
    hh = prod_kernel(kernel_h, us, vs, c)
    if not hh:
        return hh
    det = det_exact([[kernel_t(u, v, c) for v in vs] for u in us])
    return delta_plus(us, c) * delta_minus(vs, c) * hh * det


def lemma_gg_check(ws, us, vs, c):
    """Sum over #w_I = #u of g(w_I, u) g(w_II, v) g(w_II, w_I) in closed form."""
    m1, m2 = len(us), len(vs)
    if len(ws) != m1 + m2:
        raise CardinalityMismatch("#w must equal #u + #v")
    lhs = ZERO
    for sp in splits(m1 + m2, m1):
        wI, wII = sp.pick(ws)
        lhs = lhs + (prod_kernel(kernel_g, wI, us, c) * prod_kernel(kernel_g, wII, vs, c)
                     * prod_kernel(kernel_g, wII, wI, c))
    rhs = prod_kernel(kernel_g, ws, us, c) * prod_kernel(kernel_g, ws, vs, c) \
        / prod_kernel(kernel_g, us, vs, c)
    return Verdict.compare("lemma-gg", lhs, rhs, m1=m1, m2=m2)


def lemma_KK_check(ws, us, vs, c):
    """Sum of K(w_I|u) K(v|w_II) f(w_II, w_I) against the merged DWPF."""
    m1, m2 = len(us), len(vs)
    if len(ws) != m1 + m2:
        raise CardinalityMismatch("#w must equal #u + #v")
    lhs = ZERO
    for sp in splits(m1 + m2, m1):
        wI, wII = sp.pick(ws)
        lhs = lhs + K(wI, us, c) * K(vs, wII, c) * prod_kernel("f", wII, wI, c)
    merged = tuple(ParamSet(us).shift(-c)) + tuple(vs)
    rhs = (-1) ** m1 * prod_kernel("f", ws, us, c) * K(merged, ws, c)
    return Verdict.compare("lemma-KK", lhs, rhs, m1=m1, m2=m2)


def lemma_longdet_check(ws, xis, C1, C2, c):
    """Sum over all splits of w against a single m x m determinant.

    ``C1`` and ``C2`` map each point of ``ws`` to a value.
    """
    m = len(ws)
    if len(xis) != m:
        raise CardinalityMismatch("#w must equal #xi")
    lhs = ZERO
    for sp in all_splits(m):
        wI, wII = sp.pick(ws)
        coef = ONE
        for w in wI:
            coef = coef * C1[w]
        for w in wII:
            coef = coef * C2[w]
        if not coef:
            continue
        merged = tuple(ParamSet(wI).shift(-c)) + tuple(wII)
        lhs = lhs + (K(merged, xis, c) * prod_kernel("f", xis, wI, c)
                     * prod_kernel("f", wII, wI, c) * coef)
    sgn = (-1) ** m
    rows = [
        [C2[w] * kernel_t(w, xi, c) * prod_kernel(kernel_h, w, xis, c)
         + sgn * C1[w] * kernel_t(xi, w, c) * prod_kernel(kernel_h, xis, w, c)
         for w in ws]
        for xi in xis
    ]
    rhs = delta_plus(xis, c) * delta_minus(ws, c) * det_exact(rows)
    return Verdict.compare("lemma-longdet", lhs, rhs, m=m)


def row_stack_check(A, B, xs, a, b, c):
    """Sum over splits of x against the stacked (A over B) determinant.

    ``A`` and ``B`` are callables (row index, point) -> value with a and b
    rows respectively.
    """
    if len(xs) != a + b:
        raise CardinalityMismatch("#x must equal a + b")

    def block(fn, nrows, pts):
        return delta_minus(pts, c) * det_exact([[fn(j, x) for x in pts] for j in range(nrows)])

    lhs = ZERO
    for sp in splits(a + b, a):
        xI, xII = sp.pick(xs)
        lhs = lhs + prod_kernel(kernel_g, xII, xI, c) * block(A, a, xI) * block(B, b, xII)
    rows = [[A(j, x) for x in xs] for j in range(a)] + [[B(j, x) for x in xs] for j in range(b)]
    rhs = delta_minus(xs, c) * det_exact(rows)
    return Verdict.compare("row-stack", lhs, rhs, a=a, b=b)


def single_sum_checks(cfg, probes=()):
    """The four single sums weighted by the orthogonality vector, per x_k.

    The g-kernel sum over vC is singular at x_k in vC on both sides, so it
    is only checked at the uB points and at the extra generic ``probes``.
    """
    from .spectral import omega

    c = cfg.c
    a, b = cfg.a, cfg.b
    om = omega(cfg).components
    om_u, om_v = om[:a], om[a:]
    uC, uB, vC, vB = cfg.uC, cfg.uB, cfg.vC, cfg.vB
    parts = []
    points = tuple(uB) + tuple(vC)
    for k, x in enumerate(points + tuple(as_field(p) for p in probes)):
        gu_ratio = prod_kernel(kernel_g, x, uC, c) * prod_kernel(inv_g, x, uB, c)
        lhs1 = sum((kernel_t(u, x, c) * w for u, w in zip(uC, om_u)), ZERO)
        rhs1 = prod_kernel(kernel_h, uB, x, c) * prod_kernel(inv_h, uC, x, c) - gu_ratio
        parts.append(Verdict.compare("t(uC,x)-sum", lhs1, rhs1, column=k))

        lhs3 = sum((kernel_t(x, u, c) * w for u, w in zip(uC, om_u)), ZERO)
        rhs3 = gu_ratio - prod_kernel(kernel_h, x, uB, c) * prod_kernel(inv_h, x, uC, c)
        parts.append(Verdict.compare("t(x,uC)-sum", lhs3, rhs3, column=k))

        if k < a or k >= a + b:
            lhs2 = sum((kernel_g(x, v, c) * w for v, w in zip(vC, om_v)), ZERO)
            rhs2 = prod_kernel(kernel_g, x, vC, c) * prod_kernel(inv_g, x, vB, c) - 1
            parts.append(Verdict.compare("g(x,vC)-sum", lhs2, rhs2, column=k))

        lhs4 = sum((inv_h(v, x, c) * w for v, w in zip(vC, om_v)), ZERO)
        rhs4 = 1 - prod_kernel(kernel_h, vB, x, c) * prod_kernel(inv_h, vC, x, c)
        parts.append(Verdict.compare("1/h(vC,x)-sum", lhs4, rhs4, column=k))
    return Verdict.combine("single-sums", parts, a=a, b=b)
