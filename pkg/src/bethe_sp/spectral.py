"""Orthogonality, norms and diagonal form factors of on-shell vectors."""

from dataclasses import dataclass

from .errors import CardinalityMismatch, PoleError, ZeroPivot
from .exactnum import (
    EPS,
    ONE,
    ZERO,
    ScalarMatrix,
    as_field,
    det_exact,
    eval_at_eps_zero,
    first_derivative_at_zero,
    hermite_interpolant,
)
from .kernels import (
    BetheConfig,
    RValue,
    delta_minus,
    delta_plus,
    inv_f,
    inv_g,
    inv_h,
    kernel_g,
    kernel_h,
    kernel_t,
    prod_kernel,
)
from .scalar import SEMI, TWISTED, apply_constraints, build_N, det_rep
from .verdict import Verdict

GRADING = {1: 0, 2: 0, 3: 1}


@dataclass(frozen=True)
class OmegaVector:
    components: tuple
    a: int
    b: int

    def admissible(self):
        """0-based indices p with a nonzero component."""
        return tuple(p for p, w in enumerate(self.components) if w)


def _omega_block(cs, bs, c):
    out = []
    for j, x in enumerate(cs):
        others = cs[:j] + cs[j + 1:]
        out.append(prod_kernel(kernel_g, x, others, c) * prod_kernel(inv_g, x, bs, c))
    return out


def omega(cfg):
    """Orthogonality vector; 1/g(x, set) is taken as the polynomial (x - y)/c.

    A component vanishes when its C-parameter also appears on the B side.
    Raises :class:`PoleError` when every component vanishes, i.e. when the
    two states share all their parameters.
    """
    c = cfg.c
    comps = tuple(_omega_block(tuple(cfg.uC), tuple(cfg.uB), c)
                  + _omega_block(tuple(cfg.vC), tuple(cfg.vB), c))
    if comps and not any(comps):
        raise PoleError("the orthogonality vector is undefined for coincident states")
    return OmegaVector(comps, cfg.a, cfg.b)


def _ratio(kernel, inv_kernel, num_set, den_set, x, c, x_first):
    if x_first:
        return prod_kernel(kernel, x, num_set, c) * prod_kernel(inv_kernel, x, den_set, c)
    return prod_kernel(kernel, num_set, x, c) * prod_kernel(inv_kernel, den_set, x, c)


def orthogonality_check(cfg):
    """Row sums of the twisted matrix weighted by Omega, then det = 0 at kappa = 1."""
    c = cfg.c
    a, b = cfg.a, cfg.b
    uC, vC, uB, vB = tuple(cfg.uC), tuple(cfg.vC), tuple(cfg.uB), tuple(cfg.vB)
    k1, k2, k3 = cfg.kappa
    om = omega(cfg).components
    N = build_N(cfg, None, TWISTED).matrix
    parts = []
    for k, x in enumerate(uB + vC):
        inv_hx = prod_kernel(inv_h, x, uB, c)
        s_u = sum((N[j, k] * om[j] for j in range(a)), ZERO) * inv_hx
        s_v = sum((N[a + j, k] * om[a + j] for j in range(b)), ZERO) * inv_hx
        fvB_fvC = _ratio("f", inv_f, vB, vC, x, c, False)
        fuC_fuB = _ratio("f", inv_f, uC, uB, x, c, False)
        fxuC_fxuB = _ratio("f", inv_f, uC, uB, x, c, True)
        gvB_gvC = _ratio(kernel_g, inv_g, vB, vC, x, c, False)
        rhs_u = fvB_fvC * (1 - fuC_fuB) + k2 / k1 * (fxuC_fxuB - 1)
        rhs_v = (1 - k2 / k3 * fxuC_fxuB) * (
            (k1 / k3 - 1) * gvB_gvC + 1 - k1 / k3 * fvB_fvC)
        rhs_tot = (1 - k2 / k1 + (k1 / k3 - 1) * (gvB_gvC - fvB_fvC)
                   + fxuC_fxuB * (k2 / k1 - k2 / k3))
        parts.append(Verdict.compare("u-rows", s_u, rhs_u, column=k))
        parts.append(Verdict.compare("v-rows", s_v, rhs_v, column=k))
        parts.append(Verdict.compare("all-rows", s_u + s_v, rhs_tot, column=k))
    at_one = cfg.replace(kappa=(ONE, ONE, ONE))
    parts.append(Verdict.compare("det-at-kappa-1", det_exact(build_N(at_one, None, TWISTED).matrix),
                                 ZERO))
    parts.append(Verdict.compare("product-at-kappa-1", det_rep(at_one, None, TWISTED), ZERO))
    return Verdict.combine("orthogonality", parts, a=a, b=b)


# --- norms --------------------------------------------------------------------


@dataclass(frozen=True)
class GaudinSpec:
    matrix: ScalarMatrix
    r1_logderivs: tuple
    r3_logderivs: tuple


def gaudin_matrix(us, vs, logderivs, c):
    """Jacobian-type matrix of the on-shell norm.

    ``logderivs`` is a pair (r1'/r1 at each u, r3'/r3 at each v).
    """
    us = tuple(as_field(u) for u in us)
    vs = tuple(as_field(v) for v in vs)
    c = as_field(c)
    l1, l3 = (tuple(as_field(x) for x in part) for part in logderivs)
    a, b = len(us), len(vs)
    if len(l1) != a or len(l3) != b:
        raise CardinalityMismatch("one log-derivative per parameter is required")
    for i in range(a):
        for j in range(i + 1, a):
            d = us[i] - us[j]
            if not d or not (d - c) or not (d + c):
                raise PoleError("u parameters must differ by neither 0 nor +-c", (us[i], us[j]))
    c2 = c * c

    def coupling(x, y):
        d = x - y
        return 2 * c2 / (d * d - c2)

    n = a + b
    rows = [[ZERO] * n for _ in range(n)]
    for j in range(a):
        for k in range(a):
            rows[j][k] = -coupling(us[k], us[j])
        diag = c * l1[j] + sum((coupling(us[j], u) for u in us), ZERO) \
            - sum((kernel_t(v, us[j], c) for v in vs), ZERO)
        rows[j][j] = rows[j][j] + diag
        for k in range(b):
            rows[j][a + k] = kernel_t(vs[k], us[j], c)
    for j in range(b):
        for k in range(a):
            rows[a + j][k] = -kernel_t(vs[j], us[k], c)
        rows[a + j][a + j] = c * l3[j] + sum((kernel_t(vs[j], u, c) for u in us), ZERO)
    return GaudinSpec(ScalarMatrix(n, n, tuple(e for row in rows for e in row)), l1, l3)


def norm_via_gaudin(us, vs, logderivs, c):
    us = tuple(as_field(u) for u in us)
    vs = tuple(as_field(v) for v in vs)
    c = as_field(c)
    spec = gaudin_matrix(us, vs, logderivs, c)
    pre = prod_kernel("f", vs, us, c)
    for j, x in enumerate(us):
        pre = pre * prod_kernel("f", x, us[:j] + us[j + 1:], c)
    for j, x in enumerate(vs):
        pre = pre * prod_kernel(kernel_g, x, vs[:j] + vs[j + 1:], c)
    return (-1) ** (len(us) + len(vs)) * pre * det_exact(spec.matrix)


def on_shell_values(us, vs, c):
    """Values of r1 at u and r3 at v solving the untwisted Bethe equations."""
    r1 = []
    for j, u in enumerate(us):
        others = us[:j] + us[j + 1:]
        r1.append(prod_kernel("f", u, others, c) * prod_kernel(inv_f, others, u, c)
                  * prod_kernel("f", vs, u, c))
    r3 = [prod_kernel("f", v, us, c) for v in vs]
    return r1, r3


def _deformed(base, nodes, shifts):
    """``base`` plus the unique correction with values ``shifts`` and zero slope at ``nodes``."""
    n = len(nodes)
    basis = [hermite_interpolant(nodes, [ONE if k == j else ZERO for k in range(n)], [ZERO] * n)
             for j in range(n)]

    def fn(x):
        out = base(x)
        for d, ell in zip(shifts, basis):
            if d:
                out = out + d * ell(x)
        return out

    return fn


def eps_family(us, vs, directions, derivs, c):
    """Configuration over the eps-field approaching the coincident limit.

    uC = u, vB = v, uB = u + eps*alpha, vC = v + eps*beta, varkappa = 1.
    r1 on uC and r3 on vB are fixed by the constraints and so move with
    eps. The free values come from one eps-family of functions per r that
    passes through those constrained values with slopes d and e at the
    limit points. Returns the config and the two families.
    """
    us = tuple(as_field(u) for u in us)
    vs = tuple(as_field(v) for v in vs)
    c = as_field(c)
    alpha, beta = (tuple(as_field(x) for x in part) for part in directions)
    d1, d3 = (tuple(as_field(x) for x in part) for part in derivs)
    if len(alpha) != len(us) or len(beta) != len(vs):
        raise CardinalityMismatch("one direction per parameter is required")
    if not all(alpha) or not all(beta):
        raise ValueError("limit directions must be nonzero")
    uB = tuple(u + EPS * x for u, x in zip(us, alpha))
    vC = tuple(v + EPS * x for v, x in zip(vs, beta))
    v1, v3 = on_shell_values(us, vs, c)
    w1 = on_shell_values(us, vC, c)[0]
    w3 = on_shell_values(uB, vs, c)[1]
    R1 = _deformed(hermite_interpolant(us, v1, d1), us,
                   [x - y for x, y in zip(w1, v1)]) if us else None
    R3 = _deformed(hermite_interpolant(vs, v3, d3), vs,
                   [x - y for x, y in zip(w3, v3)]) if vs else None
    cfg = BetheConfig(
        c=c, uC=us, vC=vC, uB=uB, vB=vs, varkappa=ONE,
        r1_table={p: RValue(R1(p)) for p in uB},
        r3_table={p: RValue(R3(p)) for p in vC},
    )
    return cfg, R1, R3


def norm_limit_value(us, vs, directions, derivs, c):
    cfg, _, _ = eps_family(us, vs, directions, derivs, c)
    return eval_at_eps_zero(det_rep(cfg, apply_constraints(cfg, SEMI), SEMI))


def norm_limit_check(us, vs, directions, derivs, c):
    """Limit of the determinant along each direction pair against the Gaudin norm.

    ``directions`` is a list of (alpha, beta) pairs; all must give the same
    limit.
    """
    us = tuple(as_field(u) for u in us)
    vs = tuple(as_field(v) for v in vs)
    c = as_field(c)
    d1, d3 = derivs
    v1, v3 = on_shell_values(us, vs, c)
    logs = ([as_field(d) / r for d, r in zip(d1, v1)], [as_field(d) / r for d, r in zip(d3, v3)])
    expected = norm_via_gaudin(us, vs, logs, c)
    parts = [
        Verdict.compare("eps-limit", norm_limit_value(us, vs, dirs, derivs, c), expected,
                        direction=[str(x) for part in dirs for x in part])
        for dirs in directions
    ]
    return Verdict.combine("norm", parts, a=len(us), b=len(vs))


def _phi_terms(a, b):
    """Log-terms of each Phi_j as (coefficient, kind, arguments).

    Variables are ("u", i) or ("v", i); kind "r1"/"r3" is log r at that
    variable and kind "f" is log f(first, second).
    """
    terms = []
    for j in range(a):
        t = [(1, "r1", ("u", j))]
        t += [(-1, "f", (("v", l), ("u", j))) for l in range(b)]
        for k in range(a):
            if k != j:
                t.append((1, "f", (("u", k), ("u", j))))
                t.append((-1, "f", (("u", j), ("u", k))))
        terms.append(t)
    for j in range(b):
        t = [(1, "r3", ("v", j))]
        t += [(-1, "f", (("v", j), ("u", l))) for l in range(a)]
        terms.append(t)
    return terms


def phi_jacobian(us, vs, logderivs, c):
    """c * dPhi_j/d(u_k, v_k) from the log-terms of Phi, with r'/r supplied."""
    us = tuple(as_field(u) for u in us)
    vs = tuple(as_field(v) for v in vs)
    c = as_field(c)
    l1, l3 = logderivs
    a, b = len(us), len(vs)
    value = {("u", i): u for i, u in enumerate(us)}
    value.update({("v", i): v for i, v in enumerate(vs)})
    order = [("u", i) for i in range(a)] + [("v", i) for i in range(b)]
    col = {var: n for n, var in enumerate(order)}
    rows = []
    for terms in _phi_terms(a, b):
        row = [ZERO] * (a + b)
        for coef, kind, args in terms:
            if kind == "r1":
                row[col[args]] = row[col[args]] + coef * as_field(l1[args[1]])
            elif kind == "r3":
                row[col[args]] = row[col[args]] + coef * as_field(l3[args[1]])
            else:
                x, y = args
                # d log f(x, y)/dx = -t(x, y)/c and d/dy = +t(x, y)/c
                tval = kernel_t(value[x], value[y], c) / c
                row[col[x]] = row[col[x]] - coef * tval
                row[col[y]] = row[col[y]] + coef * tval
        rows.append([c * e for e in row])
    return ScalarMatrix.from_rows(rows, a + b)


def jacobian_check(us, vs, logderivs, c):
    gm = gaudin_matrix(us, vs, logderivs, c).matrix
    jm = phi_jacobian(us, vs, logderivs, c)
    n = gm.rows
    parts = [Verdict.compare("entry", gm[j, k], jm[j, k], row=j, column=k)
             for j in range(n) for k in range(n)]
    return Verdict.combine("jacobian", parts, a=len(us), b=len(vs))


# --- form factors ---------------------------------------------------------------


@dataclass(frozen=True)
class FormFactorSpec:
    i: int
    p: int
    matrix: ScalarMatrix
    omega: OmegaVector


def _pivot(om, p):
    admissible = om.admissible()
    if p is None:
        if not admissible:
            raise ZeroPivot("no admissible pivot", admissible)
        return admissible[0]
    if not 0 <= p < len(om.components) or not om.components[p]:
        raise ZeroPivot(f"Omega vanishes at pivot {p}", admissible)
    return p


def formfactor_matrix(cfg, i, p=None):
    """Matrix whose determinant gives the universal form factor of T_ii.

    ``p`` is a 0-based pivot row; by default the smallest admissible one.
    """
    if i not in GRADING:
        raise ValueError("i must be 1, 2 or 3")
    c = cfg.c
    a, b = cfg.a, cfg.b
    uC, vC, uB, vB = tuple(cfg.uC), tuple(cfg.vC), tuple(cfg.uB), tuple(cfg.vB)
    om = omega(cfg)
    p = _pivot(om, p)
    xs = uB + vC
    n = a + b
    rows = [[ZERO] * n for _ in range(n)]
    for k, x in enumerate(xs):
        fvB_fvC = _ratio("f", inv_f, vB, vC, x, c, False)
        fxuC_fxuB = _ratio("f", inv_f, uC, uB, x, c, True)
        left = (fvB_fvC * prod_kernel(kernel_h, uC, x, c) * prod_kernel(inv_h, uB, x, c))
        right = prod_kernel(kernel_h, x, uC, c) * prod_kernel(inv_h, x, uB, c)
        for j, u in enumerate(uC):
            rows[j][k] = kernel_t(u, x, c) * left + kernel_t(x, u, c) * right
        lead = prod_kernel(kernel_g, x, vB, c) * (1 - fxuC_fxuB)
        for j, v in enumerate(vC):
            others = vC[:j] + vC[j + 1:]
            # 1/g(x, vC_j) t(vC_j, x) = -1/h(vC_j, x) keeps x = vC_j regular
            rows[a + j][k] = lead * prod_kernel(inv_g, x, others, c) * inv_h(v, x, c)
        y1 = 1 + _ratio(kernel_g, inv_g, vB, vC, x, c, False) - fvB_fvC - fxuC_fxuB
        rows[p][k] = {1: y1, 2: -ONE, 3: y1 - 1}[i]
    return FormFactorSpec(i, p, ScalarMatrix(n, n, tuple(e for row in rows for e in row)), om)


def formfactor_value(cfg, i, p=None):
    spec = formfactor_matrix(cfg, i, p)
    c = cfg.c
    uC, vC, uB = tuple(cfg.uC), tuple(cfg.vC), tuple(cfg.uB)
    pre = (prod_kernel("f", vC, uB, c) * prod_kernel(kernel_h, uB, uB, c)
           * delta_plus(uC, c) * delta_minus(uB, c) * delta_minus(vC, c) * delta_plus(vC, c))
    return pre * det_exact(spec.matrix) / spec.omega.components[spec.p]


def formfactor_derivative(cfg, i):
    """(-1)^[i] d/dkappa_i of the twisted determinant form at kappa = 1."""
    kappa = [ONE, ONE, ONE]
    kappa[i - 1] = ONE + EPS
    shifted = cfg.replace(kappa=tuple(kappa))
    value = det_rep(shifted, None, TWISTED)
    return (-1) ** GRADING[i] * first_derivative_at_zero(value)


def formfactor_derivative_check(cfg, i, pivots=None):
    """Derivative of the twisted product against the closed determinant.

    ``pivots`` lists extra pivot rows whose values must agree.
    """
    at_one = cfg.replace(kappa=(ONE, ONE, ONE))
    value = formfactor_value(at_one, i)
    parts = [Verdict.compare("derivative", formfactor_derivative(at_one, i), value, i=i)]
    for p in pivots or ():
        parts.append(Verdict.compare("pivot-independence", formfactor_value(at_one, i, p), value,
                                     i=i, pivot=p))
    return Verdict.combine(f"formfactor-{i}", parts, a=cfg.a, b=cfg.b)


def supertrace_check(cfg, p=None):
    """F11 + F22 - F33 vanishes between distinct on-shell states."""
    at_one = cfg.replace(kappa=(ONE, ONE, ONE))
    vals = [formfactor_value(at_one, i, p) for i in (1, 2, 3)]
    return Verdict.compare("supertrace", vals[0] + vals[1] - vals[2], ZERO)
