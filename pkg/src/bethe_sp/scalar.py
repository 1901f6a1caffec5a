"""Scalar products: the brute-force sum formula and its determinant form.

Two constraint variants are supported:

``semi``     r1 on uC and r3 on vB are tied to the parameters (with a free
             constant varkappa); r1 on uB and r3 on vC stay free.
``twisted``  additionally r1 on uB and r3 on vC are constrained, and
             varkappa = kappa2/kappa1.
"""

import time
from dataclasses import dataclass, field
from math import comb

from .dwpf import K
from .errors import BudgetExceeded, ConstraintViolation, MissingRValue
from .exactnum import ONE, ZERO, ScalarMatrix, det_exact
from .highest import ZArgs, Z_omega
from .kernels import (
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
from .partitions import all_splits, splits
from .verdict import Verdict

SEMI = "semi"
TWISTED = "twisted"
VARIANTS = (SEMI, TWISTED)


@dataclass
class RAssignment:
    """Values of r1 on uC and uB, of r3 on vC and vB, with provenance."""

    r1_at: dict
    r3_at: dict
    provenance: dict = field(default_factory=dict)
    variant: str = SEMI

    def r1(self, point):
        try:
            return self.r1_at[point]
        except KeyError:
            raise MissingRValue(f"r1 is not defined at {point}") from None

    def r3(self, point):
        try:
            return self.r3_at[point]
        except KeyError:
            raise MissingRValue(f"r3 is not defined at {point}") from None

    def prod_r1(self, pts):
        out = ONE
        for p in pts:
            out = out * self.r1(p)
        return out

    def prod_r3(self, pts):
        out = ONE
        for p in pts:
            out = out * self.r3(p)
        return out


def effective_varkappa(cfg, variant):
    if variant == TWISTED:
        return cfg.kappa[1] / cfg.kappa[0]
    return cfg.varkappa


def _bethe_r1(j, us, vs, c):
    """prod_{k != j} f(u_j, u_k)/f(u_k, u_j) * f(v, u_j)."""
    uj = us[j]
    others = us[:j] + us[j + 1:]
    return (prod_kernel("f", uj, others, c) * prod_kernel(inv_f, others, uj, c)
            * prod_kernel("f", vs, uj, c))


def constraint_values(cfg, variant):
    """Right-hand sides of the constraints: (r1 dict, r3 dict)."""
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    c = cfg.c
    vk = effective_varkappa(cfg, variant)
    uC, vC, uB, vB = tuple(cfg.uC), tuple(cfg.vC), tuple(cfg.uB), tuple(cfg.vB)
    r1 = {uC[j]: vk * _bethe_r1(j, uC, vC, c) for j in range(cfg.a)}
    r3 = {v: prod_kernel("f", v, uB, c) for v in vB}
    if variant == TWISTED:
        k1, k2, k3 = cfg.kappa
        r1.update({uB[j]: _bethe_r1(j, uB, vB, c) for j in range(cfg.a)})
        r3.update({v: k2 / k3 * prod_kernel("f", v, uC, c) for v in vC})
    return r1, r3


def apply_constraints(cfg, variant=SEMI):
    """Fill the constrained r-values and read the free ones from the tables."""
    r1c, r3c = constraint_values(cfg, variant)
    r1_at, r3_at, prov = {}, {}, {}
    for p in tuple(cfg.uC) + tuple(cfg.uB):
        if p in r1c:
            r1_at[p] = r1c[p]
            prov[("r1", p)] = "constrained"
        else:
            r1_at[p] = cfg.r1(p)
            prov[("r1", p)] = "free"
    for p in tuple(cfg.vC) + tuple(cfg.vB):
        if p in r3c:
            r3_at[p] = r3c[p]
            prov[("r3", p)] = "constrained"
        else:
            r3_at[p] = cfg.r3(p)
            prov[("r3", p)] = "free"
    return RAssignment(r1_at, r3_at, prov, variant)


def check_constraints(cfg, r, variant):
    """Raise :class:`ConstraintViolation` unless ``r`` satisfies ``variant``."""
    r1c, r3c = constraint_values(cfg, variant)
    for tag, want, have in (("r1", r1c, r.r1_at), ("r3", r3c, r.r3_at)):
        for p, value in want.items():
            if r.provenance.get((tag, p), "constrained") != "constrained":
                raise ConstraintViolation(f"{tag} at {p} must be constrained for {variant}")
            if have.get(p) != value:
                raise ConstraintViolation(f"{tag} at {p} violates the {variant} constraint")


# --- brute-force sum ----------------------------------------------------------


@dataclass
class SumStats:
    outer_terms: int = 0
    inner_terms: int = 0
    seconds: float = 0.0

    @property
    def total(self):
        return self.outer_terms + self.inner_terms


def analytic_term_counts(a, b):
    """(outer, inner) term counts of :func:`sum_formula` by binomial bookkeeping."""
    outer = inner = 0
    for k in range(a + 1):
        for n in range(b + 1):
            w = comb(a, k) ** 2 * comb(b, n) ** 2
            outer += w
            inner += w * (comb(a - k + n, n) + comb(k + b - n, k))
    return outer, inner


def sum_formula(cfg, r, stats=None, deadline=None):
    """Scalar product of generic Bethe vectors as a four-fold partition sum.

    Both highest coefficients are evaluated by the omega-split sum. When
    ``deadline`` (a ``time.monotonic`` value) passes, raises
    :class:`BudgetExceeded`.
    """
    c = cfg.c
    a, b = cfg.a, cfg.b
    uC, vC, uB, vB = tuple(cfg.uC), tuple(cfg.vC), tuple(cfg.uB), tuple(cfg.vB)
    stats = stats if stats is not None else SumStats()
    counter = [0]
    start = time.monotonic()
    norm = prod_kernel(inv_f, vC, uC, c) * prod_kernel(inv_f, vB, uB, c)
    total = ZERO
    for k in range(a + 1):
        uC_splits = list(splits(a, k))
        uB_splits = list(splits(a, k))
        for n in range(b + 1):
            vC_splits = list(splits(b, n))
            vB_splits = list(splits(b, n))
            for s_uC in uC_splits:
                uCI, uCII = s_uC.pick(uC)
                w_uC = r.prod_r1(uCII) * prod_kernel("f", uCI, uCII, c)
                for s_uB in uB_splits:
                    uBI, uBII = s_uB.pick(uB)
                    w_uB = w_uC * r.prod_r1(uBI) * prod_kernel("f", uBII, uBI, c)
                    for s_vC in vC_splits:
                        vCI, vCII = s_vC.pick(vC)
                        w_vC = (w_uB * r.prod_r3(vCII) * prod_kernel(kernel_g, vCI, vCII, c)
                                * prod_kernel("f", vCI, uCI, c))
                        for s_vB in vB_splits:
                            vBI, vBII = s_vB.pick(vB)
                            stats.outer_terms += 1
                            if deadline is not None and time.monotonic() > deadline:
                                stats.inner_terms += counter[0]
                                stats.seconds += time.monotonic() - start
                                raise BudgetExceeded("sum formula exceeded its time budget")
                            weight = (w_vC * r.prod_r3(vBI) * prod_kernel(kernel_g, vBII, vBI, c)
                                      * prod_kernel("f", vBII, uBII, c))
                            z1 = Z_omega(ZArgs(uCII, uBII, vCI, vBI, c), counter)
                            z2 = Z_omega(ZArgs(uBI, uCI, vBII, vCII, c), counter)
                            if weight and z1 and z2:
                                total = total + weight * z1 * z2
    stats.inner_terms += counter[0]
    stats.seconds += time.monotonic() - start
    return total * norm


# --- determinant representation --------------------------------------------


@dataclass(frozen=True)
class NMatrixSpec:
    variant: str
    matrix: ScalarMatrix
    x: tuple
    a: int
    b: int


def _semi_rows(cfg, r, xs):
    c = cfg.c
    a, b = cfg.a, cfg.b
    uC, vC, uB, vB = tuple(cfg.uC), tuple(cfg.vC), tuple(cfg.uB), tuple(cfg.vB)
    vk = cfg.varkappa
    sgn = -1 if (a - 1) % 2 else 1
    rows = [[None] * (a + b) for _ in range(a + b)]
    for k, x in enumerate(xs):
        # every product below that vanishes for x in one of the sets is
        # computed first, so the r-value it multiplies is never looked up
        kill_v = prod_kernel(inv_f, vC, x, c)
        r1x = r.r1(x) if kill_v else ZERO
        h_uC_x = prod_kernel(kernel_h, uC, x, c)
        h_x_uC = prod_kernel(kernel_h, x, uC, c)
        for j, u in enumerate(uC):
            first = sgn * r1x * kill_v * kernel_t(u, x, c) * h_uC_x if r1x else ZERO
            rows[j][k] = first + vk * kernel_t(x, u, c) * h_x_uC
        if not b:
            continue
        kill_u = prod_kernel(inv_f, x, uB, c)
        phi = 1 - r.r3(x) * kill_u if kill_u else ONE
        g_x_vB = prod_kernel(kernel_g, x, vB, c)
        lead = g_x_vB * phi
        inv_gC = prod_kernel(inv_g, x, vC, c)
        h_x_uB = prod_kernel(kernel_h, x, uB, c)
        h_uB_x = prod_kernel(kernel_h, uB, x, c)
        rtail = ZERO
        if inv_gC:
            rtail = sgn * r.r1(x) * h_uB_x * inv_gC * prod_kernel(inv_f, vB, x, c) / vk
        for j, v in enumerate(vC):
            others = vC[:j] + vC[j + 1:]
            term = h_x_uB * prod_kernel(inv_g, x, others, c)
            if rtail:
                term = term + rtail * r.r3(v) * prod_kernel(inv_f, v, uC, c) * inv_h(v, x, c)
            rows[a + j][k] = lead * term
    return rows


def _twisted_rows(cfg, xs, kappa=None):
    c = cfg.c
    a, b = cfg.a, cfg.b
    uC, vC, uB, vB = tuple(cfg.uC), tuple(cfg.vC), tuple(cfg.uB), tuple(cfg.vB)
    k1, k2, k3 = kappa if kappa is not None else cfg.kappa
    rows = [[None] * (a + b) for _ in range(a + b)]
    for k, x in enumerate(xs):
        h_x_uB = prod_kernel(kernel_h, x, uB, c)
        inv_h_x_uB = prod_kernel(inv_h, x, uB, c)
        left = (prod_kernel("f", vB, x, c) * prod_kernel(kernel_h, uC, x, c)
                * prod_kernel(inv_f, vC, x, c) * prod_kernel(inv_h, uB, x, c))
        right = k2 / k1 * prod_kernel(kernel_h, x, uC, c) * inv_h_x_uB
        for j, u in enumerate(uC):
            rows[j][k] = h_x_uB * (kernel_t(u, x, c) * left + kernel_t(x, u, c) * right)
        if not b:
            continue
        ratio = prod_kernel("f", x, uC, c) * prod_kernel(inv_f, x, uB, c)
        lead = h_x_uB * prod_kernel(kernel_g, x, vB, c) * (1 - k2 / k3 * ratio)
        inv_gC = prod_kernel(inv_g, x, vC, c)
        for j, v in enumerate(vC):
            others = vC[:j] + vC[j + 1:]
            term = prod_kernel(inv_g, x, others, c) + k1 / k3 * inv_h(v, x, c) * inv_gC
            rows[a + j][k] = lead * term
    return rows


def build_N(cfg, r=None, variant=SEMI):
    """Assemble the (a+b) x (a+b) matrix with columns indexed by x = {uB, vC}."""
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    xs = tuple(cfg.uB) + tuple(cfg.vC)
    if variant == SEMI:
        if r is None:
            raise ConstraintViolation("the semi-on-shell matrix needs r-values")
        check_constraints(cfg, r, SEMI)
        rows = _semi_rows(cfg, r, xs)
    else:
        if r is not None:
            check_constraints(cfg, r, TWISTED)
        rows = _twisted_rows(cfg, xs)
    n = cfg.a + cfg.b
    return NMatrixSpec(variant, ScalarMatrix(n, n, tuple(e for row in rows for e in row)),
                       xs, cfg.a, cfg.b)


def det_prefactor(cfg):
    c = cfg.c
    xs = tuple(cfg.uB) + tuple(cfg.vC)
    return delta_minus(xs, c) * delta_plus(cfg.uC, c) * delta_plus(cfg.vC, c)


def det_rep(cfg, r=None, variant=SEMI):
    """Delta(x) Delta'(uC) Delta'(vC) det N."""
    spec = build_N(cfg, r, variant)
    return det_prefactor(cfg) * det_exact(spec.matrix)


def swap_CB_check(cfg):
    """Determinant form of the mirrored configuration against the sum formula.

    Also checks that the sum formula itself is symmetric under the swap.
    """
    mirror = cfg.mirrored()
    r = apply_constraints(mirror, SEMI)
    s_mirror = sum_formula(mirror, r)
    parts = [
        Verdict.compare("mirror-det-vs-sum", det_rep(mirror, r, SEMI), s_mirror),
        Verdict.compare("sum-swap-symmetry", sum_formula(cfg, r), s_mirror),
    ]
    return Verdict.combine("swap-CB", parts, a=cfg.a, b=cfg.b)


# --- intermediate identities -------------------------------------------------


def _hat_r1(cfg, r, j):
    return r.r1(cfg.uB[j]) / _bethe_r1(j, tuple(cfg.uB), tuple(cfg.vB), cfg.c)


def _hat_r3(cfg, r, v):
    return r.r3(v) * prod_kernel(inv_f, v, cfg.uC, cfg.c)


def _subsets(seq):
    for sp in all_splits(len(seq)):
        yield sp.pick(seq)


def _Lv_sum(cfg, r, vs):
    c = cfg.c
    total = ZERO
    for sp in all_splits(len(vs)):
        vii, _ = sp.pick(vs)
        total = total + (-1) ** len(vii) * r.prod_r3(vii) * prod_kernel(inv_f, vii, cfg.uB, c)
    return total


def _phi(cfg, r, z):
    return 1 - r.r3(z) * prod_kernel(inv_f, z, cfg.uB, cfg.c)


def _G_sum(cfg, r, uBI_idx, vCI):
    c = cfg.c
    vk = cfg.varkappa
    uB = tuple(cfg.uB)
    total = ZERO
    n = len(uBI_idx)
    for m in range(n + 1):
        for su in splits(n, m):
            i_idx, iv_idx = su.pick(uBI_idx)
            ui, uiv = tuple(uB[i] for i in i_idx), tuple(uB[i] for i in iv_idx)
            hat1 = ONE
            for i in i_idx:
                hat1 = hat1 * _hat_r1(cfg, r, i)
            for sv in splits(n, m):
                vi, viv = sv.pick(vCI)
                hat3 = ONE
                for v in vi:
                    hat3 = hat3 * _hat_r3(cfg, r, v)
                total = total + (
                    vk ** (-m) * hat3 * hat1
                    * prod_kernel(kernel_g, ui, uiv, c) * prod_kernel(kernel_g, viv, vi, c)
                    * prod_kernel(kernel_g, uiv, viv, c) * prod_kernel(inv_h, vi, ui, c)
                )
    return total


def _G_det(cfg, r, uBI_idx, vCI):
    c = cfg.c
    uBI = tuple(cfg.uB[i] for i in uBI_idx)
    rows = []
    for v in vCI:
        hat3 = _hat_r3(cfg, r, v)
        rows.append([
            kernel_g(cfg.uB[i], v, c)
            + hat3 * _hat_r1(cfg, r, i) * inv_h(v, cfg.uB[i], c) / cfg.varkappa
            for i in uBI_idx
        ])
    return delta_minus(vCI, c) * delta_plus(uBI, c) * det_exact(rows)


def _M_entry(cfg, r, u, w):
    c = cfg.c
    a = cfg.a
    kill = prod_kernel(inv_f, cfg.vC, w, c)
    out = cfg.varkappa * kernel_t(w, u, c) * prod_kernel(kernel_h, w, cfg.uC, c)
    if kill:
        out = out + ((-1) ** (a - 1) * r.r1(w) * kill * kernel_t(u, w, c)
                     * prod_kernel(kernel_h, cfg.uC, w, c))
    return out


def _Lu_sum(cfg, r, uBII, vCI):
    c = cfg.c
    a = cfg.a
    vk = cfg.varkappa
    total = ZERO
    for sp in all_splits(len(uBII)):
        uii, uiii = sp.pick(uBII)
        kii = len(uii)
        shifted = tuple(u - c for u in uii) + tuple(vCI) + tuple(uiii)
        total = total + (
            K(shifted, cfg.uC, c) * vk ** (a - kii) * (-1) ** kii * r.prod_r1(uii)
            * prod_kernel(inv_f, cfg.vC, uii, c) * prod_kernel("f", cfg.uC, uii, c)
            * prod_kernel("f", uiii, uii, c) * prod_kernel("f", vCI, uii, c)
        )
    return total


def _Lu_det(cfg, r, ws):
    c = cfg.c
    rows = [[_M_entry(cfg, r, u, w) for w in ws] for u in cfg.uC]
    return delta_plus(cfg.uC, c) * delta_minus(ws, c) * det_exact(rows)


def derivation_checks(cfg, r=None, reference=None):
    """Closed forms of the intermediate sums and the factorized sum.

    ``reference`` is the sum-formula value to compare against; computed
    when omitted.
    """
    if r is None:
        r = apply_constraints(cfg, SEMI)
    c = cfg.c
    a, b = cfg.a, cfg.b
    uB, vC, vB = tuple(cfg.uB), tuple(cfg.vC), tuple(cfg.vB)
    parts = []

    for vII, _ in _subsets(vC):
        closed = ONE
        for v in vII:
            closed = closed * _phi(cfg, r, v)
        parts.append(Verdict.compare("Lv", _Lv_sum(cfg, r, vII), closed, size=len(vII)))

    folded = ZERO
    for n in range(min(a, b) + 1):
        for su in splits(a, n):
            uI_idx, uII_idx = su.subsetI, su.subsetII
            uBI, uBII = su.pick(uB)
            g_det = g_sum = None
            for sv in splits(b, n):
                vCI, vCII = sv.pick(vC)
                g_sum = _G_sum(cfg, r, uI_idx, vCI)
                g_det = _G_det(cfg, r, uI_idx, vCI)
                parts.append(Verdict.compare("G", g_sum, g_det, uBI=list(uI_idx),
                                             vCI=list(sv.subsetI)))
                lu_sum = _Lu_sum(cfg, r, uBII, vCI)
                lu_det = _Lu_det(cfg, r, uBII + vCI)
                parts.append(Verdict.compare("Lu", lu_sum, lu_det, uBII=list(uII_idx),
                                             vCI=list(sv.subsetI)))
                lv = ONE
                for v in vCII:
                    lv = lv * _phi(cfg, r, v)
                weight = (
                    prod_kernel("f", uBI, uBII, c) * prod_kernel(kernel_h, uBI, uBI, c)
                    * prod_kernel(kernel_g, vCII, vCI, c) * prod_kernel(kernel_g, vB, uBI, c)
                    * prod_kernel(kernel_g, vB, vCII, c) * prod_kernel(kernel_g, vCII, uBII, c)
                    * prod_kernel(kernel_h, vCII, uB, c)
                )
                folded = folded + weight * g_sum * lu_sum * lv
    folded = (-1) ** b * folded
    if reference is None:
        reference = sum_formula(cfg, r)
    parts.append(Verdict.compare("factorized-sum", folded, reference))
    return Verdict.combine("derivation", parts, a=a, b=b)
