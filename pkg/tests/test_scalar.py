import random

import pytest
from hypothesis import given

from bethe_sp.errors import BudgetExceeded, ConstraintViolation, MissingRValue
from bethe_sp.kernels import kernel_f, kernel_g, prod_kernel
from bethe_sp.scalar import (
    SEMI,
    TWISTED,
    RAssignment,
    SumStats,
    analytic_term_counts,
    apply_constraints,
    build_N,
    derivation_checks,
    det_rep,
    sum_formula,
    swap_CB_check,
)
from conftest import G, sampler, seeds
import oracles as O
from oracles import q


def _cfg(a, b, seed):
    return sampler(seed).config(a, b)


def _sets(cfg):
    return [[q(x) for x in getattr(cfg, n)] for n in ("uC", "vC", "uB", "vB")]


def _qtables(r):
    return {q(k): q(v) for k, v in r.r1_at.items()}, {q(k): q(v) for k, v in r.r3_at.items()}


# --- constraints ----------------------------------------------------------------


def test_constraint_single_u():
    cfg = _cfg(1, 0, 1)
    r = apply_constraints(cfg)
    assert r.r1(cfg.uC[0]) == cfg.varkappa
    assert r.provenance[("r1", cfg.uC[0])] == "constrained"
    assert r.provenance[("r1", cfg.uB[0])] == "free"


def test_constraint_single_v():
    cfg = _cfg(1, 1, 2)
    r = apply_constraints(cfg)
    assert r.r3(cfg.vB[0]) == kernel_f(cfg.vB[0], cfg.uB[0], cfg.c)


@pytest.mark.parametrize("seed", range(3))
def test_constraints_multiply_over_subsets(seed):
    cfg = _cfg(2, 1, seed)
    r = apply_constraints(cfg)
    c = cfg.c
    uC, vC = tuple(cfg.uC), tuple(cfg.vC)
    # product over all of uC: the f-ratios inside uC cancel pairwise
    lhs = r.r1(uC[0]) * r.r1(uC[1])
    assert lhs == cfg.varkappa ** 2 * prod_kernel("f", vC, uC, c)
    uC_, vC_, uB_, vB_ = _sets(cfg)
    r1o, r3o = O.semi_constraints(uC_, vC_, uB_, vB_, q(cfg.varkappa), q(c))
    for p in uC:
        assert q(r.r1(p)) == r1o[q(p)]
    for p in cfg.vB:
        assert q(r.r3(p)) == r3o[q(p)]


def test_twisted_constraints_against_oracle():
    cfg = _cfg(2, 2, 5)
    r = apply_constraints(cfg, TWISTED)
    r1o, r3o = O.twisted_constraints(*_sets(cfg), [q(k) for k in cfg.kappa], q(cfg.c))
    assert _qtables(r) == (r1o, r3o)


def test_constraint_violation_detected():
    cfg = _cfg(1, 1, 3)
    r = apply_constraints(cfg)
    bad = RAssignment(dict(r.r1_at), dict(r.r3_at), dict(r.provenance))
    bad.r1_at[cfg.uC[0]] = bad.r1_at[cfg.uC[0]] + 1
    with pytest.raises(ConstraintViolation):
        build_N(cfg, bad, SEMI)
    with pytest.raises(ConstraintViolation):
        build_N(cfg, None, SEMI)


# --- sum formula -------------------------------------------------------------------


def test_sum_empty():
    cfg = _cfg(0, 0, 0)
    assert sum_formula(cfg, apply_constraints(cfg)) == G(1)
    assert det_rep(cfg, apply_constraints(cfg)) == G(1)


@pytest.mark.parametrize("seed", range(5))
def test_sum_one_zero_by_hand(seed):
    cfg = _cfg(1, 0, seed)
    r = apply_constraints(cfg)
    uc, ub = cfg.uC[0], cfg.uB[0]
    want = kernel_g(uc, ub, cfg.c) * (r.r1(ub) - r.r1(uc))
    assert sum_formula(cfg, r) == want
    assert det_rep(cfg, r) == want


@pytest.mark.parametrize("seed", range(5))
def test_sum_zero_one_by_hand(seed):
    cfg = _cfg(0, 1, seed)
    r = apply_constraints(cfg)
    vc, vb = cfg.vC[0], cfg.vB[0]
    want = kernel_g(vc, vb, cfg.c) * (r.r3(vb) - r.r3(vc))
    assert sum_formula(cfg, r) == want
    assert det_rep(cfg, r) == want


@pytest.mark.parametrize("a, b", [(1, 1), (2, 1), (1, 2), (2, 2)])
def test_sum_against_oracle_generic_r(a, b):
    # the sum formula holds for arbitrary r-values, not only constrained ones
    s = sampler(400 + 10 * a + b)
    cfg = s.config(a, b)
    r1 = {p: s.gaussian(True) for p in tuple(cfg.uC) + tuple(cfg.uB)}
    r3 = {p: s.gaussian(True) for p in tuple(cfg.vC) + tuple(cfg.vB)}
    r = RAssignment(r1, r3)
    want = O.sum_formula(*_sets(cfg), {q(k): q(v) for k, v in r1.items()},
                         {q(k): q(v) for k, v in r3.items()}, q(cfg.c))
    assert q(sum_formula(cfg, r)) == want


def test_sum_stats_and_budget():
    cfg = _cfg(2, 2, 8)
    r = apply_constraints(cfg)
    stats = SumStats()
    sum_formula(cfg, r, stats)
    assert (stats.outer_terms, stats.inner_terms) == analytic_term_counts(2, 2) == (36, 146)
    assert stats.total == 182
    with pytest.raises(BudgetExceeded):
        sum_formula(cfg, r, deadline=0)


def test_analytic_counts():
    assert analytic_term_counts(3, 3)[0] == 400
    assert analytic_term_counts(0, 0) == (1, 2)


# --- the matrix ----------------------------------------------------------------------


@pytest.mark.parametrize("a, b", [(0, 1), (1, 0), (1, 1), (2, 1), (1, 2), (2, 2)])
def test_semi_entries_against_transcription(a, b):
    cfg = _cfg(a, b, 500 + 10 * a + b)
    r = apply_constraints(cfg)
    r1, r3 = _qtables(r)
    rows = O.semi_N(*_sets(cfg), r1, r3, q(cfg.varkappa), q(cfg.c))
    m = build_N(cfg, r).matrix
    assert [[q(m[j, k]) for k in range(a + b)] for j in range(a + b)] == rows


@pytest.mark.parametrize("a, b", [(1, 0), (0, 1), (1, 1), (2, 1), (2, 2)])
def test_twisted_entries_against_transcription(a, b):
    cfg = _cfg(a, b, 600 + 10 * a + b)
    rows = O.twisted_N(*_sets(cfg), [q(k) for k in cfg.kappa], q(cfg.c))
    m = build_N(cfg, None, TWISTED).matrix
    assert [[q(m[j, k]) for k in range(a + b)] for j in range(a + b)] == rows


def test_zero_one_single_entry():
    cfg = _cfg(0, 1, 11)
    r = apply_constraints(cfg)
    c = cfg.c
    vc, vb = cfg.vC[0], cfg.vB[0]
    m = build_N(cfg, r).matrix
    assert m.rows == 1
    assert m[0, 0] == kernel_g(vc, vb, c) * (1 - r.r3(vc))


@given(seeds)
def test_right_lower_block_diagonal(seed):
    cfg = sampler(seed).config(2, 3)
    m = build_N(cfg, apply_constraints(cfg)).matrix
    a, b = 2, 3
    for j in range(b):
        for k in range(a, a + b):
            if j != k - a:
                assert m[a + j, k] == G(0)


class RecordingR(RAssignment):
    def __init__(self, base):
        super().__init__(base.r1_at, base.r3_at, base.provenance, base.variant)
        self.seen = []

    def r1(self, point):
        self.seen.append(("r1", point))
        return super().r1(point)

    def r3(self, point):
        self.seen.append(("r3", point))
        return super().r3(point)


@pytest.mark.parametrize("a, b", [(1, 1), (2, 2), (3, 2)])
def test_r_dependence_audit(a, b):
    cfg = _cfg(a, b, 700 + a + b)
    rec = RecordingR(apply_constraints(cfg))
    build_N(cfg, rec)
    for tag, p in rec.seen:
        assert not (tag == "r3" and p in cfg.uB)
        assert not (tag == "r1" and p in cfg.vC)
    # the entries also do not change when those values are altered
    poisoned = RAssignment(dict(rec.r1_at), dict(rec.r3_at), rec.provenance)
    for p in cfg.vC:
        poisoned.r1_at[p] = G(12345)
    for p in cfg.uB:
        poisoned.r3_at[p] = G(54321)
    assert build_N(cfg, poisoned).matrix == build_N(cfg, rec).matrix


def test_missing_free_value():
    cfg = _cfg(1, 1, 12)
    r = apply_constraints(cfg)
    del r.r1_at[cfg.uB[0]]
    with pytest.raises(MissingRValue):
        det_rep(cfg, r)


@given(seeds)
def test_det_rep_permutation_invariant(seed):
    rng = random.Random(seed)
    cfg = sampler(seed).config(2, 2)
    value = det_rep(cfg, apply_constraints(cfg))
    perm = {}
    for name in ("uC", "vC", "uB", "vB"):
        xs = list(getattr(cfg, name))
        rng.shuffle(xs)
        perm[name] = xs
    shuffled = cfg.replace(**perm)
    assert det_rep(shuffled, apply_constraints(shuffled)) == value


# --- main identity ---------------------------------------------------------------------


@pytest.mark.parametrize("a, b", [(1, 0), (2, 2)])
def test_det_equals_sum(a, b):
    s = sampler(800 + a + b)
    for _ in range(3):
        cfg = s.config(a, b)
        r = apply_constraints(cfg)
        assert det_rep(cfg, r) == sum_formula(cfg, r)


def test_det_against_oracle_determinant():
    cfg = _cfg(2, 1, 13)
    r = apply_constraints(cfg)
    r1, r3 = _qtables(r)
    uC, vC, uB, vB = _sets(cfg)
    rows = O.semi_N(uC, vC, uB, vB, r1, r3, q(cfg.varkappa), q(cfg.c))
    want = O.det_prefactor(uC, vC, uB, q(cfg.c)) * O.leibniz(rows)
    assert want == O.sum_formula(uC, vC, uB, vB, r1, r3, q(cfg.c))
    assert q(det_rep(cfg, r)) == want


@pytest.mark.parametrize("a, b", [(1, 1), (2, 1), (2, 2)])
def test_twisted_equals_sum(a, b):
    s = sampler(900 + a + b)
    for _ in range(2):
        cfg = s.config(a, b)
        r = apply_constraints(cfg, TWISTED)
        assert det_rep(cfg, r, TWISTED) == sum_formula(cfg, r)


@pytest.mark.parametrize("a, b", [(0, 0), (1, 1), (2, 1)])
def test_swap(a, b):
    assert swap_CB_check(_cfg(a, b, 30 + a + b)).passed


@pytest.mark.parametrize("a, b", [(1, 1), (2, 1), (1, 2), (2, 2)])
def test_derivation_identities(a, b):
    v = derivation_checks(_cfg(a, b, 40 + a + b))
    assert v.passed, v.failures()


def test_unknown_variant():
    cfg = _cfg(1, 1, 1)
    with pytest.raises(ValueError):
        build_N(cfg, None, "other")
