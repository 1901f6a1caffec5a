import random

import pytest
from hypothesis import given

from bethe_sp.dwpf import (
    K,
    lemma_gg_check,
    lemma_KK_check,
    lemma_longdet_check,
    row_stack_check,
    single_sum_checks,
)
from bethe_sp.errors import CardinalityMismatch
from bethe_sp.exactnum import ZERO
from bethe_sp.kernels import kernel_f, kernel_g, kernel_h, kernel_t
from bethe_sp.spectral import omega
from conftest import G, sampler, seeds
import oracles as O
from oracles import q


def test_K_empty():
    assert K((), (), G(1)) == G(1)


@given(seeds)
def test_K_one_is_g(seed):
    s = sampler(seed)
    c = s.gaussian(True)
    u, v = s.points(2, c)
    assert K((u,), (v,), c) == kernel_g(u, v, c)


def test_K_two_by_hand():
    c = G(1)
    us, vs = (G(4), G(7)), (G(1), G(2))
    qu, qv, qc = [q(x) for x in us], [q(x) for x in vs], q(c)
    # Delta'(u) Delta(v) h(u, v) det t, with each factor spelled out
    pre = O.g(qu[0], qu[1], qc) * O.g(qv[1], qv[0], qc)
    for u in qu:
        for v in qv:
            pre = pre * O.h(u, v, qc)
    t = [[O.t(u, v, qc).at0() for v in qv] for u in qu]
    want = pre.at0() * (t[0][0] * t[1][1] - t[0][1] * t[1][0])
    assert q(K(us, vs, c)) == want


@given(seeds)
def test_K_against_oracle_and_symmetric(seed):
    s = sampler(seed)
    rng = random.Random(seed)
    c = s.gaussian(True)
    n = rng.randint(1, 3)
    us = s.points(n, c)
    vs = s.points(n, c, us)
    value = K(us, vs, c)
    assert q(value) == O.K([q(x) for x in us], [q(x) for x in vs], q(c)).at0()
    pu, pv = list(us), list(vs)
    rng.shuffle(pu)
    rng.shuffle(pv)
    assert K(pu, pv, c) == value


def test_K_not_symmetric_under_exchange():
    s = sampler(3)
    c = s.gaussian(True)
    us = s.points(2, c)
    vs = s.points(2, c, us)
    assert K(us, vs, c) != K(vs, us, c)


def test_K_mismatch():
    with pytest.raises(CardinalityMismatch):
        K((G(1),), (), G(1))


def _pts(s, m1, m2):
    c = s.gaussian(True)
    pts = s.points(2 * (m1 + m2), c)
    return pts[:m1 + m2], pts[m1 + m2:2 * m1 + m2], pts[2 * m1 + m2:], c


def test_gg_single_partition():
    s = sampler(1)
    ws, us, vs, c = _pts(s, 1, 0)
    v = lemma_gg_check(ws, us, vs, c)
    assert v.passed and v.lhs == kernel_g(ws[0], us[0], c)


@pytest.mark.parametrize("m1, m2", [(1, 1), (2, 1), (1, 2), (2, 2), (0, 2)])
def test_gg_random(m1, m2):
    s = sampler(10 * m1 + m2)
    for _ in range(5):
        ws, us, vs, c = _pts(s, m1, m2)
        v = lemma_gg_check(ws, us, vs, c)
        assert v.passed
        qw, qu, qv, qc = ([q(x) for x in xs] for xs in (ws, us, vs, [c]))
        qc = qc[0]
        total = O.Lead(O.Z0)
        for wi, wii in O.two_way(qw, m1):
            total = total + O.prod(O.g, wi, qu, qc) * O.prod(O.g, wii, qv, qc) \
                * O.prod(O.g, wii, wi, qc)
        assert q(v.lhs) == total.at0()


def test_KK_empty_first_set():
    s = sampler(2)
    ws, us, vs, c = _pts(s, 0, 2)
    v = lemma_KK_check(ws, us, vs, c)
    assert v.passed and v.lhs == K(vs, ws, c)


def test_KK_single():
    s = sampler(4)
    ws, us, vs, c = _pts(s, 1, 0)
    w, u = ws[0], us[0]
    assert kernel_g(w, u, c) == -kernel_f(w, u, c) * kernel_g(u - c, w, c)
    assert lemma_KK_check(ws, us, vs, c).passed


@pytest.mark.parametrize("m1, m2", [(1, 1), (2, 1), (1, 2), (2, 2)])
def test_KK_random(m1, m2):
    s = sampler(100 + 10 * m1 + m2)
    for _ in range(5):
        ws, us, vs, c = _pts(s, m1, m2)
        v = lemma_KK_check(ws, us, vs, c)
        assert v.passed
        qw, qu, qv, qc = [q(x) for x in ws], [q(x) for x in us], [q(x) for x in vs], q(c)
        total = O.Lead(O.Z0)
        for wi, wii in O.two_way(qw, m1):
            total = total + O.K(wi, qu, qc) * O.K(qv, wii, qc) * O.prod(O.f, wii, wi, qc)
        assert q(v.lhs) == total.at0()


def test_longdet_m1_c1_zero():
    s = sampler(5)
    c = s.gaussian(True)
    w, xi = s.points(2, c)
    c2 = s.gaussian(True)
    v = lemma_longdet_check((w,), (xi,), {w: ZERO}, {w: c2}, c)
    assert v.passed and v.lhs == kernel_g(w, xi, c) * c2


@pytest.mark.parametrize("m", [1, 2, 3])
def test_longdet_random(m):
    s = sampler(200 + m)
    for _ in range(5):
        c = s.gaussian(True)
        pts = s.points(2 * m, c)
        ws, xis = pts[:m], pts[m:]
        c1 = {w: s.gaussian() for w in ws}
        c2 = {w: s.gaussian() for w in ws}
        v = lemma_longdet_check(ws, xis, c1, c2, c)
        assert v.passed
        qw, qx, qc = [q(x) for x in ws], [q(x) for x in xis], q(c)
        sg = (-1) ** m
        rows = [[q(c2[w]) * O.t(qw[k], xi, qc).at0() * O.prod(O.h, [qw[k]], qx, qc).at0()
                 + sg * q(c1[w]) * O.t(xi, qw[k], qc).at0() * O.prod(O.h, qx, [qw[k]], qc).at0()
                 for k, w in enumerate(ws)] for xi in qx]
        want = O.delta_prime(qx, qc).at0() * O.delta(qw, qc).at0() * O.leibniz(rows)
        assert q(v.rhs) == want


def test_row_stack_trivial():
    s = sampler(6)
    c = s.gaussian(True)
    x, y = s.points(2, c)
    v = row_stack_check(lambda j, p: kernel_t(y, p, c), None, (x,), 1, 0, c)
    assert v.passed and v.lhs == kernel_t(y, x, c)


@pytest.mark.parametrize("a, b", [(1, 1), (2, 1), (1, 2), (2, 2)])
def test_row_stack_random(a, b):
    s = sampler(300 + 10 * a + b)
    for _ in range(5):
        c = s.gaussian(True)
        xs = s.points(a + b, c)
        ys = s.points(max(a, b), c, xs)
        v = row_stack_check(lambda j, p: kernel_t(ys[j], p, c),
                            lambda j, p: kernel_g(p, ys[j], c), xs, a, b, c)
        assert v.passed
        qx, qy, qc = [q(x) for x in xs], [q(y) for y in ys], q(c)
        rows = [[O.t(qy[j], x, qc).at0() for x in qx] for j in range(a)] + \
            [[O.g(x, qy[j], qc).at0() for x in qx] for j in range(b)]
        assert q(v.rhs) == O.delta(qx, qc).at0() * O.leibniz(rows)


def test_single_sums_one_term():
    s = sampler(7)
    cfg = s.config(0, 1)
    x = s.points(1, cfg.c, cfg.all_points())[0]
    c = cfg.c
    (w,) = omega(cfg).components
    lhs = kernel_g(x, cfg.vC[0], c) * w
    assert lhs == kernel_g(x, cfg.vC[0], c) / kernel_g(x, cfg.vB[0], c) - 1
    assert single_sum_checks(cfg, [x]).passed
    cfg = s.config(1, 0)
    (w,) = omega(cfg).components
    uc, ub = cfg.uC[0], cfg.uB[0]
    c = cfg.c
    lhs = kernel_t(uc, x, c) * w
    assert lhs == kernel_h(ub, x, c) / kernel_h(uc, x, c) - kernel_g(x, uc, c) / kernel_g(x, ub, c)


@given(seeds)
def test_single_sums_random(seed):
    s = sampler(seed)
    cfg = s.config(2, 2)
    probes = s.points(2, cfg.c, cfg.all_points())
    assert single_sum_checks(cfg, probes).passed
