import pytest
from hypothesis import given

from bethe_sp.errors import CardinalityMismatch, PoleError, ZeroPivot
from bethe_sp.exactnum import EPS, ONE
from bethe_sp.kernels import BetheConfig, kernel_g, kernel_t
from bethe_sp.scalar import TWISTED, build_N
from bethe_sp.spectral import (
    eps_family,
    formfactor_derivative,
    formfactor_derivative_check,
    formfactor_matrix,
    formfactor_value,
    gaudin_matrix,
    jacobian_check,
    norm_limit_check,
    norm_limit_value,
    norm_via_gaudin,
    omega,
    on_shell_values,
    orthogonality_check,
    phi_jacobian,
    supertrace_check,
)
from conftest import G, sampler, seeds
import oracles as O
from oracles import q


def _sets(cfg):
    return [[q(x) for x in getattr(cfg, n)] for n in ("uC", "vC", "uB", "vB")]


# --- Omega -----------------------------------------------------------------------


def test_omega_single():
    cfg = sampler(1).config(1, 0)
    (w,) = omega(cfg).components
    assert w == 1 / kernel_g(cfg.uC[0], cfg.uB[0], cfg.c)


def test_omega_two():
    cfg = sampler(2).config(2, 0)
    c = cfg.c
    u1, u2 = cfg.uC
    b1, b2 = cfg.uB
    assert omega(cfg).components[0] == kernel_g(u1, u2, c) / (kernel_g(u1, b1, c)
                                                             * kernel_g(u1, b2, c))


@given(seeds)
def test_omega_against_oracle(seed):
    cfg = sampler(seed).config(2, 2)
    assert [q(w) for w in omega(cfg).components] == O.omega(*_sets(cfg), q(cfg.c))


def test_omega_coincident_sets():
    cfg = BetheConfig(c=1, uC=(G(1), G(5)), uB=(G(1), G(5)), check_poles=False)
    with pytest.raises(PoleError):
        omega(cfg)


# --- orthogonality ------------------------------------------------------------------


def test_orthogonality_single():
    cfg = sampler(3).config(1, 0).replace(kappa=(1, 1, 1))
    m = build_N(cfg, None, TWISTED).matrix
    (w,) = omega(cfg).components
    assert m[0, 0] * w == G(0)


@pytest.mark.parametrize("a, b", [(1, 1), (2, 1), (1, 2), (2, 2)])
def test_orthogonality(a, b):
    s = sampler(10 + 10 * a + b)
    for _ in range(3):
        assert orthogonality_check(s.config(a, b)).passed


def test_row_sums_against_oracle():
    cfg = sampler(4).config(2, 1)
    uC, vC, uB, vB = _sets(cfg)
    c = q(cfg.c)
    kappa = [q(k) for k in cfg.kappa]
    k1, k2, k3 = kappa
    rows = O.twisted_N(uC, vC, uB, vB, kappa, c)
    om = O.omega(uC, vC, uB, vB, c)
    for k, x in enumerate(uB + vC):
        su = sum((rows[j][k] * om[j] for j in range(2)), O.Z0) / O.prod(O.h, [x], uB, c).at0()
        xe = O.Pt(x, 1)
        want = (O.ratio(O.f, vB, vC, xe, c, False)
                * (O.Lead(O.Z1) - O.ratio(O.f, uC, uB, xe, c, False))).at0() \
            + k2 / k1 * (O.ratio(O.f, uC, uB, xe, c, True).at0() - 1)
        assert su == want
    assert orthogonality_check(cfg).passed


# --- norm -------------------------------------------------------------------------------


def test_gaudin_single_u():
    c, u, d = G(3), G(1, 2), G(5)
    m = gaudin_matrix([u], [], ([d], []), c).matrix
    assert m[0, 0] == c * d


def test_gaudin_single_v():
    m = gaudin_matrix([], [G(2)], ([], [G(7)]), G(3)).matrix
    assert m[0, 0] == G(21)


def test_gaudin_one_one():
    c, u, v = G(1, 1), G(2), G(-3, 1)
    m = gaudin_matrix([u], [v], ([G(1)], [G(2)]), c).matrix
    assert m[0, 1] == kernel_t(v, u, c)
    assert m[1, 0] == -kernel_t(v, u, c)


@given(seeds)
def test_gaudin_against_transcription(seed):
    s = sampler(seed)
    c = s.gaussian(True)
    pts = s.points(4, c)
    us, vs = pts[:2], pts[2:]
    l1, l3 = s.values(2), s.values(2)
    m = gaudin_matrix(us, vs, (l1, l3), c).matrix
    want = O.gaudin([q(x) for x in us], [q(x) for x in vs], [q(x) for x in l1],
                    [q(x) for x in l3], q(c))
    assert [[q(m[j, k]) for k in range(4)] for j in range(4)] == want
    value = norm_via_gaudin(us, vs, (l1, l3), c)
    assert q(value) == O.norm([q(x) for x in us], [q(x) for x in vs], [q(x) for x in l1],
                              [q(x) for x in l3], q(c))


def test_norm_empty():
    assert norm_via_gaudin([], [], ([], []), G(1)) == G(1)


def test_norm_single():
    c, u, d = G(2, 1), G(1, 3), G(5)
    r1 = on_shell_values([u], [], c)[0][0]
    assert norm_via_gaudin([u], [], ([d / r1], []), c) == -c * d / r1
    assert norm_limit_value([u], [], ([G(3)], []), ([d], []), c) == -c * d / r1


def test_norm_limit_one_zero_values():
    assert norm_limit_value([G(1, 3)], [], ([G(1)], []), ([G(5)], []), G(1)) == G(-5)


@pytest.mark.parametrize("a, b", [(0, 1), (1, 1), (2, 1)])
def test_norm_limit(a, b):
    s = sampler(20 + 10 * a + b)
    c = s.gaussian(True)
    pts = s.points(a + b, c)
    us, vs = pts[:a], pts[a:]
    derivs = (s.values(a), s.values(b))
    dirs = [(s.values(a), s.values(b)) for _ in range(2)]
    v = norm_limit_check(us, vs, dirs, derivs, c)
    assert v.passed, v.failures()
    r1, r3 = on_shell_values(us, vs, c)
    want = O.norm([q(x) for x in us], [q(x) for x in vs],
                  [q(d) / q(r) for d, r in zip(derivs[0], r1)],
                  [q(d) / q(r) for d, r in zip(derivs[1], r3)], q(c))
    assert q(v.parts[0].lhs) == want


def test_eps_family_hits_constraints():
    s = sampler(5)
    c = s.gaussian(True)
    us, vs = s.points(2, c), []
    cfg, R1, _ = eps_family(us, vs, (s.values(2), []), (s.values(2), []), c)
    # free values at uB lie on the same family that reproduces the
    # constrained values at uC when eps = 0 is approached
    r1_on_shell = on_shell_values(tuple(cfg.uC), tuple(cfg.vC), c)[0]
    for u, val in zip(cfg.uC, r1_on_shell):
        assert R1(u) == val
    assert cfg.uB[0] != cfg.uC[0]


def test_eps_family_rejects_bad_input():
    with pytest.raises(ValueError):
        eps_family([G(1)], [], ([G(0)], []), ([G(1)], []), G(1))
    with pytest.raises(CardinalityMismatch):
        eps_family([G(1)], [], ([], []), ([G(1)], []), G(1))


def test_gaudin_rejects_poles():
    with pytest.raises(PoleError):
        gaudin_matrix([G(1), G(2)], [], ([G(1), G(1)], []), G(1))


# --- Jacobian --------------------------------------------------------------------------


def test_jacobian_single():
    c, u, l1 = G(3), G(1, 1), G(2)
    assert phi_jacobian([u], [], ([l1], []), c)[0, 0] == c * l1
    cv, v = G(1), G(5)
    m = phi_jacobian([u], [v], ([l1], [G(1)]), cv)
    assert m[0, 1] == kernel_t(v, u, cv)


@pytest.mark.parametrize("a, b", [(2, 0), (1, 1), (2, 1), (2, 2)])
def test_jacobian_against_forward_mode(a, b):
    s = sampler(30 + 10 * a + b)
    c = s.gaussian(True)
    pts = s.points(a + b, c)
    us, vs = pts[:a], pts[a:]
    r1, r3 = s.values(a), s.values(b)
    d1, d3 = s.values(a), s.values(b)
    logs = ([d / r for d, r in zip(d1, r1)], [d / r for d, r in zip(d3, r3)])
    jm = phi_jacobian(us, vs, logs, c)
    want = O.phi_jacobian([q(x) for x in us], [q(x) for x in vs], [q(x) for x in r1],
                          [q(x) for x in d1], [q(x) for x in r3], [q(x) for x in d3], q(c))
    n = a + b
    assert [[q(jm[j, k]) for k in range(n)] for j in range(n)] == want
    assert jacobian_check(us, vs, logs, c).passed


# --- form factors -----------------------------------------------------------------------


def _ff_cfg(a, b, seed):
    return sampler(seed).config(a, b).replace(kappa=(1, 1, 1))


def test_pivot_rows():
    cfg = _ff_cfg(2, 1, 6)
    for p in omega(cfg).admissible():
        m2 = formfactor_matrix(cfg, 2, p).matrix
        assert all(m2[p, k] == G(-1) for k in range(3))
        m1 = formfactor_matrix(cfg, 1, p).matrix
        m3 = formfactor_matrix(cfg, 3, p).matrix
        assert all(m3[p, k] == m1[p, k] + m2[p, k] for k in range(3))


@pytest.mark.parametrize("a, b, i", [(1, 1, 2), (2, 1, 1), (2, 1, 3), (1, 0, 1), (0, 1, 3)])
def test_formfactor_against_oracles(a, b, i):
    cfg = _ff_cfg(a, b, 40 + 10 * a + b + i)
    sets = _sets(cfg)
    c = q(cfg.c)
    p = omega(cfg).admissible()[0]
    want = O.formfactor_value(*sets, i, p, c)
    assert q(formfactor_value(cfg, i)) == want
    kappa = [O.Dual(O.Z1) for _ in range(3)]
    kappa[i - 1] = O.Dual(O.Z1, O.Z1)
    deriv = O.twisted_det_dual(*sets, kappa, c).b * (-1) ** (i == 3)
    assert deriv == want
    assert q(formfactor_derivative(cfg, i)) == want


@pytest.mark.parametrize("a, b", [(1, 1), (2, 1)])
def test_formfactor_checks(a, b):
    cfg = _ff_cfg(a, b, 60 + a + b)
    for i in (1, 2, 3):
        assert formfactor_derivative_check(cfg, i, omega(cfg).admissible()).passed
    assert supertrace_check(cfg).passed


def test_zero_pivot():
    s = sampler(7)
    cfg = s.config(2, 1)
    shared = cfg.uB[0]
    bad = cfg.replace(uC=(shared, cfg.uC[1]), check_poles=False)
    om = omega(bad)
    assert not om.components[1] or not om.components[0]
    zero = [p for p in range(3) if not om.components[p]][0]
    with pytest.raises(ZeroPivot) as exc:
        formfactor_matrix(bad, 1, zero)
    assert exc.value.admissible == om.admissible()
    with pytest.raises(ZeroPivot):
        formfactor_matrix(bad, 1, 9)


def test_bad_index():
    with pytest.raises(ValueError):
        formfactor_matrix(_ff_cfg(1, 1, 1), 4)


def test_derivative_uses_eps():
    cfg = _ff_cfg(1, 0, 8)
    shifted = cfg.replace(kappa=(ONE + EPS, ONE, ONE))
    assert shifted.kappa[0] == ONE + EPS
