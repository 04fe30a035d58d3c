"""Complexification, Shilov boundary, Cayley transforms, group words."""

import math

import numpy as np
import pytest

import _oracles as orc
from _cases import ALGEBRAS, IDS
from maslov_kit import algebra as al
from maslov_kit import boundary as bd
from maslov_kit.errors import DomainError


def minus_i_eps(alg, k):
    """The boundary point -i * e_{k, r-k}."""
    eps = al.epq(alg, k, alg.rank - k)
    return bd.ShilovPoint(bd.ElementC(alg, -1j * eps.coords))


@pytest.mark.parametrize("alg", ALGEBRAS, ids=IDS)
def test_complex_ops_restrict_to_real(alg):
    rng = np.random.default_rng(21)
    for _ in range(10):
        x = al.random_element(alg, rng)
        y = al.random_element(alg, rng)
        zx, zy = bd.complexify(x), bd.complexify(y)
        assert np.allclose(bd.cjmul(zx, zy).coords, al.jmul(x, y).coords, atol=1e-12)
        assert bd.ctrace(zx) == pytest.approx(al.trace(x), abs=1e-12)
        assert bd.cdet(zx) == pytest.approx(al.det_real(x), abs=1e-9 * (1 + al.norm(x)) ** alg.rank)
        assert np.allclose(bd.clmul_operator(zx), al.lmul_operator(x), atol=1e-12)
        assert np.allclose(bd.cquad_rep_apply(zx, zy).coords,
                           al.quad_rep_apply(x, y).coords, atol=1e-10 * (1 + al.norm(x)) ** 2)


@pytest.mark.parametrize("alg", ALGEBRAS, ids=IDS)
def test_eta_and_hermitian_form(alg):
    rng = np.random.default_rng(22)
    for _ in range(10):
        z = bd.celement(alg, rng.standard_normal(alg.dim), rng.standard_normal(alg.dim))
        assert np.allclose(bd.eta(bd.eta(z)).coords, z.coords)
        h = bd.ctrace(bd.cjmul(z, bd.eta(z)))
        assert h.imag == pytest.approx(0.0, abs=1e-12)
        assert h.real == pytest.approx(bd.cnorm(z) ** 2, rel=1e-12)
        w = bd.celement(alg, rng.standard_normal(alg.dim), rng.standard_normal(alg.dim))
        assert bd.hermitian_inner(z, w) == pytest.approx(
            np.conj(bd.hermitian_inner(w, z)), abs=1e-12)


@pytest.mark.parametrize("alg", ALGEBRAS, ids=IDS)
def test_cdet_homogeneity(alg):
    rng = np.random.default_rng(23)
    r = alg.rank
    for _ in range(10):
        sigma = bd.random_shilov(alg, rng)
        lhs = bd.cdet(1j * sigma.value)
        rhs = (1j ** r) * bd.cdet(sigma.value)
        assert lhs == pytest.approx(rhs, abs=1e-10)
        assert abs(bd.cdet(sigma.value)) == pytest.approx(1.0, abs=1e-9)


@pytest.mark.parametrize("alg", ALGEBRAS, ids=IDS)
def test_cinverse(alg):
    rng = np.random.default_rng(24)
    e = al.unit(alg)
    for _ in range(10):
        z = bd.celement(alg, rng.standard_normal(alg.dim), rng.standard_normal(alg.dim))
        inv = bd.cinverse(z)
        assert np.allclose(bd.cjmul(z, inv).coords, e.coords, atol=1e-8)
        # quadratic representation inverts too: P(z^{-1}) = P(z)^{-1}
        pz = bd.cquad_rep_operator(z)
        pinv = bd.cquad_rep_operator(inv)
        assert np.allclose(pz @ pinv, np.eye(alg.dim), atol=1e-7)
    with pytest.raises(DomainError):
        bd.cinverse(bd.celement(alg, np.zeros(alg.dim)))


@pytest.mark.parametrize("alg", ALGEBRAS, ids=IDS)
def test_chi_of_quad_rep_is_det_squared(alg):
    rng = np.random.default_rng(25)
    for _ in range(10):
        z = bd.celement(alg, rng.standard_normal(alg.dim), rng.standard_normal(alg.dim))
        op = bd.cquad_rep_operator(z)
        chi = bd.cdet(bd.ElementC(alg, op @ al.unit(alg).coords.astype(complex)))
        assert chi == pytest.approx(bd.cdet(z) ** 2, rel=1e-7, abs=1e-7)


@pytest.mark.parametrize("alg", ALGEBRAS, ids=IDS)
def test_shilov_membership_gate(alg):
    rng = np.random.default_rng(26)
    sigma = bd.random_shilov(alg, rng)
    assert isinstance(sigma, bd.ShilovPoint)
    with pytest.raises(DomainError):
        bd.ShilovPoint(bd.complexify(2.0 * al.unit(alg)))
    with pytest.raises(DomainError):
        bd.ShilovPoint(bd.celement(alg, np.zeros(alg.dim)))


@pytest.mark.parametrize("alg", ALGEBRAS, ids=IDS)
def test_shilov_spectral_examples(alg):
    r = alg.rank
    us = bd.shilov_spectral(bd.unit_shilov(alg))
    assert np.allclose(us.angles, 0.0, atol=1e-9)
    for k in range(r + 1):
        us = bd.shilov_spectral(minus_i_eps(alg, k))
        expect = np.concatenate([np.full(r - k, math.pi / 2), np.full(k, -math.pi / 2)])
        assert np.allclose(us.angles, expect, atol=1e-9)


@pytest.mark.parametrize("alg", ALGEBRAS, ids=IDS)
def test_shilov_spectral_random_roundtrip(alg):
    rng = np.random.default_rng(27)
    for _ in range(20):
        x = al.random_element(alg, rng)
        sigma = bd.exp_iJ(x)
        spec = al.spectral_decompose_real(x)
        want = np.sort(orc.wrap_angle(spec.values))
        us = bd.shilov_spectral(sigma)
        assert np.allclose(np.sort(us.angles), want, atol=1e-8)
        back = bd.from_unit_spectrum(alg, us.angles, us.frame)
        assert np.allclose(back.value.coords, sigma.value.coords, atol=1e-8)
        for c in us.frame:
            assert al.norm(al.jmul(c, c) - c) <= 1e-8


@pytest.mark.parametrize("alg", ALGEBRAS, ids=IDS)
def test_shilov_spectral_degenerate_angles(alg):
    rng = np.random.default_rng(28)
    r = alg.rank
    frame = al.random_frame(alg, rng)
    theta = rng.uniform(-2.5, 2.5)
    sigma = bd.from_unit_spectrum(alg, np.full(r, theta), frame)
    us = bd.shilov_spectral(sigma)
    assert np.allclose(us.angles, theta, atol=1e-9)
    if r >= 2:
        angles = np.concatenate([[theta], np.full(r - 1, bd.wrap_angle(theta + 1.3))])
        sigma = bd.from_unit_spectrum(alg, angles, frame)
        us = bd.shilov_spectral(sigma)
        assert np.allclose(np.sort(us.angles), np.sort(bd.wrap_angle(angles)), atol=1e-9)


@pytest.mark.parametrize("alg", ALGEBRAS, ids=IDS)
def test_exp_log_sqrt(alg):
    rng = np.random.default_rng(29)
    assert np.allclose(bd.log_S(bd.unit_shilov(alg)).coords, 0.0, atol=1e-12)
    diag_x = al.element(al.algebra(al.SYM_R, 2), [math.pi / 3, -math.pi / 4, 0.0])
    us = bd.shilov_spectral(bd.exp_iJ(diag_x))
    assert np.allclose(np.sort(us.angles), sorted([math.pi / 3, -math.pi / 4]), atol=1e-10)
    for _ in range(10):
        sigma = bd.random_shilov(alg, rng)
        try:
            lg = bd.log_S(sigma)
        except DomainError:
            continue
        # exp of the log reproduces sigma
        back = bd.exp_iJ(bd.imag_part(lg))
        assert np.allclose(back.value.coords, sigma.value.coords, atol=1e-8)
        assert np.exp(bd.ctrace(lg)) == pytest.approx(bd.cdet(sigma.value), abs=1e-8)
        lg_inv = bd.log_S(bd.ShilovPoint(bd.cinverse(sigma.value)))
        assert np.allclose(lg_inv.coords, -lg.coords, atol=1e-8)
        for branch in (0, 1, (1 << alg.rank) - 1):
            root = bd.sqrt_S(sigma, branch)
            sq = bd.cjmul(root, root)
            assert np.allclose(sq.coords, sigma.value.coords, atol=1e-8)


@pytest.mark.parametrize("alg", ALGEBRAS, ids=IDS)
def test_cayley_transforms(alg):
    rng = np.random.default_rng(30)
    e = al.unit(alg)
    zero_c = bd.celement(alg, np.zeros(alg.dim))
    assert np.allclose(bd.cayley_p(zero_c).coords, -e.coords, atol=1e-12)
    tube_center = bd.ElementC(alg, 1j * e.coords)
    assert np.allclose(bd.cayley_p(tube_center).coords, 0.0, atol=1e-12)
    for _ in range(100):
        x = al.random_element(alg, rng)
        w = bd.cayley_p(bd.complexify(x))
        back = bd.cayley_c(w)
        assert np.allclose(back.coords, x.coords, atol=1e-7 * (1 + al.norm(x)))
        # real elements land on the boundary with det(e - p(x)) != 0
        sp = bd.ShilovPoint(w)
        assert abs(bd.cdet(bd.complexify(e) - w)) > 1e-12


@pytest.mark.parametrize("alg", ALGEBRAS, ids=IDS)
def test_word_basics(alg):
    rng = np.random.default_rng(31)
    ident = bd.identity_word(alg)
    sigma = bd.random_shilov(alg, rng)
    assert np.allclose(bd.apply_word(ident, sigma).value.coords,
                       sigma.value.coords, atol=1e-12)
    ss = bd.GroupWord(alg, [bd.InversionGen(), bd.InversionGen()])
    for _ in range(5):
        tau = bd.random_shilov(alg, rng)
        try:
            out = bd.apply_word(ss, tau)
        except DomainError:
            continue
        assert np.allclose(out.value.coords, tau.value.coords, atol=1e-7)


@pytest.mark.parametrize("alg", ALGEBRAS, ids=IDS)
def test_words_preserve_boundary(alg):
    rng = np.random.default_rng(32)
    done = 0
    while done < 50:
        mode = ("tube", "unitary", "mixed")[done % 3]
        word = bd.random_word(alg, rng, mode=mode, n_gens=int(rng.integers(1, 5)))
        sigma = bd.random_shilov(alg, rng)
        try:
            out = bd.apply_word(word, sigma)
        except DomainError:
            continue
        done += 1
        # ShilovPoint construction inside apply_word already enforces the
        # membership residual; spot-check |det| = 1 as well
        assert abs(abs(bd.cdet(out.value)) - 1.0) <= 1e-7


@pytest.mark.parametrize("alg", ALGEBRAS, ids=IDS)
def test_unitary_words_preserve_hermitian_norm(alg):
    rng = np.random.default_rng(33)
    for _ in range(10):
        word = bd.random_word(alg, rng, mode="unitary", n_gens=3)
        z = bd.celement(alg, rng.standard_normal(alg.dim), rng.standard_normal(alg.dim))
        assert bd.cnorm(bd.apply_word(word, z)) == pytest.approx(
            bd.cnorm(z), abs=1e-9 * (1 + bd.cnorm(z)))


@pytest.mark.parametrize("alg", ALGEBRAS, ids=IDS)
def test_differential_chain_rule(alg):
    rng = np.random.default_rng(34)
    done = 0
    while done < 10:
        g = bd.random_word(alg, rng, mode=("tube", "mixed")[done % 2], n_gens=2)
        h = bd.random_word(alg, rng, mode=("unitary", "tube")[done % 2], n_gens=2)
        z = bd.celement(alg, 0.3 * rng.standard_normal(alg.dim),
                        0.3 * rng.standard_normal(alg.dim))
        try:
            hz = bd.apply_word(h, z)
            lhs = bd.differential_word(bd.compose_words(g, h), z)
            rhs = bd.differential_word(g, hz) @ bd.differential_word(h, z)
            jl = bd.cocycle_j(bd.compose_words(g, h), z)
            jr = bd.cocycle_j(g, hz) * bd.cocycle_j(h, z)
        except DomainError:
            continue
        done += 1
        scale = 1.0 + float(np.max(np.abs(rhs)))
        assert np.allclose(lhs, rhs, atol=1e-8 * scale)
        assert jl == pytest.approx(jr, rel=1e-8, abs=1e-8)


@pytest.mark.parametrize("alg", ALGEBRAS, ids=IDS)
def test_cocycle_values(alg):
    rng = np.random.default_rng(35)
    z = bd.celement(alg, 0.2 * rng.standard_normal(alg.dim))
    assert bd.cocycle_j(bd.identity_word(alg), z) == pytest.approx(1.0, abs=1e-12)
    uword = bd.random_word(alg, rng, mode="unitary", n_gens=2)
    chi = bd.word_chi(uword)
    for _ in range(5):
        pt = bd.celement(alg, 0.4 * rng.standard_normal(alg.dim),
                         0.4 * rng.standard_normal(alg.dim))
        assert bd.cocycle_j(uword, pt) == pytest.approx(chi, rel=1e-9, abs=1e-9)
    # det transformation rule on the boundary
    done = 0
    while done < 10:
        word = bd.random_word(alg, rng, mode="mixed", n_gens=3)
        sigma = bd.random_shilov(alg, rng)
        try:
            out = bd.apply_word(word, sigma)
            jval = bd.cocycle_j(word, sigma.value)
        except DomainError:
            continue
        done += 1
        lhs = bd.cdet(out.value)
        rhs = (jval / abs(jval)) * bd.cdet(sigma.value)
        assert lhs == pytest.approx(rhs, abs=1e-7)


@pytest.mark.parametrize("alg", ALGEBRAS, ids=IDS)
def test_determination_phi(alg):
    rng = np.random.default_rng(36)
    sigma = bd.random_shilov(alg, rng)
    assert bd.determination_phi(bd.identity_word(alg), sigma) == pytest.approx(0.0, abs=1e-12)
    # scalar phase: phi constant in sigma, equal to the principal Arg of chi
    phi0 = 0.7
    uword = bd.GroupWord(alg, [bd.UnitaryGen([("exp-iL", phi0 * al.unit(alg))])])
    chi = bd.word_chi(uword)
    assert chi == pytest.approx(np.exp(1j * alg.rank * phi0), abs=1e-10)
    for _ in range(3):
        s = bd.random_shilov(alg, rng)
        assert bd.determination_phi(uword, s) == pytest.approx(
            bd.principal_arg(chi), abs=1e-9)
    # e^{i phi} = j/|j| along tube words, and the composition defect is 2 pi k
    done = 0
    while done < 6:
        g = bd.random_word(alg, rng, mode="mixed", n_gens=2)
        h = bd.random_word(alg, rng, mode="mixed", n_gens=2)
        s = bd.random_shilov(alg, rng)
        try:
            phi_g_hs = bd.determination_phi(g, bd.apply_word(h, s))
            phi_h = bd.determination_phi(h, s)
            gh = bd.compose_words(g, h)
            phi_gh = bd.determination_phi(gh, s)
            jval = bd.cocycle_j(gh, s.value)
        except DomainError:
            continue
        done += 1
        assert np.exp(1j * phi_gh) == pytest.approx(jval / abs(jval), abs=1e-8)
        defect = (phi_gh - phi_g_hs - phi_h) / (2 * math.pi)
        assert abs(defect - round(defect)) <= 1e-7


@pytest.mark.parametrize("alg", ALGEBRAS, ids=IDS)
def test_lift_and_shift(alg):
    r = alg.rank
    le = bd.lift(bd.unit_shilov(alg), 0)
    assert le.theta == pytest.approx(0.0, abs=1e-12)
    minus = bd.ShilovPoint(bd.ElementC(alg, -al.unit(alg).coords.astype(complex)))
    lm = bd.lift(minus, 0)
    if r % 2 == 0:
        assert lm.theta == pytest.approx(0.0, abs=1e-9)
    else:
        assert lm.theta == pytest.approx(math.pi / r, abs=1e-9)
    shifted = bd.t_shift(lm, 1)
    assert shifted.theta == pytest.approx(lm.theta + 2 * math.pi / r, abs=1e-12)
    for k in range(r + 1):
        lk = bd.lift(minus_i_eps(alg, k), 0)
        assert np.exp(1j * r * lk.theta) == pytest.approx(
            bd.cdet(lk.point.value), abs=1e-9)
    with pytest.raises(DomainError):
        bd.LiftedPoint(bd.unit_shilov(alg), 1.0)


@pytest.mark.parametrize("alg", ALGEBRAS, ids=IDS)
def test_act_lift_is_valid_lift(alg):
    rng = np.random.default_rng(37)
    done = 0
    while done < 8:
        word = bd.random_word(alg, rng, mode="mixed", n_gens=3)
        sigma = bd.random_shilov(alg, rng)
        try:
            out = bd.act_lift(word, bd.lift(sigma, 0))
        except DomainError:
            continue
        done += 1
        assert isinstance(out, bd.LiftedPoint)  # constructor checked the invariant


@pytest.mark.parametrize("alg", ALGEBRAS, ids=IDS)
def test_inverse_word(alg):
    rng = np.random.default_rng(38)
    done = 0
    while done < 10:
        word = bd.random_word(alg, rng, mode="mixed", n_gens=3)
        sigma = bd.random_shilov(alg, rng)
        try:
            there = bd.apply_word(word, sigma)
            back = bd.apply_word(word.inverse(), there)
        except DomainError:
            continue
        done += 1
        assert np.allclose(back.value.coords, sigma.value.coords, atol=1e-6)


def test_base_arg_validation():
    # chi of exp(iL(0.5 e)) on sym-r m=2 is e^{i}, so phi(g,0) = 1 mod 2 pi
    alg = al.algebra(al.SYM_R, 2)
    gens = [bd.UnitaryGen([("exp-iL", 0.5 * al.unit(alg))])]
    sigma = bd.unit_shilov(alg)
    bad = bd.GroupWord(alg, gens, base_arg=2.0)
    with pytest.raises(DomainError):
        bd.determination_phi(bad, sigma)
    good = bd.GroupWord(alg, gens, base_arg=1.0 + 2 * math.pi)
    assert bd.determination_phi(good, sigma) == pytest.approx(1.0 + 2 * math.pi, abs=1e-9)
