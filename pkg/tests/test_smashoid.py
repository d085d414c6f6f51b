from __future__ import annotations

import itertools
from fractions import Fraction

from hopfoid.algebra import GroupAlgebra
from hopfoid.hopf_yd import adjoint_yd
from hopfoid.smashoid import SmashAlgebroid

F = Fraction


def el(S, a, t):
    return S.hb((a, t))


def test_source_embeds_algebra(s3i):
    S = s3i.S
    a, b = S.A.generator("r"), S.A.generator("s")
    assert (S.alpha(a) * S.alpha(b)).terms == S.alpha(a * b).terms


def test_group_smash_commutation(s3i):
    S, G = s3i.S, s3i.group
    for g in G.elements:
        for h in G.elements:
            ghg = G.gmul(G.gmul(g, h), G.ginv(g))
            assert (el(S, "e", g) * el(S, h, "e")).terms == {(ghg, g): 1}


def test_kappa_smash_product_frozen(kappai):
    S = kappai.S
    prod = el(S, (0, 0), (0, 1)) * el(S, (0, 1), (0, 0))
    expected = {((0, 1), (0, 1)): 1, ((0, 0), (0, 0)): 1, ((0, 0), (1, 0)): F(-1, 2), ((0, 0), (2, 0)): F(1, 12)}
    low = {k: c for k, c in prod.terms.items() if S.H.tdeg(k) <= 2}
    assert low == expected
    # oracle: expand t_(1) > b with the dual coproduct directly
    oracle = {}
    T = S.yd.hopf
    for t1, t2, c in T.coproduct_terms((0, 1), 1, 2):
        for a, ca in S.yd.action_keys(t1, (0, 1)).items():
            oracle[(a, t2)] = oracle.get((a, t2), 0) + c * ca
    assert {k: c for k, c in oracle.items() if c} == low


def test_target_examples(abeli, s3i, kappai):
    S = abeli.S
    for a in abeli.a_keys():
        x = S.A.basis_element(a)
        assert (S.beta(x) - S.alpha(x)).is_zero()
    S = s3i.S
    for h in s3i.group.elements:
        assert S.beta(S.A.generator(h)).terms == {(h, s3i.group.ginv(h)): 1}
    S = kappai.S
    for mu in range(2):
        x = tuple(1 if i == mu else 0 for i in range(2))
        want = {(m, b): c for b, y in S.yd.generator_coaction[mu].items() for m, c in y.items()}
        assert S.beta(S.A.basis_element(x)).terms == {k: c for k, c in want.items() if S.H.tdeg(k) <= S.prec}


def test_delta_rep_examples(s3i, abeli):
    S = s3i.S
    assert S.delta_rep(el(S, "r", "e")).terms == {(("r", "e"), ("e", "e")): 1}
    for a in s3i.group.elements:
        for g in s3i.group.elements:
            assert S.delta_rep(el(S, a, g)).terms == {((a, g), ("e", g)): 1}
    S = abeli.S
    one = ((0, 0), (0, 0))
    for d in [(1, 0), (0, 1)]:
        key = ((0, 0), d)
        assert S.delta_rep(el(S, *key)).terms == {(key, one): 1, (one, key): 1}


def test_tau_examples(s3i, abeli):
    S = s3i.S
    G = s3i.group
    for h in G.elements:
        hinv = G.ginv(h)
        assert S.tau(el(S, h, "e")).terms == {(h, hinv): 1}
        assert S.tau(el(S, h, hinv)).terms == {(h, "e"): 1}
        assert S.epsilon(el(S, "e", h)).terms == {"e": 1}
    S = abeli.S
    for x in [(1, 0), (0, 1)]:
        assert S.tau(el(S, x, (0, 0))).terms == {(x, (0, 0)): 1}
    t = el(S, (0, 0), (1, 0))
    assert S.epsilon(t).is_zero()


def test_R_examples(abeli, s3i):
    S = abeli.S
    for x in [(1, 0), (0, 1)]:
        a = S.A.basis_element(x)
        want = S.pure2(S.alpha(a), S.H.one()) - S.pure2(S.H.one(), S.alpha(a))
        assert (S.R_gen(a) - want).is_zero()
    S = s3i.S
    for h in s3i.group.elements:
        want = S.pure2(el(S, h, "e"), S.H.one()) - S.pure2(el(S, "e", h), el(S, h, "e"))
        assert (S.R_gen(S.A.generator(h)) - want).is_zero()


def test_IA_trivial_and_frozen(c2i, s3i):
    triv = GroupAlgebra(["e"], {("e", "e"): "e"}, name="k")
    assert SmashAlgebroid(adjoint_yd(triv)).ia_basis().rank == 0
    # frozen after cross-checking with the span of R(a)(h (x) k)
    assert c2i.S.ia_basis().rank == 8
    assert s3i.S.ia_basis().rank == 1080


def test_R_generators_in_IA(s3i):
    S = s3i.S
    for a in s3i.group.elements:
        r = S.R_gen(S.A.generator(a))
        for hk in S.H2.enumerate_basis()[:200]:
            ok, _ = S.in_IA(r * S.hb2(hk))
            assert ok


def test_congruent_examples(s3i):
    S = s3i.S
    u = S.pure2(el(S, "r", "s"), el(S, "s", "e"))
    assert S.congruent(u, u)[0]
    for a in s3i.group.elements:
        ae = S.A.generator(a)
        h, k = el(S, "r", "s"), el(S, "sr", "r2")
        assert S.congruent(S.pure2(S.beta(ae) * h, k), S.pure2(h, S.alpha(ae) * k))[0]
    for x, y in itertools.product(s3i.group.elements, repeat=2):
        hx, ky = el(S, x, "e"), el(S, y, "e")
        assert S.congruent(S.delta_rep(hx * ky), S.delta_rep(hx) * S.delta_rep(ky))[0]


def test_takeuchi_examples(s3i):
    S = s3i.S
    A = s3i.group.elements
    assert S.takeuchi_member(S.H2.one(), A)
    for h in S.H.enumerate_basis():
        assert S.takeuchi_member(S.delta_rep(S.hb(h)), A)
    # alpha(x) (x) 1 always lies in the product since alpha and beta commute
    assert S.takeuchi_witness(S.pure2(el(S, "s", "e"), S.H.one()), A) is None
    assert S.takeuchi_witness(S.pure2(el(S, "e", "s"), S.H.one()), A) is not None


def test_gamma_examples(s3i):
    S = s3i.S
    for h in S.H.enumerate_basis():
        for t in s3i.group.elements:
            u = S.pure2(S.hb(h), el(S, "e", t))
            assert S.gamma(u).terms == u.terms
        for a in s3i.group.elements:
            d = S.delta_rep(el(S, a, h[1]))
            assert S.gamma(d).terms == {((a, h[1]), ("e", h[1])): 1}


def test_mu_id_tau_examples(s3i):
    S = s3i.S
    for h in S.H.enumerate_basis():
        x = S.hb(h)
        assert S.mu_id_tau(S.pure2(x, S.H.one())).terms == x.terms
    for h in s3i.group.elements:
        assert S.mu_id_tau(S.R_gen(S.A.generator(h))).is_zero()


def test_mu_id_tau_neither_hom_nor_antihom(s3i):
    S = s3i.S
    keys = S.H2.enumerate_basis()
    found = False
    for u, v in itertools.product(keys[:60], repeat=2):
        x, y = S.hb2(u), S.hb2(v)
        m = S.mu_id_tau(x * y)
        if (m - S.mu_id_tau(x) * S.mu_id_tau(y)) and (m - S.mu_id_tau(y) * S.mu_id_tau(x)):
            found = True
            break
    assert found
