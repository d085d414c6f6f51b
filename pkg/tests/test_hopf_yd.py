from __future__ import annotations

from fractions import Fraction

import pytest

from hopfoid.algebra import EnvelopingAlgebra, LieAlgebra, Window
from hopfoid.hopf_yd import (
    DualPairing,
    adjoint_yd,
    coaction_closed_form,
    coaction_triangular,
    dual_truncated_hopf,
    group_hopf,
    solve_coaction,
    tampered_antipode,
    ug_hopf,
    ug_yd,
    verify_duality,
    verify_hopf,
    verify_yd,
)
from hopfoid.registry import builtin_config
from hopfoid.report import FAIL, PASS

F = Fraction
KAPPA = LieAlgebra(["x0", "x1"], {(0, 1): {1: F(1)}})
HEIS = LieAlgebra(["x1", "x2", "x3"], {(0, 1): {2: F(1)}})
ABEL = LieAlgebra(["x0", "x1"], {})


@pytest.fixture(scope="module")
def s3():
    return builtin_config("s3-adjoint").group()


@pytest.fixture(scope="module")
def c2():
    return builtin_config("c2-adjoint").group()


def verdicts(records):
    return {r.check_id: r.verdict for r in records}


def test_group_hopf_examples(s3, c2):
    h = group_hopf(s3)
    assert h.coproduct_terms("e") == [("e", "e", 1)]
    assert h.antipode_keys("e") == {"e": 1}
    assert group_hopf(c2).antipode_keys("s") == {"s": 1}
    # (sr)^-1 = r^-1 s^-1 = r2 s, which is sr in this table
    assert h.antipode_keys("sr") == {s3.gmul("r2", "s"): 1}


def test_ug_hopf_examples():
    U = EnvelopingAlgebra(KAPPA)
    h = ug_hopf(U)
    x1, x1sq = (0, 1), (0, 2)
    assert sorted(h.coproduct_terms(x1)) == sorted([(x1, (0, 0), 1), ((0, 0), x1, 1)])
    assert sorted(h.coproduct_terms(x1sq)) == sorted([(x1sq, (0, 0), 1), (x1, x1, 2), ((0, 0), x1sq, 1)])
    assert h.antipode_keys((1, 1)) == {(1, 1): 1, (0, 1): -1}


def test_pairing_conventions():
    P = DualPairing(EnvelopingAlgebra(KAPPA))
    one = (0, 0)
    assert P.pair_keys(one, one) == 1
    assert P.pair_keys((1, 0), one) == 0
    assert P.pair_keys((0, 1), (0, 1)) == 1
    assert P.pair_keys((0, 2), (0, 2)) == 2


def test_dual_coproduct_abelian_exact():
    h = dual_truncated_hopf(EnvelopingAlgebra(ABEL), None)
    for mu in ((1, 0), (0, 1)):
        assert sorted(h.coproduct_terms(mu)) == sorted([(mu, (0, 0), 1), ((0, 0), mu, 1)])
    assert h.counit((0, 1)) == 0 and h.counit((0, 0)) == 1


def test_dual_coproduct_kappa_frozen():
    h = dual_truncated_hopf(EnvelopingAlgebra(KAPPA), 3)
    terms = {(a, b): c for a, b, c in h.coproduct_terms((0, 1), 3, 3)}
    # coefficient of d1 (x) d0 in the coproduct of d1
    assert terms[((0, 1), (1, 0))] == F(-1, 2)
    assert terms[((1, 0), (0, 1))] == F(1, 2)
    assert terms[((0, 1), (0, 0))] == 1 and terms[((0, 0), (0, 1))] == 1


def test_dual_coproduct_matches_pairing_brute_force():
    U = EnvelopingAlgebra(KAPPA)
    P = DualPairing(U)
    h = dual_truncated_hopf(U, 3, P)
    basis = U.enumerate_basis(Window(a=3))
    for alpha in basis:
        cop = {(a, b): c for a, b, c in h.coproduct_terms(alpha, 3, 3)}
        for u in basis:
            for v in basis:
                if sum(u) + sum(v) > 3:
                    continue
                lhs = sum((c * P.pair_keys(a, u) * P.pair_keys(b, v) for (a, b), c in cop.items()), F(0))
                rhs = sum((c * P.pair_keys(alpha, k) for k, c in U.mul_keys(u, v).items()), F(0))
                assert lhs == rhs


def test_adjoint_yd_examples(s3):
    yd = adjoint_yd(s3)
    assert yd.action_keys("r", "s") == {"sr": 1}
    assert yd.coaction_keys("s") == {("s", "s"): 1}
    for g in s3.elements:
        for h in s3.elements:
            ghg = s3.gmul(s3.gmul(g, h), s3.ginv(g))
            assert yd.action_keys(g, h) == {ghg: 1}
            assert yd.coaction_keys(ghg) == {(ghg, s3.ginv(ghg)): 1}


def test_abelian_group_action_trivial(c2):
    yd = adjoint_yd(c2)
    assert all(yd.action_keys(g, h) == {h: 1} for g in c2.elements for h in c2.elements)


def test_ug_yd_abelian_trivial_coaction():
    yd = ug_yd(ABEL, 3)
    assert yd.coaction_valid == float("inf")
    for mu, x in enumerate([(1, 0), (0, 1)]):
        assert yd.coaction_keys(x) == {(x, (0, 0)): 1}
    recs = verify_yd(yd, yd.A.enumerate_basis(Window(a=3)), yd.T.enumerate_basis(Window(t=3)))
    assert set(verdicts(recs).values()) == {PASS}


def test_dual_basis_acts_by_delta():
    yd = ug_yd(KAPPA, 3, prec=5)
    for mu in range(2):
        d = tuple(1 if i == mu else 0 for i in range(2))
        for nu in range(2):
            x = tuple(1 if i == nu else 0 for i in range(2))
            assert yd.action_keys(d, x) == ({(0, 0): 1} if mu == nu else {})


def test_kappa_coaction_frozen_and_oracles():
    yd = ug_yd(KAPPA, 3, prec=5)
    U, P = yd.A, yd.pairing
    rho1 = yd.generator_coaction[1]
    # x1 -> x1 (x) exp(d0): coefficient of d0 is x1
    assert rho1[(1, 0)] == {(0, 1): 1}
    assert rho1[(2, 0)] == {(0, 1): F(1, 2)}
    for mu in range(2):
        solved = {b: y for b, y in yd.generator_coaction[mu].items() if y}
        assert solved == coaction_triangular(U, P, mu, 5) == coaction_closed_form(U, P, mu, 5)
        reordered = solve_coaction(U, P, mu, 5, 1, order=lambda u: (tuple(reversed(u[1])), u[0]))
        assert {b: y for b, y in reordered.items() if y} == solved


def test_validators_pass_on_examples(s3):
    assert set(verdicts(verify_hopf(group_hopf(s3), s3.elements)).values()) == {PASS}
    U = EnvelopingAlgebra(HEIS)
    assert set(verdicts(verify_hopf(ug_hopf(U), U.enumerate_basis(Window(a=3)))).values()) == {PASS}
    assert set(verdicts(verify_yd(adjoint_yd(s3), s3.elements, s3.elements)).values()) == {PASS}
    yd = ug_yd(HEIS, 3)
    assert set(verdicts(verify_duality(yd.pairing, yd.hopf, 3)).values()) == {PASS}


def test_yd_records_cover_all_s3_pairs(s3):
    recs = {r.check_id: r for r in verify_yd(adjoint_yd(s3), s3.elements, s3.elements)}
    assert recs["yd.yd_condition"].details["instances_pass"] == 36
    assert recs["yd.bcalt_agreement"].details["instances_pass"] == 36


def test_tampered_antipode_fails_with_witness(c2):
    recs = {r.check_id: r for r in verify_hopf(tampered_antipode(group_hopf(c2), "s", "e"), c2.elements)}
    rec = recs["hopf.antipode"]
    assert rec.verdict == FAIL
    assert rec.witness["value"]["instance"]["terms"] == [["s", "1/1"]]


def test_flipped_coaction_fails(s3):
    recs = {r.check_id: r for r in verify_yd(adjoint_yd(s3, flipped=True), s3.elements, s3.elements)}
    assert recs["yd.coaction_algebra_map"].verdict == FAIL
    assert recs["yd.coaction_algebra_map"].witness is not None
