from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopfoid.algebra import (
    ContextMismatch,
    EnvelopingAlgebra,
    GroupAlgebra,
    InvalidGroup,
    JacobiViolation,
    LieAlgebra,
    SmashContext,
    TensorContext,
    TruncatedSymmetric,
    Window,
    fmt_frac,
    parse_frac,
)
from hopfoid.registry import builtin_config

F = Fraction


@pytest.fixture(scope="module")
def s3():
    return builtin_config("s3-adjoint").group()


@pytest.fixture(scope="module")
def c2():
    return builtin_config("c2-adjoint").group()


def kappa():
    return LieAlgebra(["x0", "x1"], {(0, 1): {1: F(1)}})


def heisenberg():
    return LieAlgebra(["x1", "x2", "x3"], {(0, 1): {2: F(1)}})


def test_group_normal_form(c2, s3):
    assert c2.normal_form(["s", "s"]).terms == {"e": 1}
    s, r = s3.generator("s"), s3.generator("r")
    assert (s * r).terms != (r * s).terms
    assert (s3.one() * r).terms == r.terms


def test_invalid_group_rejected():
    with pytest.raises(InvalidGroup):
        GroupAlgebra(["e", "a"], {("e", "e"): "e", ("e", "a"): "a", ("a", "e"): "a", ("a", "a"): "a"})


def test_abelian_pbw_commutes():
    U = EnvelopingAlgebra(LieAlgebra(["x1", "x2"], {}))
    assert U.normal_form(["x2", "x1"]).terms == {(1, 1): 1}


def test_kappa_rewrite_and_bracket():
    U = EnvelopingAlgebra(kappa())
    x0, x1 = U.generator("x0"), U.generator("x1")
    assert (x1 * x0).terms == {(1, 1): 1, (0, 1): -1}
    assert (x1 * x0 - x0 * x1).terms == {(0, 1): -1}


def _matrix_rep(U, el):
    # x0 = diag(1, 0), x1 = E12 satisfy [x0, x1] = x1
    gens = {0: ((1, 0), (0, 0)), 1: ((0, 1), (0, 0))}

    def mm(a, b):
        return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(2)) for j in range(2)) for i in range(2))

    out = ((0, 0), (0, 0))
    for e, c in el.terms.items():
        m = ((1, 0), (0, 1))
        for i, k in enumerate(e):
            for _ in range(k):
                m = mm(m, gens[i])
        out = tuple(tuple(out[i][j] + c * m[i][j] for j in range(2)) for i in range(2))
    return out


words = st.lists(st.integers(0, 1), min_size=0, max_size=6)


@settings(max_examples=60, deadline=None)
@given(words)
def test_kappa_normal_form_matches_matrix_rep(w):
    U = EnvelopingAlgebra(kappa())
    nf = U.normal_form([U.lie.names[i] for i in w])
    direct = U.one()
    for i in w:
        direct = direct * U.generator(U.lie.names[i])
    assert _matrix_rep(U, nf) == _matrix_rep(U, direct)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 2), min_size=0, max_size=6), st.sampled_from(["leftmost", "rightmost"]))
def test_pbw_product_matches_rewriting_oracle(w, strategy):
    U = EnvelopingAlgebra(heisenberg())
    nf = U.normal_form([U.lie.names[i] for i in w]).terms
    assert nf == U.word_normal_form(w, strategy)


@settings(max_examples=40, deadline=None)
@given(words, words, words)
def test_pbw_associative(a, b, c):
    U = EnvelopingAlgebra(kappa())
    mk = lambda w: U.normal_form([U.lie.names[i] for i in w])
    x, y, z = mk(a), mk(b), mk(c)
    assert ((x * y) * z).terms == (x * (y * z)).terms


def test_jacobi_violation_names_triple():
    with pytest.raises(JacobiViolation) as exc:
        LieAlgebra(["x1", "x2", "x3"], {(0, 1): {2: F(1)}, (0, 2): {0: F(1)}})
    assert exc.value.triple == ("x1", "x2", "x3")


def test_nilpotency_step():
    assert heisenberg().nilpotency_step() == 2
    assert LieAlgebra(["a", "b"], {}).nilpotency_step() == 1
    assert kappa().nilpotency_step() is None


def test_tensor_products(s3):
    T2 = TensorContext([s3, s3])
    one = T2.one()
    u = T2.pure([s3.generator("r"), s3.generator("s")])
    assert (one * u).terms == u.terms
    se = T2.pure([s3.generator("s"), s3.one()])
    rr = T2.pure([s3.generator("r"), s3.generator("r")])
    assert (se * rr).terms == {("sr", "r"): 1}
    re = T2.pure([s3.generator("r"), s3.one()])
    assert (se * re).terms != (re * se).terms


def test_context_mismatch(s3, c2):
    with pytest.raises(ContextMismatch):
        s3.one() * c2.one()


def test_enumerate_basis_counts(c2):
    assert c2.enumerate_basis() == ["e", "s"]
    U = EnvelopingAlgebra(LieAlgebra(["x1", "x2"], {}))
    words2 = U.enumerate_basis(Window(a=2))
    assert len(words2) == 6
    assert sorted(U.format_key(k) for k in words2) == sorted(["1", "x1", "x2", "x1^2", "x1*x2", "x2^2"])
    T = TruncatedSymmetric(["d1", "d2"])
    H = SmashContext(U, T, lambda t, m1, m2: [], lambda t, a: {})
    assert len(H.enumerate_basis(Window(a=2, t=1))) == 18


def test_fraction_format_round_trip():
    for c in [F(0), F(3), F(-7, 12), F(1, 362880)]:
        assert parse_frac(fmt_frac(c)) == c
    assert fmt_frac(F(-1, 2)) == "-1/2"


def test_key_format_round_trip(s3):
    U = EnvelopingAlgebra(heisenberg())
    for k in U.enumerate_basis(Window(a=3)):
        assert U.parse_key(U.format_key(k)) == k
    T2 = TensorContext([s3, s3])
    for k in T2.enumerate_basis():
        assert T2.parse_key(T2.format_key(k)) == k


def test_truncation_drops_high_degree():
    T = TruncatedSymmetric(["d1"])
    d = T.generator("d1")
    x = (d * d).with_valid(1)
    assert x.terms == {} and x.valid == 1
