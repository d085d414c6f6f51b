from __future__ import annotations

import random
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from hopfoid.algebra import GroupAlgebra
from hopfoid.kernel import (
    SubspaceBasis,
    combinations_in,
    dense_solve,
    echelon_insert,
    intersect,
    membership,
    span_closure,
    span_sum,
)

F = Fraction
E1 = {"e1": F(1)}
E2 = {"e2": F(1)}


def basis(*vs):
    return SubspaceBasis(rows=vs)


def test_insert_zero_into_empty():
    b, r = echelon_insert(SubspaceBasis(), {})
    assert b.rank == 0 and r == {}


def test_insert_e1_then_sum():
    b, _ = echelon_insert(SubspaceBasis(), E1)
    b, r = echelon_insert(b, {"e1": F(1), "e2": F(1)})
    assert b.rank == 2
    assert r == E2


def test_insert_residue_hand_elimination():
    b = basis({"w": F(1)})
    _, r = echelon_insert(b, {"w": F(3), "w'": F(-1)})
    assert r == {"w'": F(-1)}
    b.insert({"w": F(3), "w'": F(-1)})
    assert b.rank == 2


def test_echelon_insert_is_functional():
    b = basis(E1)
    echelon_insert(b, E2)
    assert b.rank == 1


def test_membership_examples():
    assert membership(basis(E1, E2), {})
    assert membership(SubspaceBasis(), {})
    assert not membership(basis(E1), E2)
    assert membership(basis({"e1": F(1), "e2": F(1)}, E2), E1)


def test_intersect_examples():
    x = basis(E1, {"e2": F(2), "e3": F(1)})
    assert intersect(x, x).signature() == x.signature()
    assert intersect(basis(E1), basis(E2)).rank == 0
    s = {"e1": F(1), "e2": F(1)}
    assert intersect(basis(E1, E2), basis(s)).signature() == basis(s).signature()


def test_span_closure_examples():
    assert span_closure([], lambda v: [v]).rank == 0
    assert span_closure([E1], lambda v: [v]).signature() == basis(E1).signature()
    c3 = GroupAlgebra(["e", "g", "g2"], {
        ("e", "e"): "e", ("e", "g"): "g", ("e", "g2"): "g2",
        ("g", "e"): "g", ("g", "g"): "g2", ("g", "g2"): "e",
        ("g2", "e"): "g2", ("g2", "g"): "e", ("g2", "g2"): "g",
    }, name="kC3")
    g = c3.generator("g")
    closed = span_closure([g], lambda x: [x * g], vectorize=lambda x: x.terms, key_order=c3.sort_key)
    assert closed.rank == 3


def test_span_sum_and_combinations():
    b = span_sum(basis(E1), basis(E2))
    assert b.rank == 2
    deps = combinations_in(basis(E1), [E1, E2, {"e1": F(2), "e2": F(1)}])
    # every returned combination lands in span{e1}
    for c in deps:
        v = {}
        for i, ci in c.items():
            for k, x in [E1, E2, {"e1": F(2), "e2": F(1)}][i].items():
                v[k] = v.get(k, 0) + ci * x
        assert not v.get("e2")
    assert len(deps) == 2


small = st.fractions(min_value=-3, max_value=3, max_denominator=3)


@st.composite
def systems(draw):
    n = draw(st.integers(1, 4))
    m = draw(st.integers(1, 5))
    rows = [[draw(small) for _ in range(n)] for _ in range(m)]
    target = [draw(small) for _ in range(n)]
    return rows, target


def to_vec(row):
    return {i: c for i, c in enumerate(row) if c}


@settings(max_examples=100, deadline=None)
@given(systems())
def test_membership_agrees_with_dense_solver(system):
    rows, target = system
    b = SubspaceBasis(rows=[to_vec(r) for r in rows])
    # target in row space iff rows^T x = target is solvable
    cols = [[rows[j][i] for j in range(len(rows))] for i in range(len(target))]
    expected = dense_solve(cols, target) is not None
    assert membership(b, to_vec(target)) == expected


@settings(max_examples=60, deadline=None)
@given(systems())
def test_echelon_independent_of_insertion_order(system):
    rows, _ = system
    vecs = [to_vec(r) for r in rows]
    shuffled = list(vecs)
    random.Random(len(vecs)).shuffle(shuffled)
    assert SubspaceBasis(rows=vecs).signature() == SubspaceBasis(rows=shuffled).signature()


@settings(max_examples=60, deadline=None)
@given(systems(), systems())
def test_intersection_contained_in_both(s1, s2):
    n = min(len(s1[1]), len(s2[1]))
    b1 = SubspaceBasis(rows=[to_vec(r[:n]) for r in s1[0]])
    b2 = SubspaceBasis(rows=[to_vec(r[:n]) for r in s2[0]])
    both = intersect(b1, b2)
    for r in both.rows():
        assert r in b1 and r in b2
    # dim(b1 & b2) = dim b1 + dim b2 - dim(b1 + b2)
    assert both.rank == b1.rank + b2.rank - span_sum(b1, b2).rank


def test_echelon_run_to_run_identical():
    rng = random.Random(11)
    vecs = [{i: F(rng.randint(-4, 4), rng.randint(1, 3)) for i in range(6) if rng.random() < 0.6} for _ in range(8)]
    a = SubspaceBasis(rows=vecs).signature()
    b = SubspaceBasis(rows=[dict(v) for v in vecs]).signature()
    assert a == b and repr(a) == repr(b)
