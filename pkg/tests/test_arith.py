import random

import pytest
from hypothesis import given, strategies as st

from canonmap.arith import (
    AutoMatrix,
    GroupVec,
    check_prime,
    enumerate_gl2,
    gl2_order,
    mat_apply,
    mat_inverse,
    mat_mul,
    symmetry_generators,
    symmetry_subgroup,
)
from canonmap.action import stabilizer_set
from canonmap.errors import ModulusMismatch, SingularMatrix
from oracles import matmul_mod

A1 = AutoMatrix(7, (4, 5, 3, 1))


def test_check_prime():
    assert check_prime(7) == 7
    for bad in (4, 3, 9, 49, 101):
        with pytest.raises(ValueError):
            check_prime(bad)


def test_parse_and_text_roundtrip():
    A = AutoMatrix.parse(7, "4,5;3,1")
    assert A == A1
    assert A.to_text() == "4,5;3,1"
    assert AutoMatrix.parse(7, " -3, 12 ; 10 ,8 ") == A1  # reduced on parse


@pytest.mark.parametrize("text", ["4,5", "4,5;3", "a,b;c,d", "1,2;3,4;5,6"])
def test_parse_rejects(text):
    with pytest.raises(ValueError):
        AutoMatrix.parse(7, text)


def test_singular_rejected():
    with pytest.raises(SingularMatrix):
        AutoMatrix(7, (1, 1, 1, 1))


def test_mat_mul_examples():
    assert mat_mul(AutoMatrix.identity(7), A1) == A1
    expected = matmul_mod(A1.rows(), A1.rows(), 7)
    assert expected == [[3, 4], [1, 2]]
    assert mat_mul(A1, A1).rows() == expected


def test_mat_mul_modulus_mismatch():
    with pytest.raises(ModulusMismatch):
        mat_mul(A1, AutoMatrix.identity(5))
    with pytest.raises(ModulusMismatch):
        mat_apply(A1, GroupVec(5, 1, 0))


def test_mat_apply_examples():
    assert mat_apply(A1, GroupVec(7, 1, 0)) == GroupVec(7, 4, 3)
    assert mat_apply(AutoMatrix.identity(7), GroupVec(7, 3, 5)) == GroupVec(7, 3, 5)
    assert mat_apply(A1, GroupVec(7, 1, 1)) == GroupVec(7, 2, 4)


def test_mat_inverse_examples():
    assert mat_inverse(AutoMatrix.identity(7)) == AutoMatrix.identity(7)
    inv = mat_inverse(A1)
    assert matmul_mod(A1.rows(), inv.rows(), 7) == [[1, 0], [0, 1]]
    assert inv.rows() == [[5, 3], [6, 6]]
    assert mat_inverse(AutoMatrix(7, (2, 0, 0, 3))) == AutoMatrix(7, (4, 0, 0, 5))


def test_inverse_random():
    rng = random.Random(1)
    mats = enumerate_gl2(7)
    for A in rng.sample(mats, 20):
        assert mat_mul(A, mat_inverse(A)) == AutoMatrix.identity(7)
        assert mat_mul(mat_inverse(A), A) == AutoMatrix.identity(7)


@pytest.mark.parametrize("p,count", [(5, 480), (7, 2016)])
def test_enumerate_gl2(p, count):
    mats = enumerate_gl2(p)
    assert len(mats) == count == gl2_order(p)
    assert len(set(mats)) == count
    assert all(A.det() != 0 for A in mats)


@given(
    st.sampled_from([5, 7, 11]).flatmap(
        lambda p: st.tuples(
            st.just(p),
            st.tuples(*[st.integers(0, p - 1)] * 4),
            st.tuples(*[st.integers(-50, 50)] * 4),
        )
    )
)
def test_mat_apply_additive(args):
    p, ent, vw = args
    if (ent[0] * ent[3] - ent[1] * ent[2]) % p == 0:
        return
    A = AutoMatrix(p, ent)
    v, w = GroupVec(p, vw[0], vw[1]), GroupVec(p, vw[2], vw[3])
    assert mat_apply(A, v + w) == mat_apply(A, v) + mat_apply(A, w)


def test_groupvec_canonical():
    v = GroupVec(7, -1, 15)
    assert (v.a, v.b) == (6, 1)
    assert hash(v) == hash(GroupVec(7, 6, 1))


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_symmetry_subgroup(p):
    sym = symmetry_subgroup(p)
    s, t = symmetry_generators(p)
    I = AutoMatrix.identity(p)
    assert len(sym) == 6
    assert I in sym
    assert mat_mul(s, s) == I and mat_mul(t, t) == I
    for x in sym:
        assert mat_inverse(x) in sym
        for y in sym:
            assert mat_mul(x, y) in sym
    # non-abelian of order 6
    assert mat_mul(s, t) != mat_mul(t, s)
    assert mat_apply(s, GroupVec(p, 2, 3)) == GroupVec(p, 3, 2)


@pytest.mark.parametrize("p", [5, 7, 11])
def test_symmetries_permute_stabilizer_lines(p):
    lines = {frozenset(GroupVec(p, k * a, k * b) for k in range(1, p)) for a, b in [(1, 0), (0, 1), (1, 1)]}
    sigma = stabilizer_set(p)
    for n in symmetry_subgroup(p):
        images = {frozenset(mat_apply(n, v) for v in line) for line in lines}
        assert images == lines
        assert {mat_apply(n, GroupVec(p, a, b)).astuple() for a, b in sigma} == set(sigma)
