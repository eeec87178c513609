import random

import pytest

from permuta.config import CONFIG
from permuta.errors import HypothesisFailed
from permuta.fields import field
from permuta.matrices import (
    MatrixFq,
    conjugation_identity_check,
    determinant_subgroup,
    dilation,
    generate_GL,
    generate_SL,
    gl_order,
    modular_control,
    t_prime,
    t_prime_closure,
    transvection,
    verify_gl_permutable_normal,
    verify_small_gl2,
)

ORDERS = [2, 3, 4, 5, 7, 8, 9]


def test_transvection_example():
    F = field(2)
    assert transvection(2, 1, 2, 1, F).rows() == [[1, 1], [0, 1]]


def test_index_errors():
    F = field(3)
    with pytest.raises(IndexError):
        transvection(2, 1, 1, 1, F)
    with pytest.raises(IndexError):
        transvection(2, 1, 3, 1, F)
    with pytest.raises(ValueError):
        dilation(2, 1, 0, F)


@pytest.mark.parametrize("q", ORDERS)
def test_generator_calculus_exhaustive(q):
    F = field(q)
    for n in (2, 3):
        I = MatrixFq.identity(n, F)
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                if i == j:
                    continue
                for a in F.elements():
                    t = transvection(n, i, j, a, F)
                    assert t * transvection(n, i, j, int(F.neg[a]), F) == I
                    assert conjugation_identity_check(n, i, j, a, F)
                    tp = t_prime(n, i, j, a, F)
                    assert tp * tp == I
                    assert t_prime(n, i, j, 0, F) * tp == t


def test_conjugation_identity_at_zero():
    F = field(7)
    d = dilation(3, 2, int(F.neg[1]), F)
    assert d * transvection(3, 2, 1, 0, F) * d == MatrixFq.identity(3, F)


@pytest.mark.parametrize("n, q", [(2, 2), (2, 3), (2, 4), (2, 5), (3, 2), (3, 3)])
def test_t_prime_group_contains_transvections(n, q):
    F = field(q)
    old = CONFIG.closure_cap
    CONFIG.closure_cap = 12_000
    try:
        members = t_prime_closure(n, q)
    finally:
        CONFIG.closure_cap = old
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i != j:
                assert all(transvection(n, i, j, a, F) in members for a in F.elements())


def test_matrix_sampled_laws():
    rng = random.Random(0)
    for q in ORDERS:
        F = field(q)
        for _ in range(30):
            n = rng.randint(1, 3)
            A, B, C = (MatrixFq(F, n, tuple(rng.randrange(q) for _ in range(n * n))) for _ in range(3))
            assert (A * B) * C == A * (B * C)
            assert (A * B).det() == F.mul[A.det(), B.det()]


def test_sl_gl_orders():
    assert generate_SL(2, 2).order == 6 == generate_GL(2, 2).order
    assert set(generate_SL(2, 2).elements) == set(generate_GL(2, 2).elements)
    assert generate_SL(2, 3).order == 24
    assert generate_GL(2, 3).order == 48
    for n, q in [(1, 5), (2, 2), (2, 3), (2, 4), (2, 5), (3, 2)]:
        G, S = generate_GL(n, q), generate_SL(n, q)
        assert S.order * (q - 1) == G.order == gl_order(n, q)


@pytest.mark.parametrize("n, q", [(2, 3), (2, 4), (3, 2)])
def test_sl_is_determinant_one(n, q):
    G, S = generate_GL(n, q), generate_SL(n, q)
    assert all(m.det() == 1 for m in S.elements)
    assert set(G.elements[i] for i in determinant_subgroup(G, 1).members) == set(S.elements)


def test_small_gl2_and_control():
    res = verify_small_gl2()
    assert res["GL(2,2)"].verdict and res["GL(2,3)"].verdict
    assert res["GL(2,2)"].subgroup_count == 6 and res["GL(2,3)"].subgroup_count == 55
    assert not modular_control().verdict


def test_gl_hypothesis_boundary():
    with pytest.raises(HypothesisFailed):
        verify_gl_permutable_normal(2, 2)
    with pytest.raises(HypothesisFailed):
        verify_gl_permutable_normal(2, 3)


def test_matrix_inverse_and_str():
    F = field(4)
    m = MatrixFq.from_rows([[1, 2], [2, 1]], F)
    assert m * m.inverse() == MatrixFq.identity(2, F)
    assert str(MatrixFq.identity(2, F)) == "[[1,0], [0,1]]"
    with pytest.raises(ZeroDivisionError):
        MatrixFq.from_rows([[1, 1], [1, 1]], F).inverse()
