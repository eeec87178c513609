import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from permuta import fields as fq
from permuta.fields import FqElement, field

ORDERS = [2, 3, 4, 5, 7, 8, 9]


@pytest.mark.parametrize("q", ORDERS)
def test_field_axioms_exhaustive(q):
    F = field(q)
    a = np.arange(q)
    A, B = np.meshgrid(a, a, indexing="ij")
    assert (F.add == F.add.T).all() and (F.mul == F.mul.T).all()
    assert (F.add[:, 0] == a).all() and (F.mul[:, 1] == a).all()
    assert (F.add[a, F.neg] == 0).all()
    assert (F.mul[a[1:], F.inv[1:]] == 1).all()
    for c in range(q):
        assert (F.add[F.add[A, B], c] == F.add[A, F.add[B, c]]).all()
        assert (F.mul[F.mul[A, B], c] == F.mul[A, F.mul[B, c]]).all()
        assert (F.mul[c, F.add[A, B]] == F.add[F.mul[c, A], F.mul[c, B]]).all()


@pytest.mark.parametrize("q, primitive", [(2, 1), (3, 2), (4, 2), (5, 2), (7, 3), (8, 2), (9, 3)])
def test_primitive_generates(q, primitive):
    F = field(q)
    assert F.primitive == primitive
    assert {F.pow(primitive, k) for k in range(q - 1)} == set(range(1, q))


def test_unsupported_order():
    with pytest.raises(ValueError):
        field(6)
    with pytest.raises(ValueError):
        field(4).element(4)


def test_element_operators():
    F = field(9)
    x = F.element(3)  # the generator of F_9 over F_3
    assert (x * x).value == 4  # x^2 = x + 1 modulo x^2 + 2x + 2
    assert (x / x).value == 1
    assert (x ** 8).value == 1
    with pytest.raises(ZeroDivisionError):
        F.element(0).inverse()
    assert str(F.element(5)) == "x+2"


def test_rank_nullspace_solve():
    F = field(5)
    A = np.array([[1, 1, 0], [0, 1, 1], [1, 0, 2]])  # det 3
    assert fq.rank(A, F) == 3
    x = fq.solve(A, np.array([1, 0, 0]), F)
    assert (fq.matmul(A, x[:, None], F).ravel() == [1, 0, 0]).all()
    B = A.copy()
    B[2] = (B[0] + B[1]) % 5
    N = fq.nullspace(B, F)
    assert N.shape[0] == 1
    assert not fq.matmul(B, N.T, F).any()


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(ORDERS), st.integers(1, 4), st.integers(1, 5), st.data())
def test_rank_nullity(q, m, n, data):
    F = field(q)
    A = np.array(data.draw(st.lists(st.lists(st.integers(0, q - 1), min_size=n, max_size=n), min_size=m, max_size=m)))
    N = fq.nullspace(A, F)
    assert fq.rank(A, F) + N.shape[0] == n
    if N.shape[0]:
        assert not fq.matmul(A, N.T, F).any()
    if m == n:
        inv = fq.inverse(A, F)
        assert (inv is None) == (fq.rank(A, F) < n)
        if inv is not None:
            assert (fq.matmul(A, inv, F) == np.eye(n, dtype=np.int64)).all()


def test_reduce_mod_detects_membership():
    F = field(3)
    R, piv = fq.rref(np.array([[1, 1, 0, 0], [0, 0, 1, 2]]), F)
    assert not fq.reduce_mod(np.array([2, 2, 1, 2]), R, piv, F).any()
    assert fq.reduce_mod(np.array([1, 0, 0, 0]), R, piv, F).any()


def test_fq_element_rejects_foreign_field():
    with pytest.raises(ValueError):
        FqElement(field(4), 1) + FqElement(field(8), 1)
