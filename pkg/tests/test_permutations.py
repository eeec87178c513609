import pytest
from hypothesis import given, strategies as st

from permuta.permutations import Perm

perms = st.integers(1, 7).flatmap(lambda n: st.permutations(range(n))).map(lambda p: Perm(tuple(p)))


def test_parse_and_compose_right_to_left():
    a = Perm.parse("(1 2)", 3)
    b = Perm.parse("(1 2 3)")
    # (a*b)(x) = a(b(x)): 1 -> 2 -> 1
    assert (a * b)(0) == 0
    assert (a * b)(1) == 2


def test_cycles_round_trip():
    p = Perm.parse("(1 3 5)(2 4)")
    assert str(p) == "(1 3 5)(2 4)"
    assert Perm.from_cycles(p.cycles(), p.degree) == p


def test_sign():
    assert Perm.parse("(1 2)").sign() == -1
    assert Perm.parse("(1 2 3)").sign() == 1
    assert Perm.identity(4).sign() == 1


def test_bad_cycle_rejected():
    with pytest.raises(ValueError):
        Perm.parse("(1 1)")


@given(perms, perms)
def test_inverse_and_sign_homomorphism(p, q):
    n = max(p.degree, q.degree)
    p, q = p.extend(n), q.extend(n)
    assert p * p.inverse() == Perm.identity(n)
    assert (p * q).sign() == p.sign() * q.sign()
