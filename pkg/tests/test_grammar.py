import pytest

from permuta.errors import ClosureCapExceeded, GroupSpecError
from permuta.grammar import parse_group


@pytest.mark.parametrize(
    "text, order",
    [
        ("S(1)", 1),
        ("S(4)", 24),
        ("D(4)", 8),
        ("D(1)", 2),
        ("C(12)", 12),
        ("Q8", 8),
        ("M16", 16),
        ("GL(2,3)", 48),
        ("SL(2,3)", 24),
        ("GL(1,9)", 8),
        (" GL( 2 , 4 ) ", 180),
        ("perm[(1 2),(1 2 3)]", 6),
        ("perm[(1 2)(3 4),(1 3)(2 4)]", 4),
        ("perm[(1 2 3 4 5)]", 5),
    ],
)
def test_accepted_forms(text, order):
    assert parse_group(text).order == order


@pytest.mark.parametrize(
    "text",
    ["", "S4", "S(0)", "C(-1)", "GL(2)", "GL(0,2)", "GL(2,6)", "S(2,3)", "Q16", "perm[]", "perm[(1 2), x]", "perm[(1 1)]", "cayley:", "cayley:/no/such/file"],
)
def test_rejected_forms(text):
    with pytest.raises(GroupSpecError):
        parse_group(text)


def test_cap_is_forwarded():
    with pytest.raises(ClosureCapExceeded):
        parse_group("perm[(1 2),(1 2 3 4 5 6)]", cap=50)
    with pytest.raises(ClosureCapExceeded):
        parse_group("GL(2,5)", cap=100)


def test_cayley_file_with_bad_contents(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("2\n0 1\n1 1\n")
    with pytest.raises(GroupSpecError):
        parse_group(f"cayley:{path}")
