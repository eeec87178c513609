import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from permuta import oracles
from permuta.config import CONFIG
from permuta.corpus import small_groups
from permuta.errors import ClosureCapExceeded, MixedRepresentation, OrderCapExceeded
from permuta.grammar import parse_group
from permuta.groups import (
    all_subgroups,
    center,
    cyclic,
    cyclic_subgroup,
    direct_product,
    from_cayley_table,
    generate_group,
    generated_subgroup,
    homomorphism_from_images,
    is_homomorphism,
    join,
    load_cayley,
    preimage,
    quotient_group,
    subset_product,
    symmetric,
)
from permuta.fields import field
from permuta.matrices import dilation, generate_GL, gl_order, transvection
from permuta.permutations import Perm
from permuta.subgroups import derived_subgroup, is_normal


def test_generate_identity_only():
    G = generate_group([Perm.identity(3)])
    assert G.order == 1


def test_generate_s3():
    G = generate_group([Perm.parse("(1 2)"), Perm.parse("(1 2 3)")])
    assert G.order == 6
    assert G.identity_index == 0


def test_generate_gl23_from_transvections():
    F = field(3)
    gens = [transvection(2, 1, 2, a, F) for a in (1, 2)] + [transvection(2, 2, 1, a, F) for a in (1, 2)]
    gens.append(dilation(2, 1, 2, F))
    G = generate_group(gens)
    assert G.order == 48 == (9 - 1) * (9 - 3)


def test_mixed_generators_rejected():
    with pytest.raises(MixedRepresentation):
        generate_group([Perm.parse("(1 2)"), transvection(2, 1, 2, 1, field(2))])
    with pytest.raises(MixedRepresentation):
        generate_group([transvection(2, 1, 2, 1, field(2)), transvection(3, 1, 2, 1, field(2))])


def test_closure_cap():
    with pytest.raises(ClosureCapExceeded):
        generate_group([Perm.parse("(1 2)"), Perm.parse("(1 2 3 4 5 6)")], cap=100)


def test_lattice_cap():
    with pytest.raises(OrderCapExceeded):
        all_subgroups(symmetric(4), cap=10)


@pytest.mark.parametrize("name", ["S(3)", "Q8", "M16", "D(6)", "GL(2,3)"])
def test_table_invariants(name):
    G = parse_group(name)
    T = G.mul_table
    n = G.order
    assert all(sorted(row) == list(range(n)) for row in T)
    assert all(sorted(col) == list(range(n)) for col in T.T)
    assert (T[np.arange(n), G.inv_table] == G.identity_index).all()
    # associativity on every triple
    assert (T[T[:, :, None], np.arange(n)[None, None, :]] == T[np.arange(n)[:, None, None], T[None, :, :]]).all()


def test_subset_product_examples(S3):
    A = {0, 3, 4}
    assert subset_product(S3, A, {S3.identity_index}) == frozenset(A)
    t12 = S3.index(Perm.parse("(1 2)", 3))
    t13 = S3.index(Perm.parse("(1 3)", 3))
    prod = subset_product(S3, cyclic_subgroup(S3, t12).members, cyclic_subgroup(S3, t13).members)
    assert len(prod) == 4


def test_normal_times_subgroup_is_join(S3):
    subs = all_subgroups(S3)
    for N in subs:
        if not is_normal(S3, N):
            continue
        for M in subs:
            assert subset_product(S3, N.members, M.members) == frozenset(join(S3, N, M).members)


def test_cyclic_subgroup_examples(S3, GL23):
    assert cyclic_subgroup(S3, S3.identity_index).order == 1
    assert cyclic_subgroup(S3, S3.index(Perm.parse("(1 2 3)"))).order == 3
    t = GL23.index(transvection(2, 1, 2, 1, field(3)))
    assert cyclic_subgroup(GL23, t).order == 3


@pytest.mark.parametrize(
    "name, count",
    [("C(1)", 1), ("S(3)", 6), ("S(4)", 30), ("D(4)", 10), ("Q8", 6), ("M16", 11), ("C(12)", 6), ("GL(2,3)", 55)],
)
def test_subgroup_counts(name, count):
    assert len(all_subgroups(parse_group(name))) == count


def test_lattice_matches_brute_force_on_corpus():
    for name, G in small_groups():
        fast = {frozenset(H.members) for H in all_subgroups(G)}
        assert fast == oracles.brute_force_subgroups(G), name


@pytest.mark.parametrize("name", ["S(4)", "GL(2,3)", "D(8)"])
def test_lattice_matches_pair_generated(name):
    G = parse_group(name)
    fast = {frozenset(H.members) for H in all_subgroups(G)}
    assert fast == oracles.pair_generated_subgroups(G)


def test_subgroups_satisfy_lagrange_and_closure(GL23):
    for H in all_subgroups(GL23):
        assert GL23.order % H.order == 0
        assert GL23.identity_index in H
        idx = H.indices
        assert H.mask[GL23.mul_table[np.ix_(idx, idx)]].all()
        assert H.mask[GL23.inv_table[idx]].all()


def test_quotient_and_direct_product(S4):
    A4 = derived_subgroup(S4)
    Q, coset_of = quotient_group(S4, A4)
    assert Q.order == 2
    assert is_homomorphism(S4, Q, coset_of)
    P, p1, p2 = direct_product(cyclic(2), cyclic(3))
    assert P.order == 6 and P.is_abelian
    assert is_homomorphism(P, cyclic(2), p1)
    assert is_homomorphism(P, cyclic(3), p2)


def test_quotient_by_non_normal_rejected(S3):
    H = generated_subgroup(S3, [S3.index(Perm.parse("(1 2)", 3))])
    with pytest.raises(ValueError):
        quotient_group(S3, H)


def test_homomorphism_from_images_and_preimage(S3):
    C2 = cyclic(2)
    # sign map: (1 2) -> generator of C2, 3-cycle -> identity
    images = [C2.generators[0] if S3.elements[g].sign() < 0 else C2.identity_index for g in S3.generators]
    phi = homomorphism_from_images(S3, C2, images)
    kernel = preimage(S3, phi, C2.trivial())
    assert kernel.order == 3
    # a 3-cycle cannot map onto an element of order 2
    with pytest.raises(ValueError):
        homomorphism_from_images(S3, C2, [C2.generators[0], C2.generators[0]])


def test_cayley_round_trip(tmp_path, D4):
    path = tmp_path / "d4.txt"
    rows = "\n".join(" ".join(str(int(v)) for v in row) for row in D4.mul_table)
    path.write_text(f"{D4.order}\n{rows}\n")
    G = load_cayley(path)
    assert G.order == 8
    assert len(all_subgroups(G)) == 10
    assert parse_group(f"cayley:{path}").order == 8


def test_cayley_rejects_non_group():
    with pytest.raises(ValueError):
        from_cayley_table([[0, 1], [1, 1]])
    with pytest.raises(ValueError):
        from_cayley_table([[0, 1, 2], [1, 2, 0], [2, 1, 0]])


def test_center_sizes():
    assert center(parse_group("D(4)")).order == 2
    assert center(parse_group("Q8")).order == 2
    assert center(parse_group("S(3)")).order == 1
    assert center(generate_GL(2, 3)).order == 2


def test_gl_orders():
    for n, q in [(1, 9), (2, 2), (2, 3), (2, 4), (3, 2)]:
        assert generate_GL(n, q).order == gl_order(n, q)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 23), min_size=1, max_size=3))
def test_generated_subgroup_matches_set_closure(gens):
    G = symmetric(4)
    assert frozenset(generated_subgroup(G, gens).members) == oracles.set_closure(G, gens)


def test_config_cap_default():
    assert CONFIG.closure_cap == 10_000 and CONFIG.lattice_cap == 500
