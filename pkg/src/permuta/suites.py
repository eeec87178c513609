"""Verification suites: each returns a list of report items."""

from __future__ import annotations

import random
from typing import Iterable, Sequence

import numpy as np

from . import matrices
from .algebra import (
    GroupAlgebra,
    center_dimension_of_semisimple_quotient,
    certify_radical,
    jacobson_radical,
    quotient_commutativity_check,
    verify_radical_group_intersection,
)
from .corpus import FIELD_ORDERS, Surjection, criteria_corpus, small_groups, surjection_corpus
from .fields import field
from .grammar import parse_group
from .groups import FiniteGroup, all_subgroups, cyclic, cyclic_subgroups, preimage
from .magnus import (
    FreeWord,
    OrderedGroupAlgebraElement,
    injectivity_check,
    kg_multiply,
    magnus_compare,
    magnus_sorted,
    valuation,
)
from .oracles import maximal_nilpotent_ideal
from .report import Item
from .subgroups import (
    check_all_permutable_subgroups_are_normal,
    classify,
    derived_subgroup,
    is_p_group,
    is_permutable,
    permutability_criteria,
    subnormal_defect,
)

Named = Sequence[tuple[str, FiniteGroup]]


def _members(H) -> list[int]:
    return [int(x) for x in H.members]


# -- subgroup lattice ---------------------------------------------------------------


def classify_items(name: str, G: FiniteGroup) -> list[Item]:
    table, rows = [], []
    for k, r in enumerate(classify(G)):
        d = r.to_dict()
        d["members"] = [int(x) for x in d["members"]]
        rows.append(d)
        defect = "-" if d["defect"] is None else d["defect"]
        table.append(
            f"#{k:<3} order {d['order']:<3} normal={_flag(d['normal'])} permutable={_flag(d['permutable'])} "
            f"subnormal={_flag(d['subnormal'])} defect={defect} core={d['core_order']} "
            f"closure={d['normal_closure_order']} radical_over={_flag(d['radical_over'])}"
        )
    return [Item(f"subgroups of {name} (order {G.order})", None, {"count": len(rows), "table": table, "subgroups": rows})]


def _flag(b: bool) -> str:
    return "y" if b else "n"


def criteria_items(groups: Named | None = None) -> list[Item]:
    """The six characterizations of permutability agree on every subgroup."""
    groups = criteria_corpus() if groups is None else groups
    items = []
    for name, G in groups:
        subgroups = all_subgroups(G)
        bad = []
        permutable = 0
        for H in subgroups:
            rec = permutability_criteria(G, H, subgroups)
            permutable += rec.values[0]
            if not rec.agree:
                bad.append({"members": _members(H), "values": list(rec.values)})
        items.append(Item(f"criteria agree on {name}", not bad, {"subgroups": len(subgroups), "permutable": permutable, "disagreements": bad}))
    return items


def _permutable_normal_item(name: str, G: FiniteGroup) -> Item:
    chk = check_all_permutable_subgroups_are_normal(G)
    return Item(
        f"permutable implies normal in {name}",
        chk.verdict,
        {
            "order": chk.order,
            "subgroups": chk.subgroup_count,
            "permutable": chk.permutable_count,
            "normal": chk.normal_count,
            "offenders": [_members(H) for H in chk.offenders],
        },
    )


def small_gl_items(groups: Named | None = None) -> list[Item]:
    groups = [(f"GL(2,{q})", matrices.generate_GL(2, q)) for q in (2, 3)] if groups is None else groups
    return [_permutable_normal_item(name, G) for name, G in groups]


def gl_items(params: Iterable[tuple[int, int]] = ((3, 2), (2, 4))) -> list[Item]:
    items = []
    for n, q in params:
        rep = matrices.verify_gl_permutable_normal(n, q)
        items.append(
            Item(
                f"GL({n},{q}): permutable implies normal, non-central normal contains SL",
                rep.verdict,
                {
                    "order": rep.order,
                    "subgroups": rep.subgroup_count,
                    "permutable_not_normal": [_members(H) for H in rep.permutable_not_normal],
                    "noncentral_normal_missing_sl": [_members(H) for H in rep.noncentral_normal_missing_sl],
                },
            )
        )
    return items


def control_items() -> list[Item]:
    """Known counterexamples: both items pass when the counterexample is found."""
    M16 = parse_group("M16")
    chk = check_all_permutable_subgroups_are_normal(M16)
    D4 = parse_group("D(4)")
    cyc = cyclic_subgroups(D4)
    witnesses = [H for H in all_subgroups(D4) if subnormal_defect(D4, H) == 2 and not is_permutable(D4, H, cyc)]
    return [
        Item("M16 has a permutable non-normal subgroup", bool(chk.offenders), {"offenders": [_members(H) for H in chk.offenders]}),
        Item("D(4) has a non-permutable subgroup of subnormal defect 2", bool(witnesses), {"witnesses": [_members(H) for H in witnesses]}),
    ]


def pullback_items(surjections: Sequence[Surjection] | None = None) -> list[Item]:
    """Preimages of permutable subgroups under surjections are permutable."""
    surjections = surjection_corpus() if surjections is None else surjections
    items = []
    for s in surjections:
        target_cyc = cyclic_subgroups(s.target)
        source_cyc = cyclic_subgroups(s.source)
        checked, bad = 0, []
        for M in all_subgroups(s.target):
            if not is_permutable(s.target, M, target_cyc):
                continue
            checked += 1
            N = preimage(s.source, s.images, M)
            if not is_permutable(s.source, N, source_cyc):
                bad.append(_members(M))
        items.append(Item(f"pullback along {s.name}", not bad, {"permutable_in_target": checked, "failures": bad}))
    return items


# -- generator calculus -------------------------------------------------------------


def generator_calculus_items(ns: Iterable[int] = (1, 2, 3), qs: Iterable[int] = FIELD_ORDERS) -> list[Item]:
    items = []
    for q in qs:
        F = field(q)
        counts = {"inverse": 0, "conjugation": 0, "involution": 0, "factorization": 0}
        fails: list[str] = []
        for n in ns:
            I = matrices.MatrixFq.identity(n, F)
            for i in range(1, n + 1):
                for j in range(1, n + 1):
                    if i == j:
                        continue
                    for a in F.elements():
                        t = matrices.transvection(n, i, j, a, F)
                        tp = matrices.t_prime(n, i, j, a, F)
                        checks = {
                            "inverse": t.inverse() == matrices.transvection(n, i, j, int(F.neg[a]), F),
                            "conjugation": matrices.conjugation_identity_check(n, i, j, a, F),
                            "involution": tp * tp == I,
                            "factorization": matrices.t_prime(n, i, j, 0, F) * tp == t,
                        }
                        for k, ok in checks.items():
                            counts[k] += 1
                            if not ok:
                                fails.append(f"{k} n={n} i={i} j={j} a={a}")
        items.append(Item(f"transvection identities over F_{q}", not fails, {"checked": counts, "failures": fails}))
    return items


# -- group algebras -----------------------------------------------------------------


def radical_items(name: str, G: FiniteGroup, p: int) -> list[Item]:
    A = GroupAlgebra(G, p)
    J = jacobson_radical(A, verify=False)
    cert = certify_radical(A, J.rows)
    maschke = (J.dimension == 0) == (G.order % p != 0)
    details = {
        "dimension": J.dimension,
        "basis": [{str(g): c for g, c in m.items()} for m in J.basis_maps()],
        "nilpotency_dims": [int(x) for x in cert.nilpotency_dims],
        "two_sided": cert.two_sided,
        "quotient_radical_dim": cert.quotient_radical_dim,
        "elements": [G.label(g) for g in range(G.order)],
    }
    center_dim = center_dimension_of_semisimple_quotient(G, p)
    return [
        Item(f"J(F_{p}[{name}]) is a nilpotent ideal with semisimple quotient", cert.ok, details),
        Item(f"J(F_{p}[{name}]) = 0 iff {p} does not divide {G.order}", maschke, {"dimension": J.dimension}),
        Item(
            f"center of F_{p}[{name}]/J",
            None,
            {"dimension": center_dim, "note": "counts simple components only over a splitting field"},
        ),
    ]


def maschke_items(groups: Named | None = None, primes: Iterable[int] = (2, 3, 5)) -> list[Item]:
    groups = small_groups() if groups is None else groups
    items = []
    for p in primes:
        bad = []
        for name, G in groups:
            dim = jacobson_radical(GroupAlgebra(G, p)).dimension
            if (dim == 0) != (G.order % p != 0):
                bad.append(f"{name}: dim J = {dim}")
        items.append(Item(f"radical vanishes exactly when {p} does not divide |G|", not bad, {"groups": len(groups), "failures": bad}))
    return items


def cyclic_radical_items(primes: Iterable[int] = (2, 3, 5, 7)) -> list[Item]:
    items = []
    for p in primes:
        dim = jacobson_radical(GroupAlgebra(cyclic(p), p)).dimension
        items.append(Item(f"dim J(F_{p}[C({p})]) = {p - 1}", dim == p - 1, {"dimension": dim}))
    return items


def radical_oracle_items(groups: Named | None = None, primes: Iterable[int] = (2, 3, 5), max_dim: int = 8) -> list[Item]:
    """Compare the radical with the enumerate-everything nilpotent-ideal oracle."""
    groups = small_groups() if groups is None else groups
    items = []
    for p in primes:
        checked, bad = [], []
        for name, G in groups:
            if G.order > max_dim:
                continue
            A = GroupAlgebra(G, p)
            checked.append(name)
            if not np.array_equal(maximal_nilpotent_ideal(A), jacobson_radical(A).rows):
                bad.append(name)
        items.append(Item(f"radical over F_{p} matches the nilpotent-ideal oracle", not bad, {"algebras": len(checked), "failures": bad}))
    return items


def radical_intersection_items(groups: Named | None = None, primes: Iterable[int] = (2, 3)) -> list[Item]:
    groups = small_groups() if groups is None else groups
    items = []
    for p in primes:
        bad = []
        for name, G in groups:
            r = verify_radical_group_intersection(G, p)
            if not r.verdict:
                bad.append({"group": name, "unipotent": list(r.unipotent_elements), "op": list(r.op_members)})
        items.append(Item(f"G meet (1 + J(F_{p}G)) equals O_{p}(G)", not bad, {"groups": len(groups), "failures": bad}))
    return items


def quotient_commutativity_items(groups: Named | None = None, primes: Iterable[int] = (2, 3, 5)) -> list[Item]:
    groups = small_groups() if groups is None else groups
    items = []
    for p in primes:
        tested, bad = [], []
        for name, G in groups:
            if not is_p_group(derived_subgroup(G).order, p):
                continue
            tested.append(name)
            if not quotient_commutativity_check(G, p):
                bad.append(name)
        items.append(
            Item(f"F_{p}[G]/J commutative when G' is a {p}-group", not bad, {"tested": len(tested), "failures": bad})
        )
    return items


# -- free groups ----------------------------------------------------------------------


def random_word(rng: random.Random, rank: int, max_len: int) -> FreeWord:
    letters: list[tuple[int, int]] = []
    length = rng.randint(0, max_len)
    while len(letters) < length:
        g, s = rng.randrange(rank), rng.choice((1, -1))
        if letters and letters[-1] == (g, -s):
            continue
        letters.append((g, s))
    return FreeWord(rank, tuple(letters))


def random_kg_element(rng: random.Random, q: int, rank: int, max_len: int, max_terms: int) -> OrderedGroupAlgebraElement:
    F = field(q)
    coeffs: dict[FreeWord, int] = {}
    for _ in range(rng.randint(1, max_terms)):
        coeffs[random_word(rng, rank, max_len)] = rng.randrange(1, q)
    return OrderedGroupAlgebraElement.from_dict(F, rank, coeffs)


def magnus_items(seed: int = 0, pairs: int = 10_000, valuation_pairs: int = 200) -> list[Item]:
    rng = random.Random(seed)
    items = []

    # totality and antisymmetry on pairs; bi-invariance with a random multiplier
    order_fail, bi_fail = [], []
    for _ in range(pairs):
        rank = rng.randint(1, 3)
        a, b, c = (random_word(rng, rank, 6) for _ in range(3))
        ab, ba = magnus_compare(a, b), magnus_compare(b, a)
        if ab != -ba or (ab == 0) != (a == b):
            order_fail.append(f"{a} | {b}")
        if ab and not (magnus_compare(c * a, c * b) == ab == magnus_compare(a * c, b * c)):
            bi_fail.append(f"{a} | {b} | {c}")
    items.append(Item("Magnus order is total and antisymmetric", not order_fail, {"pairs": pairs, "violations": order_fail[:20]}))
    items.append(Item("Magnus order is invariant under left and right multiplication", not bi_fail, {"pairs": pairs, "violations": bi_fail[:20]}))

    # transitivity: a sorted sample must be consistent with every pairwise comparison
    trans_fail = 0
    samples = 0
    for rank in (1, 2, 3):
        words = sorted({random_word(rng, rank, 6) for _ in range(150)}, key=lambda w: w.letters)
        ordered = magnus_sorted(words)
        for i in range(len(ordered)):
            for j in range(i + 1, len(ordered)):
                samples += 1
                trans_fail += magnus_compare(ordered[i], ordered[j]) >= 0
    items.append(Item("Magnus order is transitive on sorted samples", trans_fail == 0, {"pairs": samples, "violations": trans_fail}))

    # valuation is multiplicative
    val_fail = []
    for _ in range(valuation_pairs):
        q = rng.choice(FIELD_ORDERS)
        rank = rng.randint(1, 3)
        x = random_kg_element(rng, q, rank, 4, 4)
        y = random_kg_element(rng, q, rank, 4, 4)
        if valuation(kg_multiply(x, y)) != valuation(x) * valuation(y):
            val_fail.append(f"({x}) ({y})")
    items.append(Item("valuation of a product is the product of valuations", not val_fail, {"pairs": valuation_pairs, "violations": val_fail}))

    for rank in (1, 2, 3):
        words, distinct = injectivity_check(rank, 6, 7)
        items.append(
            Item(
                f"rank {rank}: reduced words of length <= 6 have distinct degree-7 expansions",
                words == distinct,
                {"words": words, "distinct_expansions": distinct},
            )
        )
    return items
