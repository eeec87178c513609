"""Fixed test corpora: small groups by description string, and finite surjections."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grammar import parse_group
from .groups import FiniteGroup, center, cyclic, direct_product, modular16, quotient_group
from .matrices import determinant_subgroup
from .subgroups import derived_subgroup

FIELD_ORDERS = (2, 3, 4, 5, 7, 8, 9)

# direct products and other small groups that the named families miss
EXTRA_PERMUTATION_GROUPS = (
    "perm[(1 2),(3 4)]",
    "perm[(1 2),(3 4),(5 6)]",
    "perm[(1 2),(3 4 5 6)]",
    "perm[(1 2 3),(4 5 6)]",
    "perm[(1 2),(3 4 5)(6 7)]",
    "perm[(1 2 3),(2 3 4)]",
    "perm[(1 2 3 4),(1 3),(5 6)]",
    "perm[(1 2 3 4),(5 6 7 8)]",
    "perm[(1 2),(3 4),(5 6),(7 8)]",
    "perm[(1 2),(3 4 5 6 7 8 9 10)]",
    "perm[(1 2),(3 4),(5 6 7 8)]",
)


def small_group_specs() -> list[str]:
    """Description strings for groups of order <= 16, named families first."""
    specs = [f"C({n})" for n in range(1, 17)]
    specs += [f"D({n})" for n in range(1, 9)]
    specs += [f"S({n})" for n in range(1, 4)]
    specs += ["Q8", "M16", "GL(2,2)", "SL(2,2)"]
    specs += [f"GL(1,{q})" for q in FIELD_ORDERS] + [f"SL(1,{q})" for q in FIELD_ORDERS]
    specs += list(EXTRA_PERMUTATION_GROUPS)
    return specs


def small_groups() -> list[tuple[str, FiniteGroup]]:
    out = []
    for s in small_group_specs():
        G = parse_group(s)
        if G.order > 16:
            raise AssertionError(f"{s} has order {G.order}")
        out.append((s, G))
    return out


def criteria_corpus() -> list[tuple[str, FiniteGroup]]:
    return small_groups() + [(s, parse_group(s)) for s in ("S(4)", "GL(2,3)")]


@dataclass
class Surjection:
    name: str
    source: FiniteGroup
    target: FiniteGroup
    images: np.ndarray  # images[i] = index in target of source element i


def _onto_quotient(name: str, G: FiniteGroup, N) -> Surjection:
    Q, coset_of = quotient_group(G, N, name=name.split("->")[1].strip())
    return Surjection(name, G, Q, coset_of)


def surjection_corpus() -> list[Surjection]:
    S3, S4, D4, Q8 = (parse_group(s) for s in ("S(3)", "S(4)", "D(4)", "Q8"))
    GL23, D6 = parse_group("GL(2,3)"), parse_group("D(6)")
    A4 = derived_subgroup(S4)
    V4 = derived_subgroup(S4, A4)
    out = [
        _onto_quotient("S3 -> S3/A3", S3, derived_subgroup(S3)),
        _onto_quotient("S4 -> S4/V4", S4, V4),
        _onto_quotient("S4 -> S4/A4", S4, A4),
        _onto_quotient("D4 -> D4/Z", D4, center(D4)),
        _onto_quotient("Q8 -> Q8/Z", Q8, center(Q8)),
        _onto_quotient("GL(2,3) -> GL(2,3)/Z", GL23, center(GL23)),
        _onto_quotient("GL(2,3) -> GL(2,3)/SL(2,3)", GL23, determinant_subgroup(GL23, 1)),
        _onto_quotient("D6 -> D6/Z", D6, center(D6)),
    ]
    M16 = modular16()
    for k in (2, 3):
        P, first, _ = direct_product(M16, cyclic(k), name=f"M16xC{k}")
        out.append(Surjection(f"M16xC{k} -> M16", P, M16, first))
    return out
