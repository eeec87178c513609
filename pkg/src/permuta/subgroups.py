"""Subgroup predicates: normality, permutability, subnormal defect, core and
normal closure, plus the batch checks built on them."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .groups import (
    FiniteGroup,
    SubgroupSet,
    _closure_mask,
    _small_generating_set,
    all_subgroups,
    cyclic_subgroups,
    generated_subgroup,
    is_closed,
    product_mask,
)


def _conjugates(G: FiniteGroup, gs, xs) -> np.ndarray:
    """Array [i, j] = gs[i] xs[j] gs[i]^-1."""
    T = G.mul_table
    gs = np.asarray(gs, dtype=np.int64)
    xs = np.asarray(xs, dtype=np.int64)
    return T[T[gs[:, None], xs[None, :]], G.inv_table[gs][:, None]]


def normalizes(G: FiniteGroup, K: SubgroupSet, N: SubgroupSet) -> bool:
    """True iff every element of K conjugates N into itself."""
    kg = K.generating_set()
    ng = N.generating_set()
    if not kg or not ng:
        return True
    return bool(N.mask[_conjugates(G, kg, ng)].all())


def is_normal(G: FiniteGroup, N: SubgroupSet, ambient: SubgroupSet | None = None) -> bool:
    """N normal in ``ambient`` (default: all of G)."""
    ambient = G.whole() if ambient is None else ambient
    return N <= ambient and normalizes(G, ambient, N)


def permutes_with(G: FiniteGroup, N: SubgroupSet, M: SubgroupSet) -> bool:
    """NM == MN as sets."""
    return bool((product_mask(G, N.indices, M.indices) == product_mask(G, M.indices, N.indices)).all())


def is_permutable(G: FiniteGroup, N: SubgroupSet, cyclics: list[SubgroupSet] | None = None) -> bool:
    """N<x> == <x>N for every x in G (enough to permute with every subgroup)."""
    cyclics = cyclic_subgroups(G) if cyclics is None else cyclics
    for C in cyclics:
        if C <= N or N <= C:
            continue
        if not permutes_with(G, N, C):
            return False
    return True


def core(G: FiniteGroup, H: SubgroupSet) -> SubgroupSet:
    """Intersection of all conjugates of H: the largest normal subgroup inside H."""
    T = G.mul_table
    g = np.arange(G.order)
    # [g, x] = g^-1 x g
    conj = T[T[G.inv_table[:, None], g[None, :]], g[:, None]]
    mask = H.mask[conj].all(axis=0)
    return SubgroupSet(G, mask, _small_generating_set(G, mask))


def normal_closure(G: FiniteGroup, H: SubgroupSet, ambient: SubgroupSet | None = None) -> SubgroupSet:
    """Subgroup generated by the conjugates of H under ``ambient`` (default G)."""
    ambient = G.whole() if ambient is None else ambient
    hg = H.generating_set()
    if not hg:
        return H
    conj = np.unique(_conjugates(G, ambient.indices, hg).ravel())
    return generated_subgroup(G, conj.tolist())


def normal_closure_series(G: FiniteGroup, N: SubgroupSet) -> list[SubgroupSet]:
    """G, N^G, N^(N^G), ... until it stops shrinking."""
    series = [G.whole()]
    while True:
        K = series[-1]
        nxt = normal_closure(G, N, K)
        if nxt == K:
            return series
        series.append(nxt)


def subnormal_defect(G: FiniteGroup, N: SubgroupSet) -> int | None:
    """Minimal length of a normal chain from N up to G; None if N is not subnormal."""
    series = normal_closure_series(G, N)
    if series[-1] != N:
        return None
    return len(series) - 1


def is_subnormal(G: FiniteGroup, N: SubgroupSet) -> bool:
    return subnormal_defect(G, N) is not None


def derived_subgroup(G: FiniteGroup, H: SubgroupSet | None = None) -> SubgroupSet:
    H = G.whole() if H is None else H
    T, inv = G.mul_table, G.inv_table
    idx = H.indices
    a, b = idx[:, None], idx[None, :]
    comms = np.unique(T[T[a, b], T[inv[a], inv[b]]].ravel())
    return generated_subgroup(G, comms.tolist())


def is_radical_over(G: FiniteGroup, H: SubgroupSet) -> bool:
    """Every x in G has some positive power inside H."""
    for x in range(G.order):
        y = x
        while not H.mask[y]:
            y = G.mul(y, x)
            if y == x:
                return False
    return True


def is_p_group(order: int, p: int) -> bool:
    while order % p == 0:
        order //= p
    return order == 1


@dataclass
class CriteriaRecord:
    """Six equivalent characterizations of permutability, evaluated independently."""

    products_are_subgroups_nm: bool
    products_are_subgroups_mn: bool
    permutes_with_all_subgroups: bool
    permutes_with_cyclic: bool
    left_exchange: bool
    right_exchange: bool

    @property
    def values(self) -> tuple[bool, ...]:
        return (
            self.products_are_subgroups_nm,
            self.products_are_subgroups_mn,
            self.permutes_with_all_subgroups,
            self.permutes_with_cyclic,
            self.left_exchange,
            self.right_exchange,
        )

    @property
    def agree(self) -> bool:
        return len(set(self.values)) == 1


def _exchange(G: FiniteGroup, N: SubgroupSet, left: bool) -> bool:
    """left: for all a in N, x in G some n has x^-n a x in N  (a x = x^n a').
    right: for all a, x some n has x a x^-n in N             (x a = a' x^n)."""
    T, inv = G.mul_table, G.inv_table
    a = N.indices
    for x in range(G.order):
        pw = np.asarray(G.powers(x))
        if left:
            cand = T[T[inv[pw][:, None], a[None, :]], x]
        else:
            cand = T[T[x, a][None, :], inv[pw][:, None]]
        if not N.mask[cand].any(axis=0).all():
            return False
    return True


def permutability_criteria(
    G: FiniteGroup, N: SubgroupSet, subgroups: list[SubgroupSet] | None = None
) -> CriteriaRecord:
    subgroups = all_subgroups(G) if subgroups is None else subgroups
    c1 = c2 = c3 = True
    for M in subgroups:
        nm = product_mask(G, N.indices, M.indices)
        mn = product_mask(G, M.indices, N.indices)
        c1 = c1 and is_closed(G, nm)
        c2 = c2 and is_closed(G, mn)
        c3 = c3 and bool((nm == mn).all())
    c4 = is_permutable(G, N)
    return CriteriaRecord(c1, c2, c3, c4, _exchange(G, N, True), _exchange(G, N, False))


@dataclass
class ClosureDiagnostic:
    normal_in_closure: bool
    derived_in_core: bool


def closure_normality_diagnostic(G: FiniteGroup, H: SubgroupSet) -> ClosureDiagnostic:
    """Is H normal in its normal closure, and does H' lie in the core of H?

    Only a diagnostic: the statement these flags mirror needs an infinite
    cyclic subgroup meeting H trivially, which a finite group never has.
    """
    closure = normal_closure(G, H)
    return ClosureDiagnostic(
        normal_in_closure=is_normal(G, H, closure),
        derived_in_core=derived_subgroup(G, H) <= core(G, H),
    )


@dataclass
class SubgroupReport:
    subgroup: SubgroupSet
    is_normal: bool
    is_permutable: bool
    is_subnormal: bool
    defect: int | None
    core: SubgroupSet
    normal_closure: SubgroupSet
    radical_over: bool

    def to_dict(self) -> dict:
        return {
            "order": self.subgroup.order,
            "members": list(self.subgroup.members),
            "normal": self.is_normal,
            "permutable": self.is_permutable,
            "subnormal": self.is_subnormal,
            "defect": self.defect,
            "core_order": self.core.order,
            "normal_closure_order": self.normal_closure.order,
            "radical_over": self.radical_over,
        }


def subgroup_report(G: FiniteGroup, H: SubgroupSet, cyclics: list[SubgroupSet] | None = None) -> SubgroupReport:
    defect = subnormal_defect(G, H)
    return SubgroupReport(
        subgroup=H,
        is_normal=is_normal(G, H),
        is_permutable=is_permutable(G, H, cyclics),
        is_subnormal=defect is not None,
        defect=defect,
        core=core(G, H),
        normal_closure=normal_closure(G, H),
        radical_over=is_radical_over(G, H),
    )


def classify(G: FiniteGroup, subgroups: list[SubgroupSet] | None = None) -> list[SubgroupReport]:
    subgroups = all_subgroups(G) if subgroups is None else subgroups
    cyclics = cyclic_subgroups(G)
    return [subgroup_report(G, H, cyclics) for H in subgroups]


@dataclass
class PermutableNormalCheck:
    """Outcome of checking that every permutable subgroup of G is normal."""

    group: str
    order: int
    subgroup_count: int
    permutable_count: int
    normal_count: int
    offenders: list[SubgroupSet] = field(default_factory=list)
    evidence: list[dict] = field(default_factory=list)

    @property
    def verdict(self) -> bool:
        return not self.offenders


def check_all_permutable_subgroups_are_normal(G: FiniteGroup) -> PermutableNormalCheck:
    subgroups = all_subgroups(G)
    cyclics = cyclic_subgroups(G)
    permutable, offenders, evidence = [], [], []
    normal_count = 0
    for H in subgroups:
        perm = is_permutable(G, H, cyclics)
        norm = is_normal(G, H)
        normal_count += norm
        if perm:
            permutable.append(H)
            if not norm:
                offenders.append(H)
        evidence.append({"order": H.order, "members": list(H.members), "permutable": perm, "normal": norm})
    return PermutableNormalCheck(
        group=G.name,
        order=G.order,
        subgroup_count=len(subgroups),
        permutable_count=len(permutable),
        normal_count=normal_count,
        offenders=offenders,
        evidence=evidence,
    )
