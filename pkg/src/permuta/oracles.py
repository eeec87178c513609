"""Slow, independent reference implementations used to cross-check the fast paths.

Nothing here shares code with the production routines beyond the group's
multiplication table and the field tables; each oracle takes the most
direct route its definition allows.
"""

from __future__ import annotations

from collections import deque
from itertools import combinations, product
from typing import Iterable

import numpy as np

from .algebra import AlgebraElement, GroupAlgebra
from .fields import GF, row_space
from .groups import FiniteGroup
from .magnus import FreeWord, OrderedGroupAlgebraElement, kg_multiply

ORACLE_LIMIT = 5**8  # largest algebra size maximal_nilpotent_ideal will enumerate
_CHUNK = 16384


def _closed(G: FiniteGroup, members: frozenset[int]) -> bool:
    T = G.mul_table
    return all(int(T[a, b]) in members for a in members for b in members)


def brute_force_subgroups(G: FiniteGroup) -> set[frozenset[int]]:
    """Every subset that contains the identity and is closed under products.

    Exponential in |G|; meant for orders up to about 16.
    """
    e = G.identity_index
    others = [x for x in range(G.order) if x != e]
    out = set()
    for bits in range(1 << len(others)):
        members = frozenset([e] + [x for k, x in enumerate(others) if bits >> k & 1])
        # Lagrange prunes most subsets before the closure test
        if G.order % len(members) == 0 and _closed(G, members):
            out.add(members)
    return out


def set_closure(G: FiniteGroup, gens: Iterable[int]) -> frozenset[int]:
    """Closure under products by plain set iteration."""
    T = G.mul_table
    members = {G.identity_index, *gens}
    frontier = list(members)
    while frontier:
        nxt = []
        for a in frontier:
            for b in list(members):
                for c in (int(T[a, b]), int(T[b, a])):
                    if c not in members:
                        members.add(c)
                        nxt.append(c)
        frontier = nxt
    return frozenset(members)


def pair_generated_subgroups(G: FiniteGroup) -> set[frozenset[int]]:
    """{<a, b> : a, b in G}; equals the full lattice when every subgroup is 2-generated."""
    out = set()
    for a in range(G.order):
        for b in range(a, G.order):
            out.add(set_closure(G, (a, b)))
    return out


def is_normal_in(G: FiniteGroup, H: frozenset[int], K: frozenset[int]) -> bool:
    T, inv = G.mul_table, G.inv_table
    return H <= K and all(int(T[T[k, h], inv[k]]) in H for k in K for h in H)


def defect_by_chain_search(G: FiniteGroup, N: frozenset[int], lattice: Iterable[frozenset[int]]) -> int | None:
    """Shortest chain N = N_r < ... < N_0 = G with each term normal in the next, by BFS."""
    lattice = list(lattice)
    whole = frozenset(range(G.order))
    dist = {N: 0}
    queue = deque([N])
    while queue:
        H = queue.popleft()
        if H == whole:
            return dist[H]
        for K in lattice:
            if K not in dist and H < K and is_normal_in(G, H, K):
                dist[K] = dist[H] + 1
                queue.append(K)
    return None


def core_by_coset_action(G: FiniteGroup, H: frozenset[int]) -> frozenset[int]:
    """Kernel of the action of G on the left cosets of H."""
    T = G.mul_table
    cosets: list[frozenset[int]] = []
    seen: set[int] = set()
    for g in range(G.order):
        if g not in seen:
            c = frozenset(int(T[g, h]) for h in H)
            cosets.append(c)
            seen |= c
    kernel = set()
    for x in range(G.order):
        if all(frozenset(int(T[x, y]) for y in c) == c for c in cosets):
            kernel.add(x)
    return frozenset(kernel)


def normal_closure_by_iteration(G: FiniteGroup, H: frozenset[int]) -> frozenset[int]:
    """Smallest conjugation-stable, product-closed set containing H."""
    T, inv = G.mul_table, G.inv_table
    current = frozenset(H)
    while True:
        conj = {int(T[T[g, h], inv[g]]) for g in range(G.order) for h in current}
        nxt = set_closure(G, conj | current)
        if nxt == current:
            return current
        current = nxt


def permutable_by_definition(G: FiniteGroup, N: frozenset[int], lattice: Iterable[frozenset[int]]) -> bool:
    T = G.mul_table
    for M in lattice:
        nm = {int(T[a, b]) for a in N for b in M}
        mn = {int(T[b, a]) for a in N for b in M}
        if nm != mn:
            return False
    return True


def exhaustive_inverse(a: AlgebraElement) -> AlgebraElement | None:
    """Search every element of the group algebra for a two-sided inverse."""
    A = a.algebra
    one = A.one()
    for b in A.elements():
        if a * b == one and b * a == one:
            return b
    return None


def maximal_nilpotent_ideal(A: GroupAlgebra) -> np.ndarray:
    """Echelon basis of {x : a x is nilpotent for every a}, by enumerating the algebra.

    In a finite-dimensional algebra this set is the Jacobson radical.  Every
    element is enumerated, so it is limited to q^dim <= 5^8.  Prime fields only.
    """
    F = A.field
    if F.k != 1:
        raise ValueError("oracle works over prime fields")
    p, d = F.p, A.dim
    if p**d > ORACLE_LIMIT:
        raise ValueError(f"{p}^{d} elements is too many to enumerate")
    C = A.structure_constants.astype(np.int64)
    V = np.array(list(product(range(p), repeat=d)), dtype=np.int64)[:, ::-1]
    weights = p ** np.arange(d, dtype=np.float64)

    nilpotent = np.empty(len(V), dtype=bool)
    for start in range(0, len(V), _CHUNK):
        x = V[start : start + _CHUNK]
        right = np.einsum("nj,ijk->nik", x, C)  # y -> y x
        power = x.copy()
        for _ in range(d - 1):
            power = np.einsum("ni,nik->nk", power, right) % p
        nilpotent[start : start + _CHUNK] = ~power.any(axis=1)  # x^d == 0 iff x is nilpotent

    # a = 1 is among the multipliers, so only nilpotent x can survive
    alive = np.flatnonzero(nilpotent)
    Cf = C.astype(np.float64)
    for start in range(0, len(V), 64):
        if len(alive) == 1:
            break
        # left[b] is the matrix (k, j) of x -> a_b x; float64 keeps the products exact and on BLAS
        left = np.einsum("ai,ijk->akj", V[start : start + 64].astype(np.float64), Cf).reshape(-1, d)
        keep = []
        for c in range(0, len(alive), _CHUNK):
            cols = alive[c : c + _CHUNK]
            prod = np.fmod(left @ V[cols].T.astype(np.float64), p).reshape(-1, d, len(cols))
            codes = np.einsum("k,bkx->bx", weights, prod).astype(np.intp)
            keep.append(cols[nilpotent[codes].all(axis=0)])
        alive = np.concatenate(keep)
    members = V[alive]
    basis = row_space(members, F)
    if p ** len(basis) != len(members):
        raise ArithmeticError("nilpotent set is not a subspace")
    return basis


def bounded_free_inverse_search(
    alpha: OrderedGroupAlgebraElement, words: list[FreeWord], max_support: int
) -> OrderedGroupAlgebraElement | None:
    """Look for a right inverse of ``alpha`` supported on at most ``max_support`` of ``words``."""
    F: GF = alpha.field
    one = OrderedGroupAlgebraElement.monomial(F, FreeWord.identity(alpha.rank))
    for size in range(1, max_support + 1):
        for support in combinations(words, size):
            for coeffs in product(F.nonzero(), repeat=size):
                beta = OrderedGroupAlgebraElement.from_dict(F, alpha.rank, dict(zip(support, coeffs)))
                if kg_multiply(alpha, beta) == one:
                    return beta
    return None
