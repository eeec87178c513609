"""Finite groups materialized as multiplication tables, plus subgroup machinery.

Every group is stored as an indexed element list with an ``order x order``
table; subgroups are boolean membership masks over those indices.  Element 0
is the identity for every group built by :func:`generate_group`.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Any, Callable, Hashable, Iterable, Sequence

import numpy as np

from .config import CONFIG
from .errors import ClosureCapExceeded, MixedRepresentation, OrderCapExceeded
from .permutations import Perm

_ASSOC_EXHAUSTIVE_MAX = 64
_ASSOC_SAMPLES = 4096


class FiniteGroup:
    """A finite group given by its multiplication table.

    ``elements[i]`` is the canonical representation of element ``i`` (a
    :class:`Perm`, a matrix, or a plain int for Cayley-table groups).
    ``mul_table[i, j]`` is the index of ``elements[i] * elements[j]``.
    """

    def __init__(
        self,
        elements: Sequence[Hashable],
        mul_table: np.ndarray,
        *,
        name: str = "",
        generators: Sequence[int] = (),
        check: bool = True,
    ) -> None:
        table = np.ascontiguousarray(mul_table, dtype=np.int32)
        n = len(elements)
        if table.shape != (n, n):
            raise ValueError(f"table shape {table.shape} does not match {n} elements")
        self.elements = tuple(elements)
        self.order = n
        self.name = name
        self.mul_table = table
        self.mul_table.setflags(write=False)
        if check:
            _check_latin(table)
        ident = np.flatnonzero((table == np.arange(n)).all(axis=1))
        if len(ident) != 1:
            raise ValueError("table has no two-sided identity")
        self.identity_index = int(ident[0])
        if not (table[:, self.identity_index] == np.arange(n)).all():
            raise ValueError("table has no two-sided identity")
        self.inv_table = np.argmax(table == self.identity_index, axis=1).astype(np.int32)
        self.inv_table.setflags(write=False)
        if check:
            _check_associative(table)
        self.generators = tuple(int(g) for g in generators) or tuple(range(n))
        self._index = {e: i for i, e in enumerate(self.elements)}

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name or '?'}, order={self.order})"

    def index(self, element: Hashable) -> int:
        return self._index[element]

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inv_table[a])

    def conj(self, g: int, x: int) -> int:
        """Return g x g^-1."""
        return int(self.mul_table[self.mul_table[g, x], self.inv_table[g]])

    def power(self, x: int, k: int) -> int:
        if k < 0:
            x, k = self.inv(x), -k
        r = self.identity_index
        while k:
            if k & 1:
                r = self.mul(r, x)
            x = self.mul(x, x)
            k >>= 1
        return r

    def powers(self, x: int) -> list[int]:
        """[e, x, x^2, ...] up to (excluding) the first repeat of e."""
        out = [self.identity_index]
        y = x
        while y != self.identity_index:
            out.append(y)
            y = self.mul(y, x)
        return out

    def element_order(self, x: int) -> int:
        return len(self.powers(x))

    def label(self, i: int) -> str:
        return str(self.elements[i])

    @cached_property
    def is_abelian(self) -> bool:
        return bool((self.mul_table == self.mul_table.T).all())

    def evaluate_word(self, images: Sequence[int], letters: Iterable[tuple[int, int]]) -> int:
        """Evaluate a free-group word given generator images (indices into this group)."""
        r = self.identity_index
        for gen, sign in letters:
            y = images[gen] if sign > 0 else self.inv(images[gen])
            r = self.mul(r, y)
        return r

    def whole(self) -> SubgroupSet:
        return SubgroupSet(self, np.ones(self.order, dtype=bool), self.generators)

    def trivial(self) -> SubgroupSet:
        m = np.zeros(self.order, dtype=bool)
        m[self.identity_index] = True
        return SubgroupSet(self, m, ())


def _check_latin(table: np.ndarray) -> None:
    n = table.shape[0]
    want = np.arange(n)
    if not (np.sort(table, axis=1) == want).all() or not (np.sort(table, axis=0) == want[:, None]).all():
        raise ValueError("multiplication table is not a Latin square")


def _check_associative(table: np.ndarray) -> None:
    n = table.shape[0]
    if n <= _ASSOC_EXHAUSTIVE_MAX:
        left = table[table]  # [a, b, c] -> (ab)c
        right = table[np.arange(n)[:, None, None], table[None, :, :]]
        ok = (left == right).all()
    else:
        rng = np.random.default_rng(0)
        a, b, c = rng.integers(0, n, size=(3, _ASSOC_SAMPLES))
        ok = (table[table[a, b], c] == table[a, table[b, c]]).all()
    if not ok:
        raise ValueError("multiplication table is not associative")


@dataclass(frozen=True, eq=False)
class SubgroupSet:
    """A subgroup of ``parent`` stored as a boolean membership mask.

    ``gens`` is some generating set (indices); it is used to speed up
    normality tests and joins and carries no canonical meaning.
    """

    parent: FiniteGroup
    mask: np.ndarray = field(repr=False)
    gens: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        self.mask.setflags(write=False)

    @cached_property
    def key(self) -> bytes:
        return np.packbits(self.mask).tobytes()

    @cached_property
    def members(self) -> tuple[int, ...]:
        return tuple(int(i) for i in np.flatnonzero(self.mask))

    @cached_property
    def indices(self) -> np.ndarray:
        return np.flatnonzero(self.mask)

    @property
    def order(self) -> int:
        return len(self.members)

    def __len__(self) -> int:
        return self.order

    def __contains__(self, x: int) -> bool:
        return bool(self.mask[x])

    def __iter__(self):
        return iter(self.members)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SubgroupSet):
            return NotImplemented
        return self.parent is other.parent and self.key == other.key

    def __hash__(self) -> int:
        return hash((id(self.parent), self.key))

    def __le__(self, other: SubgroupSet) -> bool:
        return bool((other.mask | ~self.mask).all())

    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        return (self.order, self.members)

    def generating_set(self) -> tuple[int, ...]:
        return self.gens if self.gens or self.order == 1 else _small_generating_set(self.parent, self.mask)

    def is_trivial(self) -> bool:
        return self.order == 1

    def __repr__(self) -> str:
        return f"SubgroupSet(order={self.order}, members={list(self.members)[:12]}{'...' if self.order > 12 else ''})"


def _closure_mask(
    G: FiniteGroup, gens: Sequence[int], start: np.ndarray | None = None, new_gens: Sequence[int] = ()
) -> np.ndarray:
    """Elements reachable from ``start`` (default {e}) by right-multiplying by ``gens``.

    When ``start`` is already closed under ``gens``, pass the extra generators
    as ``new_gens``; only those are applied to the starting elements.
    """
    T = G.mul_table
    all_gens = np.asarray(list(gens) + [g for g in new_gens if g not in gens], dtype=np.int64)
    if start is None:
        mask = np.zeros(G.order, dtype=bool)
        mask[G.identity_index] = True
        frontier = np.array([G.identity_index])
        step_gens = all_gens
    else:
        mask = start.copy()
        frontier = np.flatnonzero(mask)
        step_gens = np.asarray(list(new_gens), dtype=np.int64)
    if all_gens.size == 0:
        return mask
    while frontier.size:
        if step_gens.size == 0:
            break
        cand = np.unique(T[np.ix_(frontier, step_gens)].ravel())
        cand = cand[~mask[cand]]
        mask[cand] = True
        frontier = cand
        step_gens = all_gens
    return mask


def _small_generating_set(G: FiniteGroup, target: np.ndarray) -> tuple[int, ...]:
    gens: list[int] = []
    current = np.zeros(G.order, dtype=bool)
    current[G.identity_index] = True
    for x in np.flatnonzero(target):
        if not current[x]:
            current = _closure_mask(G, gens, current, (int(x),))
            gens.append(int(x))
        if (current == target).all():
            break
    return tuple(gens)


def generated_subgroup(G: FiniteGroup, gens: Iterable[int]) -> SubgroupSet:
    gens = tuple(dict.fromkeys(int(g) for g in gens if g != G.identity_index))
    return SubgroupSet(G, _closure_mask(G, gens), gens)


def subgroup_from_indices(G: FiniteGroup, members: Iterable[int]) -> SubgroupSet:
    """Wrap an index set, verifying it is a subgroup (closure + Lagrange)."""
    mask = np.zeros(G.order, dtype=bool)
    mask[list(members)] = True
    if not is_closed(G, mask):
        raise ValueError("index set is not closed under product and inverse")
    return SubgroupSet(G, mask, _small_generating_set(G, mask))


def is_closed(G: FiniteGroup, mask: np.ndarray) -> bool:
    idx = np.flatnonzero(mask)
    if idx.size == 0 or not mask[G.identity_index]:
        return False
    if not mask[G.inv_table[idx]].all():
        return False
    return bool(mask[G.mul_table[np.ix_(idx, idx)]].all())


def cyclic_subgroup(G: FiniteGroup, x: int) -> SubgroupSet:
    mask = np.zeros(G.order, dtype=bool)
    mask[G.powers(x)] = True
    return SubgroupSet(G, mask, () if x == G.identity_index else (int(x),))


def join(G: FiniteGroup, H: SubgroupSet, K: SubgroupSet) -> SubgroupSet:
    extra = [g for g in K.generating_set() if not H.mask[g]]
    if not extra:
        return H
    hg = H.generating_set()
    return SubgroupSet(G, _closure_mask(G, hg, H.mask, extra), hg + tuple(extra))


def _join_element(G: FiniteGroup, H: SubgroupSet, x: int) -> SubgroupSet:
    hg = H.generating_set()
    return SubgroupSet(G, _closure_mask(G, hg, H.mask, (x,)), hg + (x,))


def intersection(G: FiniteGroup, H: SubgroupSet, K: SubgroupSet) -> SubgroupSet:
    mask = H.mask & K.mask
    return SubgroupSet(G, mask, _small_generating_set(G, mask))


def product_mask(G: FiniteGroup, A: Sequence[int] | np.ndarray, B: Sequence[int] | np.ndarray) -> np.ndarray:
    out = np.zeros(G.order, dtype=bool)
    out[G.mul_table[np.ix_(np.asarray(A, dtype=np.int64), np.asarray(B, dtype=np.int64))].ravel()] = True
    return out


def subset_product(G: FiniteGroup, A: Iterable[int], B: Iterable[int]) -> frozenset[int]:
    """The raw product set {ab : a in A, b in B}; no closure is imposed."""
    mask = product_mask(G, sorted(A), sorted(B))
    return frozenset(int(i) for i in np.flatnonzero(mask))


def all_subgroups(G: FiniteGroup, cap: int | None = None) -> list[SubgroupSet]:
    """Every subgroup of ``G``, sorted by order then by member tuple.

    Bottom-up: start from the cyclic subgroups and keep joining each newly
    found subgroup with every cyclic subgroup until nothing new appears.
    """
    cap = CONFIG.lattice_cap if cap is None else cap
    if G.order > cap:
        raise OrderCapExceeded(f"|G| = {G.order} exceeds lattice cap {cap}")
    cyclic: dict[bytes, SubgroupSet] = {}
    for x in range(G.order):
        C = cyclic_subgroup(G, x)
        cyclic.setdefault(C.key, C)
    cyclic_gens = [C.gens[0] for C in cyclic.values() if C.gens]
    found: dict[bytes, SubgroupSet] = dict(cyclic)
    queue = deque(C for C in cyclic.values() if C.gens)
    while queue:
        H = queue.popleft()
        if H.order == G.order:
            continue
        for x in cyclic_gens:
            if H.mask[x]:
                continue
            K = _join_element(G, H, x)
            if K.key not in found:
                found[K.key] = K
                queue.append(K)
    return sorted(found.values(), key=SubgroupSet.sort_key)


def cyclic_subgroups(G: FiniteGroup) -> list[SubgroupSet]:
    seen: dict[bytes, SubgroupSet] = {}
    for x in range(G.order):
        C = cyclic_subgroup(G, x)
        seen.setdefault(C.key, C)
    return sorted(seen.values(), key=SubgroupSet.sort_key)


def center(G: FiniteGroup) -> SubgroupSet:
    T = G.mul_table
    mask = (T == T.T).all(axis=1)
    return SubgroupSet(G, mask, _small_generating_set(G, mask))


# -- homomorphisms -------------------------------------------------------------


def is_homomorphism(G: FiniteGroup, H: FiniteGroup, phi: Sequence[int]) -> bool:
    phi = np.asarray(phi)
    return bool((phi[G.mul_table] == H.mul_table[phi[:, None], phi[None, :]]).all())


def homomorphism_from_images(G: FiniteGroup, H: FiniteGroup, images: Sequence[int]) -> np.ndarray:
    """Extend generator images (one per ``G.generators``) to an index map, checking it is a homomorphism."""
    if len(images) != len(G.generators):
        raise ValueError("need one image per generator")
    phi = np.full(G.order, -1, dtype=np.int64)
    phi[G.identity_index] = H.identity_index
    queue = deque([G.identity_index])
    while queue:
        x = queue.popleft()
        for g, h in zip(G.generators, images):
            y = G.mul(x, g)
            val = H.mul(int(phi[x]), h)
            if phi[y] < 0:
                phi[y] = val
                queue.append(y)
            elif phi[y] != val:
                raise ValueError("generator images do not define a homomorphism")
    if (phi < 0).any() or not is_homomorphism(G, H, phi):
        raise ValueError("generator images do not define a homomorphism")
    return phi


def preimage(G: FiniteGroup, phi: Sequence[int], M: SubgroupSet) -> SubgroupSet:
    mask = M.mask[np.asarray(phi)]
    return SubgroupSet(G, mask.copy(), _small_generating_set(G, mask))


def image(H: FiniteGroup, phi: Sequence[int], N: SubgroupSet) -> SubgroupSet:
    mask = np.zeros(H.order, dtype=bool)
    mask[np.asarray(phi)[N.indices]] = True
    return SubgroupSet(H, mask, _small_generating_set(H, mask))


def quotient_group(G: FiniteGroup, K: SubgroupSet, name: str = "") -> tuple[FiniteGroup, np.ndarray]:
    """G/K for normal K, with the canonical surjection as an index map.

    Cosets are labelled by their smallest member index and ordered by it.
    """
    T = G.mul_table
    coset_of = np.full(G.order, -1, dtype=np.int64)
    reps: list[int] = []
    for x in range(G.order):
        if coset_of[x] >= 0:
            continue
        coset_of[T[x, K.indices]] = len(reps)
        reps.append(x)
    m = len(reps)
    table = coset_of[T[np.ix_(reps, reps)]]
    Q = FiniteGroup(reps, table, name=name or f"{G.name}/N")
    # well-definedness: the coset of a product must not depend on representatives
    if not (coset_of[T] == table[coset_of[:, None], coset_of[None, :]]).all():
        raise ValueError("quotient by a non-normal subgroup")
    return Q, coset_of


def direct_product(G: FiniteGroup, H: FiniteGroup, name: str = "") -> tuple[FiniteGroup, np.ndarray, np.ndarray]:
    """G x H with elements (g, h) in row-major index order, plus both projections."""
    n, m = G.order, H.order
    gi = np.repeat(np.arange(n), m)
    hi = np.tile(np.arange(m), n)
    table = G.mul_table[gi[:, None], gi[None, :]] * m + H.mul_table[hi[:, None], hi[None, :]]
    elements = [(G.elements[a], H.elements[b]) for a, b in zip(gi, hi)]
    gens = [G.identity_index * m + h for h in H.generators] + [g * m + H.identity_index for g in G.generators]
    P = FiniteGroup(elements, table, name=name or f"{G.name}x{H.name}", generators=gens, check=False)
    return P, gi, hi


# -- construction --------------------------------------------------------------


def _check_kinds(gens: Sequence[Any]) -> list[Any]:
    kinds = {type(g) for g in gens}
    if len(kinds) != 1:
        raise MixedRepresentation(f"generators of mixed kinds: {sorted(k.__name__ for k in kinds)}")
    if isinstance(gens[0], Perm):
        deg = max(g.degree for g in gens)
        return [g.extend(deg) for g in gens]
    shapes = {getattr(g, "shape_key", None) for g in gens}
    if len(shapes) != 1:
        raise MixedRepresentation(f"generators of mixed shapes: {shapes}")
    return list(gens)


def closure_elements(generators: Sequence[Any], cap: int | None = None) -> tuple[list[Any], list[list[int]], list[int], list[int]]:
    """Breadth-first closure from the identity, generators in the order given.

    Returns (elements, right-multiplication tables per generator, parent
    index, generator position used to reach each element).
    """
    if not generators:
        raise ValueError("need at least one generator")
    cap = CONFIG.closure_cap if cap is None else cap
    gens = _check_kinds(generators)
    e = gens[0] * gens[0].inverse()
    elements = [e]
    index = {e: 0}
    parent = [-1]
    via = [-1]
    right: list[list[int]] = [[] for _ in gens]
    i = 0
    while i < len(elements):
        x = elements[i]
        for k, g in enumerate(gens):
            y = x * g
            j = index.get(y)
            if j is None:
                if len(elements) >= cap:
                    raise ClosureCapExceeded(f"closure exceeds {cap} elements")
                j = len(elements)
                index[y] = j
                elements.append(y)
                parent.append(i)
                via.append(k)
            right[k].append(j)
        i += 1
    return elements, right, parent, via


def generate_group(generators: Sequence[Any], cap: int | None = None, name: str = "") -> FiniteGroup:
    """Materialize the group generated by ``generators`` (Perm or MatrixFq objects)."""
    elements, right, parent, via = closure_elements(generators, cap)
    n = len(elements)
    R = np.asarray(right, dtype=np.int32)
    table = np.empty((n, n), dtype=np.int32)
    table[:, 0] = np.arange(n)
    # column j = column parent(j) pushed through right-multiplication by its generator
    for j in range(1, n):
        table[:, j] = R[via[j]][table[:, parent[j]]]
    index = {x: i for i, x in enumerate(elements)}
    gen_idx = [index[g] for g in _check_kinds(generators)]
    return FiniteGroup(elements, table, name=name, generators=gen_idx, check=n <= _ASSOC_EXHAUSTIVE_MAX)


def from_cayley_table(table: Sequence[Sequence[int]], name: str = "cayley") -> FiniteGroup:
    arr = np.asarray(table, dtype=np.int64)
    n = arr.shape[0]
    if arr.ndim != 2 or arr.shape != (n, n) or (arr < 0).any() or (arr >= n).any():
        raise ValueError("Cayley table must be square with entries in 0..order-1")
    G = FiniteGroup(list(range(n)), arr, name=name, check=True)
    G.generators = _small_generating_set(G, np.ones(n, dtype=bool)) or (G.identity_index,)
    return G


def load_cayley(path: str | Path) -> FiniteGroup:
    """Read a whitespace-separated table: first token is the order, then order^2 entries."""
    tokens = Path(path).read_text().split()
    if not tokens:
        raise ValueError(f"{path}: empty Cayley file")
    n = int(tokens[0])
    vals = [int(t) for t in tokens[1:]]
    if len(vals) != n * n:
        raise ValueError(f"{path}: expected {n * n} entries, found {len(vals)}")
    return from_cayley_table([vals[i * n : (i + 1) * n] for i in range(n)], name=f"cayley:{path}")


def _regular_perms(elements: list, mul: Callable[[Any, Any], Any], gens: list) -> list[Perm]:
    """Left-regular permutation images of ``gens`` for a group given by a product rule."""
    pos = {e: i for i, e in enumerate(elements)}
    return [Perm(tuple(pos[mul(g, x)] for x in elements)) for g in gens]


def symmetric(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("S(n) needs n >= 1")
    if n == 1:
        gens = [Perm.identity(1)]
    elif n == 2:
        gens = [Perm.parse("(1 2)")]
    else:
        gens = [Perm.parse("(1 2)", n), Perm.from_cycles([range(1, n + 1)])]
    return generate_group(gens, name=f"S({n})")


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("C(n) needs n >= 1")
    gen = Perm.identity(1) if n == 1 else Perm.from_cycles([range(1, n + 1)])
    return generate_group([gen], name=f"C({n})")


def dihedral(n: int) -> FiniteGroup:
    """Dihedral group of order 2n, generated by a rotation then a reflection."""
    if n < 1:
        raise ValueError("D(n) needs n >= 1")
    if n >= 3:
        r = Perm.from_cycles([range(1, n + 1)])
        s = Perm.from_cycles([(i, n + 1 - i) for i in range(1, n // 2 + 1)], n)
        gens = [r, s]
    else:
        elems = [(i, j) for j in range(2) for i in range(n)]

        def mul(x, y):
            return ((x[0] + (-1) ** x[1] * y[0]) % n, (x[1] + y[1]) % 2)

        gens = _regular_perms(elems, mul, [(1 % n, 0), (0, 1)])
    return generate_group(gens, name=f"D({n})")


def quaternion() -> FiniteGroup:
    elems = [(i, j) for j in range(2) for i in range(4)]

    def mul(x, y):
        (i, j), (k, l) = x, y
        return ((i + (-1) ** j * k + 2 * (j & l)) % 4, (j + l) % 2)

    return generate_group(_regular_perms(elems, mul, [(1, 0), (0, 1)]), name="Q8")


def modular16() -> FiniteGroup:
    """The modular group <a, b | a^8 = b^2 = 1, b a b = a^5>; generators (a, b)."""
    elems = [(i, j) for j in range(2) for i in range(8)]

    def mul(x, y):
        (i, j), (k, l) = x, y
        return ((i + pow(5, j) * k) % 8, (j + l) % 2)

    return generate_group(_regular_perms(elems, mul, [(1, 0), (0, 1)]), name="M16")
