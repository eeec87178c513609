"""Finite group algebras F_q[G]: arithmetic, units, the Jacobson radical and
the checks that relate it to the group.

The radical is computed over the prime field F_p with the trace-power
algorithm for characteristic p (iterated kernels of the maps
z -> Tr(L_z^(p^i)) / p^i mod p on lifted regular matrices) and then extended
to F_q, which is harmless because F_q / F_p is separable.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import fields as fq
from .config import CONFIG
from .errors import CapExceeded, HypothesisFailed, NotUnitModRadical, ParentMismatch
from .fields import GF, FqElement
from .groups import FiniteGroup, SubgroupSet, _small_generating_set, all_subgroups, join
from .subgroups import derived_subgroup, is_normal, is_p_group


class GroupAlgebra:
    def __init__(self, G: FiniteGroup, q: int) -> None:
        if G.order > CONFIG.algebra_order_cap:
            raise CapExceeded(f"|G| = {G.order} exceeds group-algebra cap {CONFIG.algebra_order_cap}")
        if q > CONFIG.algebra_field_cap:
            raise CapExceeded(f"q = {q} exceeds field cap {CONFIG.algebra_field_cap}")
        self.group = G
        self.field: GF = fq.field(q)
        self.q = q
        self.p = self.field.p
        self.dim = G.order

    def __repr__(self) -> str:
        return f"GroupAlgebra(F_{self.q}[{self.group.name}])"

    # construction
    def element(self, coeffs: dict[int, int | FqElement] | None = None) -> AlgebraElement:
        items = {}
        for g, a in (coeffs or {}).items():
            a = a.value if isinstance(a, FqElement) else int(a)
            if not 0 <= a < self.q:
                raise ValueError(f"{a} is not an encoded element of {self.field}")
            if a:
                items[int(g)] = a
        return AlgebraElement(self, tuple(sorted(items.items())))

    def zero(self) -> AlgebraElement:
        return AlgebraElement(self, ())

    def one(self) -> AlgebraElement:
        return self.basis(self.group.identity_index)

    def basis(self, g: int, coeff: int = 1) -> AlgebraElement:
        return self.element({g: coeff})

    def from_vector(self, v) -> AlgebraElement:
        v = np.asarray(v, dtype=np.int64)
        return AlgebraElement(self, tuple((int(g), int(v[g])) for g in np.flatnonzero(v)))

    def elements(self):
        """Every element (q^|G| of them), in coordinate order."""
        for flat in range(self.q**self.dim):
            v = []
            for _ in range(self.dim):
                flat, r = divmod(flat, self.q)
                v.append(r)
            yield self.from_vector(v)

    # linear structure
    def left_regular(self, a: AlgebraElement) -> np.ndarray:
        """Matrix M with M @ vec(b) == vec(a * b)."""
        T, F = self.group.mul_table, self.field
        M = np.zeros((self.dim, self.dim), dtype=np.int64)
        cols = np.arange(self.dim)
        for g, c in a.items:
            rows = T[g]
            M[rows, cols] = F.add[M[rows, cols], c]
        return M

    @cached_property
    def structure_constants(self) -> np.ndarray:
        """C[i, j, k] = 1 iff g_i g_j = g_k (entries are prime-field values)."""
        n = self.dim
        C = np.zeros((n, n, n), dtype=np.int64)
        i, j = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
        C[i, j, self.group.mul_table] = 1
        return C


@dataclass(frozen=True)
class AlgebraElement:
    """Finite-support coefficient map; ``items`` holds (group index, encoded nonzero coefficient)."""

    algebra: GroupAlgebra
    items: tuple[tuple[int, int], ...]

    def _check(self, other: AlgebraElement) -> None:
        if not isinstance(other, AlgebraElement) or other.algebra is not self.algebra:
            raise ParentMismatch("elements of different group algebras")

    @property
    def support(self) -> frozenset[int]:
        return frozenset(g for g, _ in self.items)

    def coefficients(self) -> dict[int, FqElement]:
        F = self.algebra.field
        return {g: FqElement(F, a) for g, a in self.items}

    def coefficient(self, g: int) -> int:
        return dict(self.items).get(g, 0)

    def vector(self) -> np.ndarray:
        v = np.zeros(self.algebra.dim, dtype=np.int64)
        for g, a in self.items:
            v[g] = a
        return v

    def __add__(self, other: AlgebraElement) -> AlgebraElement:
        self._check(other)
        F = self.algebra.field
        out = dict(self.items)
        for g, b in other.items:
            out[g] = int(F.add[out.get(g, 0), b])
        return self.algebra.element(out)

    def __neg__(self) -> AlgebraElement:
        F = self.algebra.field
        return AlgebraElement(self.algebra, tuple((g, int(F.neg[a])) for g, a in self.items))

    def __sub__(self, other: AlgebraElement) -> AlgebraElement:
        return self + (-other)

    def scale(self, c: int) -> AlgebraElement:
        F = self.algebra.field
        return self.algebra.element({g: int(F.mul[c, a]) for g, a in self.items})

    def __mul__(self, other: AlgebraElement) -> AlgebraElement:
        self._check(other)
        A = self.algebra
        T, F = A.group.mul_table, A.field
        out: dict[int, int] = {}
        for g, a in self.items:
            row = T[g]
            for h, b in other.items:
                t = int(row[h])
                out[t] = int(F.add[out.get(t, 0), F.mul[a, b]])
        return A.element(out)

    def __pow__(self, e: int) -> AlgebraElement:
        if e < 0:
            raise ValueError("negative powers need is_unit")
        r, base = self.algebra.one(), self
        while e:
            if e & 1:
                r = r * base
            base = base * base
            e >>= 1
        return r

    def __bool__(self) -> bool:
        return bool(self.items)

    def __str__(self) -> str:
        if not self.items:
            return "0"
        F, G = self.algebra.field, self.algebra.group
        return " + ".join(f"{F.format(a)}*g{g}" for g, a in self.items)


def is_unit(a: AlgebraElement) -> tuple[bool, AlgebraElement | None]:
    """Decide invertibility through the left-regular matrix; return the inverse when it exists."""
    A = a.algebra
    M = A.left_regular(a)
    if fq.rank(M, A.field) < A.dim:
        return False, None
    e = np.zeros(A.dim, dtype=np.int64)
    e[A.group.identity_index] = 1
    x = fq.solve(M, e, A.field)
    return True, A.from_vector(x)


# -- radical over F_p -------------------------------------------------------------


def _regular_matrix(C: np.ndarray, z: np.ndarray, p: int) -> np.ndarray:
    """L_z[k, j] = sum_i z_i C[i, j, k]  (left multiplication by z)."""
    return np.einsum("i,ijk->kj", z, C) % p


def _trace_digit(L: np.ndarray, p: int, i: int) -> int:
    """(Tr(L^(p^i)) mod p^(i+1)) / p^i for the integer lift of L."""
    mod = p ** (i + 1)
    P = L % mod
    for _ in range(i):
        R = P
        for _ in range(p - 1):
            R = (R @ P) % mod
        P = R
    t = int(np.trace(P)) % mod
    if t % p**i:
        raise ArithmeticError("trace not divisible by p^i on the previous kernel")
    return t // p**i


def radical_basis(C: np.ndarray, p: int) -> np.ndarray:
    """Reduced echelon basis (rows) of the Jacobson radical of the F_p-algebra
    with structure constants ``C``."""
    F = fq.field(p)
    d = C.shape[0]
    rows = np.eye(d, dtype=np.int64)
    levels = 0
    while p ** (levels + 1) <= d:
        levels += 1
    for i in range(levels + 1):
        if rows.shape[0] == 0:
            break
        M = np.zeros((rows.shape[0], d), dtype=np.int64)
        for r, b in enumerate(rows):
            for j in range(d):
                z = (b @ C[:, j, :]) % p  # b * e_j
                M[r, j] = _trace_digit(_regular_matrix(C, z, p), p, i) % p
        coeffs = fq.nullspace(M.T, F)
        rows = fq.row_space(fq.matmul(coeffs, rows, F), F) if coeffs.shape[0] else np.zeros((0, d), dtype=np.int64)
    return rows


def quotient_constants(C: np.ndarray, ideal: np.ndarray, p: int) -> np.ndarray:
    """Structure constants of A/I on the basis of non-pivot standard vectors."""
    F = fq.field(p)
    d = C.shape[0]
    pivots = [int(np.flatnonzero(r)[0]) for r in ideal]
    free = [c for c in range(d) if c not in pivots]
    m = len(free)
    out = np.zeros((m, m, m), dtype=np.int64)
    for a, ca in enumerate(free):
        for b, cb in enumerate(free):
            prod = C[ca, cb] % p
            red = fq.reduce_mod(prod, ideal, pivots, F) if len(pivots) else prod
            out[a, b] = red[free]
    return out


def ideal_power_dims(C: np.ndarray, ideal: np.ndarray, p: int, limit: int | None = None) -> list[int]:
    """Dimensions of I, I^2, I^3, ... until zero or stable."""
    F = fq.field(p)
    d = C.shape[0]
    limit = d + 1 if limit is None else limit
    dims = [ideal.shape[0]]
    power = ideal
    for _ in range(limit):
        if power.shape[0] == 0:
            break
        prods = [np.einsum("i,j,ijk->k", x, y, C) % p for x in power for y in ideal]
        power = fq.row_space(np.array(prods, dtype=np.int64).reshape(-1, d), F)
        if power.shape[0] == dims[-1]:
            dims.append(power.shape[0])
            break
        dims.append(power.shape[0])
    return dims


@dataclass
class IdealBasis:
    """A two-sided ideal of a group algebra, stored as reduced echelon rows."""

    algebra: GroupAlgebra
    rows: np.ndarray

    @property
    def dimension(self) -> int:
        return int(self.rows.shape[0])

    @cached_property
    def pivots(self) -> list[int]:
        return [int(np.flatnonzero(r)[0]) for r in self.rows]

    def elements(self) -> list[AlgebraElement]:
        return [self.algebra.from_vector(r) for r in self.rows]

    def reduce(self, a: AlgebraElement | np.ndarray) -> np.ndarray:
        v = a.vector() if isinstance(a, AlgebraElement) else np.asarray(a, dtype=np.int64)
        if not self.dimension:
            return v.copy()
        return fq.reduce_mod(v, self.rows, self.pivots, self.algebra.field)

    def contains(self, a: AlgebraElement | np.ndarray) -> bool:
        return not self.reduce(a).any()

    def is_two_sided(self) -> bool:
        A = self.algebra
        for b in self.elements():
            for g in A.group.generators:
                x = A.basis(g)
                if not (self.contains(x * b) and self.contains(b * x)):
                    return False
        return True

    def basis_maps(self) -> list[dict[int, int]]:
        """JSON-friendly {element index: encoded coefficient} maps."""
        return [{int(g): int(r[g]) for g in np.flatnonzero(r)} for r in self.rows]


@dataclass
class RadicalCertificate:
    nilpotency_dims: list[int]
    quotient_radical_dim: int
    two_sided: bool

    @property
    def ok(self) -> bool:
        return self.two_sided and self.nilpotency_dims[-1] == 0 and self.quotient_radical_dim == 0


def _prime_radical_rows(A: GroupAlgebra) -> np.ndarray:
    return radical_basis(A.structure_constants, A.p)


def jacobson_radical(A: GroupAlgebra, verify: bool = True) -> IdealBasis:
    """J(F_q G) as an F_q-basis; with ``verify`` the result is checked to be a
    nilpotent two-sided ideal with semisimple quotient."""
    rows = _prime_radical_rows(A)
    # prime-field echelon rows are already in reduced echelon form over F_q
    J = IdealBasis(A, rows)
    if verify:
        cert = certify_radical(A, rows)
        if not cert.ok:
            raise ArithmeticError(f"radical certificate failed: {cert}")
    return J


def certify_radical(A: GroupAlgebra, rows: np.ndarray) -> RadicalCertificate:
    C, p = A.structure_constants, A.p
    dims = ideal_power_dims(C, rows, p)
    two_sided = IdealBasis(A, rows).is_two_sided()
    if rows.shape[0]:
        Q = quotient_constants(C, rows, p)
        qdim = radical_basis(Q, p).shape[0]
    else:
        qdim = 0
    return RadicalCertificate(dims, qdim, two_sided)


# -- units modulo the radical -----------------------------------------------------


def unit_lift(A: GroupAlgebra, residue: AlgebraElement, J: IdealBasis | None = None) -> AlgebraElement:
    """Return a unit of A mapping to the class of ``residue`` in A/J.

    Raises NotUnitModRadical when the class is not invertible in A/J.
    """
    J = jacobson_radical(A) if J is None else J
    F = A.field
    L = A.left_regular(residue)
    one = A.one().vector()
    # solvable iff some b has a*b - 1 in J
    if J.dimension:
        free = [c for c in range(A.dim) if c not in J.pivots]
        RL = J.reduce(L.T).T[free]
        rhs = J.reduce(one)[free]
    else:
        RL, rhs = L, one
    if fq.solve(RL, rhs, F) is None:
        raise NotUnitModRadical("class is not invertible modulo the radical")
    lift = A.from_vector(J.reduce(residue))
    ok, _ = is_unit(lift)
    if not ok:
        raise ArithmeticError("lift of a unit class is not a unit; radical is not nil")
    return lift


def freshman_power_check(a: AlgebraElement, m: int) -> bool:
    """(1 - a)^(p^m) == 1 - a^(p^m) in characteristic p."""
    A = a.algebra
    k = A.p**m
    one = A.one()
    return (one - a) ** k == one - a**k


# -- group-level checks -------------------------------------------------------------


def maximal_normal_p_subgroup(G: FiniteGroup, p: int) -> SubgroupSet:
    """O_p(G): the join of all normal p-subgroups."""
    result = G.trivial()
    for H in all_subgroups(G):
        if is_p_group(H.order, p) and is_normal(G, H):
            result = join(G, result, H)
    if not (is_p_group(result.order, p) and is_normal(G, result)):
        raise ArithmeticError("join of normal p-subgroups is not a normal p-subgroup")
    return result


@dataclass
class RadicalIntersection:
    group: str
    p: int
    unipotent_elements: tuple[int, ...]
    op_members: tuple[int, ...]

    @property
    def verdict(self) -> bool:
        return self.unipotent_elements == self.op_members


def radical_group_elements(A: GroupAlgebra, J: IdealBasis | None = None) -> tuple[int, ...]:
    """{g in G : g - 1 in J}."""
    J = jacobson_radical(A) if J is None else J
    one = A.one()
    return tuple(g for g in range(A.dim) if J.contains(A.basis(g) - one))


def verify_radical_group_intersection(G: FiniteGroup, p: int) -> RadicalIntersection:
    """Compare G meet (1 + J(F_p G)) with O_p(G)."""
    A = GroupAlgebra(G, p)
    lhs = radical_group_elements(A)
    return RadicalIntersection(G.name, p, lhs, maximal_normal_p_subgroup(G, p).members)


def quotient_commutativity_check(G: FiniteGroup, p: int) -> bool:
    """F_p[G]/J is commutative; requires the derived subgroup to be a p-group."""
    Gd = derived_subgroup(G)
    if not is_p_group(Gd.order, p):
        raise HypothesisFailed(f"derived subgroup of {G.name} has order {Gd.order}, not a power of {p}")
    A = GroupAlgebra(G, p)
    J = jacobson_radical(A)
    for g in range(G.order):
        for h in range(g + 1, G.order):
            x, y = A.basis(g), A.basis(h)
            if not J.contains(x * y - y * x):
                return False
    return True


def center_dimension_of_semisimple_quotient(G: FiniteGroup, q: int) -> int:
    """dim over F_q of the center of F_q[G]/J (the number of simple
    components only when F_q is a splitting field)."""
    A = GroupAlgebra(G, q)
    J = jacobson_radical(A)
    T = G.mul_table
    F = A.field
    blocks = []
    for g in G.generators:
        # column h: e_h g - g e_h
        M = np.zeros((A.dim, A.dim), dtype=np.int64)
        for h in range(A.dim):
            M[T[h, g], h] = F.add[M[T[h, g], h], 1]
            M[T[g, h], h] = F.sub[M[T[g, h], h], 1]
        blocks.append(J.reduce(M.T).T)
    stacked = np.vstack(blocks)
    return A.dim - fq.rank(stacked, F) - J.dimension
