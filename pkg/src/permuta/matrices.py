"""Matrices over F_q, transvections and dilations, and the GL/SL checks built on them.

Indices ``i, j`` in the generator constructors are 1-based, matching the
usual ``t_ij`` notation.  Scalars may be raw encoded ints or FqElements.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from . import fields as fq
from .errors import HypothesisFailed
from .fields import GF, FqElement
from .groups import FiniteGroup, SubgroupSet, _small_generating_set, all_subgroups, center, closure_elements, cyclic_subgroups, generate_group, modular16
from .subgroups import PermutableNormalCheck, check_all_permutable_subgroups_are_normal, is_normal, is_permutable


@dataclass(frozen=True)
class MatrixFq:
    """An n x n matrix over F_q, entries stored row-major as encoded ints."""

    field: GF
    n: int
    entries: tuple[int, ...]

    @classmethod
    def identity(cls, n: int, F: GF) -> MatrixFq:
        return cls(F, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def from_rows(cls, rows, F: GF) -> MatrixFq:
        rows = [[_scalar(F, a) for a in r] for r in rows]
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("matrix must be square")
        return cls(F, n, tuple(a for r in rows for a in r))

    @property
    def shape_key(self) -> tuple[int, int]:
        return (self.field.q, self.n)

    def array(self) -> np.ndarray:
        return np.asarray(self.entries, dtype=np.int64).reshape(self.n, self.n)

    def rows(self) -> list[list[int]]:
        return self.array().tolist()

    def __getitem__(self, ij: tuple[int, int]) -> FqElement:
        i, j = ij
        return FqElement(self.field, self.entries[i * self.n + j])

    def __mul__(self, other: MatrixFq) -> MatrixFq:
        if self.shape_key != other.shape_key:
            raise ValueError("matrix shapes or fields differ")
        F, n = self.field, self.n
        a, b = self.entries, other.entries
        add, mul = F.add, F.mul
        out = []
        for i in range(n):
            row = a[i * n : (i + 1) * n]
            for j in range(n):
                s = 0
                for k in range(n):
                    if row[k] and b[k * n + j]:
                        s = add[s, mul[row[k], b[k * n + j]]]
                out.append(int(s))
        return MatrixFq(F, n, tuple(out))

    def __pow__(self, e: int) -> MatrixFq:
        base = self if e >= 0 else self.inverse()
        r = MatrixFq.identity(self.n, self.field)
        for _ in range(abs(e)):
            r = r * base
        return r

    def inverse(self) -> MatrixFq:
        inv = fq.inverse(self.array(), self.field)
        if inv is None:
            raise ZeroDivisionError("singular matrix")
        return MatrixFq(self.field, self.n, tuple(int(v) for v in inv.ravel()))

    def det(self) -> int:
        F = self.field
        A = self.array().copy()
        n = self.n
        d = 1
        for c in range(n):
            nz = np.flatnonzero(A[c:, c])
            if nz.size == 0:
                return 0
            piv = c + int(nz[0])
            if piv != c:
                A[[c, piv]] = A[[piv, c]]
                d = int(F.neg[d])
            d = int(F.mul[d, A[c, c]])
            inv = F.inv[A[c, c]]
            for r in range(c + 1, n):
                if A[r, c]:
                    A[r] = F.sub[A[r], F.mul[F.mul[A[r, c], inv], A[c]]]
        return d

    def __str__(self) -> str:
        fmt = self.field.format
        return "[" + ", ".join("[" + ",".join(fmt(a) for a in r) + "]" for r in self.rows()) + "]"


def _scalar(F: GF, a) -> int:
    if isinstance(a, FqElement):
        if a.field is not F:
            raise ValueError("scalar from a different field")
        return a.value
    a = int(a)
    if not 0 <= a < F.q:
        raise ValueError(f"{a} is not an encoded element of {F}")
    return a


def _check_ij(n: int, i: int, j: int | None = None) -> None:
    for k in (i, j):
        if k is not None and not 1 <= k <= n:
            raise IndexError(f"index {k} out of range 1..{n}")


def matrix_unit(n: int, i: int, j: int, F: GF) -> MatrixFq:
    _check_ij(n, i, j)
    ent = [0] * (n * n)
    ent[(i - 1) * n + (j - 1)] = 1
    return MatrixFq(F, n, tuple(ent))


def transvection(n: int, i: int, j: int, alpha, F: GF) -> MatrixFq:
    """I_n + alpha E_ij (i != j)."""
    _check_ij(n, i, j)
    if i == j:
        raise IndexError("transvection needs i != j")
    ent = list(MatrixFq.identity(n, F).entries)
    ent[(i - 1) * n + (j - 1)] = _scalar(F, alpha)
    return MatrixFq(F, n, tuple(ent))


def dilation(n: int, i: int, alpha, F: GF) -> MatrixFq:
    """I_n + (alpha - 1) E_ii, i.e. the identity with alpha at (i, i)."""
    _check_ij(n, i)
    a = _scalar(F, alpha)
    if a == 0:
        raise ValueError("dilation needs a nonzero scalar")
    ent = list(MatrixFq.identity(n, F).entries)
    ent[(i - 1) * n + (i - 1)] = a
    return MatrixFq(F, n, tuple(ent))


def t_prime(n: int, i: int, j: int, alpha, F: GF) -> MatrixFq:
    """d_i(-1) t_ij(alpha): an involution for every alpha."""
    return dilation(n, i, int(F.neg[1]), F) * transvection(n, i, j, alpha, F)


def conjugation_identity_check(n: int, i: int, j: int, alpha, F: GF) -> bool:
    """d_i(-1) t_ij(a) d_i(-1) == t_ij(-a)."""
    d = dilation(n, i, int(F.neg[1]), F)
    a = _scalar(F, alpha)
    return d * transvection(n, i, j, a, F) * d == transvection(n, i, j, int(F.neg[a]), F)


def transvections(n: int, F: GF) -> list[MatrixFq]:
    return [transvection(n, i, j, a, F) for i in range(1, n + 1) for j in range(1, n + 1) if i != j for a in F.nonzero()]


def sl_generators(n: int, q: int) -> list[MatrixFq]:
    F = fq.field(q)
    return transvections(n, F) or [MatrixFq.identity(n, F)]


def gl_generators(n: int, q: int) -> list[MatrixFq]:
    F = fq.field(q)
    return transvections(n, F) + [dilation(n, 1, F.primitive, F)]


def t_prime_generators(n: int, q: int) -> list[MatrixFq]:
    F = fq.field(q)
    return [t_prime(n, i, j, a, F) for i in range(1, n + 1) for j in range(1, n + 1) if i != j for a in F.elements()]


def generate_SL(n: int, q: int, cap: int | None = None) -> FiniteGroup:
    return generate_group(sl_generators(n, q), cap=cap, name=f"SL({n},{q})")


def generate_GL(n: int, q: int, cap: int | None = None) -> FiniteGroup:
    return generate_group(gl_generators(n, q), cap=cap, name=f"GL({n},{q})")


def gl_order(n: int, q: int) -> int:
    out = 1
    for k in range(n):
        out *= q**n - q**k
    return out


def t_prime_closure(n: int, q: int, cap: int | None = None) -> set[MatrixFq]:
    """Element set of <t'_ij(a)>; no multiplication table is built."""
    return set(closure_elements(t_prime_generators(n, q), cap)[0])


def determinant_subgroup(G: FiniteGroup, value: int = 1) -> SubgroupSet:
    """Elements of a matrix group with the given determinant (value 1: the SL part)."""
    mask = np.array([m.det() == value for m in G.elements])
    return SubgroupSet(G, mask, _small_generating_set(G, mask))


def verify_small_gl2() -> dict[str, PermutableNormalCheck]:
    """Exhaustive permutable-implies-normal check for GL_2 over F_2 and F_3."""
    return {f"GL(2,{q})": check_all_permutable_subgroups_are_normal(generate_GL(2, q)) for q in (2, 3)}


def modular_control() -> PermutableNormalCheck:
    """The same check on M16, which must fail."""
    return check_all_permutable_subgroups_are_normal(modular16())


@dataclass
class GLPermutableReport:
    n: int
    q: int
    order: int
    subgroup_count: int
    permutable_not_normal: list[SubgroupSet] = dc_field(default_factory=list)
    noncentral_normal_missing_sl: list[SubgroupSet] = dc_field(default_factory=list)

    @property
    def verdict(self) -> bool:
        return not self.permutable_not_normal and not self.noncentral_normal_missing_sl


def verify_gl_permutable_normal(n: int, q: int) -> GLPermutableReport:
    """For n > 2, or n = 2 with q >= 4: every permutable subgroup of GL_n(F_q) is normal,
    and every non-central normal subgroup contains SL_n(F_q)."""
    if not (n > 2 or (n == 2 and q >= 4)):
        raise HypothesisFailed(f"needs n > 2 or (n = 2 and q >= 4); got n={n}, q={q} (see verify_small_gl2)")
    G = generate_GL(n, q)
    SL = determinant_subgroup(G, 1)
    Z = center(G)
    subgroups = all_subgroups(G)
    cyclics = cyclic_subgroups(G)
    report = GLPermutableReport(n, q, G.order, len(subgroups))
    for H in subgroups:
        normal = is_normal(G, H)
        if normal:
            if not H <= Z and not SL <= H:
                report.noncentral_normal_missing_sl.append(H)
        elif is_permutable(G, H, cyclics):
            report.permutable_not_normal.append(H)
    return report
