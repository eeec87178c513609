"""Finite fields F_q and exact linear algebra over them.

Field elements are encoded as ints in ``range(q)``: the base-p digits are the
coefficients of a polynomial in the generator x, reduced modulo a fixed
irreducible (Conway) polynomial.  Arithmetic is done by table lookup, so the
same elimination code serves prime and non-prime fields.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

# low-to-high coefficients of the defining polynomial for non-prime q
CONWAY = {
    4: (2, 2, (1, 1, 1)),
    8: (2, 3, (1, 1, 0, 1)),
    9: (3, 2, (2, 2, 1)),
}


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, int(n**0.5) + 1))


class GF:
    """The field with ``q`` elements; build instances through :func:`field`."""

    def __init__(self, q: int) -> None:
        if _is_prime(q):
            self.p, self.k, self.modulus = q, 1, (0, 1)
        elif q in CONWAY:
            self.p, self.k, self.modulus = CONWAY[q]
        else:
            raise ValueError(f"unsupported field order {q}; use a prime or one of {sorted(CONWAY)}")
        self.q = q
        digits = [self._digits(a) for a in range(q)]
        self.add = np.array([[self._encode([(x + y) % self.p for x, y in zip(da, db)]) for db in digits] for da in digits], dtype=np.int64)
        self.mul = np.array([[self._encode(self._polymul(da, db)) for db in digits] for da in digits], dtype=np.int64)
        self.neg = np.array([self._encode([(-x) % self.p for x in d]) for d in digits], dtype=np.int64)
        inv = np.full(q, -1, dtype=np.int64)
        for a in range(1, q):
            inv[a] = int(np.flatnonzero(self.mul[a] == 1)[0])
        self.inv = inv
        self.sub = self.add[:, self.neg]
        for t in (self.add, self.mul, self.neg, self.inv, self.sub):
            t.setflags(write=False)
        self.primitive = next(a for a in range(1, q) if self._mult_order(a) == q - 1)

    def __repr__(self) -> str:
        return f"GF({self.q})"

    def __reduce__(self):
        return (field, (self.q,))

    def _digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.k):
            a, r = divmod(a, self.p)
            out.append(r)
        return out

    def _encode(self, digits) -> int:
        return sum(int(d) * self.p**i for i, d in enumerate(digits))

    def _polymul(self, a, b) -> list[int]:
        p, k = self.p, self.k
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
        mod = self.modulus
        for deg in range(len(prod) - 1, k - 1, -1):
            c = prod[deg]
            if c:
                for i in range(k + 1):
                    prod[deg - k + i] = (prod[deg - k + i] - c * mod[i]) % p
        return prod[:k]

    def _mult_order(self, a: int) -> int:
        r, n = a, 1
        while r != 1:
            r = int(self.mul[r, a])
            n += 1
        return n

    # scalar helpers
    def from_int(self, n: int) -> int:
        """Image of the integer n in the prime subfield."""
        return n % self.p

    def elements(self) -> range:
        return range(self.q)

    def nonzero(self) -> range:
        return range(1, self.q)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = int(self.inv[a]), -e
        r = 1
        while e:
            if e & 1:
                r = int(self.mul[r, a])
            a = int(self.mul[a, a])
            e >>= 1
        return r

    def element(self, value: int) -> FqElement:
        if not 0 <= value < self.q:
            raise ValueError(f"{value} is not an encoded element of GF({self.q})")
        return FqElement(self, value)

    def format(self, a: int) -> str:
        if self.k == 1:
            return str(a)
        terms = []
        for i, d in enumerate(self._digits(a)):
            if d:
                mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
                coef = str(d) if (d != 1 or i == 0) else ""
                terms.append(coef + mono)
        return "+".join(reversed(terms)) or "0"


@lru_cache(maxsize=None)
def field(q: int) -> GF:
    return GF(q)


@dataclass(frozen=True)
class FqElement:
    """A single element of F_q with operator support; matrices store raw ints instead."""

    field: GF
    value: int

    def _coerce(self, other) -> int:
        if isinstance(other, FqElement):
            if other.field is not self.field:
                raise ValueError("elements of different fields")
            return other.value
        return self.field.from_int(int(other))

    def __add__(self, other):
        return FqElement(self.field, int(self.field.add[self.value, self._coerce(other)]))

    __radd__ = __add__

    def __sub__(self, other):
        return FqElement(self.field, int(self.field.sub[self.value, self._coerce(other)]))

    def __rsub__(self, other):
        return FqElement(self.field, int(self.field.sub[self._coerce(other), self.value]))

    def __mul__(self, other):
        return FqElement(self.field, int(self.field.mul[self.value, self._coerce(other)]))

    __rmul__ = __mul__

    def __neg__(self):
        return FqElement(self.field, int(self.field.neg[self.value]))

    def inverse(self) -> FqElement:
        if self.value == 0:
            raise ZeroDivisionError("0 has no inverse")
        return FqElement(self.field, int(self.field.inv[self.value]))

    def __truediv__(self, other):
        return self * FqElement(self.field, self._coerce(other)).inverse()

    def __pow__(self, e: int):
        return FqElement(self.field, self.field.pow(self.value, e))

    def __bool__(self) -> bool:
        return self.value != 0

    def __str__(self) -> str:
        return self.field.format(self.value)


# -- linear algebra -------------------------------------------------------------


def matmul(A: np.ndarray, B: np.ndarray, F: GF) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    if F.k == 1:
        return (A @ B) % F.p
    out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    for k in range(A.shape[1]):
        out = F.add[out, F.mul[A[:, k][:, None], B[k][None, :]]]
    return out


def rref(A: np.ndarray, F: GF) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns."""
    R = np.array(A, dtype=np.int64, copy=True)
    if R.ndim != 2:
        raise ValueError("rref needs a 2-d array")
    m, n = R.shape
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(R[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            R[[r, piv]] = R[[piv, r]]
        R[r] = F.mul[F.inv[R[r, c]], R[r]]
        for i in np.flatnonzero(R[:, c]):
            if i != r:
                R[i] = F.sub[R[i], F.mul[R[i, c], R[r]]]
        pivots.append(c)
        r += 1
    return R, pivots


def rank(A: np.ndarray, F: GF) -> int:
    A = np.asarray(A)
    if A.size == 0:
        return 0
    return len(rref(A, F)[1])


def nullspace(A: np.ndarray, F: GF) -> np.ndarray:
    """Rows spanning {x : A x = 0}."""
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[1]
    if A.shape[0] == 0:
        return np.eye(n, dtype=np.int64)
    R, piv = rref(A, F)
    free = [c for c in range(n) if c not in piv]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for t, f in enumerate(free):
        basis[t, f] = 1
        for row, pc in enumerate(piv):
            basis[t, pc] = F.neg[R[row, f]]
    return basis


def row_space(A: np.ndarray, F: GF) -> np.ndarray:
    """Reduced echelon basis of the row space (zero rows dropped)."""
    A = np.asarray(A, dtype=np.int64)
    if A.size == 0:
        return np.zeros((0, A.shape[1] if A.ndim == 2 else 0), dtype=np.int64)
    R, piv = rref(A, F)
    return R[: len(piv)]


def solve(A: np.ndarray, b: np.ndarray, F: GF) -> np.ndarray | None:
    """Some x with A x = b, or None."""
    A = np.asarray(A, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64).reshape(-1, 1)
    R, piv = rref(np.hstack([A, b]), F)
    n = A.shape[1]
    if n in piv:
        return None
    x = np.zeros(n, dtype=np.int64)
    for row, c in enumerate(piv):
        x[c] = R[row, n]
    return x


def inverse(A: np.ndarray, F: GF) -> np.ndarray | None:
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[0]
    R, piv = rref(np.hstack([A, np.eye(n, dtype=np.int64)]), F)
    if piv[:n] != list(range(n)):
        return None
    return R[:, n:]


def reduce_mod(v: np.ndarray, echelon: np.ndarray, pivots: list[int], F: GF) -> np.ndarray:
    """Reduce vector(s) ``v`` modulo the row space of a reduced echelon basis.

    The result has zeros in every pivot column; two vectors are congruent
    modulo the space iff their reductions agree.
    """
    v = np.array(v, dtype=np.int64, copy=True)
    single = v.ndim == 1
    if single:
        v = v[None, :]
    for row, c in enumerate(pivots):
        coef = v[:, c].copy()
        v = F.sub[v, F.mul[coef[:, None], echelon[row][None, :]]]
    return v[0] if single else v
