"""Free groups, truncated Magnus expansions and the order they induce.

A word maps to noncommutative power series by x_i -> 1 + X_i and
x_i^-1 -> 1 - X_i + X_i^2 - ...  Two distinct words are compared by the sign
of the first nonzero coefficient of the difference of their expansions, with
monomials ordered by degree and then lexicographically by generator index.
That order is total and invariant under multiplication on both sides, and
the finite-support group algebra K[F] inherits a valuation (minimum of the
support) from it.
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass
from functools import cmp_to_key
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import RankMismatch, TruncationInsufficient, ZeroElement
from .fields import GF

Letter = tuple[int, int]  # (0-based generator, +1 / -1)


def reduce(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    """Free reduction: cancel adjacent x x^-1 pairs."""
    out: list[Letter] = []
    for gen, sign in letters:
        if sign not in (1, -1):
            raise ValueError(f"letter sign must be +1 or -1, got {sign}")
        if out and out[-1] == (gen, -sign):
            out.pop()
        else:
            out.append((gen, sign))
    return tuple(out)


_SYLLABLE = re.compile(r"x(\d+)(?:\^(-?\d+))?")


@dataclass(frozen=True)
class FreeWord:
    """A reduced word in the free group on ``rank`` generators x1..x_rank."""

    rank: int
    letters: tuple[Letter, ...] = ()

    def __post_init__(self) -> None:
        if reduce(self.letters) != self.letters:
            raise ValueError("letters are not reduced; build words with FreeWord.of")
        if any(not 0 <= g < self.rank for g, _ in self.letters):
            raise ValueError(f"generator out of range for rank {self.rank}")

    @classmethod
    def of(cls, rank: int, letters: Iterable[Letter]) -> FreeWord:
        return cls(rank, reduce(letters))

    @classmethod
    def identity(cls, rank: int) -> FreeWord:
        return cls(rank, ())

    @classmethod
    def generator(cls, rank: int, i: int, exponent: int = 1) -> FreeWord:
        """x_i^exponent with 1-based i."""
        sign = 1 if exponent > 0 else -1
        return cls.of(rank, [(i - 1, sign)] * abs(exponent))

    @classmethod
    def parse(cls, text: str, rank: int | None = None) -> FreeWord:
        """Parse ``"x1 x2^-1 x1^2"`` (spaces optional); ``"e"`` or ``"1"`` is the identity."""
        body = re.sub(r"\s+", "", text)
        if body in ("", "e", "1"):
            return cls.identity(rank or 1)
        letters: list[Letter] = []
        pos = 0
        while pos < len(body):
            m = _SYLLABLE.match(body, pos)
            if not m:
                raise ValueError(f"bad word syntax at {body[pos:]!r}")
            gen = int(m.group(1))
            if gen < 1:
                raise ValueError("generators are numbered from x1")
            exp = int(m.group(2)) if m.group(2) is not None else 1
            letters += [(gen - 1, 1 if exp > 0 else -1)] * abs(exp)
            pos = m.end()
        top = max((g + 1 for g, _ in letters), default=1)
        if rank is not None and top > rank:
            raise ValueError(f"word uses x{top} but rank is {rank}")
        return cls.of(rank or top, letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: FreeWord) -> FreeWord:
        if self.rank != other.rank:
            raise RankMismatch(f"ranks {self.rank} and {other.rank}")
        return FreeWord.of(self.rank, self.letters + other.letters)

    def inverse(self) -> FreeWord:
        return FreeWord(self.rank, tuple((g, -s) for g, s in reversed(self.letters)))

    def syllables(self) -> list[tuple[int, int]]:
        out: list[tuple[int, int]] = []
        for g, s in self.letters:
            if out and out[-1][0] == g:
                out[-1] = (g, out[-1][1] + s)
            else:
                out.append((g, s))
        return out

    def __str__(self) -> str:
        if not self.letters:
            return "e"
        return " ".join(f"x{g + 1}" if e == 1 else f"x{g + 1}^{e}" for g, e in self.syllables())


# -- expansions ---------------------------------------------------------------------

Monomial = tuple[int, ...]


@dataclass(frozen=True)
class MagnusExpansion:
    """Integer coefficients of monomials in X_1..X_rank of degree <= ``degree``.

    Absent monomials have coefficient zero.
    """

    rank: int
    degree: int
    coeffs: dict

    def __getitem__(self, m: Monomial) -> int:
        return self.coeffs.get(tuple(m), 0)

    def homogeneous(self, k: int) -> dict[Monomial, int]:
        return {m: c for m, c in self.coeffs.items() if len(m) == k}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MagnusExpansion):
            return NotImplemented
        return (self.rank, self.degree, self.coeffs) == (other.rank, other.degree, other.coeffs)

    def __hash__(self) -> int:
        return hash((self.rank, self.degree, frozenset(self.coeffs.items())))

    def __str__(self) -> str:
        terms = []
        for m in sorted(self.coeffs, key=monomial_key):
            c = self.coeffs[m]
            mono = "".join(f"X{g + 1}" for g in m) or "1"
            if not m:
                terms.append(str(c))
            else:
                terms.append(f"{'' if c == 1 else '-' if c == -1 else c}{mono}")
        return " + ".join(terms).replace("+ -", "- ") or "0"


def monomial_key(m: Monomial) -> tuple[int, Monomial]:
    """Degree first, then lexicographic by generator index."""
    return (len(m), m)


def _letter_series(sign: int, d: int) -> list[int]:
    """Coefficients c_k of the image of x^sign: 1 + X, or sum (-1)^k X^k."""
    if sign > 0:
        return [1, 1] + [0] * max(0, d - 1)
    return [(-1) ** k for k in range(d + 1)]


def _truncated_expansion(w: FreeWord, d: int) -> dict[Monomial, int]:
    series: dict[Monomial, int] = {(): 1}
    for gen, sign in w.letters:
        coeffs = _letter_series(sign, d)
        out: dict[Monomial, int] = {}
        for m, c in series.items():
            room = d - len(m)
            for k in range(min(room, len(coeffs) - 1) + 1):
                if coeffs[k]:
                    key = m + (gen,) * k
                    out[key] = out.get(key, 0) + c * coeffs[k]
        series = {m: c for m, c in out.items() if c}
    return series


def magnus_expand(w: FreeWord, d: int) -> MagnusExpansion:
    if d < 1:
        raise ValueError("truncation degree must be >= 1")
    return MagnusExpansion(w.rank, d, _truncated_expansion(w, d))


def magnus_compare(w1: FreeWord, w2: FreeWord) -> int:
    """-1, 0 or 1 as w1 is less than, equal to or greater than w2."""
    if w1.rank != w2.rank:
        raise RankMismatch(f"ranks {w1.rank} and {w2.rank}")
    if w1 == w2:
        return 0
    d = len(w1) + len(w2) + 1
    for k in range(1, d + 1):
        e1 = _truncated_expansion(w1, k)
        e2 = _truncated_expansion(w2, k)
        diff = [m for m in set(e1) | set(e2) if len(m) == k and e1.get(m, 0) != e2.get(m, 0)]
        if diff:
            m = min(diff)
            return 1 if e1.get(m, 0) > e2.get(m, 0) else -1
    raise TruncationInsufficient(f"{w1} and {w2} agree up to degree {d}")


magnus_key = cmp_to_key(magnus_compare)


def magnus_sorted(words: Iterable[FreeWord]) -> list[FreeWord]:
    return sorted(words, key=magnus_key)


def reduced_words(rank: int, max_len: int) -> list[FreeWord]:
    """All reduced words of length <= max_len, shortlex by letter code."""
    letters = [(g, s) for g in range(rank) for s in (1, -1)]
    out = [FreeWord.identity(rank)]
    level = [()]
    for _ in range(max_len):
        nxt = []
        for w in level:
            for g, s in letters:
                if w and w[-1] == (g, -s):
                    continue
                nxt.append(w + ((g, s),))
        out += [FreeWord(rank, w) for w in nxt]
        level = nxt
    return out


def injectivity_check(rank: int, max_len: int, degree: int) -> tuple[int, int]:
    """Expand every reduced word of length <= max_len to ``degree`` and count
    distinct expansions.  Returns (number of words, number of distinct expansions).

    Works level by level on dense coefficient vectors so that each word costs
    one right-multiplication by a letter image.
    """
    sizes = [rank**k for k in range(degree + 1)]
    offsets = np.cumsum([0] + sizes)
    total = int(offsets[-1])
    # right multiplication by X_i maps degree-k monomial index j to degree-(k+1) index j*rank+i
    src = np.concatenate([np.arange(offsets[k], offsets[k + 1]) for k in range(degree)])
    local = np.concatenate([np.arange(sizes[k]) for k in range(degree)])
    deg_of = np.concatenate([np.full(sizes[k], k) for k in range(degree)])
    dst = [offsets[deg_of + 1] + local * rank + i for i in range(rank)]

    def times_letter(V: np.ndarray, gen: int, sign: int) -> np.ndarray:
        out = V.copy()
        shifted = V
        for k in range(1, degree + 1):
            nxt = np.zeros_like(V)
            nxt[:, dst[gen]] = shifted[:, src]
            shifted = nxt
            if sign > 0:
                out += shifted
                break
            out += (-1) ** k * shifted
        return out

    def digest(row: np.ndarray) -> bytes:
        return hashlib.blake2b(row.tobytes(), digest_size=16).digest()

    letters = [(g, s) for g in range(rank) for s in (1, -1)]
    ident = np.zeros((1, total), dtype=np.int64)
    ident[0, 0] = 1
    seen = {digest(ident[0])}
    count = 1
    level, last = ident, [None]
    for length in range(1, max_len + 1):
        new_levels, new_last = [], []
        for g, s in letters:
            keep = [i for i, l in enumerate(last) if l != (g, -s)]
            if not keep:
                continue
            V = times_letter(level[keep], g, s)
            for row in V:
                seen.add(digest(row))
            count += V.shape[0]
            if length < max_len:
                new_levels.append(V)
                new_last += [(g, s)] * V.shape[0]
        if length < max_len:
            level, last = np.vstack(new_levels), new_last
    return count, len(seen)


# -- the finite-support algebra K[F] ------------------------------------------------


@dataclass(frozen=True)
class OrderedGroupAlgebraElement:
    """Finite formal sum of free-group words with coefficients in F_q."""

    field: GF
    rank: int
    terms: tuple[tuple[FreeWord, int], ...] = ()

    @classmethod
    def from_dict(cls, F: GF, rank: int, coeffs: dict[FreeWord, int]) -> OrderedGroupAlgebraElement:
        items = []
        for w, c in coeffs.items():
            if w.rank != rank:
                raise RankMismatch(f"word of rank {w.rank} in rank-{rank} algebra")
            if not 0 <= c < F.q:
                raise ValueError(f"{c} is not an encoded element of {F}")
            if c:
                items.append((w, c))
        items.sort(key=lambda t: t[0].letters)
        return cls(F, rank, tuple(items))

    @classmethod
    def monomial(cls, F: GF, w: FreeWord, c: int = 1) -> OrderedGroupAlgebraElement:
        return cls.from_dict(F, w.rank, {w: c})

    @classmethod
    def parse(cls, text: str, F: GF, rank: int | None = None) -> OrderedGroupAlgebraElement:
        """Parse ``"3*x1 + 2*x1x2^-1 - x2"``; a bare integer is a multiple of the identity."""
        body = re.sub(r"\s+", "", text).replace("^-", "^~")
        if not body:
            raise ValueError("empty algebra element")
        if body[0] not in "+-":
            body = "+" + body
        parts = re.findall(r"([+-])([^+-]*)", body)
        raw: list[tuple[int, str]] = []
        for sign, term in parts:
            term = term.replace("^~", "^-")
            m = re.fullmatch(r"(\d+)(?:\*(.+))?", term) or re.fullmatch(r"()(x.+)", term)
            if not m:
                raise ValueError(f"bad algebra element term {term!r} in {text!r}")
            coef = int(m.group(1)) if m.group(1) else 1
            raw.append((coef if sign == "+" else -coef, m.group(2) or "e"))
        words = [FreeWord.parse(w or "e") for _, w in raw]
        r = rank or max(w.rank for w in words)
        acc: dict[FreeWord, int] = {}
        for (coef, _), w in zip(raw, words):
            w = FreeWord(r, w.letters)
            acc[w] = int(F.add[acc.get(w, 0), F.from_int(coef)])
        return cls.from_dict(F, r, acc)

    @property
    def support(self) -> list[FreeWord]:
        return [w for w, _ in self.terms]

    def coefficient(self, w: FreeWord) -> int:
        return dict(self.terms).get(w, 0)

    def _check(self, other: OrderedGroupAlgebraElement) -> None:
        if other.field is not self.field or other.rank != self.rank:
            raise RankMismatch("elements over different fields or ranks")

    def __add__(self, other: OrderedGroupAlgebraElement) -> OrderedGroupAlgebraElement:
        self._check(other)
        acc = dict(self.terms)
        for w, c in other.terms:
            acc[w] = int(self.field.add[acc.get(w, 0), c])
        return OrderedGroupAlgebraElement.from_dict(self.field, self.rank, acc)

    def __mul__(self, other: OrderedGroupAlgebraElement) -> OrderedGroupAlgebraElement:
        return kg_multiply(self, other)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{self.field.format(c)}*{w}" for w, c in sorted(self.terms, key=lambda t: magnus_key(t[0])))


def kg_multiply(a: OrderedGroupAlgebraElement, b: OrderedGroupAlgebraElement) -> OrderedGroupAlgebraElement:
    a._check(b)
    F = a.field
    acc: dict[FreeWord, int] = {}
    for g, x in a.terms:
        for h, y in b.terms:
            t = g * h
            acc[t] = int(F.add[acc.get(t, 0), F.mul[x, y]])
    return OrderedGroupAlgebraElement.from_dict(F, a.rank, acc)


def valuation(a: OrderedGroupAlgebraElement) -> FreeWord:
    """The least word in the support."""
    if not a.terms:
        raise ZeroElement("valuation of zero")
    return min(a.support, key=magnus_key)


def is_trivial_unit(a: OrderedGroupAlgebraElement) -> bool:
    """Nonzero scalar times a group element."""
    return len(a.terms) == 1


def word_map(images: Sequence, mul: Callable, inverse: Callable, identity) -> Callable[[FreeWord], object]:
    """Homomorphism from a free group, fixed by generator images."""

    def apply(w: FreeWord):
        r = identity
        for g, s in w.letters:
            r = mul(r, images[g] if s > 0 else inverse(images[g]))
        return r

    return apply


def pullback_membership(
    a: OrderedGroupAlgebraElement,
    quotient_map: Callable[[FreeWord], object],
    contains: Callable[[object], bool],
) -> bool:
    """Is ``a`` in the preimage of M under (quotient map o valuation)?"""
    return bool(contains(quotient_map(valuation(a))))
