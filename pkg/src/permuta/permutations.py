"""Permutations on {0, ..., n-1}, written and parsed in 1-based cycle notation."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence


@dataclass(frozen=True)
class Perm:
    """A permutation stored as its image tuple.

    Products compose like functions: ``(a * b)(x) == a(b(x))``.
    """

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"not a permutation: {self.images}")

    @property
    def degree(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, degree: int) -> Perm:
        return cls(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int | None = None) -> Perm:
        cycles = [tuple(c) for c in cycles]
        top = max((max(c) for c in cycles if c), default=1)
        degree = max(degree or 0, top)
        images = list(range(degree))
        for cyc in cycles:
            for k, point in enumerate(cyc):
                images[point - 1] = cyc[(k + 1) % len(cyc)] - 1
        return cls(tuple(images))

    @classmethod
    def parse(cls, text: str, degree: int | None = None) -> Perm:
        """Parse ``"(1 2)(3 4 5)"``; ``"()"`` is the identity."""
        text = text.strip()
        if not re.fullmatch(r"(\(\s*[\d\s,]*\))+", text):
            raise ValueError(f"bad cycle notation: {text!r}")
        cycles = []
        for body in re.findall(r"\(([^)]*)\)", text):
            pts = [int(t) for t in re.split(r"[\s,]+", body.strip()) if t]
            if any(p < 1 for p in pts) or len(set(pts)) != len(pts):
                raise ValueError(f"bad cycle: ({body})")
            cycles.append(pts)
        return cls.from_cycles(cycles, degree)

    def extend(self, degree: int) -> Perm:
        if degree <= self.degree:
            return self
        return Perm(self.images + tuple(range(self.degree, degree)))

    def __mul__(self, other: Perm) -> Perm:
        if self.degree != other.degree:
            n = max(self.degree, other.degree)
            return self.extend(n) * other.extend(n)
        a = self.images
        return Perm(tuple(a[b] for b in other.images))

    def inverse(self) -> Perm:
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Perm(tuple(inv))

    def __call__(self, point: int) -> int:
        return self.images[point]

    def sign(self) -> int:
        seen = [False] * self.degree
        s = 1
        for i in range(self.degree):
            if seen[i]:
                continue
            length = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = self.images[j]
                length += 1
            if length % 2 == 0:
                s = -s
        return s

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for i in range(self.degree):
            if i in seen or self.images[i] == i:
                continue
            cyc = []
            j = i
            while j not in seen:
                seen.add(j)
                cyc.append(j + 1)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def __str__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)
