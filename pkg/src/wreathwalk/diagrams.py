"""Partitions, Young G-diagrams, removable corners and standard tableau counts."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

from .errors import InvalidCornerError


class Partition(tuple):
    """A weakly decreasing tuple of positive integers; ``Partition()`` is the empty partition."""

    def __new__(cls, parts=()):
        parts = tuple(int(p) for p in parts)
        if any(p <= 0 for p in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"partition parts must be weakly decreasing: {parts}")
        return super().__new__(cls, parts)

    @property
    def parts(self):
        return tuple(self)

    @property
    def size(self):
        return sum(self)

    @property
    def first(self):
        """Largest part; 0 for the empty partition."""
        return self[0] if self else 0

    def __repr__(self):
        return f"({','.join(map(str, self))})"


class Corner(NamedTuple):
    component: int
    row: int
    col: int
    content: int


@dataclass(frozen=True)
class YoungGDiagram:
    """A tuple of partitions aligned with the irreps of the base group."""

    shapes: tuple[Partition, ...]

    def __post_init__(self):
        object.__setattr__(self, "shapes", tuple(Partition(s) for s in self.shapes))

    @property
    def n(self):
        return sum(s.size for s in self.shapes)

    @property
    def sizes(self):
        return tuple(s.size for s in self.shapes)

    def corners(self):
        return [
            Corner(j, r, c, c - r)
            for j, shape in enumerate(self.shapes)
            for r, c, _ in removable_corners(shape)
        ]

    def remove(self, corner):
        shape = self.shapes[corner.component]
        if (corner.row, corner.col, corner.col - corner.row) not in removable_corners(shape):
            raise InvalidCornerError(f"{corner} is not a removable corner of {self}")
        parts = list(shape)
        parts[corner.row - 1] -= 1
        if parts[-1] == 0:
            parts.pop()
        shapes = list(self.shapes)
        shapes[corner.component] = Partition(parts)
        return YoungGDiagram(tuple(shapes))

    def __str__(self):
        return "|".join(repr(s) for s in self.shapes)


def partitions_of(L):
    """All partitions of ``L`` in descending lexicographic order, e.g. (4), (3,1), (2,2), ..."""
    return [Partition(p) for p in _partitions(L, L)]


@lru_cache(maxsize=None)
def _partitions(L, max_part):
    if L == 0:
        return ((),)
    out = []
    for first in range(min(L, max_part), 0, -1):
        out.extend((first,) + rest for rest in _partitions(L - first, first))
    return tuple(out)


@lru_cache(maxsize=None)
def hook_count(shape):
    """Number of standard Young tableaux of ``shape`` via the hook-length formula."""
    shape = Partition(shape)
    if not shape:
        return 1
    conj = conjugate(shape)
    hooks = 1
    for r, row in enumerate(shape):
        for c in range(row):
            hooks *= (row - c - 1) + (conj[c] - r - 1) + 1
    return math.factorial(shape.size) // hooks


def conjugate(shape):
    shape = Partition(shape)
    return Partition(sum(1 for p in shape if p > c) for c in range(shape.first))


def removable_corners(shape):
    """``(row, col, content)`` of each removable box, 1-based, top row first."""
    shape = Partition(shape)
    out = []
    for r, row in enumerate(shape):
        below = shape[r + 1] if r + 1 < len(shape) else 0
        if row > below:
            out.append((r + 1, row, row - (r + 1)))
    return out


def _compositions(n, t):
    if t == 1:
        yield (n,)
        return
    for first in range(n, -1, -1):
        for rest in _compositions(n - first, t - 1):
            yield (first,) + rest


def enumerate_young_g_diagrams(n, t):
    """All ``t``-tuples of partitions with ``n`` boxes in total."""
    if t < 1:
        raise ValueError("t must be >= 1")
    out = []
    for sizes in _compositions(n, t):
        for shapes in itertools.product(*(partitions_of(m) for m in sizes)):
            out.append(YoungGDiagram(shapes))
    return out


def multinomial(n, parts):
    out = math.factorial(n)
    for p in parts:
        out //= math.factorial(p)
    return out


def count_syt_g(mu):
    """Number of standard Young G-tableaux of shape ``mu``."""
    out = multinomial(mu.n, mu.sizes)
    for s in mu.shapes:
        out *= hook_count(s)
    return out
