"""Exact linear algebra over F2 with vectors stored as int bitmasks."""
from __future__ import annotations

from dataclasses import dataclass, field


def bits(v: int):
    i = 0
    while v:
        if v & 1:
            yield i
        v >>= 1
        i += 1


def low(v: int) -> int:
    # index of the highest set bit; -1 for zero
    return v.bit_length() - 1


class Echelon:
    """Incrementally grown span, reduced on the highest bit."""

    def __init__(self, vectors=()):
        self.rows: dict[int, int] = {}
        for v in vectors:
            self.add(v)

    def reduce(self, v: int) -> int:
        while v:
            h = low(v)
            r = self.rows.get(h)
            if r is None:
                return v
            v ^= r
        return 0

    def add(self, v: int) -> bool:
        v = self.reduce(v)
        if v:
            self.rows[low(v)] = v
            return True
        return False

    def __contains__(self, v: int) -> bool:
        return self.reduce(v) == 0

    def __len__(self):
        return len(self.rows)


def rank(vectors) -> int:
    return len(Echelon(vectors))


def kernel(cols: list[int]) -> list[int]:
    """Basis (as bitmasks over column indices) of the kernel of the map j -> cols[j]."""
    pivots: dict[int, tuple[int, int]] = {}
    out = []
    for j, c in enumerate(cols):
        combo = 1 << j
        while c:
            h = low(c)
            if h not in pivots:
                pivots[h] = (c, combo)
                break
            pc, pcombo = pivots[h]
            c ^= pc
            combo ^= pcombo
        else:
            out.append(combo)
    return out


def apply(cols: list[int], v: int) -> int:
    out = 0
    for j in bits(v):
        out ^= cols[j]
    return out


def homology_rank(cols: list[int]) -> int:
    n = len(cols)
    return n - 2 * rank(cols)


@dataclass
class Persistence:
    """Standard column reduction of a filtered F2 complex.

    Generators are indexed in filtration order; ``boundary[j]`` may only involve
    indices below j.  ``chains[j]`` is the reduced column's chain (V) and
    ``reduced[j]`` its boundary (R = dV).
    """

    pairs: list[tuple[int, int]] = field(default_factory=list)
    essential: list[int] = field(default_factory=list)
    chains: list[int] = field(default_factory=list)
    reduced: list[int] = field(default_factory=list)


def persistence(boundary: list[int]) -> Persistence:
    n = len(boundary)
    chains = [1 << j for j in range(n)]
    reduced = list(boundary)
    owner: dict[int, int] = {}
    for j in range(n):
        while reduced[j]:
            h = low(reduced[j])
            if h >= j:
                raise ValueError("boundary is not compatible with the filtration order")
            k = owner.get(h)
            if k is None:
                owner[h] = j
                break
            reduced[j] ^= reduced[k]
            chains[j] ^= chains[k]
    pairs = sorted((h, j) for h, j in owner.items())
    paired = {h for h, _ in pairs} | {j for _, j in pairs}
    essential = [j for j in range(n) if j not in paired]
    return Persistence(pairs, essential, chains, reduced)


def invert(cols: list[int]) -> list[int]:
    """Inverse of an invertible matrix given by columns (Gauss-Jordan)."""
    n = len(cols)
    work = [(cols[j], 1 << j) for j in range(n)]
    # row-reduce by treating columns as vectors: find X with cols * X = I
    pivots: dict[int, tuple[int, int]] = {}
    for c, combo in work:
        while c:
            h = low(c)
            if h not in pivots:
                pivots[h] = (c, combo)
                break
            pc, pcombo = pivots[h]
            c ^= pc
            combo ^= pcombo
        else:
            raise ValueError("matrix is singular")
    # back-substitute so every pivot vector becomes a unit vector
    for h in sorted(pivots):
        c, combo = pivots[h]
        for h2 in list(bits(c)):
            if h2 != h:
                c2, combo2 = pivots[h2]
                c ^= c2
                combo ^= combo2
        pivots[h] = (c, combo)
    return [pivots[i][1] for i in range(n)]
