"""Matroids on [n], stored by their bases."""
from __future__ import annotations

from itertools import combinations
from math import comb
from typing import Iterable

import numpy as np

from .setkit import (
    bits,
    check_n,
    family,
    fmt,
    full,
    parse_set,
    subsets_in_order,
    subsets_of_size,
)

_POP = {}


def _popcounts(n: int) -> np.ndarray:
    if n not in _POP:
        idx = np.arange(1 << n, dtype=np.int64)
        pc = np.zeros(1 << n, dtype=np.int8)
        for b in range(n):
            pc += ((idx >> b) & 1).astype(np.int8)
        _POP[n] = pc
    return _POP[n]


class _Tables:
    """Rank, closure and independence over all 2^n subsets."""

    __slots__ = ("rank", "closure", "indep", "rank_np", "indep_np")

    def __init__(self, n: int, bases: tuple[int, ...]):
        size = 1 << n
        idx = np.arange(size, dtype=np.int64)
        indep = np.zeros(size, dtype=bool)
        indep[list(bases)] = True
        for b in range(n):
            bit = 1 << b
            lo = idx[(idx & bit) == 0]
            indep[lo] |= indep[lo | bit]
        rank = np.where(indep, _popcounts(n), 0).astype(np.int8)
        for b in range(n):
            bit = 1 << b
            lo = idx[(idx & bit) == 0]
            rank[lo | bit] = np.maximum(rank[lo | bit], rank[lo])
        cl = idx.copy()
        for b in range(n):
            bit = 1 << b
            cl[rank[idx | bit] == rank] |= bit
        self.rank_np = rank
        self.indep_np = indep
        self.rank = rank.tolist()
        self.closure = cl.tolist()
        self.indep = indep.tolist()


class Matroid:
    """A matroid of rank ``r`` on ``[n]``, given by its bases.

    Equality and hashing use ``(n, r, bases)`` only; derived tables are
    computed lazily and never take part in comparisons.
    """

    __slots__ = ("n", "r", "bases", "_t", "_basis_set")

    def __init__(self, n: int, r: int, bases: Iterable[int]):
        check_n(n)
        if not 0 <= r <= n:
            raise ValueError(f"rank {r} outside 0..{n}")
        fam = family(bases)
        if not fam:
            raise ValueError("a matroid needs at least one basis")
        for b in fam:
            if b.bit_count() != r or b >> n:
                raise ValueError(f"basis {{{fmt(b)}}} is not an {r}-subset of [{n}]")
        self.n = n
        self.r = r
        self.bases = fam
        self._t = None
        self._basis_set = None

    # -- identity ----------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, Matroid):
            return NotImplemented
        return (self.n, self.r, self.bases) == (other.n, other.r, other.bases)

    def __hash__(self):
        return hash((self.n, self.r, self.bases))

    def __repr__(self):
        return f"Matroid(n={self.n}, r={self.r}, bases={len(self.bases)})"

    def __getstate__(self):
        return (self.n, self.r, self.bases)

    def __setstate__(self, state):
        self.n, self.r, self.bases = state
        self._t = None
        self._basis_set = None

    @property
    def ground(self) -> int:
        return full(self.n)

    @property
    def tables(self) -> _Tables:
        if self._t is None:
            self._t = _Tables(self.n, self.bases)
        return self._t

    @property
    def basis_set(self) -> frozenset[int]:
        if self._basis_set is None:
            self._basis_set = frozenset(self.bases)
        return self._basis_set

    # -- axioms ------------------------------------------------------------
    def validate(self) -> bool:
        """Basis exchange: for B, B' and x in B - B' some y in B' - B gives a basis."""
        bset = self.basis_set
        ground = self.ground
        swaps = {}
        for b in self.bases:
            for x in bits(b):
                rest = b ^ x
                ok = 0
                for y in bits(ground & ~b):
                    if rest | y in bset:
                        ok |= y
                swaps[(b, x)] = ok
        for b in self.bases:
            for b2 in self.bases:
                outside = b2 & ~b
                for x in bits(b & ~b2):
                    if not swaps[(b, x)] & outside:
                        return False
        return True

    # -- rank and closure --------------------------------------------------
    def rank_of(self, x: int) -> int:
        return self.tables.rank[x]

    def is_independent(self, x: int) -> bool:
        return self.tables.indep[x]

    def closure(self, x: int) -> int:
        return self.tables.closure[x]

    def k_closure(self, k: int, x: int) -> int:
        """Least k-closed superset of ``x``; ``k < 0`` returns ``x`` unchanged."""
        if k < 0:
            return x
        cl = self.tables.closure
        loops = cl[0]
        while True:
            size = min(k, x.bit_count())
            new = x | loops
            if size == x.bit_count():
                new |= cl[x]
            else:
                for y in subsets_in_order(x, size):
                    new |= cl[y]
            if new == x:
                return x
            x = new

    def is_k_closed(self, k: int, x: int) -> bool:
        if k < 0:
            return True
        cl = self.tables.closure
        if cl[0] & ~x:
            return False
        size = min(k, x.bit_count())
        return all(not cl[y] & ~x for y in subsets_in_order(x, size))

    def flats_of_rank(self, k: int) -> tuple[int, ...]:
        if k < 0:
            return ()
        t = self.tables
        idx = np.arange(1 << self.n, dtype=np.int64)
        cl = np.asarray(t.closure, dtype=np.int64)
        hits = np.nonzero((cl == idx) & (t.rank_np == k))[0]
        return family(int(h) for h in hits)

    def flats(self) -> tuple[int, ...]:
        t = self.tables
        return family(x for x, c in enumerate(t.closure) if c == x)

    @property
    def hyperplanes(self) -> tuple[int, ...]:
        return self.flats_of_rank(self.r - 1)

    def circuits(self) -> tuple[int, ...]:
        t = self.tables
        n = self.n
        idx = np.arange(1 << n, dtype=np.int64)
        minimal = ~t.indep_np
        for b in range(n):
            bit = 1 << b
            has = (idx & bit) != 0
            minimal &= ~has | t.indep_np[idx ^ bit]
        return family(int(c) for c in np.nonzero(minimal)[0])

    def is_k_free(self, k: int, u: int) -> bool:
        return not any(c.bit_count() <= k and c & ~u == 0 for c in self.circuits())

    def nonbases(self) -> tuple[int, ...]:
        bset = self.basis_set
        return tuple(x for x in subsets_of_size(self.n, self.r) if x not in bset)

    # -- derived matroids --------------------------------------------------
    def truncate(self, k: int) -> "Matroid":
        if not 0 <= k <= self.r:
            raise ValueError(f"truncation rank {k} outside 0..{self.r}")
        if k == self.r:
            return self
        indep = self.tables.indep
        return Matroid(self.n, k, (x for x in subsets_of_size(self.n, k) if indep[x]))

    def dual(self) -> "Matroid":
        g = self.ground
        return Matroid(self.n, self.n - self.r, (g & ~b for b in self.bases))

    # -- classes -----------------------------------------------------------
    def is_paving(self) -> bool:
        return all(c.bit_count() >= self.r for c in self.circuits())

    def is_sparse_paving(self) -> bool:
        nb = self.nonbases()
        r = self.r
        return not any((a & b).bit_count() == r - 1 for a, b in combinations(nb, 2))

    def is_uniform(self) -> bool:
        return len(self.bases) == comb(self.n, self.r)


# -- constructors ------------------------------------------------------------

def uniform(r: int, n: int) -> Matroid:
    return Matroid(n, r, subsets_of_size(n, r))


def rank_zero(n: int) -> Matroid:
    return Matroid(n, 0, [0])


def from_nonbases(n: int, r: int, nonbases: Iterable[int]) -> Matroid:
    bad = set(nonbases)
    return Matroid(n, r, (x for x in subsets_of_size(n, r) if x not in bad))


def from_dependent_hyperplanes(n: int, r: int, hyperplanes: Iterable[int]) -> Matroid:
    """Paving matroid of rank ``r`` whose hyperplanes of size >= r are given."""
    hs = list(hyperplanes)
    return Matroid(n, r, (x for x in subsets_of_size(n, r) if not any(x & ~h == 0 for h in hs)))


# -- text format -------------------------------------------------------------

def format_matroid(m: Matroid) -> str:
    lines = ["matroid v1", f"n {m.n}", f"r {m.r}", f"bases {len(m.bases)}"]
    lines.extend(fmt(b) for b in m.bases)
    return "\n".join(lines) + "\n"


def parse_matroid(text: str) -> Matroid:
    lines = text.lstrip("\n").split("\n")
    if not lines or lines[0].strip() != "matroid v1":
        raise ValueError("not a 'matroid v1' block")
    header = {}
    for ln, key in zip(lines[1:4], ("n", "r", "bases")):
        name, _, value = ln.strip().partition(" ")
        if name != key:
            raise ValueError(f"expected '{key}' line, got {ln!r}")
        header[key] = int(value)
    if len(header) != 3:
        raise ValueError("truncated matroid header")
    count = header["bases"]
    body = [ln.strip() for ln in lines[4:4 + count]]
    if header["r"] == 0 and count == 1:
        # the single basis is the empty set, written as an empty line
        body = [""]
    if len(body) != count or (header["r"] > 0 and not all(body)):
        raise ValueError(f"expected {count} bases, found {len([b for b in body if b])}")
    return Matroid(header["n"], header["r"], (parse_set(ln) for ln in body))


def parse_matroids(text: str) -> list[Matroid]:
    """Split a stream of concatenated ``matroid v1`` blocks."""
    out, block = [], []
    for ln in text.split("\n"):
        if ln.strip() == "matroid v1" and block:
            out.append(parse_matroid("\n".join(block)))
            block = []
        if block or ln.strip():
            block.append(ln)
    if block:
        out.append(parse_matroid("\n".join(block)))
    return out
