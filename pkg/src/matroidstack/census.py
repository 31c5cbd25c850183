"""Exhaustive labeled enumeration of matroid classes on [n].

Every class has two routes so the counts can be checked against each other:
matroids by erection stacks and by brute-force filtering, paving matroids by
erections of U(r-1, n) and by backtracking over dependent-hyperplane
families, sparse paving matroids by Johnson-graph stable sets.
"""
from __future__ import annotations

import os
import warnings
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from multiprocessing import Pool
from typing import Iterator

import numpy as np

from .erection import count_erections, enumerate_erections
from .matroid import Matroid, from_dependent_hyperplanes, from_nonbases, rank_zero, uniform
from .setkit import ExactCoverInstance, exact_cover_all, family, full, subsets_of_size

class GuardRefusal(RuntimeError):
    """Raised instead of attempting an enumeration above its resource guard."""


def _guard_n(default: int) -> int:
    raw = os.environ.get("CENSUS_GUARD")
    return int(raw) if raw else default


def _refuse_above(n: int, limit: int, what: str) -> None:
    limit = _guard_n(limit)
    if n > limit:
        raise GuardRefusal(f"{what} refused for n={n} (guard n <= {limit}; set CENSUS_GUARD to raise)")


# -- all matroids --------------------------------------------------------------

def _erections_list(m: Matroid) -> list[Matroid]:
    return list(enumerate_erections(m))


def enumerate_matroids(n: int, r: int, jobs: int = 1) -> Iterator[Matroid]:
    """Every matroid of rank ``r`` on [n], each exactly once.

    Rank by rank from the rank-0 matroid: a matroid is the nontrivial erection
    of exactly one matroid, its truncation.
    """
    if not 0 <= r <= n:
        return
    _refuse_above(n, 8 if r <= 3 else 7, "matroid enumeration")
    if r == 0:
        yield rank_zero(n)
        return
    frontier: Iterator[Matroid] = iter([rank_zero(n)])
    for level in range(1, r + 1):
        if level < r:
            frontier = iter(list(_expand(frontier, jobs)))
        else:
            yield from _expand(frontier, jobs)


def matroid_levels(n: int, r_max: int, jobs: int = 1) -> list[list[Matroid]]:
    """Lists of all matroids of rank 0..r_max on [n], sharing one BFS."""
    r_max = min(r_max, n)
    _refuse_above(n, 8 if r_max <= 3 else 7, "matroid enumeration")
    levels = [[rank_zero(n)]]
    for _ in range(r_max):
        levels.append(list(_expand(iter(levels[-1]), jobs)))
    return levels


def _expand(frontier, jobs: int) -> Iterator[Matroid]:
    if jobs <= 1:
        for m in frontier:
            yield from enumerate_erections(m)
        return
    with Pool(jobs) as pool:
        for batch in pool.imap(_erections_list, frontier, chunksize=16):
            yield from batch


def brute_force_matroids(n: int, r: int) -> Iterator[Matroid]:
    """All nonempty families of r-subsets passing basis exchange, by exhaustive filtering."""
    rsets = list(subsets_of_size(n, r))
    c = len(rsets)
    if c > 20:
        raise GuardRefusal(f"brute force needs C(n,r) <= 20, got C({n},{r}) = {c}")
    index = {s: i for i, s in enumerate(rsets)}
    fams = np.arange(1, 1 << c, dtype=np.int64)
    has = [((fams >> i) & 1).astype(bool) for i in range(c)]
    bad = np.zeros(len(fams), dtype=bool)
    ground = full(n)
    for i, b in enumerate(rsets):
        for j, b2 in enumerate(rsets):
            if i == j:
                continue
            both = has[i] & has[j]
            for x in _bitlist(b & ~b2):
                want = 0
                for y in _bitlist(b2 & ~b & ground):
                    want |= 1 << index[(b ^ x) | y]
                bad |= both & ((fams & want) == 0)
    for f in fams[~bad].tolist():
        yield Matroid(n, r, (rsets[i] for i in range(c) if f >> i & 1))


def _bitlist(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low)
        mask ^= low
    return out


# -- paving matroids -------------------------------------------------------------

def paving_families(n: int, r: int) -> Iterator[tuple[int, ...]]:
    """Families of proper subsets of size >= r pairwise meeting in <= r-2 elements.

    Each is the dependent-hyperplane family of exactly one paving matroid of
    rank r; the empty family belongs to U(r, n).
    """
    ground = full(n)
    cands = family(x for x in range(ground) if x.bit_count() >= r)
    limit = r - 2

    def grow(chosen: list[int], pool: list[int]) -> Iterator[tuple[int, ...]]:
        yield tuple(chosen)
        for i, h in enumerate(pool):
            rest = [g for g in pool[i + 1:] if (g & h).bit_count() <= limit]
            chosen.append(h)
            yield from grow(chosen, rest)
            chosen.pop()

    yield from grow([], list(cands))


def enumerate_paving(n: int, r: int) -> Iterator[Matroid]:
    if r < 2:
        raise ValueError("backtracking paving enumeration needs r >= 2")
    _refuse_above(n, 9 if r == 3 else 8, "paving enumeration")
    for fam in paving_families(n, r):
        yield from_dependent_hyperplanes(n, r, fam)


def paving_code(n: int, r: int, hyperplanes) -> int:
    """Bitmask over the r-subsets of [n] marking nonbases; identifies a paving matroid."""
    table = _subset_code_table(n, r)
    code = 0
    for h in hyperplanes:
        code |= table[h]
    return code


_CODE_TABLES: dict[tuple[int, int], list[int]] = {}


def _subset_code_table(n: int, r: int) -> list[int]:
    key = (n, r)
    if key not in _CODE_TABLES:
        rsets = list(subsets_of_size(n, r))
        table = [0] * (1 << n)
        for i, s in enumerate(rsets):
            table[s] = 1 << i
        for b in range(n):
            bit = 1 << b
            for x in range(1 << n):
                if x & bit:
                    table[x] |= table[x ^ bit]
        _CODE_TABLES[key] = table
    return _CODE_TABLES[key]


def nonbasis_code(m: Matroid) -> int:
    table = _subset_code_table(m.n, m.r)
    bset = m.basis_set
    return sum(table[x] for x in subsets_of_size(m.n, m.r) if x not in bset)


# -- sparse paving ---------------------------------------------------------------

def johnson_stable_sets(n: int, r: int) -> Iterator[tuple[int, ...]]:
    verts = list(subsets_of_size(n, r))

    def grow(chosen, pool):
        yield tuple(chosen)
        for i, v in enumerate(pool):
            rest = [w for w in pool[i + 1:] if (w & v).bit_count() != r - 1]
            chosen.append(v)
            yield from grow(chosen, rest)
            chosen.pop()

    yield from grow([], verts)


def enumerate_sparse_paving(n: int, r: int) -> Iterator[Matroid]:
    cap = int(os.environ.get("CENSUS_SPARSE_GUARD", 35))
    if comb(n, r) > cap:
        raise GuardRefusal(f"sparse paving enumeration needs C(n,r) <= {cap}, got {comb(n, r)}")
    total = comb(n, r)
    for stable in johnson_stable_sets(n, r):
        # when C(n, r) = 1 the lone r-set must stay a basis
        if len(stable) < total:
            yield from_nonbases(n, r, stable)


# -- Steiner systems -------------------------------------------------------------

def steiner_divisible(n: int, r: int) -> bool:
    """Necessary condition (r - i) | C(n - i, r - i - 1) for 0 <= i <= r - 2."""
    return all(comb(n - i, r - i - 1) % (r - i) == 0 for i in range(r - 1))


def steiner_instance(n: int, r: int) -> ExactCoverInstance:
    small = {s: i for i, s in enumerate(subsets_of_size(n, r - 1))}
    rows = []
    for block in subsets_of_size(n, r):
        cover = 0
        for s, i in small.items():
            if s & ~block == 0:
                cover |= 1 << i
        rows.append((block, cover))
    return ExactCoverInstance(len(small), rows)


def enumerate_steiner(n: int, r: int) -> Iterator[tuple[int, ...]]:
    """All labeled S(r-1, r, n), as graded-lex sorted block families."""
    if not 1 <= r < n:
        return
    _refuse_above(n, 9 if r == 3 else 8, "Steiner enumeration")
    if not steiner_divisible(n, r):
        warnings.warn(f"no S({r - 1},{r},{n}) exists: divisibility conditions fail", stacklevel=2)
        return
    for sol in exact_cover_all(steiner_instance(n, r)):
        yield family(sol)


def steiner_backtrack_count(n: int, r: int) -> int:
    """Count S(r-1, r, n) by plain backtracking on the least uncovered (r-1)-set.

    Shares nothing with the exact-cover solver; used as its cross-check.
    """
    small = list(subsets_of_size(n, r - 1))
    ground = full(n)

    def go(covered: frozenset) -> int:
        target = next((s for s in small if s not in covered), None)
        if target is None:
            return 1
        total = 0
        for e in range(n):
            bit = 1 << e
            if target & bit or not ground & bit:
                continue
            block = target | bit
            subs = [block ^ (1 << b) for b in range(n) if block >> b & 1]
            if any(s in covered for s in subs):
                continue
            total += go(covered | frozenset(subs))
        return total

    return go(frozenset())


# -- counts ------------------------------------------------------------------------

@dataclass(frozen=True)
class CensusCounts:
    n: int
    r: int
    m: int
    p: int
    s: int
    d: int
    eta: Fraction | None
    erection_total: int | None = None

    def tsv(self) -> str:
        num = "NA" if self.eta is None else str(self.eta.numerator)
        den = "NA" if self.eta is None else str(self.eta.denominator)
        return "\t".join(map(str, (self.n, self.r, self.m, self.p, self.s, self.d, num, den)))


TSV_HEADER = "n\tr\tm\tp\ts\td\teta_num\teta_den"


def count_paving(n: int, r: int) -> int:
    return sum(1 for _ in paving_families(n, r))


def count_sparse_paving(n: int, r: int) -> int:
    total = comb(n, r)
    return sum(1 for st in johnson_stable_sets(n, r) if len(st) < total)


def count_steiner(n: int, r: int) -> int:
    if not 1 <= r < n:
        return 0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return sum(1 for _ in enumerate_steiner(n, r))


def eta_of(matroids, n: int, r: int) -> tuple[Fraction | None, int]:
    """Mean number of nontrivial erections over the non-uniform matroids given."""
    total = 0
    count = 0
    for m in matroids:
        if m.is_uniform():
            continue
        count += 1
        total += count_erections(m)
    return (Fraction(total, count) if count else None), total


def counts(n: int, r: int, with_eta: bool = True, jobs: int = 1, matroids=None) -> CensusCounts:
    """All class counts at (n, r); ``matroids`` may supply the rank-r census already built."""
    ms = list(enumerate_matroids(n, r, jobs=jobs)) if matroids is None else list(matroids)
    m = len(ms)
    p = sum(1 for x in ms if x.is_paving()) if r < 2 else count_paving(n, r)
    s = count_sparse_paving(n, r)
    d = count_steiner(n, r)
    eta, total = (None, None)
    if with_eta and r < n:
        eta, total = eta_of(ms, n, r)
    return CensusCounts(n, r, m, p, s, d, eta, total)


def uniform_erections(n: int, r: int) -> int:
    """Nontrivial erections of U(r, n)."""
    return count_erections(uniform(r, n))
