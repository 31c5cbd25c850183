"""Slow, definition-level reference implementations used to cross-check the package.

Nothing here imports the package's algorithms; sets are frozensets of
1-based elements so the bit tricks of the library are not reused either.
"""
from fractions import Fraction
from itertools import combinations
from math import comb, factorial


def all_subsets(n):
    ground = range(1, n + 1)
    for k in range(n + 1):
        for c in combinations(ground, k):
            yield frozenset(c)


def rank(bases, x):
    return max(len(x & b) for b in bases)


def closure(bases, n, x):
    rx = rank(bases, x)
    return frozenset(e for e in range(1, n + 1) if rank(bases, x | {e}) == rx)


def flats(bases, n):
    return {x for x in all_subsets(n) if closure(bases, n, x) == x}


def circuits(bases, n):
    dep = [x for x in all_subsets(n) if rank(bases, x) < len(x)]
    return {c for c in dep if all(rank(bases, c - {e}) == len(c) - 1 for e in c)}


def is_matroid_bases(bases):
    """Basis exchange, straight from the definition."""
    bases = set(bases)
    if not bases:
        return False
    for b1 in bases:
        for b2 in bases:
            for x in b1 - b2:
                if not any((b1 - {x}) | {y} in bases for y in b2 - b1):
                    return False
    return True


def is_antichain(sets):
    sets = list(sets)
    return all(not (a <= b or b <= a) for a, b in combinations(sets, 2))


def stirling2(n, k):
    table = [[0] * (n + 1) for _ in range(n + 1)]
    table[0][0] = 1
    for i in range(1, n + 1):
        for j in range(1, i + 1):
            table[i][j] = j * table[i - 1][j] + table[i - 1][j - 1]
    return table[n][k]


def bell_by_stirling(n):
    return sum(stirling2(n, k) for k in range(n + 1))


def involutions(n):
    """Sum over the number k of 2-cycles."""
    return sum(factorial(n) // (factorial(k) * 2 ** k * factorial(n - 2 * k)) for k in range(n // 2 + 1))


def brute_matroids(n, r):
    """Every rank-r matroid on [n] by filtering all basis families; tiny n only."""
    rsets = [frozenset(c) for c in combinations(range(1, n + 1), r)]
    out = []
    for mask in range(1, 1 << len(rsets)):
        fam = [rsets[i] for i in range(len(rsets)) if mask >> i & 1]
        if is_matroid_bases(fam):
            out.append(frozenset(fam))
    return out


def to_frozen(mask):
    return frozenset(i + 1 for i in range(mask.bit_length()) if mask >> i & 1)


def steiner_count_by_triples(n):
    """S(2,3,n) by choosing, for the least uncovered pair, every third point."""
    pairs = [frozenset(p) for p in combinations(range(1, n + 1), 2)]

    def go(covered):
        todo = next((p for p in pairs if p not in covered), None)
        if todo is None:
            return 1
        a, b = sorted(todo)
        total = 0
        for c in range(1, n + 1):
            if c in todo:
                continue
            new = {frozenset((a, c)), frozenset((b, c))}
            if new & covered:
                continue
            total += go(covered | new | {todo})
        return total

    return go(frozenset())


def erection_count_by_crapo(bases, n, r):
    """Nontrivial erections of a small matroid: all families of (r-1)-closed full-rank
    proper sets covering each basis exactly once, found by plain subset search."""
    def r1_closed(x):
        return all(closure(bases, n, frozenset(y)) <= x for k in range(r) for y in combinations(sorted(x), k))

    cands = [x for x in all_subsets(n) if len(x) < n and rank(bases, x) == r and r1_closed(x)]
    bases = list(bases)

    def go(i, cover):
        if all(cover):
            return 1
        if i == len(cands):
            return 0
        total = go(i + 1, cover)
        hit = [b <= cands[i] for b in bases]
        if not any(h and c for h, c in zip(hit, cover)):
            total += go(i + 1, [c or h for c, h in zip(cover, hit)])
        return total

    return go(0, [False] * len(bases)) if r < n else 0


def lym_sum_exact(sets, n):
    return sum((Fraction(1, comb(n, len(s))) for s in sets), Fraction(0))
