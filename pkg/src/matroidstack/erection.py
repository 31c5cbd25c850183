"""Knuth's flat-merging procedure, erections, Crapo's criterion and complete sets."""
from __future__ import annotations

import random
from itertools import combinations
from typing import Iterable, Iterator

from .matroid import Matroid
from .setkit import ExactCoverInstance, bits, exact_cover_all, family, subsets_of_size


def _initial_family(m: Matroid, u: Iterable[int]) -> set[int]:
    init = set(u)
    if m.r == 0:
        # No hyperplanes exist; the empty set stands in for the rank-0 flat itself.
        init.add(0)
        return init
    ground = m.ground
    for f in m.hyperplanes:
        for e in bits(ground & ~f):
            init.add(f | e)
    return init


def _maximal(sets: Iterable[int]) -> tuple[int, ...]:
    pool = set(sets)
    return family(s for s in pool if not any(s != t and s & ~t == 0 for t in pool))


def knuth_flats(m: Matroid, u: Iterable[int] = (), rng: random.Random | None = None) -> tuple[int, ...]:
    """Rank-r flat family of the erection of ``m`` generated by ``u``.

    Starting from ``u`` plus every hyperplane extended by one outside element,
    any two members whose intersection has full rank are replaced by their
    union until no such pair remains. With ``rng`` the merging pair is drawn at
    random among all eligible pairs; the result must not change.
    """
    r = m.r
    rank = m.tables.rank
    init = _initial_family(m, u)
    if rng is None:
        done: list[int] = []
        for h in sorted(init, key=lambda s: (-s.bit_count(), s)):
            merged = True
            while merged:
                merged = False
                for i, g in enumerate(done):
                    if rank[h & g] == r:
                        h |= g
                        del done[i]
                        merged = True
                        break
            done.append(h)
        return _maximal(done)

    pool = sorted(init)
    rng.shuffle(pool)
    while True:
        pairs = [(i, j) for i, j in combinations(range(len(pool)), 2) if rank[pool[i] & pool[j]] == r]
        if not pairs:
            break
        i, j = rng.choice(pairs)
        merged = pool[i] | pool[j]
        pool = [s for k, s in enumerate(pool) if k not in (i, j)]
        if merged not in pool:
            pool.append(merged)
    return _maximal(pool)


def completion(m: Matroid, z: Iterable[int] = ()) -> tuple[int, ...]:
    """Maximal members of the smallest complete set containing ``z``.

    Computed independently of :func:`knuth_flats`: seeded with the bases of
    ``m`` rather than extended hyperplanes, and closing the family of maximal
    members under (r-1)-closure and full-rank unions until it is stable.
    """
    r = m.r
    rank = m.tables.rank
    cur = _maximal(set(z) | set(m.bases))
    while True:
        closed = {m.k_closure(r - 1, h) for h in cur}
        merged = True
        pool = list(closed)
        while merged:
            merged = False
            for i, j in combinations(range(len(pool)), 2):
                if rank[pool[i] & pool[j]] == r:
                    union = pool[i] | pool[j]
                    pool = [s for k, s in enumerate(pool) if k not in (i, j)] + [union]
                    merged = True
                    break
        nxt = _maximal(pool)
        if nxt == cur:
            return cur
        cur = nxt


def _from_flats(m: Matroid, flats: tuple[int, ...]) -> Matroid:
    rank = m.tables.rank
    r = m.r
    return Matroid(
        m.n,
        r + 1,
        (x for x in subsets_of_size(m.n, r + 1) if rank[x] == r and not any(x & ~h == 0 for h in flats)),
    )


def erect(m: Matroid, u: Iterable[int] = ()) -> Matroid:
    """``m`` raised by the flat family :func:`knuth_flats` produces.

    An (r+1)-set is a basis of the erection iff it spans ``m`` and lies in no
    member of the family. A family equal to ``{E}`` gives ``m`` back.
    """
    flats = knuth_flats(m, u)
    if flats == (m.ground,):
        return m
    return _from_flats(m, flats)


def free_erection(m: Matroid) -> Matroid:
    return erect(m, ())


def crapo_valid(m: Matroid, flats: Iterable[int]) -> bool:
    """Crapo's three conditions for ``flats`` to be the rank-r flats of an erection."""
    flats = list(flats)
    r = m.r
    rank = m.tables.rank
    for h in flats:
        if rank[h] != r or not m.is_k_closed(r - 1, h):
            return False
    return all(sum(1 for h in flats if b & ~h == 0) == 1 for b in m.bases)


def _down(sets: Iterable[int]) -> set[int]:
    out: set[int] = set()
    for s in sets:
        if s in out:
            continue
        sub = s
        while True:
            out.add(sub)
            if sub == 0:
                break
            sub = (sub - 1) & s
    return out


def is_complete(m: Matroid, maximal: Iterable[int]) -> bool:
    """Check conditions (i)-(iv) on the down-closure of ``maximal`` directly.

    Enumerates the whole down-closure, so keep ``n`` small.
    """
    xs = _down(maximal)
    r = m.r
    rank = m.tables.rank
    if any(b not in xs for b in m.bases):
        return False
    if any(m.k_closure(r - 1, x) not in xs for x in xs):
        return False
    seq = list(xs)
    for i, x in enumerate(seq):
        for y in seq[i:]:
            if rank[x & y] == r and x | y not in xs:
                return False
    return True


def erection_candidates(m: Matroid) -> tuple[int, ...]:
    """Proper (r-1)-closed subsets of full rank: the possible rank-r flats of an erection."""
    r = m.r
    rank = m.tables.rank
    ground = m.ground
    return family(x for x in range(ground) if rank[x] == r and m.is_k_closed(r - 1, x))


def erection_flat_families(m: Matroid, jobs: int = 1) -> Iterator[tuple[int, ...]]:
    """Every flat family of a nontrivial erection, via exact cover of the bases."""
    if m.r >= m.n:
        return
    cols = {b: i for i, b in enumerate(m.bases)}
    rows = []
    for h in erection_candidates(m):
        cover = 0
        for b, i in cols.items():
            if b & ~h == 0:
                cover |= 1 << i
        rows.append((h, cover))
    inst = ExactCoverInstance(len(cols), rows)
    for sol in exact_cover_all(inst, jobs=jobs):
        yield family(sol)


def enumerate_erections(m: Matroid, jobs: int = 1) -> Iterator[Matroid]:
    """Each nontrivial erection of ``m`` once, in exact-cover solution order."""
    for flats in erection_flat_families(m, jobs=jobs):
        yield _from_flats(m, flats)


def count_erections(m: Matroid) -> int:
    return sum(1 for _ in erection_flat_families(m))
