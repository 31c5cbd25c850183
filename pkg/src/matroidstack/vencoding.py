"""Minimal generators of flats and the antichains U*(M), A(M), V(M).

``encode_V`` / ``decode_V`` give a lossless description of a matroid by a
levelled antichain of circuits; ``decode_V`` rebuilds the matroid as a stack
of erections starting from the rank-0 matroid.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .erection import erect
from .matroid import Matroid, rank_zero
from .setkit import (
    consecutive_subsets,
    family,
    fmt,
    glex_key,
    is_antichain,
    parse_set,
    subsets_in_order,
)


class InvalidEncoding(ValueError):
    pass


class NotAntichain(ValueError):
    pass


@dataclass(frozen=True)
class VEncoding:
    n: int
    r: int
    levels: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.levels) != self.r:
            raise InvalidEncoding(f"expected {self.r} levels, got {len(self.levels)}")
        for k, level in enumerate(self.levels):
            for v in level:
                if v.bit_count() != k + 1 or v >> self.n:
                    raise InvalidEncoding(f"level {k} member {{{fmt(v)}}} is not a {k + 1}-subset of [{self.n}]")

    def members(self) -> tuple[int, ...]:
        return tuple(v for level in self.levels for v in level)

    def size(self) -> int:
        return sum(len(level) for level in self.levels)


def u_star(m: Matroid, f: int) -> int:
    """Graded-lex least U with cl_{k-1}(U) = F, where k is the rank of the flat F."""
    if m.closure(f) != f:
        raise ValueError(f"{{{fmt(f)}}} is not a flat")
    k = m.rank_of(f)
    if k == 0:
        return f
    for size in range(k, f.bit_count() + 1):
        for u in subsets_in_order(f, size):
            if m.k_closure(k - 1, u) == f:
                return u
    raise AssertionError("unreachable: F generates itself")


def u_star_family(m: Matroid) -> list[list[tuple[int, int]]]:
    """Per rank k < r, the pairs (F, U*_F) with |U*_F| > k, flats in graded-lex order."""
    out = []
    for k in range(m.r):
        level = []
        for f in m.flats_of_rank(k):
            u = u_star(m, f)
            if u.bit_count() > k:
                level.append((f, u))
        out.append(level)
    return out


def _a_sets(u: int, k: int, r: int) -> tuple[int, ...]:
    if k == 0:
        return tuple(subsets_in_order(u, 1))
    if k == r - 1:
        return tuple(subsets_in_order(u, r - 1))
    return tuple(subsets_in_order(u, k))[1:]


def antichain_A(m: Matroid, ustar: list | None = None) -> tuple[int, ...]:
    ustar = u_star_family(m) if ustar is None else ustar
    out = []
    for k, level in enumerate(ustar):
        for _, u in level:
            out.extend(_a_sets(u, k, m.r))
    return family(out)


def a_parts(m: Matroid, ustar: list | None = None) -> list[tuple[int, ...]]:
    """The individual A(U), one per member of U*(M); used to test disjointness."""
    ustar = u_star_family(m) if ustar is None else ustar
    return [_a_sets(u, k, m.r) for k, level in enumerate(ustar) for _, u in level]


def encode_V(m: Matroid, ustar: list | None = None) -> VEncoding:
    ustar = u_star_family(m) if ustar is None else ustar
    levels = []
    for k, level in enumerate(ustar):
        vs = []
        for _, u in level:
            vs.extend(consecutive_subsets(u, k + 1))
        levels.append(family(vs))
    return VEncoding(m.n, m.r, tuple(levels))


def decode_V(enc: VEncoding) -> Matroid:
    """Erect the rank-0 matroid once per level; each step must raise the rank."""
    m = rank_zero(enc.n)
    for k, level in enumerate(enc.levels):
        nxt = erect(m, level)
        if nxt.r != k + 1:
            raise InvalidEncoding(f"level {k} gives a trivial erection; rank stuck at {m.r}")
        m = nxt
    return m


def lym_weights(n: int, r: int) -> list[Fraction]:
    out = []
    for k in range(r):
        if k == r - 1:
            out.append(Fraction(r, comb(n, r - 1)))
        elif k == 0:
            out.append(Fraction(1, n))
        else:
            out.append(Fraction(k, comb(n, k)))
    return out


def lym_check(enc: VEncoding) -> tuple[Fraction, bool | None]:
    """Weighted level sum; the verdict is ``None`` outside r >= 3, n >= 2r."""
    total = sum((len(level) * c for level, c in zip(enc.levels, lym_weights(enc.n, enc.r))), Fraction(0))
    if enc.r < 3 or enc.n < 2 * enc.r:
        return total, None
    return total, total <= 1


def lym_antichain_check(sets, n: int) -> tuple[Fraction, bool]:
    sets = list(sets)
    if not is_antichain(sets):
        raise NotAntichain("family has a comparable pair")
    total = sum((Fraction(1, comb(n, s.bit_count())) for s in set(sets)), Fraction(0))
    return total, total <= 1


def essential_flat_candidates(m: Matroid, ustar: list | None = None) -> tuple[int, ...]:
    """Flats F of rank k < r with |U*_F| > k.

    Flats outside this set are non-essential by Crapo's independent-generator
    test, so this is a superset of the essential flats.
    """
    ustar = u_star_family(m) if ustar is None else ustar
    return family(f for level in ustar for f, _ in level)


def essential_bound(n: int, r: int) -> Fraction:
    return Fraction(comb(n, r), n - r + 1)


# -- text format -------------------------------------------------------------

def format_vencoding(enc: VEncoding) -> str:
    lines = ["vencoding v1", f"n {enc.n}", f"r {enc.r}"]
    for k, level in enumerate(enc.levels):
        lines.append(f"level {k} {len(level)}")
        lines.extend(fmt(v) for v in sorted(level, key=glex_key))
    return "\n".join(lines) + "\n"


def parse_vencoding(text: str) -> VEncoding:
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    if not lines or lines[0] != "vencoding v1":
        raise InvalidEncoding("not a 'vencoding v1' block")
    try:
        n = int(lines[1].split()[1]) if lines[1].startswith("n ") else None
        r = int(lines[2].split()[1]) if lines[2].startswith("r ") else None
    except (IndexError, ValueError) as exc:
        raise InvalidEncoding("malformed header") from exc
    if n is None or r is None:
        raise InvalidEncoding("header must give 'n' then 'r'")
    pos = 3
    levels = []
    for k in range(r):
        if pos >= len(lines):
            raise InvalidEncoding(f"missing level {k}")
        head = lines[pos].split()
        if len(head) != 3 or head[0] != "level" or int(head[1]) != k:
            raise InvalidEncoding(f"expected 'level {k} <count>', got {lines[pos]!r}")
        count = int(head[2])
        body = lines[pos + 1:pos + 1 + count]
        if len(body) != count:
            raise InvalidEncoding(f"level {k}: expected {count} members")
        levels.append(family(parse_set(ln) for ln in body))
        pos += 1 + count
    if pos != len(lines):
        raise InvalidEncoding(f"unexpected content after level {r - 1}: {lines[pos]!r}")
    return VEncoding(n, r, tuple(levels))
