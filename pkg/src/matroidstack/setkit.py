"""Bitmask subsets of the groundset [n], graded-lex order, and exact cover.

A subset of E = {1, ..., n} is a plain ``int``: element ``i`` lives in bit
``i - 1``.  A *family* is a tuple of such ints, sorted ascending in
graded-lexicographic order with duplicates removed.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from itertools import combinations
from typing import Iterable, Iterator, Sequence

HARD_MAX_N = 24
_WIDTH = HARD_MAX_N

_REV8 = [int(f"{i:08b}"[::-1], 2) for i in range(256)]


def max_n() -> int:
    """Groundset cap, from ``MATROID_MAX_N`` (default 16, never above 24)."""
    raw = os.environ.get("MATROID_MAX_N")
    cap = int(raw) if raw else 16
    if not 1 <= cap <= HARD_MAX_N:
        raise ValueError(f"MATROID_MAX_N must lie in 1..{HARD_MAX_N}, got {cap}")
    return cap


def check_n(n: int) -> None:
    if n < 0 or n > max_n():
        raise ValueError(f"groundset size {n} outside 0..{max_n()}")


# -- conversions -----------------------------------------------------------

def subset(elements: Iterable[int]) -> int:
    """Bitmask of a collection of 1-based elements."""
    mask = 0
    for e in elements:
        if e < 1:
            raise ValueError(f"elements are 1-based, got {e}")
        mask |= 1 << (e - 1)
    return mask


def elements(mask: int) -> tuple[int, ...]:
    """Ascending 1-based elements of a bitmask."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length())
        mask ^= low
    return tuple(out)


def bits(mask: int) -> list[int]:
    """Single-bit masks of ``mask``, lowest first."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low)
        mask ^= low
    return out


def full(n: int) -> int:
    return (1 << n) - 1


def fmt(mask: int) -> str:
    return " ".join(map(str, elements(mask)))


def parse_set(text: str) -> int:
    text = text.replace(",", " ").strip()
    return subset(int(tok) for tok in text.split()) if text else 0


# -- graded lexicographic order -------------------------------------------

def _rev(mask: int) -> int:
    return (_REV8[mask & 0xFF] << 16) | (_REV8[(mask >> 8) & 0xFF] << 8) | _REV8[(mask >> 16) & 0xFF]


def glex_key(mask: int) -> tuple[int, int]:
    """Sort key realising X < Y iff |X| < |Y|, or equal size and min(X ^ Y) in X."""
    return (mask.bit_count(), -_rev(mask))


def graded_lex_cmp(x: int, y: int) -> int:
    """-1, 0 or 1 as ``x`` precedes, equals or follows ``y``."""
    if x == y:
        return 0
    cx, cy = x.bit_count(), y.bit_count()
    if cx != cy:
        return -1 if cx < cy else 1
    diff = x ^ y
    return -1 if x & diff & -diff else 1


def family(sets: Iterable[int]) -> tuple[int, ...]:
    """Deduplicated, graded-lex sorted tuple."""
    return tuple(sorted(set(sets), key=glex_key))


def is_family(sets: Sequence[int]) -> bool:
    return all(graded_lex_cmp(a, b) < 0 for a, b in zip(sets, sets[1:]))


def subsets_in_order(u: int, t: int) -> Iterator[int]:
    """All ``t``-subsets of ``u`` in graded-lex order."""
    for combo in combinations(bits(u), t):
        yield sum(combo)


def subsets_of_size(n: int, t: int) -> Iterator[int]:
    return subsets_in_order(full(n), t)


def consecutive_subsets(u: int, t: int) -> tuple[int, ...]:
    """The ``|u| - t + 1`` windows of ``t`` order-consecutive elements of ``u``."""
    if t < 1:
        raise ValueError("window size must be at least 1")
    parts = bits(u)
    return tuple(sum(parts[i:i + t]) for i in range(len(parts) - t + 1))


def johnson_adjacent(x: int, y: int, r: int) -> bool:
    if x.bit_count() != r or y.bit_count() != r:
        raise ValueError(f"both sets must have cardinality {r}")
    return (x & y).bit_count() == r - 1


def is_antichain(sets: Iterable[int]) -> bool:
    seq = sorted(set(sets), key=int.bit_count)
    for i, a in enumerate(seq):
        for b in seq[i + 1:]:
            if a & b == a:
                return False
    return True


def minimal_min(sets: Iterable[int]) -> int:
    """Graded-lex minimum of a nonempty collection."""
    return min(sets, key=glex_key)


# -- family text block -----------------------------------------------------

def format_family(n: int, r: int, sets: Sequence[int]) -> str:
    lines = ["family v1", f"n {n}", f"r {r}", f"members {len(sets)}"]
    lines.extend(fmt(s) for s in sets)
    return "\n".join(lines) + "\n"


def parse_family(text: str) -> tuple[int, int, tuple[int, ...]]:
    lines = [ln.strip() for ln in text.strip().splitlines()]
    if not lines or lines[0] != "family v1":
        raise ValueError("not a 'family v1' block")
    try:
        n = int(_field(lines[1], "n"))
        r = int(_field(lines[2], "r"))
        count = int(_field(lines[3], "members"))
    except IndexError as exc:
        raise ValueError("truncated family header") from exc
    body = lines[4:4 + count]
    if len(body) != count:
        raise ValueError(f"expected {count} members, found {len(body)}")
    if any(lines[4 + count:]):
        raise ValueError("unexpected content after the last member")
    sets = [parse_set(ln) for ln in body]
    if any(s >> n for s in sets):
        raise ValueError("member outside the groundset")
    return n, r, family(sets)


def _field(line: str, name: str) -> str:
    key, _, value = line.partition(" ")
    if key != name:
        raise ValueError(f"expected '{name}' line, got {line!r}")
    return value


# -- exact cover -------------------------------------------------------------

class ExactCoverInstance:
    """Columns ``0..columns-1``; each row is ``(row_id, column_mask)``."""

    def __init__(self, columns: int, rows: Sequence[tuple[object, int]]):
        for rid, cover in rows:
            if cover == 0:
                raise ValueError(f"row {rid!r} covers no column")
            if cover >> columns:
                raise ValueError(f"row {rid!r} covers a column outside 0..{columns - 1}")
        self.columns = columns
        self.rows = list(rows)


def _build(columns: int, covers: Sequence[int]):
    col_rows: dict[int, set[int]] = {c: set() for c in range(columns)}
    row_cols: list[list[int]] = []
    for i, cover in enumerate(covers):
        cols = [b.bit_length() - 1 for b in bits(cover)]
        row_cols.append(cols)
        for c in cols:
            col_rows[c].add(i)
    return col_rows, row_cols


def _select(col_rows, row_cols, i):
    removed = []
    for c in row_cols[i]:
        for j in col_rows[c]:
            for k in row_cols[j]:
                if k != c:
                    col_rows[k].discard(j)
        removed.append(col_rows.pop(c))
    return removed


def _deselect(col_rows, row_cols, i, removed):
    for c in reversed(row_cols[i]):
        col_rows[c] = removed.pop()
        for j in col_rows[c]:
            for k in row_cols[j]:
                if k != c:
                    col_rows[k].add(j)


def _search(col_rows, row_cols, partial: list[int]) -> Iterator[tuple[int, ...]]:
    # Algorithm X; fewest-rows column first, ties to the lowest column, rows ascending.
    if not col_rows:
        yield tuple(partial)
        return
    c = min(col_rows, key=lambda k: (len(col_rows[k]), k))
    for i in sorted(col_rows[c]):
        partial.append(i)
        removed = _select(col_rows, row_cols, i)
        yield from _search(col_rows, row_cols, partial)
        _deselect(col_rows, row_cols, i, removed)
        partial.pop()


def _branch(args) -> list[tuple[int, ...]]:
    columns, covers, first = args
    col_rows, row_cols = _build(columns, covers)
    _select(col_rows, row_cols, first)
    return list(_search(col_rows, row_cols, [first]))


def _solve_indices(columns: int, covers: Sequence[int], jobs: int = 1) -> Iterator[tuple[int, ...]]:
    col_rows, row_cols = _build(columns, covers)
    if jobs <= 1 or not col_rows:
        yield from _search(col_rows, row_cols, [])
        return
    c = min(col_rows, key=lambda k: (len(col_rows[k]), k))
    tasks = [(columns, list(covers), i) for i in sorted(col_rows[c])]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for sols in pool.map(_branch, tasks):
            yield from sols


def exact_cover_all(inst: ExactCoverInstance, jobs: int = 1) -> Iterator[tuple]:
    """Every set of rows covering each column exactly once.

    Rows are canonicalised (sorted by cover mask, then by id) before the
    search, so the stream of solutions, each a tuple of row ids, does not
    depend on the input row order or on ``jobs``.
    """
    order = sorted(range(len(inst.rows)), key=lambda i: (inst.rows[i][1], repr(inst.rows[i][0])))
    covers = [inst.rows[i][1] for i in order]
    ids = [inst.rows[i][0] for i in order]
    for sol in _solve_indices(inst.columns, covers, jobs):
        yield tuple(ids[i] for i in sol)
