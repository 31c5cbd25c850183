"""Point-extension constructions turning sparse paving matroids and Steiner
systems into paving matroids that are not sparse, and the decoder that undoes
the Steiner version.

Both constructions replace a circuit-hyperplane H by H' = H + e and drop
every member meeting H' in r-1 or more elements.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from math import comb
from typing import Iterable

from .matroid import Matroid, from_dependent_hyperplanes
from .setkit import bits, family, fmt, subsets_in_order, subsets_of_size


class ConstructionError(ValueError):
    """Inputs violate a construction's preconditions."""


class NotInImage(ValueError):
    """A family that no (S, H, e) maps to."""


@dataclass(frozen=True)
class ConstructionRecord:
    source: tuple[int, ...]
    block: int
    elem: int
    result: tuple[int, ...]


def extend_family(hs: Iterable[int], block: int, elem: int, r: int) -> tuple[int, ...]:
    """Replace ``block`` by ``block + elem`` and drop members meeting it in >= r-1 elements."""
    hp = block | (1 << (elem - 1))
    kept = [x for x in hs if (x & hp).bit_count() < r - 1]
    return family(kept + [hp])


def _check_elem(n: int, block: int, elem: int) -> None:
    if not 1 <= elem <= n:
        raise ConstructionError(f"element {elem} outside [{n}]")
    if block >> (elem - 1) & 1:
        raise ConstructionError(f"element {elem} lies in {{{fmt(block)}}}")


def sparse_to_paving(m: Matroid, block: int, elem: int) -> Matroid:
    """Paving matroid with dependent hyperplanes ``extend_family(CH(m), block, elem)``."""
    if block.bit_count() != m.r or block in m.basis_set:
        raise ConstructionError(f"{{{fmt(block)}}} is not a circuit-hyperplane")
    if not m.is_sparse_paving():
        raise ConstructionError("input matroid is not sparse paving")
    _check_elem(m.n, block, elem)
    return from_dependent_hyperplanes(m.n, m.r, extend_family(m.nonbases(), block, elem, m.r))


def sparse_to_paving_record(m: Matroid, block: int, elem: int) -> ConstructionRecord:
    out = sparse_to_paving(m, block, elem)
    hs = family(h for h in out.hyperplanes if h.bit_count() >= m.r)
    return ConstructionRecord(family(m.nonbases()), block, elem, hs)


def is_steiner(blocks: Iterable[int], n: int, r: int) -> bool:
    """Each (r-1)-subset of [n] lies in exactly one block, all blocks r-sets."""
    seen = set()
    for b in blocks:
        if b.bit_count() != r or b >> n:
            return False
        for s in subsets_in_order(b, r - 1):
            if s in seen:
                return False
            seen.add(s)
    return len(seen) == comb(n, r - 1)


def steiner_to_paving(blocks: Iterable[int], block: int, elem: int, n: int, r: int) -> tuple[int, ...]:
    blocks = family(blocks)
    if not is_steiner(blocks, n, r):
        raise ConstructionError(f"not an S({r - 1},{r},{n})")
    if block not in blocks:
        raise ConstructionError(f"{{{fmt(block)}}} is not a block")
    _check_elem(n, block, elem)
    return extend_family(blocks, block, elem, r)


def _uncovered(hs: tuple[int, ...], n: int, r: int) -> list[int]:
    return [x for x in subsets_of_size(n, r - 1) if not any(x & ~h == 0 for h in hs)]


def steiner_decode(hp: Iterable[int], n: int, r: int) -> tuple[tuple[int, ...], int, int]:
    """Recover (S, H, e) from ``steiner_to_paving(S, H, e)``.

    The (r-1)-sets left uncovered come from the deleted blocks through H' - e.
    The added element is the member of H' lying in (r-2)C(r, r-2) of them, the
    others in (r-2)C(r-1, r-3). Each (r-2)-subset X of H extends to a deleted
    block X + e + x(X), where x(X) is the unique element with X + x(X)
    uncovered. The answer is confirmed by running the construction again.
    """
    if r < 3:
        raise ValueError("decoding needs r >= 3")
    hp = family(hp)
    big = [h for h in hp if h.bit_count() == r + 1]
    if len(big) != 1 or any(h.bit_count() not in (r, r + 1) for h in hp):
        raise NotInImage("not in construction image: need exactly one (r+1)-set among r-sets")
    hprime = big[0]
    unc = _uncovered(hp, n, r)
    deg = {e: sum(1 for u in unc if u & e) for e in bits(hprime)}
    want_e = (r - 2) * comb(r, r - 2)
    want_h = (r - 2) * comb(r - 1, r - 3)
    tops = [e for e, d in deg.items() if d == want_e]
    if len(tops) != 1 or any(d != want_h for e, d in deg.items() if e != tops[0]):
        raise NotInImage("not in construction image: degree signature fails")
    ebit = tops[0]
    h = hprime ^ ebit
    uset = set(unc)
    rebuilt = [x for x in hp if x != hprime] + [h]
    for sub in subsets_in_order(h, r - 2):
        xs = [x for x in bits(~hprime & ((1 << n) - 1)) if sub | x in uset]
        if len(xs) != 1:
            raise NotInImage("not in construction image: no unique completion")
        rebuilt.append(sub | ebit | xs[0])
    blocks = family(rebuilt)
    elem = ebit.bit_length()
    try:
        again = steiner_to_paving(blocks, h, elem, n, r)
    except ConstructionError as exc:
        raise NotInImage(f"not in construction image: {exc}") from exc
    if again != hp:
        raise NotInImage("not in construction image: re-encoding differs")
    return blocks, h, elem


@dataclass
class MultiplicityReport:
    n: int
    r: int
    sources: int
    outputs: int
    distinct: int
    max_preimages: int
    per_source_ok: bool

    @property
    def preimage_bound(self) -> int:
        return 4 * self.n ** 3

    def ok(self) -> bool:
        return self.per_source_ok and self.max_preimages <= self.preimage_bound


def count_multiplicities(n: int, r: int, sparse: Iterable[Matroid]) -> MultiplicityReport:
    """Run every (M, H, e) through the sparse-to-paving map and count preimages.

    Each source with k circuit-hyperplanes must give k(n - r) distinct outputs;
    the preimage bound 4n^3 is only claimed for r = 3 and is reported as
    informational otherwise.
    """
    pre: dict[tuple[int, ...], int] = defaultdict(int)
    sources = outputs = 0
    per_source_ok = True
    for m in sparse:
        sources += 1
        chs = m.nonbases()
        mine = set()
        for h in chs:
            for e in bits(m.ground & ~h):
                fam = extend_family(chs, h, e.bit_length(), r)
                mine.add(fam)
                outputs += 1
        if len(mine) != len(chs) * (n - r):
            per_source_ok = False
        for fam in mine:
            pre[fam] += 1
    return MultiplicityReport(n, r, sources, outputs, len(pre), max(pre.values(), default=0), per_source_ok)
