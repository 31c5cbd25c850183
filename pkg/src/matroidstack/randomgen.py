"""Seeded random generators: Knuth-style erection stacks and greedy partial Steiner systems.

All randomness comes from numpy's PCG64 bit generator, whose output stream is
fixed across platforms for a given seed. Per-trial seeds are derived with
SplitMix64 applied to ``seed ^ trial``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

import numpy as np

from .erection import erect
from .matroid import Matroid, from_nonbases, rank_zero
from .setkit import family, subsets_of_size

_MASK64 = (1 << 64) - 1


def splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def trial_seed(seed: int, trial: int) -> int:
    return splitmix64((seed ^ trial) & _MASK64)


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed & _MASK64))


@dataclass(frozen=True)
class RandomSpec:
    seed: int
    counts: tuple[int, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if any(c < 0 for c in self.counts):
            raise ValueError("set counts must be non-negative")


def random_knuth_matroid(n: int, r: int, spec: RandomSpec) -> Matroid:
    """Erect the rank-0 matroid r times, level k seeded with m_k random (k+2)-subsets.

    A degenerate (trivial) erection leaves the rank unchanged, so the result
    may have rank below ``r``; read it off ``.r``.
    """
    if not 0 <= r <= n:
        raise ValueError(f"rank {r} outside 0..{n}")
    counts = tuple(spec.counts) + (0,) * (r - len(spec.counts))
    rng = make_rng(spec.seed)
    m = rank_zero(n)
    for k in range(r):
        size = k + 2
        pool = list(subsets_of_size(n, size)) if size <= n else []
        picks = [pool[int(i)] for i in rng.integers(len(pool), size=counts[k])] if pool and counts[k] else []
        m = erect(m, picks)
    return m


@dataclass(frozen=True)
class PartialSteiner:
    n: int
    r: int
    blocks: tuple[int, ...]

    def is_packing(self) -> bool:
        return all((a & b).bit_count() <= self.r - 2 for i, a in enumerate(self.blocks) for b in self.blocks[i + 1:])

    def is_maximal(self) -> bool:
        covered = _covered(self.blocks, self.r)
        return all(any(s in covered for s in _facets(x)) for x in subsets_of_size(self.n, self.r))


def _facets(x: int) -> list[int]:
    out = []
    y = x
    while y:
        low = y & -y
        out.append(x ^ low)
        y ^= low
    return out


def _covered(blocks, r) -> set[int]:
    return {s for b in blocks for s in _facets(b)}


def greedy_partial_steiner(n: int, r: int, seed: int) -> PartialSteiner:
    """Random greedy matching in the hypergraph whose edges are the (r-1)-shadows of r-sets."""
    if r < 2 or n <= r:
        raise ValueError("need r >= 2 and n > r")
    rng = make_rng(seed)
    remaining = list(subsets_of_size(n, r))
    chosen = []
    while remaining:
        pick = remaining[int(rng.integers(len(remaining)))]
        chosen.append(pick)
        remaining = [x for x in remaining if (x & pick).bit_count() < r - 1]
    return PartialSteiner(n, r, family(chosen))


def partial_steiner_to_matroid(ps: PartialSteiner) -> Matroid:
    """Sparse paving matroid whose circuit-hyperplanes are the blocks."""
    return from_nonbases(ps.n, ps.r, ps.blocks)


def bennett_bohman_threshold(n: int, r: int) -> float:
    big_n = comb(n, r - 1)
    d = n - r + 1
    return (1 - d ** (-1 / (3 * (r - 1)))) * big_n / r


@dataclass
class GreedyStats:
    n: int
    r: int
    sizes: list[int]
    threshold: float

    @property
    def perfect_bound(self) -> int:
        return comb(self.n, self.r - 1) // self.r

    def summary(self) -> dict:
        hit = sum(1 for s in self.sizes if s >= self.threshold)
        return {
            "trials": len(self.sizes),
            "mean": Fraction(sum(self.sizes), len(self.sizes)),
            "min": min(self.sizes),
            "max": max(self.sizes),
            "threshold": self.threshold,
            "fraction_meeting_threshold": Fraction(hit, len(self.sizes)),
            "perfect_bound": self.perfect_bound,
        }

    def tsv(self) -> str:
        rows = ["trial\tM"] + [f"{i}\t{s}" for i, s in enumerate(self.sizes)]
        return "\n".join(rows) + "\n"


def greedy_stats(n: int, r: int, trials: int, seed: int) -> GreedyStats:
    sizes = [len(greedy_partial_steiner(n, r, trial_seed(seed, t)).blocks) for t in range(trials)]
    return GreedyStats(n, r, sizes, bennett_bohman_threshold(n, r))
