"""Truncation/erection calculus of matroids, antichain encodings and labeled censuses."""
from .census import counts, enumerate_matroids
from .erection import enumerate_erections, erect, free_erection, knuth_flats
from .matroid import Matroid, format_matroid, from_nonbases, parse_matroid, rank_zero, uniform
from .setkit import elements, subset
from .vencoding import decode_V, encode_V

__all__ = [
    "Matroid", "format_matroid", "parse_matroid", "from_nonbases", "rank_zero", "uniform",
    "elements", "subset",
    "knuth_flats", "erect", "free_erection", "enumerate_erections",
    "encode_V", "decode_V",
    "enumerate_matroids", "counts",
]
