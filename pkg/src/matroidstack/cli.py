"""Command-line front end: ``python -m matroidstack <command> ...``.

Exit codes: 0 success, 1 usage or input error, 2 a verification failed.
"""
from __future__ import annotations

import argparse
import sys
import warnings

from . import bounds as bnd
from .census import (
    GuardRefusal,
    enumerate_matroids,
    enumerate_paving,
    enumerate_sparse_paving,
    enumerate_steiner,
)
from .constructions import ConstructionError, NotInImage, sparse_to_paving, steiner_decode, steiner_to_paving
from .erection import count_erections, enumerate_erections
from .matroid import Matroid, format_matroid, parse_matroid
from .randomgen import RandomSpec, greedy_partial_steiner, greedy_stats, random_knuth_matroid
from .setkit import fmt, format_family, is_antichain, parse_family, parse_set
from .vencoding import (
    InvalidEncoding,
    antichain_A,
    decode_V,
    encode_V,
    essential_bound,
    essential_flat_candidates,
    format_vencoding,
    lym_check,
    parse_vencoding,
    u_star_family,
)

EXIT_OK, EXIT_INPUT, EXIT_VERIFY = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


class _Out:
    def __init__(self, path: str | None):
        self.path = path
        self.fh = None

    def __enter__(self):
        self.fh = open(self.path, "w", encoding="utf-8", newline="\n") if self.path else sys.stdout
        return self.fh

    def __exit__(self, *exc):
        if self.path:
            self.fh.close()
        return False


# -- commands --------------------------------------------------------------------

def cmd_enumerate(a) -> int:
    n, r = a.n, a.r
    if a.cls == "all":
        stream = enumerate_matroids(n, r, jobs=a.jobs)
    elif a.cls == "paving":
        if r >= 2:
            stream = enumerate_paving(n, r)
        else:
            stream = (m for m in enumerate_matroids(n, r, jobs=a.jobs) if m.is_paving())
    elif a.cls == "sparse":
        stream = enumerate_sparse_paving(n, r)
    else:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            systems = list(enumerate_steiner(n, r))
        for w in caught:
            print(f"warning: {w.message}", file=sys.stderr)
        with _Out(a.out) as out:
            if a.count_only:
                out.write(f"{len(systems)}\n")
            else:
                for s in systems:
                    out.write(format_family(n, r, s))
        return EXIT_OK
    with _Out(a.out) as out:
        if a.count_only:
            out.write(f"{sum(1 for _ in stream)}\n")
        else:
            for m in stream:
                out.write(format_matroid(m))
    return EXIT_OK


def cmd_encode(a) -> int:
    m = parse_matroid(_read(a.inp))
    with _Out(a.out) as out:
        out.write(format_vencoding(encode_V(m)))
    return EXIT_OK


def cmd_decode(a) -> int:
    m = decode_V(parse_vencoding(_read(a.inp)))
    with _Out(a.out) as out:
        out.write(format_matroid(m))
    return EXIT_OK


def cmd_erections(a) -> int:
    m = parse_matroid(_read(a.inp))
    with _Out(a.out) as out:
        if a.count_only:
            out.write(f"{count_erections(m)}\n")
        else:
            for e in enumerate_erections(m):
                out.write(format_matroid(e))
    return EXIT_OK


def verify_report(m: Matroid) -> list[tuple[str, bool | None]]:
    """Named checks on one matroid; ``None`` marks a check outside its range."""
    rows: list[tuple[str, bool | None]] = [("basis_exchange", m.validate())]
    if not rows[0][1]:
        return rows
    ustar = u_star_family(m)
    enc = encode_V(m, ustar)
    rows.append(("decode_roundtrip", decode_V(enc) == m))
    circuits = set(m.circuits())
    rows.append(("V_antichain", is_antichain(enc.members())))
    rows.append(("A_antichain", is_antichain(antichain_A(m, ustar))))
    rows.append(("V_members_are_circuits", all(v in circuits for v in enc.members())))
    in_range = m.r >= 3 and m.n >= 2 * m.r
    total, verdict = lym_check(enc)
    rows.append((f"lym_sum={total}", verdict))
    limit = essential_bound(m.n, m.r) if m.r < m.n else None
    rows.append(("V_size_bound", enc.size() <= limit if in_range else None))
    cands = essential_flat_candidates(m, ustar)
    rows.append((f"essential_candidates={len(cands)}", len(cands) <= limit if in_range else None))
    return rows


def cmd_verify(a) -> int:
    m = parse_matroid(_read(a.inp))
    rows = verify_report(m)
    failed = False
    for name, ok in rows:
        print(f"{name}\t{'skip' if ok is None else ('ok' if ok else 'FAIL')}")
        failed |= ok is False
    return EXIT_VERIFY if failed else EXIT_OK


def _levels(text: str | None) -> tuple[int, ...]:
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise UsageError(f"bad --levels {text!r}") from exc


def cmd_random(a) -> int:
    with _Out(a.out) as out:
        if a.mode == "knuth-stack":
            m = random_knuth_matroid(a.n, a.r, RandomSpec(a.seed, _levels(a.levels)))
            out.write(format_matroid(m))
            return EXIT_OK
        if a.trials <= 1:
            ps = greedy_partial_steiner(a.n, a.r, a.seed)
            out.write(format_family(a.n, a.r, ps.blocks))
            return EXIT_OK
        stats = greedy_stats(a.n, a.r, a.trials, a.seed)
        out.write(stats.tsv())
        summ = stats.summary()
        out.write(f"# mean\t{float(summ['mean']):.6f}\n# min\t{summ['min']}\n# max\t{summ['max']}\n")
        out.write(f"# threshold\t{summ['threshold']:.12f}\n")
        frac = summ["fraction_meeting_threshold"]
        out.write(f"# fraction_meeting_threshold\t{frac.numerator}/{frac.denominator}\n")
        out.write(f"# perfect_bound\t{summ['perfect_bound']}\n")
    return EXIT_OK


def cmd_construct(a) -> int:
    text = _read(a.inp)
    with _Out(a.out) as out:
        if a.mode == "steiner-decode":
            n, r, fam = parse_family(text)
            try:
                blocks, h, e = steiner_decode(fam, n, r)
            except NotInImage as exc:
                print(str(exc), file=sys.stderr)
                return EXIT_VERIFY
            out.write(format_family(n, r, blocks))
            out.write(f"block {fmt(h)}\nelem {e}\n")
            return EXIT_OK
        if a.block is None or a.elem is None:
            raise UsageError("--block and --elem are required")
        h = parse_set(a.block)
        if a.mode == "sparse-to-paving":
            out.write(format_matroid(sparse_to_paving(parse_matroid(text), h, a.elem)))
        else:
            n, r, fam = parse_family(text)
            out.write(format_family(n, r, steiner_to_paving(fam, h, a.elem, n, r)))
    return EXIT_OK


def cmd_bounds(a) -> int:
    rep = bnd.evaluate_bounds(a.n, a.r)
    with _Out(a.out) as out:
        out.write(rep.tsv())
        if not a.with_census:
            return EXIT_OK
        rows = bnd.compare_with_census(a.n, a.r, jobs=a.jobs)
        out.write("check\tdetail\tverdict\n")
        for row in rows:
            out.write(row.tsv() + "\n")
    return EXIT_OK if all(row.ok() for row in rows) else EXIT_VERIFY


# -- parser ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="matroidstack", description="Matroid erection stacks, encodings and censuses.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def with_out(sp):
        sp.add_argument("--out", default=None, help="output file (default stdout)")
        return sp

    e = with_out(sub.add_parser("enumerate", help="all labeled matroids of a class"))
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--r", type=int, required=True)
    e.add_argument("--class", dest="cls", choices=["all", "paving", "sparse", "steiner"], default="all")
    e.add_argument("--count-only", action="store_true")
    e.add_argument("--jobs", type=int, default=1)
    e.set_defaults(func=cmd_enumerate)

    for name, func, help_ in (("encode", cmd_encode, "matroid to V-encoding"),
                              ("decode", cmd_decode, "V-encoding to matroid")):
        sp = with_out(sub.add_parser(name, help=help_))
        sp.add_argument("--in", dest="inp", required=True)
        sp.set_defaults(func=func)

    er = with_out(sub.add_parser("erections", help="nontrivial erections of a matroid"))
    er.add_argument("--in", dest="inp", required=True)
    er.add_argument("--count-only", action="store_true")
    er.set_defaults(func=cmd_erections)

    v = sub.add_parser("verify", help="axioms, antichains, LYM and roundtrip checks")
    v.add_argument("--in", dest="inp", required=True)
    v.set_defaults(func=cmd_verify)

    rd = with_out(sub.add_parser("random", help="seeded random generators"))
    rd.add_argument("--mode", choices=["knuth-stack", "greedy-steiner"], required=True)
    rd.add_argument("--n", type=int, required=True)
    rd.add_argument("--r", type=int, required=True)
    rd.add_argument("--seed", type=int, required=True)
    rd.add_argument("--levels", default=None, help="comma-separated set counts m0,m1,...")
    rd.add_argument("--trials", type=int, default=1)
    rd.set_defaults(func=cmd_random)

    c = with_out(sub.add_parser("construct", help="paving constructions and the Steiner decoder"))
    c.add_argument("--mode", choices=["sparse-to-paving", "steiner-to-paving", "steiner-decode"], required=True)
    c.add_argument("--in", dest="inp", required=True)
    c.add_argument("--block", default=None, help="block H, e.g. '1 2 3' or 1,2,3")
    c.add_argument("--elem", type=int, default=None)
    c.set_defaults(func=cmd_construct)

    b = with_out(sub.add_parser("bounds", help="evaluate bounds, optionally against the census"))
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--r", type=int, required=True)
    b.add_argument("--with-census", action="store_true")
    b.add_argument("--jobs", type=int, default=1)
    b.set_defaults(func=cmd_bounds)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ValueError, GuardRefusal, ConstructionError, InvalidEncoding, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
