"""Closed forms and upper/lower bounds on matroid counts, checked against the census.

Reported logarithms are base 2, computed with 50 significant digits and
printed rounded half-even to 12 decimal places. Inequalities are never
decided from those floats: each bound of the form

    log2 count <= (C / D) * log2 base

is rewritten as ``count ** D <= base ** C`` and settled in exact integer or
rational arithmetic. Where ``base`` involves e we bracket e between two
rational partial sums of its series.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

PRECISION = 50
_QUANT = Decimal("1e-12")


# -- exact helpers ---------------------------------------------------------------

def bell(n: int) -> int:
    """Bell number via the Bell triangle."""
    if n < 0:
        raise ValueError("n must be non-negative")
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for x in row:
            nxt.append(nxt[-1] + x)
        row = nxt
    return row[0]


def telephone(n: int) -> int:
    """Involutions of [n]: T(n) = T(n-1) + (n-1) T(n-2)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    a, b = 1, 1
    for k in range(2, n + 1):
        a, b = b, b + (k - 1) * a
    return b if n >= 1 else a


@lru_cache(maxsize=None)
def e_bracket(terms: int = 60) -> tuple[Fraction, Fraction]:
    """Rationals lo < e < hi from the partial sum of 1/k! and its tail bound."""
    lo = sum((Fraction(1, factorial(k)) for k in range(terms)), Fraction(0))
    return lo, lo + Fraction(2, factorial(terms))


def rank1_counts(n: int) -> tuple[int, int, int]:
    return 2 ** n - 1, 2 ** n - 1, n + 1


def rank2_counts(n: int) -> tuple[int, int, int]:
    return bell(n + 1) - 2 ** n, bell(n) - 1, telephone(n)


# -- decimal evaluation ----------------------------------------------------------

def _log2(x) -> Decimal:
    with localcontext() as ctx:
        ctx.prec = PRECISION
        if isinstance(x, Fraction):
            d = Decimal(x.numerator) / Decimal(x.denominator)
        else:
            d = Decimal(x)
        return d.ln() / Decimal(2).ln()


def _e() -> Decimal:
    with localcontext() as ctx:
        ctx.prec = PRECISION
        return Decimal(1).exp()


def fmt12(x: Decimal | None) -> str:
    if x is None:
        return "NA"
    with localcontext() as ctx:
        ctx.prec = PRECISION
        q = x.quantize(_QUANT, rounding=ROUND_HALF_EVEN)
        return format(q if q else abs(q), "f")


@dataclass(frozen=True)
class Bound:
    """``log2(count + offset) <= expo * log2(factor * e**with_e)``."""

    name: str
    expo: Fraction
    factor: Fraction
    with_e: bool
    in_range: bool
    window: str
    offset: int = 0

    @property
    def log2_value(self) -> Decimal:
        with localcontext() as ctx:
            ctx.prec = PRECISION
            base = _log2(self.factor)
            if self.with_e:
                base += _e().ln() / Decimal(2).ln()
            return Decimal(self.expo.numerator) / Decimal(self.expo.denominator) * base

    def holds(self, count: int) -> bool | None:
        """Exact verdict: True, False, or None if the e-bracket cannot decide."""
        p, q = self.expo.numerator, self.expo.denominator
        left = Fraction(count + self.offset) ** q
        lo, hi = e_bracket() if self.with_e else (Fraction(1), Fraction(1))
        if left <= (lo * self.factor) ** p:
            return True
        if left > (hi * self.factor) ** p:
            return False
        return None


@dataclass
class BoundsReport:
    n: int
    r: int
    bounds: dict[str, Bound]
    lower_s: Decimal | None
    rank2_m: int | None
    rank2_p: int | None
    rank2_s: int | None
    exact: dict[str, int] = field(default_factory=dict)

    def value(self, key: str) -> Decimal | None:
        b = self.bounds.get(key)
        return None if b is None else b.log2_value

    @property
    def upper_s(self):
        return self.value("upper_s")

    @property
    def upper_p(self):
        return self.value("upper_p")

    @property
    def upper_m(self):
        return self.value("upper_m")

    @property
    def upper_m_essential(self):
        return self.value("upper_m_essential")

    @property
    def upper_m_rank3(self):
        return self.value("upper_m_rank3")

    def tsv(self) -> str:
        lines = ["quantity\tlog2_value\tstatus\twindow"]
        if self.lower_s is not None:
            lines.append(f"lower_s\t{fmt12(self.lower_s)}\tasymptotic form - not asserted\tn large, o(1) dropped")
        for key in ("upper_s", "upper_p", "upper_m", "upper_m_essential", "upper_m_rank3"):
            b = self.bounds[key]
            status = "in range" if b.in_range else "out of stated range"
            lines.append(f"{key}\t{fmt12(b.log2_value)}\t{status}\t{b.window}")
        if self.r == 1:
            m, p, s = rank1_counts(self.n)
            lines += [f"rank1_m\t{m}\tclosed form\tr = 1", f"rank1_p\t{p}\tclosed form\tr = 1",
                      f"rank1_s\t{s}\tclosed form\tr = 1"]
        if self.rank2_m is not None:
            lines += [f"rank2_m\t{self.rank2_m}\tclosed form\tr = 2",
                      f"rank2_p\t{self.rank2_p}\tclosed form\tr = 2",
                      f"rank2_s\t{self.rank2_s}\tclosed form\tr = 2"]
        return "\n".join(lines) + "\n"


def evaluate_bounds(n: int, r: int) -> BoundsReport:
    if not 1 <= r <= n:
        raise ValueError("need 1 <= r <= n")
    c = comb(n, r)
    d = n - r + 1
    expo = Fraction(c, d)
    bounds = {
        "upper_s": Bound("upper_s", expo, Fraction(d + 1), False, True, "r <= n"),
        "upper_p": Bound("upper_p", expo, Fraction(d), True, 3 <= r, "3 <= r <= n"),
        "upper_m": Bound("upper_m", expo, Fraction(d), True, r >= 3 and n >= r + 12, "r >= 3, n >= r + 12"),
        "upper_m_essential": Bound(
            "upper_m_essential", expo, Fraction(2 ** n * (r + 1) * d, c), True, r >= 3 and n >= 2 * r,
            "r >= 3, n >= 2r",
        ),
        "upper_m_rank3": Bound(
            "upper_m_rank3", Fraction(comb(n, 3), n - 2) if n > 2 else Fraction(0), Fraction(max(n - 2, 1)), True,
            r == 3 and n >= 15, "r = 3, n >= 15", offset=1,
        ),
    }
    with localcontext() as ctx:
        ctx.prec = PRECISION
        arg = Decimal(1 - r).exp() * d
        lower = Decimal(c) / Decimal(d) * (arg.ln() / Decimal(2).ln())
    r2 = rank2_counts(n) if r == 2 else (None, None, None)
    return BoundsReport(n, r, bounds, lower, *r2)


# -- comparison with exact counts -------------------------------------------------

@dataclass(frozen=True)
class CheckRow:
    name: str
    detail: str
    in_range: bool
    holds: bool | None

    def ok(self) -> bool:
        return not self.in_range or self.holds is True

    def tsv(self) -> str:
        verdict = "skip" if not self.in_range else {True: "ok", False: "VIOLATED", None: "undecided"}[self.holds]
        return f"{self.name}\t{self.detail}\t{verdict}"


def bound_rows(n: int, r: int, m: int, p: int, s: int) -> list[CheckRow]:
    rep = evaluate_bounds(n, r)
    rows = []
    for key, count, label in (("upper_s", s, "s"), ("upper_p", p, "p"), ("upper_m", m, "m"),
                              ("upper_m_essential", m, "m"), ("upper_m_rank3", m, "m")):
        b = rep.bounds[key]
        detail = f"log2 {label}={fmt12(_log2(count + b.offset))} <= {fmt12(b.log2_value)}"
        rows.append(CheckRow(key, detail, b.in_range, b.holds(count)))
    return rows


def identity_rows(n: int, r: int, m: int, p: int, m_prev: int, eta_prev: Fraction | None) -> list[CheckRow]:
    rows = [CheckRow("truncation_product", f"{m} <= {m_prev}*{p}", r >= 1, m <= m_prev * p)]
    rhs = p + (m_prev - 1) * (eta_prev if eta_prev is not None else 0)
    rows.append(CheckRow("erection_recurrence", f"{m} = {p} + ({m_prev}-1)*{eta_prev}", r >= 1, rhs == m))
    return rows


def compare_with_census(n: int, r: int, jobs: int = 1) -> list[CheckRow]:
    """Exact census counts against every bound and identity in range at (n, r)."""
    from .census import counts, matroid_levels

    levels = matroid_levels(n, r, jobs=jobs)
    cur = counts(n, r, with_eta=False, matroids=levels[r])
    rows = bound_rows(n, r, cur.m, cur.p, cur.s)
    if r >= 1:
        prev = counts(n, r - 1, with_eta=True, matroids=levels[r - 1])
        rows += identity_rows(n, r, cur.m, cur.p, prev.m, prev.eta)
    if r == 1:
        rows.append(CheckRow("rank1_closed_form", f"(m,p,s)=({cur.m},{cur.p},{cur.s})", True,
                             (cur.m, cur.p, cur.s) == rank1_counts(n)))
    if r == 2:
        rows.append(CheckRow("rank2_closed_form", f"(m,p,s)=({cur.m},{cur.p},{cur.s})", True,
                             (cur.m, cur.p, cur.s) == rank2_counts(n)))
    rows.append(CheckRow("class_nesting", f"d={cur.d} <= s={cur.s} <= p={cur.p} <= m={cur.m}", True,
                         cur.d <= cur.s <= cur.p <= cur.m))
    return rows
