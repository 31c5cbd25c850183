import math
from decimal import Decimal
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from matroidstack.bounds import (
    Bound,
    CheckRow,
    bell,
    compare_with_census,
    e_bracket,
    evaluate_bounds,
    fmt12,
    identity_rows,
    rank2_counts,
    telephone,
)


def test_bell_and_telephone_against_oracles():
    for n in range(12):
        assert bell(n) == oracles.bell_by_stirling(n)
    for n in range(9):
        assert telephone(n) == oracles.involutions(n)
    assert [bell(n) for n in range(7)] == [1, 1, 2, 5, 15, 52, 203]
    assert [telephone(n) for n in range(7)] == [1, 1, 2, 4, 10, 26, 76]
    with pytest.raises(ValueError):
        bell(-1)


def test_rank2_closed_forms_small():
    assert rank2_counts(3)[0] == 7
    assert rank2_counts(4)[0] == 36
    assert rank2_counts(5)[0] == 171


def test_e_bracket():
    lo, hi = e_bracket()
    assert lo < hi and float(lo) <= math.e <= float(hi)
    assert hi - lo < Fraction(1, 10 ** 80)


def test_twenty_three_value():
    rep = evaluate_bounds(20, 3)
    assert fmt12(rep.upper_p) == "355.465936014314"
    expected = 1140 / 18 * math.log2(18 * math.e)
    assert float(rep.upper_p) == pytest.approx(expected, rel=1e-12)
    assert float(rep.upper_s) == pytest.approx(1140 / 18 * math.log2(19), rel=1e-12)


def test_range_flags():
    rep = evaluate_bounds(6, 3)
    assert rep.bounds["upper_p"].in_range and rep.bounds["upper_m_essential"].in_range
    assert not rep.bounds["upper_m"].in_range and not rep.bounds["upper_m_rank3"].in_range
    assert not evaluate_bounds(6, 2).bounds["upper_p"].in_range
    assert evaluate_bounds(15, 3).bounds["upper_m"].in_range is True
    assert evaluate_bounds(15, 3).bounds["upper_m_rank3"].in_range is True
    text = rep.tsv()
    assert "out of stated range" in text and "not asserted" in text
    assert "rank2_m\t" in evaluate_bounds(5, 2).tsv()
    with pytest.raises(ValueError):
        evaluate_bounds(4, 0)


def test_exact_verdicts():
    b = Bound("t", Fraction(1), Fraction(2), False, True, "")
    assert b.holds(2) is True and b.holds(3) is False
    # 2 < e < 3
    b = Bound("t", Fraction(1), Fraction(1), True, True, "")
    assert b.holds(2) is True and b.holds(3) is False
    # 2^(3/2) lies between 2 and 3
    b = Bound("t", Fraction(3, 2), Fraction(2), False, True, "")
    assert b.holds(2) is True and b.holds(3) is False
    assert b.log2_value == Decimal("1.5")


@given(st.integers(1, 10 ** 6), st.integers(1, 30), st.integers(1, 7), st.integers(1, 50))
def test_verdict_agrees_with_floats_away_from_ties(count, p, q, factor):
    b = Bound("t", Fraction(p, q), Fraction(factor), True, True, "")
    lhs = math.log2(count)
    rhs = p / q * math.log2(factor * math.e)
    if abs(lhs - rhs) > 1e-9:
        assert b.holds(count) is (lhs <= rhs)


def test_fmt12():
    assert fmt12(None) == "NA"
    assert fmt12(Decimal("0.0000000000005")) == "0.000000000000"
    assert fmt12(Decimal("0.0000000000015")) == "0.000000000002"
    assert fmt12(Decimal("-0.0000000000001")) == "0.000000000000"


def test_identity_rows():
    rows = identity_rows(6, 3, 2053, 352, 813, Fraction(243, 116))
    assert [r.ok() for r in rows] == [True, True]
    bad = CheckRow("x", "", True, False)
    assert not bad.ok() and bad.tsv().endswith("VIOLATED")
    assert CheckRow("x", "", False, False).ok()


@pytest.mark.parametrize("n,r", [(5, 2), (6, 1), (6, 3)])
def test_compare_with_census(n, r):
    rows = compare_with_census(n, r)
    assert all(row.ok() for row in rows)
    names = {row.name for row in rows}
    assert {"upper_s", "truncation_product", "erection_recurrence", "class_nesting"} <= names
