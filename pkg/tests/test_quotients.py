from fractions import Fraction

import pytest

from gklab.aut import aut_order
from gklab.curve import genus
from gklab.quotients import CSV_COLUMNS, divisors, quotient_genus, quotient_row, quotient_table


def hurwitz_quotient_genus(n, d):
    # 2g - 2 = d (2 g1 - 2) + (d - 1)(n^3 + 1): fixed points are exactly the n^3 + 1 rational points of the cone
    num = 2 * genus(n) - 2 - (d - 1) * (n**3 + 1)
    assert num % d == 0
    g1x2 = num // d + 2
    assert g1x2 % 2 == 0
    return g1x2 // 2


def test_divisors():
    assert divisors(7) == [1, 7]
    assert divisors(13) == [1, 13]
    assert divisors(21) == [1, 3, 7, 21]


@pytest.mark.parametrize("n", range(2, 10))
def test_table_matches_hurwitz(n):
    rows = quotient_table(n)
    assert [r.d for r in rows] == divisors(n * n - n + 1)
    for r in rows:
        assert r.hurwitz_ok
        assert r.g1 == hurwitz_quotient_genus(n, r.d) == quotient_genus(n, r.d)
        assert r.G1_order * r.d == aut_order(n)


@pytest.mark.parametrize("n", range(2, 10))
def test_large_for_d_at_least_7(n):
    for r in quotient_table(n):
        if r.d >= 7:
            assert r.large
            assert r.vacuous or r.G1_order > 24 * r.g1**2


def test_n3_d7_example():
    r = quotient_row(3, 7)
    assert (r.g1, r.G1_order) == (3, 6048)
    assert r.ratio == Fraction(6048, 216) and r.large


def test_trivial_quotient_is_the_curve():
    r = quotient_row(3, 1)
    assert r.g1 == genus(3) and r.G1_order == aut_order(3)
    assert not r.large


def test_full_quotient_genus():
    # d = n^2 - n + 1 gives the Hermitian curve of genus (n^2 - n)/2
    for n in range(2, 10):
        assert quotient_row(n, n * n - n + 1).g1 == (n * n - n) // 2


def test_errors():
    with pytest.raises(ValueError):
        quotient_row(3, 5)
    with pytest.raises(ValueError):
        quotient_table(1)


def test_csv_fields():
    r = quotient_row(3, 7)
    f = r.csv_fields()
    assert tuple(f) == CSV_COLUMNS
    assert (f["ratio_num"], f["ratio_den"]) == (28, 1)
