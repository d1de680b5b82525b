"""Genus and automorphism counts of the quotients by the central cyclic subgroups C_d."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .aut import aut_order
from .curve import genus


@dataclass(frozen=True)
class QuotientRow:
    n: int
    d: int
    g1: int
    G1_order: int
    ratio: Fraction | None  # |G1| / (24 g1^2), None when g1 = 0
    large: bool
    vacuous: bool  # g1 = 0, so "large" holds only vacuously
    hurwitz_ok: bool

    def csv_fields(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "g1": self.g1,
            "G1_order": self.G1_order,
            "ratio_num": "" if self.ratio is None else self.ratio.numerator,
            "ratio_den": "" if self.ratio is None else self.ratio.denominator,
            "large": self.large,
        }


CSV_COLUMNS = ("n", "d", "g1", "G1_order", "ratio_num", "ratio_den", "large")


def divisors(m: int) -> list[int]:
    return [d for d in range(1, m + 1) if m % d == 0]


def quotient_genus(n: int, d: int) -> int:
    num = (n**3 + 1) * (n * n - d - 1)
    if num % d or (num // d) % 2:
        raise ArithmeticError(f"non-integral quotient genus for n={n}, d={d}")
    return (num // d + 2) // 2


def quotient_row(n: int, d: int) -> QuotientRow:
    if (n * n - n + 1) % d:
        raise ValueError(f"{d} does not divide n^2 - n + 1 = {n * n - n + 1}")
    g1 = quotient_genus(n, d)
    order = aut_order(n) // d
    hurwitz = (n**3 + 1) * (n * n - 2) == d * (2 * g1 - 2) + (d - 1) * (n**3 + 1)
    hurwitz = hurwitz and 2 * genus(n) - 2 == (n**3 + 1) * (n * n - 2)
    if g1 == 0:
        return QuotientRow(n, d, g1, order, None, True, True, hurwitz)
    ratio = Fraction(order, 24 * g1 * g1)
    return QuotientRow(n, d, g1, order, ratio, ratio > 1, False, hurwitz)


def quotient_table(n: int) -> list[QuotientRow]:
    if n < 2:
        raise ValueError("n must be at least 2")
    return [quotient_row(n, d) for d in divisors(n * n - n + 1)]
