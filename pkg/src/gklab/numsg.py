"""Numerical semigroups, telescopic sequences, and the Riemann-Roch spaces L(m P_inf)."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import reduce
from math import gcd

import numpy as np

from . import kernels
from .curve import CurvePointSet, genus


class SemigroupError(ValueError):
    pass


@dataclass(frozen=True)
class NumericalSemigroup:
    generators: tuple[int, ...]
    membership: tuple[bool, ...]  # membership[k] for 0 <= k < len(membership)
    gaps: tuple[int, ...]

    @property
    def genus(self) -> int:
        return len(self.gaps)

    @property
    def conductor(self) -> int:
        return self.gaps[-1] + 1 if self.gaps else 0

    @property
    def frobenius_number(self) -> int:
        return self.gaps[-1] if self.gaps else -1

    def __contains__(self, m: int) -> bool:
        if m < 0:
            return False
        return m >= len(self.membership) or self.membership[m]

    def nongaps(self, upto: int) -> list[int]:
        """Members of the semigroup in [0, upto]."""
        return [k for k in range(upto + 1) if k in self]


def _member_table(gens, limit: int) -> list[bool]:
    table = [False] * (limit + 1)
    table[0] = True
    for k in range(1, limit + 1):
        table[k] = any(k >= a and table[k - a] for a in gens)
    return table


def from_generators(gens) -> NumericalSemigroup:
    """Membership by dynamic programming, grown until max(gens) consecutive members appear."""
    gens = tuple(sorted(int(a) for a in gens))
    if not gens:
        raise SemigroupError("need at least one generator")
    if gens[0] <= 0:
        raise SemigroupError("generators must be positive")
    if reduce(gcd, gens) != 1:
        raise SemigroupError(f"gcd of {gens} is not 1")
    amax = gens[-1]
    table = [True]
    run, k = 1, 0
    while run < amax:
        k += 1
        member = any(k >= a and table[k - a] for a in gens)
        table.append(member)
        run = run + 1 if member else 0
    conductor = k - run + 1
    table = table[: conductor + amax + 1]
    gaps = tuple(i for i in range(conductor) if not table[i])
    return NumericalSemigroup(gens, tuple(table), gaps)


# --- telescopic sequences -------------------------------------------------------------


@dataclass(frozen=True)
class TelescopicData:
    seq: tuple[int, ...]
    d: tuple[int, ...]  # d[i-1] = gcd(a_1, ..., a_i)
    telescopic: bool

    def ratio(self, i: int) -> int:
        """d_{i-1} / d_i for 1-based i >= 2."""
        return self.d[i - 2] // self.d[i - 1]


def _in_span(target: int, gens) -> bool:
    return _member_table(gens, target)[target]


def is_telescopic(seq) -> TelescopicData:
    seq = tuple(int(a) for a in seq)
    if not seq or min(seq) <= 0:
        raise SemigroupError("need a nonempty sequence of positive integers")
    if reduce(gcd, seq) != 1:
        raise SemigroupError(f"gcd of {seq} is not 1")
    d = tuple(reduce(gcd, seq[: i + 1]) for i in range(len(seq)))
    ok = all(
        _in_span(seq[i] // d[i], [a // d[i - 1] for a in seq[:i]])
        for i in range(1, len(seq))
    )
    return TelescopicData(seq, d, ok)


def genus_telescopic(seq) -> int:
    """(1 + sum_i (d_{i-1}/d_i - 1) a_i) / 2 with d_0 = 0."""
    data = is_telescopic(seq)
    if not data.telescopic:
        raise SemigroupError(f"{data.seq} is not telescopic")
    dprev = (0,) + data.d[:-1]
    total = 1 + sum((dp // di - 1) * a for dp, di, a in zip(dprev, data.d, data.seq))
    if total % 2:
        raise SemigroupError("odd numerator; telescopic genus formula violated")
    return total // 2


def decompose(seq, m: int) -> tuple[int, ...]:
    """Unique (j_1..j_k) with m = sum j_i a_i and 0 <= j_i < d_{i-1}/d_i for i >= 2.

    Works from the last generator down: j_i is forced modulo d_{i-1}/d_i by
    the requirement that the remainder be divisible by d_{i-1}.
    """
    data = is_telescopic(seq)
    if not data.telescopic:
        raise SemigroupError(f"{data.seq} is not telescopic")
    a, d = data.seq, data.d
    js = [0] * len(a)
    rest = m
    for i in range(len(a) - 1, 0, -1):
        mod = d[i - 1] // d[i]
        unit = (a[i] // d[i]) % mod
        js[i] = ((rest // d[i]) * pow(unit, -1, mod)) % mod if mod > 1 else 0
        rest -= js[i] * a[i]
        if rest < 0:
            raise SemigroupError(f"{m} is a gap of {a}")
    if rest % a[0]:
        raise SemigroupError(f"{m} is a gap of {a}")
    js[0] = rest // a[0]
    return tuple(js)


def decompose_bruteforce(seq, m: int) -> list[tuple[int, ...]]:
    """All tuples meeting the bounds of :func:`decompose`; the test oracle."""
    data = is_telescopic(seq)
    ranges = [range(m // data.seq[0] + 1)] + [range(data.ratio(i)) for i in range(2, len(data.seq) + 1)]
    return [js for js in itertools.product(*ranges) if sum(j * a for j, a in zip(js, data.seq)) == m]


# --- the semigroup at the point at infinity ------------------------------------------------


def weierstrass_generators(n: int) -> tuple[int, int, int]:
    """Pole orders at infinity of y, z and x."""
    return (n**3 - n * n + n, n**3, n**3 + 1)


def weierstrass_semigroup(n: int) -> NumericalSemigroup:
    if n < 2:
        raise SemigroupError("n must be at least 2")
    return from_generators(weierstrass_generators(n))


def order_sequence(n: int) -> tuple[int, ...]:
    top = n**3 + 1
    sg = weierstrass_semigroup(n)
    return tuple(sorted(top - s for s in sg.nongaps(top)))


def rr_basis(n: int, m: int) -> list[tuple[int, int, int]]:
    """Exponents (j1, j2, j3) of the monomials y^j1 z^j2 x^j3 spanning L(m P_inf), by pole order."""
    if m < 0:
        return []
    a1, a2, a3 = weierstrass_generators(n)
    out = [
        (j1, j2, j3)
        for j3 in range(n)
        for j2 in range(n * n - n + 1)
        for j1 in range((m - j2 * a2 - j3 * a3) // a1 + 1 if m >= j2 * a2 + j3 * a3 else 0)
    ]
    return sorted(out, key=lambda j: j[0] * a1 + j[1] * a2 + j[2] * a3)


def pole_order(n: int, exps) -> int:
    return sum(j * a for j, a in zip(exps, weierstrass_generators(n)))


def evaluation_matrix(points: CurvePointSet, monomials) -> np.ndarray:
    """Values of y^j1 z^j2 x^j3 at the affine points; one column per monomial."""
    t = points.tower
    aff = points.affine
    x, y, z = aff[:, 0], aff[:, 1], aff[:, 2]
    cols = [
        t.mul_v(t.mul_v(t.pow_v(y, j1), t.pow_v(z, j2)), t.pow_v(x, j3))
        for j1, j2, j3 in monomials
    ]
    return np.stack(cols, axis=1) if cols else np.zeros((len(aff), 0), dtype=np.int64)


def rr_independence_check(n: int, m: int, points: CurvePointSet, monomials=None) -> bool:
    """True iff the basis monomials are linearly independent as functions on the affine points.

    A row subset is tried first: full column rank there already certifies full
    rank overall, and the full matrix is only eliminated when it does not.
    """
    if points.tower.n != n:
        raise ValueError("points belong to a different curve")
    monomials = rr_basis(n, m) if monomials is None else list(monomials)
    M = evaluation_matrix(points, monomials)
    k = M.shape[1]
    if k > M.shape[0]:
        raise SemigroupError(f"{k} functions but only {M.shape[0]} evaluation points")
    stride = max(1, M.shape[0] // (4 * k + 8))
    if kernels.rank(M[::stride], points.tower) == k:
        return True
    return kernels.rank(M, points.tower) == k


def genus_three_ways(n: int) -> tuple[int, int, int]:
    """(closed formula, telescopic formula, gap count)."""
    return genus(n), genus_telescopic(weierstrass_generators(n)), weierstrass_semigroup(n).genus
