"""Dense univariate polynomials over F_{n^2} and the identities satisfied by h(X)."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .tower import TowerField


class UniPoly:
    """Polynomial over the subfield F_{n^2} of a tower; ``coeffs[i]`` is the X^i coefficient.

    Trailing zeros are trimmed, so the zero polynomial has no coefficients and
    degree -1.
    """

    __slots__ = ("tower", "coeffs")

    def __init__(self, tower: TowerField, coeffs):
        c = np.asarray(coeffs, dtype=np.int64).ravel()
        if c.size and (c.min() < 0 or c.max() >= tower.n2):
            raise ValueError("coefficients must lie in F_{n^2}")
        nz = np.flatnonzero(c)
        self.tower = tower
        self.coeffs = c[: nz[-1] + 1].copy() if nz.size else np.zeros(0, dtype=np.int64)
        self.coeffs.setflags(write=False)

    @classmethod
    def monomial(cls, tower: TowerField, deg: int, c: int = 1) -> UniPoly:
        coeffs = np.zeros(deg + 1, dtype=np.int64)
        coeffs[deg] = c
        return cls(tower, coeffs)

    @classmethod
    def from_terms(cls, tower: TowerField, terms: dict[int, int]) -> UniPoly:
        """Build from ``{degree: integer}``; integers are read in the prime field."""
        out = cls(tower, [])
        for deg, c in terms.items():
            out = out + cls.monomial(tower, deg, _prime_elem(tower, c))
        return out

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    def is_zero(self) -> bool:
        return self.coeffs.size == 0

    def _padded(self, other: UniPoly):
        if other.tower is not self.tower:
            raise ValueError("polynomials over different towers")
        size = max(self.coeffs.size, other.coeffs.size)
        a = np.zeros(size, dtype=np.int64)
        b = np.zeros(size, dtype=np.int64)
        a[: self.coeffs.size] = self.coeffs
        b[: other.coeffs.size] = other.coeffs
        return a, b

    def __add__(self, other: UniPoly) -> UniPoly:
        a, b = self._padded(other)
        return UniPoly(self.tower, self.tower.small_add[a, b])

    def __neg__(self) -> UniPoly:
        return UniPoly(self.tower, self.tower.small_neg[self.coeffs])

    def __sub__(self, other: UniPoly) -> UniPoly:
        return self + (-other)

    def __mul__(self, other: UniPoly) -> UniPoly:
        if other.tower is not self.tower:
            raise ValueError("polynomials over different towers")
        t = self.tower
        return UniPoly(t, kernels.poly_mul(self.coeffs, other.coeffs, t.small_add, t.small_mul))

    def __pow__(self, e: int) -> UniPoly:
        if e < 0:
            raise ValueError("negative exponent")
        result, base = UniPoly(self.tower, [1]), self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.tower is other.tower and np.array_equal(self.coeffs, other.coeffs)

    __hash__ = None

    def derivative(self) -> UniPoly:
        t = self.tower
        if self.coeffs.size <= 1:
            return UniPoly(t, [])
        k = np.arange(1, self.coeffs.size)
        scal = np.array([_prime_elem(t, int(i)) for i in k], dtype=np.int64)
        return UniPoly(t, t.small_mul[scal, self.coeffs[1:]])

    def evaluate(self, x) -> np.ndarray:
        """Horner evaluation at elements of F_{q^2} (vectorized)."""
        t = self.tower
        x = np.asarray(x, dtype=np.int64)
        acc = np.zeros(x.shape, dtype=np.int64)
        for c in self.coeffs[::-1]:
            acc = t.add_v(t.mul_v(acc, x), int(c))
        return acc

    def __repr__(self):
        terms = [f"{c}*X^{i}" for i, c in enumerate(self.coeffs) if c]
        return "UniPoly(" + (" + ".join(reversed(terms)) or "0") + ")"


def _prime_elem(tower: TowerField, c: int) -> int:
    # F_p sits in F_{n^2} as the constant polynomials, i.e. the integers [0, p)
    return c % tower.p


def X(tower: TowerField, k: int = 1) -> UniPoly:
    return UniPoly.monomial(tower, k)


def build_h(tower: TowerField) -> UniPoly:
    """h(X) = sum_{i=0}^{n} (-1)^{i+1} X^{i(n-1)}."""
    n = tower.n
    return UniPoly.from_terms(tower, {i * (n - 1): (-1) ** (i + 1) for i in range(n + 1)})


@dataclass(frozen=True)
class HIdentities:
    """Outcome of the three identities.

    ``factor``:      X^{n^2} - X = (X^n + X) h
    ``power``:       X^{n^3} + X - (X^n + X)^{n^2-n+1} = (X^n + X) h^{n+1}
    ``difference``:  (X^n - X)^n (X^{n^3} - X + (X^n - X)^{n^2-n+1}) = (X^{n^2} - X)^{n+1}
    """

    factor: bool
    power: bool
    difference: bool

    def all(self) -> bool:
        return self.factor and self.power and self.difference


def identity_sides(tower: TowerField, h: UniPoly | None = None) -> dict[str, tuple[UniPoly, UniPoly]]:
    """Left and right sides of the three identities for h, as exact polynomials."""
    n = tower.n
    h = build_h(tower) if h is None else h
    x = X(tower)
    xn_plus_x = X(tower, n) + x
    xn_minus_x = X(tower, n) - x
    d = n * n - n + 1
    return {
        "factor": (X(tower, n * n) - x, xn_plus_x * h),
        "power": (X(tower, n**3) + x - xn_plus_x**d, xn_plus_x * h ** (n + 1)),
        "difference": (
            xn_minus_x**n * (X(tower, n**3) - x + xn_minus_x**d),
            (X(tower, n * n) - x) ** (n + 1),
        ),
    }


def verify_h_identities(tower: TowerField, h: UniPoly | None = None) -> HIdentities:
    """Check the three polynomial identities; ``h`` may be replaced to test the checker."""
    sides = identity_sides(tower, h)
    return HIdentities(**{k: lhs == rhs for k, (lhs, rhs) in sides.items()})
