"""Exact arithmetic in the tower F_p < F_{n^2} < F_{q^2}, with n = p^h and q = n^3.

Elements of F_{q^2} are plain integers.  The integer ``v`` stands for the
element whose flat little-endian base-p digit vector (length 6h) is the
base-p expansion of ``v``; the first 2h digits are the constant coefficient
over F_{n^2}, and so on.  Equivalently ``v = c0 + c1*n^2 + c2*n^4`` where the
``ci`` are the F_{n^2} coefficients of the element in F_{n^2}[T]/(g3).  In
particular the subfield F_{n^2} is exactly the range ``[0, n^2)``.

Scalar operations on :class:`TowerField` go through polynomial arithmetic
(the reference route).  The ``*_v`` methods work on numpy arrays through
log/exp and addition tables that are built from the reference route.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

DEFAULT_MAX_FIELD_SIZE = 9**6


class FieldError(ValueError):
    pass


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def prime_factors(m: int) -> list[int]:
    out = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        out.append(m)
    return out


def prime_power(n: int) -> tuple[int, int] | None:
    """Return ``(p, h)`` with ``n == p**h``, or None if n is not a prime power."""
    if n < 2:
        return None
    p = prime_factors(n)
    if len(p) != 1:
        return None
    h = 0
    while n > 1:
        n //= p[0]
        h += 1
    return p[0], h


@dataclass(frozen=True)
class TowerParams:
    p: int
    h: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise FieldError(f"p = {self.p} is not prime")
        if self.h < 1:
            raise FieldError("h must be a positive integer")

    @property
    def n(self) -> int:
        return self.p**self.h

    @property
    def q(self) -> int:
        return self.n**3

    @property
    def n2(self) -> int:
        return self.n**2

    @property
    def q2(self) -> int:
        return self.n**6


# --- polynomials over F_p, little-endian digit lists -------------------------


def _fp_polymod(a: list[int], g: list[int], p: int) -> list[int]:
    """Reduce ``a`` modulo the monic ``g`` (both little-endian over F_p)."""
    a = list(a)
    dg = len(g) - 1
    for i in range(len(a) - 1, dg - 1, -1):
        c = a[i] % p
        if c:
            for j in range(dg + 1):
                a[i - dg + j] = (a[i - dg + j] - c * g[j]) % p
    return [c % p for c in a[:dg]] + [0] * max(0, dg - len(a))


def _fp_divides(f: list[int], g: list[int], p: int) -> bool:
    return not any(_fp_polymod(g, f, p))


def _fp_irreducible(g: list[int], p: int) -> bool:
    """Exhaustive factor search: no monic factor of degree 1..deg/2."""
    deg = len(g) - 1
    for d in range(1, deg // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if _fp_divides(list(low) + [1], g, p):
                return False
    return True


def _least_irreducible_fp(p: int, deg: int) -> tuple[int, ...]:
    # product() yields tuples (c0, ..., c_{deg-1}) in lexicographic order
    for low in itertools.product(range(p), repeat=deg):
        g = list(low) + [1]
        if g[0] != 0 and _fp_irreducible(g, p):
            return tuple(g)
    raise FieldError("no irreducible polynomial found")  # unreachable


def _digits(v: int, p: int, length: int) -> list[int]:
    out = []
    for _ in range(length):
        v, r = divmod(v, p)
        out.append(r)
    return out


def _undigits(ds, p: int) -> int:
    v = 0
    for d in reversed(list(ds)):
        v = v * p + int(d)
    return v


def small_field_tables(p: int, h: int, g2) -> tuple[np.ndarray, ...]:
    """Addition, multiplication, negation and inversion tables of F_p[X]/(g2)."""
    n2, k = p ** (2 * h), 2 * h
    digs = [_digits(v, p, k) for v in range(n2)]
    add = np.empty((n2, n2), dtype=np.int64)
    mul = np.empty((n2, n2), dtype=np.int64)
    g = list(g2)
    for a in range(n2):
        da = digs[a]
        for b in range(n2):
            db = digs[b]
            add[a, b] = _undigits([(x + y) % p for x, y in zip(da, db)], p)
            prod = [0] * (2 * k - 1)
            for i, x in enumerate(da):
                if x:
                    for j, y in enumerate(db):
                        prod[i + j] += x * y
            mul[a, b] = _undigits(_fp_polymod(prod, g, p), p)
    neg = np.argmin(add, axis=1).astype(np.int64)
    inv = np.zeros(n2, dtype=np.int64)
    inv[1:] = np.argmax(mul[1:] == 1, axis=1)
    for t in (add, mul, neg, inv):
        t.setflags(write=False)
    return add, mul, neg, inv


class TowerField:
    """The tower F_p < F_{n^2} < F_{q^2} for fixed (p, h).

    Build instances with :func:`build_tower`.
    """

    def __init__(self, params: TowerParams, g2: tuple[int, ...], g3: tuple[int, ...]):
        self.params = params
        self.p = params.p
        self.h = params.h
        self.n = params.n
        self.q = params.q
        self.n2 = params.n2
        self.q2 = params.q2
        self.g2 = g2
        self.g3 = g3
        self._small_tables()
        self.gen = self._find_generator()

    # -- F_{n^2} ------------------------------------------------------------

    def _small_tables(self):
        add, mul, neg, inv = small_field_tables(self.p, self.h, self.g2)
        self.small_add, self.small_mul, self.small_neg, self.small_inv = add, mul, neg, inv
        # list copies for the scalar path; numpy scalar indexing is slow
        self._A, self._M, self._N = add.tolist(), mul.tolist(), neg.tolist()

    # -- reference arithmetic on F_{q^2} ------------------------------------

    def components(self, v: int) -> tuple[int, int, int]:
        n2 = self.n2
        return v % n2, (v // n2) % n2, v // (n2 * n2)

    def from_components(self, c) -> int:
        n2 = self.n2
        return int(c[0]) + int(c[1]) * n2 + int(c[2]) * n2 * n2

    def add(self, a: int, b: int) -> int:
        A, ca, cb = self._A, self.components(a), self.components(b)
        return self.from_components([A[x][y] for x, y in zip(ca, cb)])

    def neg(self, a: int) -> int:
        return self.from_components([self._N[x] for x in self.components(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        A, M, N = self._A, self._M, self._N
        ca, cb = self.components(a), self.components(b)
        prod = [0] * 5
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    if y:
                        prod[i + j] = A[prod[i + j]][M[x][y]]
        # reduce by the monic cubic g3 = T^3 + g[2] T^2 + g[1] T + g[0]
        g = self.g3
        for i in (4, 3):
            c = prod[i]
            if c:
                for j in range(3):
                    prod[i - 3 + j] = A[prod[i - 3 + j]][N[M[c][g[j]]]]
                prod[i] = 0
        return self.from_components(prod[:3])

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        result, base = 1, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self.pow(a, self.q2 - 2)

    def in_subfield(self, a: int, k: int) -> bool:
        if k not in (1, 2):
            raise FieldError("subfield index must be 1 or 2")
        return self.pow(a, self.n**k) == a

    def order(self, a: int) -> int:
        if a == 0:
            raise FieldError("zero has no multiplicative order")
        m = self.q2 - 1
        for r in prime_factors(self.q2 - 1):
            while m % r == 0 and self.pow(a, m // r) == 1:
                m //= r
        return m

    def _find_generator(self) -> int:
        m = self.q2 - 1
        rs = prime_factors(m)
        for c in itertools.product(range(self.n2), repeat=3):
            v = self.from_components(c)
            if v and all(self.pow(v, m // r) != 1 for r in rs):
                return v
        raise FieldError("no generator found")  # unreachable

    def root_of_unity(self, m: int) -> int:
        if m < 1 or (self.q2 - 1) % m:
            raise FieldError(f"{m} does not divide q^2 - 1 = {self.q2 - 1}")
        return self.pow(self.gen, (self.q2 - 1) // m)

    def element(self, v: int) -> FieldElem:
        return FieldElem(self, int(v))

    def digits(self, v: int) -> list[int]:
        return _digits(int(v), self.p, 6 * self.h)

    def from_digits(self, ds) -> int:
        ds = list(ds)
        if len(ds) != 6 * self.h or any(not 0 <= d < self.p for d in ds):
            raise FieldError("bad digit vector")
        return _undigits(ds, self.p)

    def fingerprint(self) -> dict:
        return {"p": self.p, "h": self.h, "g2": list(self.g2), "g3": [int(c) for c in self.g3], "gen": self.gen}

    def __repr__(self):
        return f"TowerField(p={self.p}, h={self.h}, g2={self.g2}, g3={self.g3}, gen={self.gen})"

    # -- vectorized arithmetic ------------------------------------------------

    @cached_property
    def exp_table(self) -> np.ndarray:
        """gen^i for i in [0, 2(q^2-1)); doubled so log sums need no reduction."""
        m = self.q2 - 1
        out = np.empty(2 * m, dtype=np.int64)
        v = 1
        for i in range(m):
            out[i] = v
            v = self.mul(v, self.gen)
        out[m:] = out[:m]
        out.setflags(write=False)
        return out

    @cached_property
    def log_table(self) -> np.ndarray:
        """Discrete log base gen; entry 0 holds the sentinel -1."""
        out = np.full(self.q2, -1, dtype=np.int64)
        out[self.exp_table[: self.q2 - 1]] = np.arange(self.q2 - 1)
        out.setflags(write=False)
        return out

    @cached_property
    def zech_table(self) -> np.ndarray:
        """log(1 + gen^k) for k in [0, q^2-1); -1 where 1 + gen^k = 0."""
        m = self.q2 - 1
        s = self.add_v(1, self.exp_table[:m])
        out = np.where(s == 0, -1, self.log_table[s])
        out.setflags(write=False)
        return out

    @cached_property
    def neg_one(self) -> int:
        return self.neg(1)

    def _split(self, a):
        n2 = self.n2
        return a % n2, (a // n2) % n2, a // (n2 * n2)

    def add_v(self, a, b):
        a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        A, n2 = self.small_add, self.n2
        a0, a1, a2 = self._split(a)
        b0, b1, b2 = self._split(b)
        return A[a0, b0] + n2 * (A[a1, b1] + n2 * A[a2, b2])

    def neg_v(self, a):
        a = np.asarray(a, dtype=np.int64)
        N, n2 = self.small_neg, self.n2
        a0, a1, a2 = self._split(a)
        return N[a0] + n2 * (N[a1] + n2 * N[a2])

    def sub_v(self, a, b):
        return self.add_v(a, self.neg_v(b))

    def mul_v(self, a, b):
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        lg, ex = self.log_table, self.exp_table
        nz = (a != 0) & (b != 0)
        out = np.zeros(a.shape, dtype=np.int64)
        out[nz] = ex[lg[a[nz]] + lg[b[nz]]]
        return out

    def pow_v(self, a, e: int):
        a = np.asarray(a, dtype=np.int64)
        m = self.q2 - 1
        out = np.zeros(a.shape, dtype=np.int64)
        nz = a != 0
        out[nz] = self.exp_table[(self.log_table[a[nz]] * (e % m)) % m]
        if e == 0:
            out[...] = 1
        return out

    def inv_v(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero")
        m = self.q2 - 1
        return self.exp_table[(m - self.log_table[a]) % m]

    def digits_v(self, a) -> np.ndarray:
        """Flat little-endian base-p digits, shape ``a.shape + (6h,)``."""
        a = np.asarray(a, dtype=np.int64)
        pw = self.p ** np.arange(6 * self.h, dtype=np.int64)
        return (a[..., None] // pw) % self.p


@lru_cache(maxsize=None)
def build_tower(p: int, h: int, max_field_size: int = DEFAULT_MAX_FIELD_SIZE) -> TowerField:
    """Construct the tower for ``n = p**h``; deterministic in ``(p, h)``.

    F_{n^2} is defined by the lexicographically least monic irreducible
    polynomial of degree 2h over F_p, F_{q^2} by the least monic irreducible
    cubic over F_{n^2}.  Coefficient tuples are compared constant term first.
    """
    params = TowerParams(p, h)
    if params.q2 > max_field_size:
        raise FieldError(f"F_q^2 has {params.q2} elements, above the limit {max_field_size}")
    g2 = _least_irreducible_fp(p, 2 * h)
    add, mul, _, _ = small_field_tables(p, h, g2)
    g3 = _least_irreducible_cubic(add, mul, params.n2)
    return TowerField(params, g2, g3)


def _least_irreducible_cubic(add, mul, n2: int) -> tuple[int, ...]:
    # a cubic is irreducible iff it has no root in the ground field
    for c0, c1, c2 in itertools.product(range(n2), repeat=3):
        if c0 == 0:
            continue
        for x in range(n2):
            x2 = mul[x, x]
            val = add[add[add[c0, mul[c1, x]], mul[c2, x2]], mul[x2, x]]
            if val == 0:
                break
        else:
            return (c0, c1, c2, 1)
    raise FieldError("no irreducible cubic found")  # unreachable


@dataclass(frozen=True, eq=False)
class FieldElem:
    """An element of F_{q^2} bound to its tower; arithmetic uses the reference route."""

    tower: TowerField
    value: int

    def __post_init__(self):
        if not 0 <= self.value < self.tower.q2:
            raise FieldError(f"value {self.value} out of range")

    @property
    def tower_id(self) -> int:
        return id(self.tower)

    @property
    def coeffs(self) -> list[list[int]]:
        """Three F_{n^2} coefficients, each a little-endian F_p digit list."""
        k = 2 * self.tower.h
        return [_digits(c, self.tower.p, k) for c in self.tower.components(self.value)]

    def digits(self) -> list[int]:
        return self.tower.digits(self.value)

    def _other(self, o) -> int:
        if isinstance(o, FieldElem):
            if o.tower is not self.tower:
                raise FieldError("elements from different towers")
            return o.value
        if isinstance(o, int):
            # integers embed through the prime field
            return self.tower.from_components([o % self.tower.p, 0, 0])
        return NotImplemented

    def __add__(self, o):
        return FieldElem(self.tower, self.tower.add(self.value, self._other(o)))

    __radd__ = __add__

    def __sub__(self, o):
        return FieldElem(self.tower, self.tower.sub(self.value, self._other(o)))

    def __rsub__(self, o):
        return FieldElem(self.tower, self.tower.sub(self._other(o), self.value))

    def __neg__(self):
        return FieldElem(self.tower, self.tower.neg(self.value))

    def __mul__(self, o):
        return FieldElem(self.tower, self.tower.mul(self.value, self._other(o)))

    __rmul__ = __mul__

    def __truediv__(self, o):
        return self * FieldElem(self.tower, self.tower.inv(self._other(o)))

    def __pow__(self, e: int):
        return FieldElem(self.tower, self.tower.pow(self.value, e))

    def inv(self) -> FieldElem:
        return FieldElem(self.tower, self.tower.inv(self.value))

    def in_subfield(self, k: int) -> bool:
        return self.tower.in_subfield(self.value, k)

    def is_zero(self) -> bool:
        return self.value == 0

    def __eq__(self, o):
        if isinstance(o, FieldElem):
            return self.tower is o.tower and self.value == o.value
        if isinstance(o, int):
            return self.value == self._other(o)
        return NotImplemented

    def __hash__(self):
        return hash((id(self.tower), self.value))

    def __repr__(self):
        return f"FieldElem({self.value})"


def inv(x: FieldElem) -> FieldElem:
    return x.inv()


def pow(x: FieldElem, e: int) -> FieldElem:  # noqa: A001 - mirrors the field operation name
    if e < 0:
        raise FieldError("exponent must be non-negative")
    return x**e


def in_subfield(x: FieldElem, k: int) -> bool:
    return x.in_subfield(k)


def root_of_unity(tower: TowerField, m: int) -> FieldElem:
    return FieldElem(tower, tower.root_of_unity(m))
