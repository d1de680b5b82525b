"""Linear collineations of PG(3, q^2) preserving the curve, and the groups they generate.

Every matrix here has third row and column equal to (0, 0, 1, 0), so it is
determined by the 3x3 block acting on (X, Y, T).  Products keep that shape,
and a matrix with Z-entry 1 is the unique representative of its collineation,
so group elements are hashed on their exact block entries.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

import numpy as np

from . import kernels
from .curve import CurvePointSet, ProjPoint, genus, normalize_v
from .tower import FieldElem, TowerField

DEFAULT_MAX_CLOSURE = 100_000

_BLOCK = [0, 1, 3]


class ClosureLimitError(RuntimeError):
    pass


@dataclass(frozen=True, eq=False)
class Collineation:
    tower: TowerField
    m: np.ndarray
    label: str = field(default="", compare=False)

    def __post_init__(self):
        m = np.array(self.m, dtype=np.int64).reshape(4, 4)
        e3 = np.array([0, 0, 1, 0])
        if not (np.array_equal(m[2], e3) and np.array_equal(m[:, 2], e3)):
            raise ValueError("third row and column must be (0, 0, 1, 0)")
        if kernels.rank(self._block_of(m).reshape(3, 3), self.tower) != 3:
            raise ValueError("matrix is singular")
        m.setflags(write=False)
        object.__setattr__(self, "m", m)

    @staticmethod
    def _block_of(m) -> np.ndarray:
        return np.asarray(m)[np.ix_(_BLOCK, _BLOCK)].reshape(9)

    @property
    def block(self) -> np.ndarray:
        """Row-major 3x3 action on (X, Y, T)."""
        return self._block_of(self.m)

    @classmethod
    def from_block(cls, tower: TowerField, block, label: str = "") -> Collineation:
        b = np.asarray(block, dtype=np.int64).reshape(3, 3)
        m = np.zeros((4, 4), dtype=np.int64)
        m[np.ix_(_BLOCK, _BLOCK)] = b
        m[2, 2] = 1
        return cls(tower, m, label)

    @classmethod
    def diagonal(cls, tower: TowerField, diag, label: str = "") -> Collineation:
        return cls(tower, np.diag(np.asarray(diag, dtype=np.int64)), label)

    def __matmul__(self, other: Collineation) -> Collineation:
        prod = kernels.mat3_batch(self.block[None, :], other.block, self.tower)[0]
        return Collineation.from_block(self.tower, prod)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Collineation):
            return NotImplemented
        return self.tower is other.tower and np.array_equal(self.m, other.m)

    def __hash__(self):
        return hash(self.m.tobytes())

    def __repr__(self):
        return f"Collineation({self.label or self.m.tolist()})"


def identity(tower: TowerField) -> Collineation:
    return Collineation.diagonal(tower, [1, 1, 1, 1], "I")


# --- generators ------------------------------------------------------------------


def q_pairs(tower: TowerField) -> list[tuple[int, int]]:
    """(a, b) in F_{n^2}^2 with a^n + a = b^{n+1}."""
    t, n = tower, tower.n
    return [
        (a, b)
        for a in range(t.n2)
        for b in range(t.n2)
        if t.add(t.pow(a, n), a) == t.pow(b, n + 1)
    ]


def su3_generators(tower: TowerField) -> list[Collineation]:
    """Every Q(a, b), every H(k) with k in F_{n^2}^*, and W, lifted to 4x4."""
    t, n = tower, tower.n
    gens = []
    for a, b in q_pairs(t):
        gens.append(Collineation.from_block(t, [1, t.pow(b, n), a, 0, 1, b, 0, 0, 1], f"Q({a},{b})"))
    for k in range(1, t.n2):
        hk = [t.inv(t.pow(k, n)), 0, 0, 0, t.pow(k, n - 1), 0, 0, 0, k]
        gens.append(Collineation.from_block(t, hk, f"H({k})"))
    gens.append(Collineation.from_block(t, [0, 0, 1, 0, t.neg_one, 0, 1, 0, 0], "W"))
    return gens


def cyclic_generators(tower: TowerField) -> list[Collineation]:
    """diag[l, l, 1, l] for every l with l^{n^2-n+1} = 1."""
    d = tower.n**2 - tower.n + 1
    zeta = tower.root_of_unity(d)
    out = []
    for i in range(d):
        lam = tower.pow(zeta, i)
        out.append(Collineation.diagonal(tower, [lam, lam, 1, lam], f"D({lam})"))
    return out


def extra_generator(tower: TowerField) -> Collineation | None:
    """diag[r^-1, r^{n^2-n}, 1, r^-1] with r a primitive (n^3+1)-th root; only when 3 | n+1."""
    n = tower.n
    if gcd(3, n + 1) != 3:
        return None
    rho = tower.root_of_unity(n**3 + 1)
    ri = tower.inv(rho)
    return Collineation.diagonal(tower, [ri, tower.pow(rho, n * n - n), 1, ri], "E")


def all_generators(tower: TowerField) -> list[Collineation]:
    gens = su3_generators(tower) + cyclic_generators(tower)
    e = extra_generator(tower)
    return gens + ([e] if e is not None else [])


# --- action on points -------------------------------------------------------------------


def apply_v(c: Collineation, pts) -> np.ndarray:
    """Images of homogeneous points (rows of ``pts``), normalized."""
    t = c.tower
    pts = np.asarray(pts, dtype=np.int64).reshape(-1, 4)
    out = np.zeros_like(pts)
    for i in range(4):
        acc = np.zeros(len(pts), dtype=np.int64)
        for j in range(4):
            if c.m[i, j]:
                acc = t.add_v(acc, t.mul_v(pts[:, j], int(c.m[i, j])))
        out[:, i] = acc
    return normalize_v(t, out)


def apply(c: Collineation, P: ProjPoint) -> ProjPoint:
    row = apply_v(c, [P.values])[0]
    return ProjPoint(tuple(FieldElem(c.tower, int(v)) for v in row))


def verify_preserves(gens: list[Collineation], points: CurvePointSet) -> bool:
    return all(points.same_set(apply_v(g, points.points)) for g in gens)


def fixed_points(c: Collineation, points: CurvePointSet) -> int:
    return int((apply_v(c, points.points) == points.points).all(axis=1).sum())


# --- closure ------------------------------------------------------------------------------


@dataclass
class GroupClosure:
    tower: TowerField
    elements: np.ndarray  # (order, 9) blocks
    _keys: set = field(repr=False, default_factory=set)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, c: Collineation) -> bool:
        return _keys(c.block[None, :], self.tower)[0] in self._keys

    def collineation(self, i: int) -> Collineation:
        return Collineation.from_block(self.tower, self.elements[i])


def _keys(blocks: np.ndarray, tower: TowerField) -> list[bytes]:
    dt = np.int16 if tower.q2 <= np.iinfo(np.int16).max else np.int32
    b = np.ascontiguousarray(blocks, dtype=dt)
    return b.view(np.dtype((np.void, b.shape[1] * b.itemsize))).ravel().tolist()


def group_closure(gens: list[Collineation], max_elements: int = DEFAULT_MAX_CLOSURE) -> GroupClosure:
    """Enumerate the group generated by ``gens``.

    Dimino's scheme: when a generator s is not yet in the group H built so far,
    the new group is a union of right cosets H r, and new coset
    representatives come from products r * s' over the generators kept so far.
    Redundant generators cost one membership test each.
    """
    if not gens:
        raise ValueError("need at least one generator")
    tower = gens[0].tower
    ident = np.array([1, 0, 0, 0, 1, 0, 0, 0, 1], dtype=np.int64)
    chunks = [ident[None, :]]
    seen = set(_keys(chunks[0], tower))
    kept: list[np.ndarray] = []

    for g in gens:
        s = g.block
        if _keys(s[None, :], tower)[0] in seen:
            continue
        kept.append(s)
        H = np.vstack(chunks)
        reps = [ident]

        def add_coset(r):
            coset = kernels.mat3_batch(H, r, tower)
            seen.update(_keys(coset, tower))
            chunks.append(coset)
            reps.append(r)
            if len(seen) > max_elements:
                raise ClosureLimitError(f"group exceeds {max_elements} elements")

        add_coset(s)
        i = 1
        while i < len(reps):
            for t in kept:
                e = kernels.mat3_batch(reps[i][None, :], t, tower)[0]
                if _keys(e[None, :], tower)[0] not in seen:
                    add_coset(e)
            i += 1

    elements = np.vstack(chunks)
    return GroupClosure(tower, elements, seen)


def intersection_order(a: GroupClosure, b: GroupClosure) -> int:
    return len(a._keys & b._keys)


# --- orders and Hurwitz arithmetic -----------------------------------------------------------


def su3_order(n: int) -> int:
    return (n**3 + 1) * n**3 * (n * n - 1)


def aut_order(n: int) -> int:
    """n^3 (n^3+1)(n^2-1)(n^2-n+1); also the upper bound on the full group."""
    return su3_order(n) * (n * n - n + 1)


def hurwitz_genus_check(n: int) -> bool:
    """2g - 2 = (n^2-n+1)(2 gbar - 2) + (n^3+1)(n^2-n) with gbar = (n^2-n)/2."""
    gbar = (n * n - n) // 2
    return 2 * genus(n) - 2 == (n * n - n + 1) * (2 * gbar - 2) + (n**3 + 1) * (n * n - n)
