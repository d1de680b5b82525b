"""Rational points of the curve Z^{n^2-n+1} = Y h(X), X^n + X = Y^{n+1} over F_{q^2}.

Points are kept as an ``(N, 4)`` int64 array of homogeneous coordinates
``(x, y, z, t)`` in the integer encoding of :mod:`gklab.tower`, normalized so
the last nonzero coordinate is 1: affine points read ``(x, y, z, 1)`` and the
point at infinity is ``(1, 0, 0, 0)``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .polyid import build_h
from .tower import FieldElem, TowerField, TowerParams, build_tower

DEFAULT_MAX_ENUM_FIELD = 5**6  # q^2 at n = 5


class ResourceLimitError(RuntimeError):
    pass


def genus(n: int) -> int:
    if n < 2:
        raise ValueError("n must be at least 2")
    return (n**3 + 1) * (n * n - 2) // 2 + 1


def expected_point_count(n: int) -> int:
    """Hasse-Weil upper bound q^2 + 1 + 2 g q with q = n^3."""
    q = n**3
    return q * q + 1 + 2 * genus(n) * q


def printed_point_count(n: int) -> int:
    """The count n^8 - n^6 + n^3 + 1 quoted in the covering argument.

    It disagrees with the bound above (201 against 225 at n = 2); kept only so
    reports can show the discrepancy.
    """
    return n**8 - n**6 + n**3 + 1


# --- projective points -------------------------------------------------------


def normalize_v(tower: TowerField, pts) -> np.ndarray:
    """Scale each row so its last nonzero coordinate is 1."""
    pts = np.asarray(pts, dtype=np.int64).reshape(-1, 4)
    nz = pts != 0
    if not nz.any(axis=1).all():
        raise ValueError("the zero vector is not a projective point")
    lead = pts[np.arange(len(pts)), 3 - nz[:, ::-1].argmax(axis=1)]
    return tower.mul_v(pts, tower.inv_v(lead)[:, None])


@dataclass(frozen=True)
class ProjPoint:
    coords: tuple[FieldElem, FieldElem, FieldElem, FieldElem]

    @classmethod
    def of(cls, tower: TowerField, *coords) -> ProjPoint:
        vals = [c.value if isinstance(c, FieldElem) else int(c) for c in coords]
        if len(vals) != 4:
            raise ValueError("need four homogeneous coordinates")
        row = normalize_v(tower, [vals])[0]
        return cls(tuple(FieldElem(tower, int(v)) for v in row))

    @property
    def tower(self) -> TowerField:
        return self.coords[0].tower

    @property
    def values(self) -> tuple[int, int, int, int]:
        return tuple(c.value for c in self.coords)

    def __repr__(self):
        return f"ProjPoint{self.values}"


def point_codes(tower: TowerField, pts) -> np.ndarray:
    """Injective int64 code of normalized points, for set membership."""
    pts = np.asarray(pts, dtype=np.int64).reshape(-1, 4)
    Q = tower.q2
    return pts[:, 0] + Q * (pts[:, 1] + Q * (pts[:, 2] + Q * pts[:, 3]))


def canonical_order(tower: TowerField, pts) -> np.ndarray:
    """Sort permutation: lexicographic on the flat digit serialization of (x, y, z, t)."""
    digits = tower.digits_v(np.asarray(pts, dtype=np.int64)).reshape(len(pts), -1)
    return np.lexsort(digits.T[::-1])


@dataclass
class CurvePointSet:
    tower: TowerField
    points: np.ndarray

    def __post_init__(self):
        self.points = np.asarray(self.points, dtype=np.int64).reshape(-1, 4)
        self.points.setflags(write=False)
        self._sorted_codes = np.sort(point_codes(self.tower, self.points))

    @property
    def params(self) -> TowerParams:
        return self.tower.params

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[ProjPoint]:
        for row in self.points:
            yield ProjPoint(tuple(FieldElem(self.tower, int(v)) for v in row))

    @property
    def affine(self) -> np.ndarray:
        return self.points[self.points[:, 3] == 1]

    def contains_v(self, pts) -> np.ndarray:
        codes = point_codes(self.tower, pts)
        idx = np.searchsorted(self._sorted_codes, codes)
        idx = np.minimum(idx, len(self._sorted_codes) - 1)
        return self._sorted_codes[idx] == codes

    def __contains__(self, P: ProjPoint) -> bool:
        return bool(self.contains_v([P.values])[0])

    def same_set(self, pts) -> bool:
        pts = np.asarray(pts, dtype=np.int64).reshape(-1, 4)
        return len(pts) == len(self) and np.array_equal(np.sort(point_codes(self.tower, pts)), self._sorted_codes)


# --- enumeration ---------------------------------------------------------------


def _fibers(keys: np.ndarray, values: np.ndarray):
    """For each key, all indices i with values[i] == key.

    Returns (owner, member): ``owner[j]`` indexes ``keys`` and ``member[j]`` the
    matching position in ``values``.
    """
    order = np.argsort(values, kind="stable")
    sv = values[order]
    lo = np.searchsorted(sv, keys, "left")
    cnt = np.searchsorted(sv, keys, "right") - lo
    owner = np.repeat(np.arange(len(keys)), cnt)
    offs = np.arange(cnt.sum()) - np.repeat(np.cumsum(cnt) - cnt, cnt)
    return owner, order[np.repeat(lo, cnt) + offs]


def cone_pairs(tower: TowerField) -> tuple[np.ndarray, np.ndarray]:
    """All (x, y) in F_{q^2}^2 with x^n + x = y^{n+1}."""
    n, allv = tower.n, np.arange(tower.q2, dtype=np.int64)
    trace = tower.add_v(tower.pow_v(allv, n), allv)
    owner, ys = _fibers(trace, tower.pow_v(allv, n + 1))
    return allv[owner], ys


def enumerate_points(tower: TowerField, max_field_size: int = DEFAULT_MAX_ENUM_FIELD) -> CurvePointSet:
    """All F_{q^2}-rational points, affine ones plus the point (1, 0, 0, 0) at infinity."""
    if tower.q2 > max_field_size:
        raise ResourceLimitError(f"q^2 = {tower.q2} exceeds the enumeration cap {max_field_size}")
    n, allv = tower.n, np.arange(tower.q2, dtype=np.int64)
    xs, ys = cone_pairs(tower)
    hx = build_h(tower).evaluate(allv)
    w = tower.mul_v(ys, hx[xs])
    # z^d = w has d solutions or none for w != 0 (d | q^2 - 1) and only z = 0 for w = 0
    owner, zs = _fibers(w, tower.pow_v(allv, n * n - n + 1))
    affine = np.stack([xs[owner], ys[owner], zs, np.ones_like(zs)], axis=1)
    pts = np.vstack([affine, [[1, 0, 0, 0]]])
    return CurvePointSet(tower, pts[canonical_order(tower, pts)])


def verify_on_hermitian_surface(points: CurvePointSet) -> bool:
    return bool(hermitian_surface_mask(points.tower, points.points).all())


def hermitian_surface_mask(tower: TowerField, pts) -> np.ndarray:
    """X^{n^3} T + X T^{n^3} == Y^{n^3+1} + Z^{n^3+1}, row by row."""
    pts = np.asarray(pts, dtype=np.int64).reshape(-1, 4)
    x, y, z, t = pts.T
    q = tower.q
    lhs = tower.add_v(tower.mul_v(tower.pow_v(x, q), t), tower.mul_v(x, tower.pow_v(t, q)))
    rhs = tower.add_v(tower.pow_v(y, q + 1), tower.pow_v(z, q + 1))
    return lhs == rhs


# --- smoothness -----------------------------------------------------------------


@dataclass(frozen=True)
class SmoothnessReport:
    checked: int
    all_rank2: bool


def jacobian_rank2(tower: TowerField, row1, row2) -> np.ndarray:
    """Per point, whether the 2x3 matrix [row1; row2] has rank 2 (some 2x2 minor nonzero)."""
    r1 = np.asarray(row1, dtype=np.int64).reshape(-1, 3)
    r2 = np.asarray(row2, dtype=np.int64).reshape(-1, 3)
    ok = np.zeros(len(r1), dtype=bool)
    for i, j in ((0, 1), (0, 2), (1, 2)):
        minor = tower.sub_v(tower.mul_v(r1[:, i], r2[:, j]), tower.mul_v(r1[:, j], r2[:, i]))
        ok |= minor != 0
    return ok


def _scalar(tower: TowerField, k: int) -> int:
    return k % tower.p


def curve_gradients(tower: TowerField, pts) -> tuple[np.ndarray, np.ndarray]:
    """Gradients of F1 = Z^d - Y h(X) and F2 = X^n + X - Y^{n+1} at affine points."""
    pts = np.asarray(pts, dtype=np.int64).reshape(-1, 4)
    x, y, z = pts[:, 0], pts[:, 1], pts[:, 2]
    n, d = tower.n, tower.n**2 - tower.n + 1
    h = build_h(tower)
    hx, dhx = h.evaluate(x), h.derivative().evaluate(x)
    f1 = np.stack(
        [
            tower.neg_v(tower.mul_v(y, dhx)),
            tower.neg_v(hx),
            tower.mul_v(tower.pow_v(z, d - 1), _scalar(tower, d)),
        ],
        axis=1,
    )
    f2 = np.stack(
        [
            tower.add_v(tower.mul_v(tower.pow_v(x, n - 1), _scalar(tower, n)), 1),
            tower.neg_v(tower.mul_v(tower.pow_v(y, n), _scalar(tower, n + 1))),
            np.zeros_like(x),
        ],
        axis=1,
    )
    return f1, f2


def smoothness_affine(points: CurvePointSet) -> SmoothnessReport:
    aff = points.affine
    f1, f2 = curve_gradients(points.tower, aff)
    return SmoothnessReport(checked=len(aff), all_rank2=bool(jacobian_rank2(points.tower, f1, f2).all()))


# --- covering obstruction ------------------------------------------------------------


@dataclass(frozen=True)
class CoveringObstruction:
    m_max_genus: int
    m_min_count: int
    contradiction: bool


def covering_obstruction(n: int, point_count: int) -> CoveringObstruction:
    """Degree bounds for a hypothetical cover by the Hermitian curve over F_{q^2}.

    The genus comparison caps the degree from above, the point count forces it
    from below; the two are incompatible when the lower bound exceeds the upper.
    """
    m_max = (n**6 - n**3 - 2) // ((n**3 + 1) * (n * n - 2))
    m_min = -(-(n**9 + 1) // point_count)
    return CoveringObstruction(m_max, m_min, m_min > m_max)


# --- JSONL dump -------------------------------------------------------------------


def write_jsonl(points: CurvePointSet, fh) -> None:
    """Header line with the tower fingerprint, then one line per point."""
    t = points.tower
    small = 2 * t.h
    header = {
        "p": t.p,
        "h": t.h,
        "g2": list(t.g2),
        "g3": [t.digits(int(c))[:small] for c in t.g3],
        "count": len(points),
    }
    fh.write(json.dumps(header) + "\n")
    digits = t.digits_v(points.points).tolist()
    for row in digits:
        fh.write(json.dumps(dict(zip("xyzt", row))) + "\n")


def read_jsonl(fh) -> CurvePointSet:
    header = json.loads(fh.readline())
    tower = build_tower(header["p"], header["h"])
    if list(tower.g2) != header["g2"]:
        raise ValueError("dump was written with a different tower")
    rows = [json.loads(line) for line in fh if line.strip()]
    pts = [[tower.from_digits(r[k]) for k in "xyzt"] for r in rows]
    return CurvePointSet(tower, np.array(pts, dtype=np.int64).reshape(-1, 4))
