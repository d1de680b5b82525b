import io
import time

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gklab.curve import (
    CurvePointSet,
    ProjPoint,
    ResourceLimitError,
    covering_obstruction,
    curve_gradients,
    enumerate_points,
    expected_point_count,
    genus,
    hermitian_surface_mask,
    jacobian_rank2,
    normalize_v,
    printed_point_count,
    read_jsonl,
    smoothness_affine,
    verify_on_hermitian_surface,
    write_jsonl,
)

from conftest import tower_for


def brute_force_affine(t):
    """Affine solutions by scalar loops over the reference arithmetic."""
    n = t.n
    d = n * n - n + 1

    def h(v):
        acc = 0
        for i in range(n + 1):
            term = t.pow(v, i * (n - 1))
            acc = t.add(acc, term if i % 2 else t.neg(term))
        return acc

    out = set()
    for x in range(t.q2):
        lhs = t.add(t.pow(x, n), x)
        for y in range(t.q2):
            if t.pow(y, n + 1) != lhs:
                continue
            w = t.mul(y, h(x))
            out.update((x, y, z, 1) for z in range(t.q2) if t.pow(z, d) == w)
    return out


def test_brute_force_n2(t2, pts2):
    oracle = brute_force_affine(t2)
    assert len(oracle) == 224
    assert {tuple(r) for r in pts2.affine.tolist()} == oracle
    assert [tuple(r) for r in pts2.points.tolist() if r[3] == 0] == [(1, 0, 0, 0)]


@pytest.mark.parametrize("n,count", [(2, 225), (3, 6076), (4, 62465)])
def test_point_counts(n, count):
    t0 = time.perf_counter()
    pts = enumerate_points(tower_for(n), max_field_size=4**6)
    assert len(pts) == count == expected_point_count(n)
    assert time.perf_counter() - t0 < 60


def test_counts_formulas():
    assert [genus(n) for n in (2, 3)] == [10, 99]
    assert printed_point_count(2) == 201 != expected_point_count(2)
    with pytest.raises(ValueError):
        genus(1)


def test_points_distinct_and_normalized(pts3):
    P = pts3.points
    assert len({tuple(r) for r in P.tolist()}) == len(P)
    assert np.array_equal(normalize_v(pts3.tower, P), P)


def test_z_zero_fiber(t2, pts2):
    # y = 0 with x in {0, 1}; h(x) = 0 with y^3 = 1 (6 points); the point at infinity
    zs = pts2.points[pts2.points[:, 2] == 0]
    assert len(zs) == 9
    aff = zs[zs[:, 3] == 1]
    assert sorted(aff[aff[:, 1] == 0][:, 0].tolist()) == [0, 1]
    assert (t2.pow_v(aff[aff[:, 1] != 0][:, 1], 3) == 1).sum() == 6


def test_fibers_have_d_points(pts3):
    # over each (x, y) the z-values come in full fibers of size d or a single z = 0
    d = 3 * 3 - 3 + 1
    _, counts = np.unique(pts3.affine[:, :2], axis=0, return_counts=True)
    assert set(counts.tolist()) <= {1, d}


def test_membership(t2, pts2):
    assert ProjPoint.of(t2, 1, 0, 0, 0) in pts2
    assert ProjPoint.of(t2, 0, 0, 0, 1) in pts2
    assert ProjPoint.of(t2, 0, 1, 0, 1) not in pts2
    some = pts2.points[17]
    lam = t2.gen
    assert ProjPoint.of(t2, *t2.mul_v(some, lam)) in pts2


def test_projpoint_rejects_zero(t2):
    with pytest.raises(ValueError):
        ProjPoint.of(t2, 0, 0, 0, 0)
    with pytest.raises(ValueError):
        ProjPoint.of(t2, 1, 2, 3)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(0, 728), min_size=4, max_size=4).filter(any), st.integers(1, 728))
def test_normalize_scale_invariant(v, lam):
    t = tower_for(3)
    a = normalize_v(t, [v])
    b = normalize_v(t, [t.mul_v(np.array(v), lam)])
    assert np.array_equal(a, b)
    last = a[0][np.flatnonzero(a[0])[-1]]
    assert last == 1


@pytest.mark.parametrize("n", [2, 3, 4])
def test_hermitian_containment(n):
    pts = enumerate_points(tower_for(n), max_field_size=4**6)
    assert verify_on_hermitian_surface(pts)


def test_hermitian_mask_rejects(t2):
    assert not hermitian_surface_mask(t2, [[0, 1, 0, 1]])[0]


@pytest.mark.parametrize("fixture", ["pts2", "pts3"])
def test_smooth(fixture, request):
    pts = request.getfixturevalue(fixture)
    rep = smoothness_affine(pts)
    assert rep.checked == len(pts) - 1
    assert rep.all_rank2


def test_jacobian_rank_examples(t3):
    assert jacobian_rank2(t3, [[1, 0, 0]], [[0, 1, 0]]).tolist() == [True]
    assert jacobian_rank2(t3, [[1, 2, 0]], [[2, 1, 0]]).tolist() == [False]
    assert jacobian_rank2(t3, [[0, 0, 0]], [[0, 1, 5]]).tolist() == [False]


def test_gradient_second_row_constant_x(t2, pts2):
    # in characteristic 2 with n = 2: d/dX (X^2 + X) = 1, d/dY Y^3 = Y^2
    f1, f2 = curve_gradients(t2, pts2.affine)
    assert (f2[:, 0] == 1).all()
    assert np.array_equal(f2[:, 1], t2.pow_v(pts2.affine[:, 1], 2))


@pytest.mark.parametrize(
    "n,expected",
    [(2, (3, 3, False)), (3, (3, 4, True)), (7, (7, 8, True))],
)
def test_covering_examples(n, expected):
    ob = covering_obstruction(n, expected_point_count(n))
    assert (ob.m_max_genus, ob.m_min_count, ob.contradiction) == expected


@pytest.mark.parametrize("n", range(3, 10))
def test_covering_contradiction(n):
    assert covering_obstruction(n, expected_point_count(n)).contradiction


def test_enumeration_cap(t3):
    with pytest.raises(ResourceLimitError):
        enumerate_points(t3, max_field_size=500)


def test_jsonl_roundtrip(pts2):
    buf = io.StringIO()
    write_jsonl(pts2, buf)
    lines = buf.getvalue().splitlines()
    assert len(lines) == 226
    back = read_jsonl(io.StringIO(buf.getvalue()))
    assert isinstance(back, CurvePointSet)
    assert np.array_equal(back.points, pts2.points)


def test_enumeration_deterministic(t3, pts3):
    again = enumerate_points(t3)
    assert np.array_equal(again.points, pts3.points)
    assert pts3.same_set(pts3.points[::-1])
