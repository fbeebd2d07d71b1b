from fractions import Fraction

import pytest

from conftest import LINE_RAYS, PLANE_RAYS, QUADRIC_RAYS, THREEFOLD_RAYS, fv, level
from toricd2 import (
    FracVector,
    HalfSpace,
    count_points,
    d2_contains,
    d2_splitting_count,
    from_rays,
    fsig_sequence,
    fsig_volume,
    is_diagonally_split,
    is_smooth,
    sig_polytope,
    splitting_points,
)

F = Fraction

ALL_DATA = [LINE_RAYS, PLANE_RAYS, QUADRIC_RAYS, THREEFOLD_RAYS, [(1, 0), (1, 3)]]


class TestSigPolytope:
    def test_plane(self, plane):
        assert set(sig_polytope(plane).faces) == {
            HalfSpace((1, 0), -1, ">"), HalfSpace((1, 0), 0, "<="),
            HalfSpace((0, 1), -1, ">"), HalfSpace((0, 1), 0, "<="),
        }

    def test_quadric(self, quadric):
        assert set(sig_polytope(quadric).faces) == {
            HalfSpace((1, 0), -1, ">"), HalfSpace((1, 0), 0, "<="),
            HalfSpace((-1, 2), -1, ">"), HalfSpace((-1, 2), 0, "<="),
        }

    def test_threefold(self, threefold):
        assert len(sig_polytope(threefold).faces) == 8


class TestSplittingPoints:
    def test_line(self, line):
        assert splitting_points(line, level(3)) == [fv(-2, q=3), fv(-1, q=3), fv(0, q=3)]

    def test_quadric(self, quadric):
        pts = splitting_points(quadric, level(5))
        assert fv(0, 0, q=5) in pts
        # independent count over numerators: -5 < a <= 0, -5 < 2b - a <= 0
        brute = sum(1 for a in range(-4, 1) for b in range(-10, 10) if -5 < 2 * b - a <= 0)
        assert len(pts) == brute


class TestVolume:
    def test_values(self, plane, quadric, threefold):
        assert fsig_volume(plane) == 1
        assert fsig_volume(threefold) == F(2, 3)
        assert fsig_volume(quadric) == F(1, 2)

    def test_cyclic_quotient(self):
        # rays (1,0),(1,3): index-3 cyclic quotient singularity has signature 1/3
        assert fsig_volume(from_rays([(1, 0), (1, 3)])) == F(1, 3)

    @pytest.mark.parametrize("rays", ALL_DATA)
    def test_smooth_iff_unit_volume(self, rays):
        d = from_rays(rays)
        assert is_smooth(d) == (fsig_volume(d) == 1)


class TestD2Count:
    @pytest.mark.parametrize("p", [3, 5])
    def test_quadric(self, quadric, p):
        assert d2_splitting_count(quadric, level(p)) == 1

    def test_threefold_lower_bound(self, threefold):
        assert F(d2_splitting_count(threefold, level(3)), 27) >= F(1, 3)

    def test_threefold_claim_points_counted(self, threefold):
        # splitting points with coordinate sum > -1 are members; count them independently
        pts = splitting_points(threefold, level(3))
        above = [d for d in pts if sum(d.num) > -3]
        assert all(d2_contains(threefold, level(3), d).is_member for d in above)
        assert d2_splitting_count(threefold, level(3)) >= len(above)

    @pytest.mark.parametrize("rays", [PLANE_RAYS, QUADRIC_RAYS, THREEFOLD_RAYS])
    @pytest.mark.parametrize("p", [2, 3])
    def test_bounded_by_split_count(self, rays, p):
        d = from_rays(rays)
        lv = level(p)
        n_split = len(splitting_points(d, lv))
        n_d2 = d2_splitting_count(d, lv)
        assert n_d2 <= n_split
        if is_smooth(d):
            assert n_d2 == n_split

    @pytest.mark.parametrize("rays", [PLANE_RAYS, QUADRIC_RAYS, THREEFOLD_RAYS])
    @pytest.mark.parametrize("p", [2, 3, 5])
    def test_origin_member_iff_split(self, rays, p):
        d = from_rays(rays)
        zero = FracVector.zero(d.dim, p)
        assert zero in splitting_points(d, level(p))
        assert d2_contains(d, level(p), zero).is_member == is_diagonally_split(d, p)


class TestSequence:
    def test_plane(self, plane):
        rows = fsig_sequence(plane, 2, 3)
        assert [r.split_ratio for r in rows] == [1, 1, 1]
        assert [r.d2_ratio for r in rows] == [1, 1, 1]

    def test_quadric(self, quadric):
        rows = fsig_sequence(quadric, 3, 3)
        assert [r.d2_count for r in rows] == [1, 1, 1]
        errs = [abs(r.split_ratio - F(1, 2)) for r in rows]
        assert errs == sorted(errs, reverse=True)

    @pytest.mark.parametrize("rays", [PLANE_RAYS, QUADRIC_RAYS, THREEFOLD_RAYS, [(1, 0), (1, 3)]])
    def test_count_approaches_volume(self, rays):
        d = from_rays(rays)
        vol = fsig_volume(d)
        errs = [abs(F(count_points(sig_polytope(d), 3**e), 3 ** (e * d.dim)) - vol) for e in (1, 2, 3)]
        assert all(b <= a for a, b in zip(errs, errs[1:]))
        assert errs[-1] < F(15, 100)

    def test_cap(self, quadric):
        from toricd2 import CapExceededError
        with pytest.raises(CapExceededError):
            fsig_sequence(quadric, 3, 3, cap=100)
