"""Grid squares, k-niceness, spiral windows, transversals, symmetries."""

import pytest

from spiralgram import (
    CornerInvariants,
    HomogeneousPoint,
    NotKNice,
    ProjectiveTransform,
    TwistedPolygon,
    corner_invariants,
    grid_classify,
    is_k_nice,
    reconstruct,
    sample_in_square,
    sample_spiral_polygon,
    spiral_window_check,
    t3_coords_forward,
    t3_coords_inverse,
    t_k_forward,
    t_k_inverse,
    transform_from_correspondence,
    transversal_check,
)
from spiralgram.classification import SPIRAL_FRAMES, interval_of
from conftest import regular_polygon


class TestGridClassify:
    def test_kj(self):
        assert grid_classify(CornerInvariants([2.0, 0.5] * 4)).label() == "KJ"

    def test_ij(self):
        assert grid_classify(CornerInvariants([-1.0, 0.5] * 4)).label() == "IJ"

    def test_boundary_entry(self):
        x = CornerInvariants([1.0, 0.5, 2.0, 0.5, 2.0, 0.5])
        assert grid_classify(x).even == "boundary"

    def test_mixed_parity(self):
        x = CornerInvariants([2.0, 0.5, -3.0, 0.5, 2.0, 0.5])
        assert grid_classify(x).even == "mixed"

    def test_interval_of_values(self):
        assert interval_of(-0.2) == "I"
        assert interval_of(0.4) == "J"
        assert interval_of(7) == "K"
        assert interval_of(0) == "boundary"
        assert interval_of(1.0) == "boundary"


class TestKNice:
    def test_generic_polygon_is_k_nice(self):
        poly = reconstruct(sample_in_square("KJ", 6, 3))
        assert is_k_nice(poly, 3) and is_k_nice(poly, 4)

    def test_deliberate_collinearity_fails(self):
        pts = [
            HomogeneousPoint(0, 0, 1),
            HomogeneousPoint(1, 0, 1),
            HomogeneousPoint(0.5, 1, 1),
            HomogeneousPoint(2, 0, 1),
            HomogeneousPoint(1.5, 2, 1),
        ]
        poly = TwistedPolygon(pts, ProjectiveTransform.identity())
        assert not is_k_nice(poly, 3)

    def test_generic_invariants_imply_3_nice(self, rng):
        # tuples away from {0, 1, inf} reconstruct to 3-nice polygons
        for seed, sq in enumerate(("KJ", "IJ", "JI", "JK", "JJ")):
            poly = reconstruct(sample_in_square(sq, 5, 400 + seed))
            assert is_k_nice(poly, 3)


class TestSpiralWindows:
    """The correspondence between side squares and 3-spiral types.

    As proven by the position/coordinate dictionary and the induction lemmas
    (and pinned by the region probes in the acceptance suite), type-alpha
    windows pair with S_n(J,I) and type-beta windows with S_n(K,J); the
    theorem prose transposes the alpha pair (see the decisions ledger).
    """

    def test_ji_samples_certify_alpha(self):
        for seed in range(5):
            n = 4 + seed
            poly = reconstruct(sample_in_square("JI", n, 500 + seed))
            for start in (-n, 0, n):
                assert spiral_window_check(poly, 3, start).type == "alpha"

    def test_kj_samples_certify_beta(self):
        for seed in range(5):
            n = 4 + seed
            poly = reconstruct(sample_in_square("KJ", n, 600 + seed))
            for start in (-n, 0, n):
                assert spiral_window_check(poly, 3, start).type == "beta"

    def test_ij_samples_do_not_certify_forward_windows(self):
        # regression pinning the transposition: (I,J) classes are reversals
        # of alpha spirals, so forward windows certify neither type
        for seed in range(5):
            poly = reconstruct(sample_in_square("IJ", 5, 700 + seed))
            report = spiral_window_check(poly, 3, 0)
            assert report.type == "none"
            assert report.failures

    def test_ij_reversal_certifies_alpha(self):
        poly = reconstruct(sample_in_square("IJ", 5, 710))
        assert spiral_window_check(poly.reversed(), 3, 0).type == "alpha"

    def test_convex_closed_polygon_is_no_spiral(self):
        assert spiral_window_check(regular_polygon(7), 3, 0).type == "none"

    def test_report_json_shape(self):
        poly = reconstruct(sample_in_square("KJ", 4, 11))
        data = spiral_window_check(poly, 3, 0).to_json()
        assert data["type"] == "beta"
        assert data["k"] == 3 and data["failures"] == []
        assert data["window_start"] == 0 and data["window_length"] == 12

    def test_not_k_nice_raises(self):
        pts = [
            HomogeneousPoint(0, 0, 1),
            HomogeneousPoint(1, 0, 1),
            HomogeneousPoint(0.5, 1, 1),
            HomogeneousPoint(2, 0, 1),
            HomogeneousPoint(1.5, 2, 1),
        ]
        poly = TwistedPolygon(pts, ProjectiveTransform.identity())
        with pytest.raises(NotKNice):
            spiral_window_check(poly, 3, 0)


class TestTransversals:
    def _normalized(self, square, seed, spiral_type):
        poly = reconstruct(sample_in_square(square, 5, seed))
        phi = transform_from_correspondence(
            [poly.vertex_at(j) for j in range(4)], SPIRAL_FRAMES[spiral_type]
        )
        return poly.transformed(phi)

    def test_alpha_flow_is_counterclockwise(self):
        poly = self._normalized("JI", 801, "alpha")
        assert spiral_window_check(poly, 3, 0, renormalize=False).type == "alpha"
        assert transversal_check(poly, 3, 1, 12) == {"alpha": True, "beta": False}

    def test_beta_flow_is_clockwise(self):
        poly = self._normalized("KJ", 802, "beta")
        assert spiral_window_check(poly, 3, 0, renormalize=False).type == "beta"
        assert transversal_check(poly, 3, 1, 12) == {"alpha": False, "beta": True}

    def test_total_on_non_spirals(self):
        out = transversal_check(regular_polygon(8), 3, 0, 8)
        assert set(out) == {"alpha", "beta"}


class TestSymmetries:
    def test_reverse_swaps_squares(self):
        for src, dst in (("IJ", "JI"), ("KJ", "JK"), ("JI", "IJ"), ("JK", "KJ")):
            poly = reconstruct(sample_in_square(src, 5, 900))
            assert grid_classify(corner_invariants(poly.reversed())).label() == dst

    def test_grid_preserved_by_coordinate_maps(self):
        for seed, sq in enumerate(("IJ", "KJ", "JI", "JK")):
            x = sample_in_square(sq, 5, 950 + seed)
            for _ in range(20):
                x = t3_coords_forward(x)
                assert grid_classify(x).label() == sq
            for _ in range(40):
                x = t3_coords_inverse(x)
                assert grid_classify(x).label() == sq


class TestSpiralInvariance:
    @pytest.mark.parametrize("k", [3, 4, 5])
    @pytest.mark.parametrize("spiral_type", ["alpha", "beta"])
    def test_tk_preserves_certified_windows(self, k, spiral_type):
        for seed in range(3):
            n = 4 + seed
            poly = sample_spiral_polygon(k, spiral_type, n, 7000 + 13 * k + seed)
            src = spiral_window_check(poly, k, 0, 3 * n, renormalize=False)
            assert src.type == spiral_type
            fwd = t_k_forward(poly, k)
            assert (
                spiral_window_check(fwd, k, 0, 3 * n, renormalize=False).type
                == spiral_type
            )
            inv = t_k_inverse(poly, k)
            assert (
                spiral_window_check(inv, k, k + 1, 3 * n, renormalize=False).type
                == spiral_type
            )
