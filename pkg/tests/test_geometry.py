import pytest

from crossfire.geometry import (
    LinkClass,
    RoadPosition,
    classify_link,
    manhattan,
    tx_from_manhattan,
)


class TestRoadPosition:
    def test_constructors_pin_the_other_axis(self):
        assert RoadPosition.horizontal(-30.0) == RoadPosition(-30.0, 0.0)
        assert RoadPosition.vertical(70.0) == RoadPosition(0.0, 70.0)

    def test_off_road_rejected(self):
        with pytest.raises(ValueError, match="off-road"):
            RoadPosition(3.0, 4.0)

    def test_tiny_off_axis_component_still_rejected(self):
        with pytest.raises(ValueError):
            RoadPosition(10.0, 5e-324)

    def test_intersection_is_on_both_roads(self):
        p = RoadPosition(0.0, 0.0)
        assert p.on_horizontal

    def test_non_finite_rejected(self):
        with pytest.raises(ValueError):
            RoadPosition(float("nan"), 0.0)


class TestManhattan:
    def test_cross_road(self):
        assert manhattan(RoadPosition.horizontal(-50), RoadPosition.vertical(70)) == 120.0

    def test_identity(self):
        p = RoadPosition.horizontal(-12.5)
        assert manhattan(p, p) == 0.0

    def test_same_road(self):
        assert manhattan(RoadPosition.horizontal(-50), RoadPosition.horizontal(-30)) == 20.0

    def test_symmetric(self):
        a, b = RoadPosition.horizontal(-50), RoadPosition.vertical(33.0)
        assert manhattan(a, b) == manhattan(b, a)


class TestTxFromManhattan:
    @pytest.mark.parametrize(
        "d,expected",
        [
            (20.0, RoadPosition.horizontal(-30.0)),
            (40.0, RoadPosition.horizontal(-10.0)),
            (60.0, RoadPosition.vertical(10.0)),
            (80.0, RoadPosition.vertical(30.0)),
            (100.0, RoadPosition.vertical(50.0)),
            (120.0, RoadPosition.vertical(70.0)),
        ],
    )
    def test_reference_positions(self, d, expected, rx50):
        assert tx_from_manhattan(d, rx50) == expected

    def test_round_trip(self, rx50):
        for i in range(1, 241):
            d = i * 0.5
            assert manhattan(tx_from_manhattan(d, rx50), rx50) == pytest.approx(d, abs=1e-12)

    def test_rejects_nonpositive_distance(self, rx50):
        with pytest.raises(ValueError, match="positive"):
            tx_from_manhattan(0.0, rx50)

    def test_rejects_distance_beyond_max(self, rx50):
        with pytest.raises(ValueError, match="maximum"):
            tx_from_manhattan(130.0, rx50, d_max=120.0)

    def test_rejects_receiver_off_horizontal(self):
        with pytest.raises(ValueError, match="horizontal"):
            tx_from_manhattan(10.0, RoadPosition.vertical(-50.0))
        with pytest.raises(ValueError):
            tx_from_manhattan(10.0, RoadPosition.horizontal(50.0))


class TestClassifyLink:
    def test_wlos_just_past_intersection(self, rx50):
        assert classify_link(RoadPosition.vertical(10.0), rx50, 15.0) is LinkClass.WLOS

    def test_nlos_far_up_the_vertical_road(self, rx50):
        assert classify_link(RoadPosition.vertical(70.0), rx50, 15.0) is LinkClass.NLOS

    def test_los_same_road(self, rx50):
        assert classify_link(RoadPosition.horizontal(-30.0), rx50, 15.0) is LinkClass.LOS

    def test_boundary_is_wlos(self, rx50):
        assert classify_link(RoadPosition.vertical(15.0), rx50, 15.0) is LinkClass.WLOS

    def test_coincident_rejected(self, rx50):
        with pytest.raises(ValueError, match="coincide"):
            classify_link(rx50, rx50, 15.0)

    def test_class_bands_along_the_manhattan_walk(self, rx50):
        # LOS up to 50 m, WLOS on (50, 65], NLOS beyond, for the default
        # receiver and a 15 m break point
        for i in range(1, 1201):
            d = i * 0.1
            link = classify_link(tx_from_manhattan(d, rx50), rx50, 15.0)
            if d <= 50.0:
                assert link is LinkClass.LOS, d
            elif d <= 65.0:
                assert link is LinkClass.WLOS, d
            else:
                assert link is LinkClass.NLOS, d

    def test_classes_are_exhaustive(self, rx50):
        seen = {
            classify_link(tx_from_manhattan(d, rx50), rx50, 15.0)
            for d in (10.0, 55.0, 100.0)
        }
        assert seen == {LinkClass.LOS, LinkClass.WLOS, LinkClass.NLOS}
