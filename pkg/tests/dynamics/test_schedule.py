import math

import numpy as np
import pytest

from darklattice._base._exceptions import InvalidSchedule
from darklattice.dynamics import ScheduleKind, ScheduleParams, make_schedule, smoothstep


def test_smoothstep():
    assert smoothstep(-1.0) == 0.0
    assert smoothstep(0.5) == 0.5
    assert smoothstep(2.0) == 1.0


class TestThetaRamp:
    def test_end_points_and_midpoint(self):
        schedule = make_schedule("theta_ramp", {"duration": 10.0, "G": 2.0})
        np.testing.assert_allclose(schedule.couplings(0.0), [2.0, 0.0])
        np.testing.assert_allclose(schedule.couplings(10.0), [0.0, 2.0], atol=1e-15)
        assert schedule.theta(5.0) == pytest.approx(math.pi / 4)
        np.testing.assert_allclose(schedule.couplings(5.0), [math.sqrt(2), math.sqrt(2)])

    def test_magnitude_is_constant(self):
        schedule = make_schedule(ScheduleKind.THETA_RAMP, ScheduleParams(duration=3.0, G=1.5))
        assert schedule.N == 2
        assert schedule.max_magnitude == pytest.approx(1.5)
        for t in np.linspace(0.0, 3.0, 7):
            assert np.linalg.norm(schedule.couplings(t)) == pytest.approx(1.5)


class TestSin2Overlap:
    def test_counterintuitive_order(self):
        """g1 pulses first, g2 last, and they are equal halfway through"""
        schedule = make_schedule("sin2_overlap", {"duration": 12.0, "G": 1.0})
        g_early, g_late = schedule.couplings(2.0), schedule.couplings(10.0)
        assert g_early[0] > 0.0 and g_early[1] == 0.0
        assert g_late[0] == 0.0 and g_late[1] > 0.0
        np.testing.assert_allclose(schedule.couplings(6.0), [0.5, 0.5])
        assert schedule.theta(6.0) == pytest.approx(math.pi / 4)

    def test_theta_at_the_edges(self):
        schedule = make_schedule("sin2_overlap", {"duration": 12.0})
        assert schedule.theta(0.0) == 0.0
        assert schedule.theta(12.0) == pytest.approx(math.pi / 2)

    def test_pulses_must_overlap(self):
        with pytest.raises(InvalidSchedule, match="sin2_overlap"):
            make_schedule("sin2_overlap", {"duration": 12.0, "pulse_fraction": 0.4})


class TestConstant:
    def test_holds_g0(self):
        schedule = make_schedule("constant", {"duration": 1.0, "g0": (0.3, 0.4, 1.2)})
        assert schedule.N == 3
        np.testing.assert_array_equal(schedule.couplings(0.7), [0.3, 0.4, 1.2])
        assert schedule.max_magnitude == pytest.approx(1.3)

    def test_needs_g0(self):
        with pytest.raises(InvalidSchedule, match="g0 is required"):
            make_schedule("constant", {"duration": 1.0})

    def test_mixing_angle_needs_two_modes(self):
        schedule = make_schedule("constant", {"duration": 1.0, "g0": (1.0, 1.0, 1.0)})
        with pytest.raises(InvalidSchedule, match="two-mode schedule"):
            schedule.theta(0.5)


def test_unknown_kind():
    with pytest.raises(InvalidSchedule, match="kind must be one of"):
        make_schedule("gaussian", {"duration": 1.0})


def test_g0_only_for_constant():
    with pytest.raises(InvalidSchedule, match="only applies to the constant"):
        make_schedule("theta_ramp", {"duration": 1.0, "g0": (1.0, 1.0)})


@pytest.mark.parametrize("duration", [0.0, -1.0, math.inf])
def test_duration_must_be_positive_and_finite(duration):
    with pytest.raises(InvalidSchedule):
        make_schedule("theta_ramp", {"duration": duration})
