import math

import numpy as np
import pytest

from darklattice import ModelParams
from darklattice._base._exceptions import (
    DimensionMismatch,
    NonDegenerateFrequencies,
    NonFiniteInput,
    ZeroCoupling,
)
from darklattice.darkmodes import (
    build_mode_transform,
    require_degenerate_frequencies,
    transformed_hamiltonian_check,
)


@pytest.mark.parametrize("N", range(1, 8))
def test_transform_is_orthogonal(N, draw_couplings):
    T = build_mode_transform(draw_couplings(N))
    assert T.orthogonality_error() < 1e-12
    assert T.dark.shape == (N - 1, N)


def test_rows_for_three_modes():
    """Bright row g / |g|, then (g2, -g1) / N2 and (g3 g1, g3 g2, -N2^2) / (N2 N3)"""
    T = build_mode_transform([1.0, 2.0, 2.0])
    np.testing.assert_allclose(T.bright, [1 / 3, 2 / 3, 2 / 3])
    np.testing.assert_allclose(T.T[1], np.array([2.0, -1.0, 0.0]) / math.sqrt(5))
    np.testing.assert_allclose(T.T[2], np.array([2.0, 4.0, -5.0]) / (3 * math.sqrt(5)))


def test_dark_rows_are_orthogonal_to_the_couplings(draw_couplings):
    g = draw_couplings(5)
    T = build_mode_transform(g)
    np.testing.assert_allclose(T.dark @ g, 0.0, atol=1e-14)


def test_zero_and_non_finite_couplings():
    with pytest.raises(ZeroCoupling, match="g2"):
        build_mode_transform([1.0, 0.0, 1.0])
    with pytest.raises(NonFiniteInput):
        build_mode_transform([1.0, math.nan])


class TestModeCoupling:
    def test_degenerate_modes_decouple(self, draw_couplings):
        g = draw_couplings(4)
        params = ModelParams.resonant(g, delta=0.2)
        report = transformed_hamiltonian_check(params, build_mode_transform(g))
        assert report.passed, report.failed()
        assert report.bright_coupling == pytest.approx(np.linalg.norm(g), rel=1e-12)
        assert report.degenerate
        assert max(report.dark_couplings) < 1e-12

    def test_unequal_frequencies_mix_the_modes(self):
        g = [0.8, 1.1, 1.4]
        params = ModelParams(omega0=1.0, omegas=[1.0, 1.1, 0.95], g=g)
        report = transformed_hamiltonian_check(params, build_mode_transform(g))
        assert not report.degenerate
        assert report.failed() == ["dark_decoupling"]
        assert max(report.dark_couplings) > 1e-3

    def test_mode_count_mismatch(self):
        params = ModelParams.resonant([1.0, 1.0, 1.0])
        with pytest.raises(DimensionMismatch, match="mode count"):
            transformed_hamiltonian_check(params, build_mode_transform([1.0, 1.0]))


def test_require_degenerate_frequencies():
    params = ModelParams(omega0=1.0, omegas=[1.0, 1.2], g=[1.0, 1.0])
    with pytest.raises(NonDegenerateFrequencies, match="not degenerate"):
        require_degenerate_frequencies(params)
    require_degenerate_frequencies(params, override=True)
    require_degenerate_frequencies(ModelParams.resonant([1.0, 1.0], delta=0.5))
