import numpy as np
import pytest

from darklattice import ModelParams, SubspaceBasis, SubspaceSpec, assemble_blocks
from darklattice._base._exceptions import DimensionMismatch, VerificationFailed
from darklattice._base._linalg import VectorSet
from darklattice.darkstates import (
    DarkStateSet,
    closed_form_family,
    solve_dark_states,
    verify_dark,
)


def test_numeric_dark_states_pass(g3, blocks):
    bh = blocks(3, 3, g3, delta=0.25)
    report = verify_dark(bh, solve_dark_states(bh))
    assert report.passed, report.failed()
    assert report.expected_energy == pytest.approx(-0.75)
    assert report.check("annihilation").value < 1e-10
    assert report.check("leakage").value == 0.0


def test_raw_closed_forms_pass_without_gram_check(g4, blocks):
    """Raw families are not orthogonal; the Gram deviation is reported but not enforced"""
    bh = blocks(4, 2, g4)
    report = verify_dark(bh, closed_form_family(4, 2, g4))
    assert report.passed
    gram = report.check("gram")
    assert gram.threshold is None
    assert gram.value > 0.0


def test_bright_vector_fails(blocks):
    bh = blocks(2, 2, [1.0, 1.0])
    bright = np.array([1.0, 0.0, 0.0])
    ds = DarkStateSet(bh.spec, VectorSet(bright[:, None]))
    report = verify_dark(bh, ds)
    assert not report.passed
    assert "annihilation" in report.failed()
    with pytest.raises(VerificationFailed, match="annihilation"):
        report.raise_for_failures()


def test_nondegenerate_detunings_fail_the_eigen_check():
    params = ModelParams(omega0=1.0, omegas=[1.0, 1.3], g=[0.8, 1.1])
    bh = assemble_blocks(SubspaceBasis.build(SubspaceSpec(N=2, n=2)), params)
    ds = solve_dark_states(bh, allow_nondegenerate=True)
    report = verify_dark(bh, ds)
    assert report.failed() == ["eigen"]
    assert report.expected_energy is None
    assert "not degenerate" in report.check("eigen").detail


def test_subspace_mismatch(g3, blocks):
    with pytest.raises(DimensionMismatch, match="verify_dark"):
        verify_dark(blocks(3, 2, g3), solve_dark_states(blocks(3, 3, g3)))
