from darklattice.darkstates._set import (
    DarkLabel,
    DarkStateSet,
    Provenance,
    apply_phase_convention,
    dark_state_count,
)
from darklattice.darkstates._closed_form import (
    ClosedFormCoefficients,
    ClosedFormVector,
    closed_form_family,
    family_position,
    four_mode_closed_form,
    four_mode_mixing_angle_form,
    n_mode_single_excitation_closed_form,
    orthonormalize,
    pair_difference_states,
    three_mode_closed_form,
    three_mode_mixing_angle_form,
    two_mode_closed_form,
    two_mode_mixing_angle_form,
)
from darklattice.darkstates._solve import (
    dark_energy,
    dark_projector,
    echelon_dark_states,
    solve_dark_states,
)
from darklattice.darkstates._verify import verify_dark


__all__ = [
    "DarkLabel",
    "DarkStateSet",
    "Provenance",
    "apply_phase_convention",
    "dark_state_count",
    "ClosedFormCoefficients",
    "ClosedFormVector",
    "closed_form_family",
    "family_position",
    "four_mode_closed_form",
    "four_mode_mixing_angle_form",
    "n_mode_single_excitation_closed_form",
    "orthonormalize",
    "pair_difference_states",
    "three_mode_closed_form",
    "three_mode_mixing_angle_form",
    "two_mode_closed_form",
    "two_mode_mixing_angle_form",
    "dark_energy",
    "dark_projector",
    "echelon_dark_states",
    "solve_dark_states",
    "verify_dark",
]
