from darklattice.darkmodes._transform import (
    ModeTransform,
    build_mode_transform,
    frequencies_degenerate,
    require_degenerate_frequencies,
    transformed_hamiltonian_check,
)
from darklattice.darkmodes._fock import (
    DarkModeBasisMatrix,
    dark_mode_fock_states,
    equivalence_check,
    mode_fock_state,
    qr_relation,
    two_mode_basis_coefficients,
)


__all__ = [
    "ModeTransform",
    "build_mode_transform",
    "frequencies_degenerate",
    "require_degenerate_frequencies",
    "transformed_hamiltonian_check",
    "DarkModeBasisMatrix",
    "dark_mode_fock_states",
    "equivalence_check",
    "mode_fock_state",
    "qr_relation",
    "two_mode_basis_coefficients",
]
