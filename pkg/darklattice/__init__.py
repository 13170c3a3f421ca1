"""
darklattice: Fock-state lattices and dark states of multimode Jaynes-Cummings models.

A two-level atom coupled to N field modes conserves the excitation number n, so the
Hamiltonian splits into finite subspaces. Inside each one, darklattice provides:
  - Basis enumeration: upper (excited atom) and lower (ground atom) sectors in canonical order
  - Block assembly: diagonal blocks U and L plus the coupling matrix C
  - Dark states: null vectors of C by SVD, by row-echelon back substitution, and in
    closed product form for up to four modes
  - Dark modes: the bright/dark mode rotation and its Fock states
  - Dynamics: RK4 propagation and two-mode adiabatic photon transfer
  - Export: deterministic JSON, CSV and Graphviz output, plus a ``darklattice`` command

Quick Start:
    ```python
    from darklattice import SubspaceBasis, SubspaceSpec, ModelParams
    from darklattice import assemble_blocks, solve_dark_states, verify_dark

    basis = SubspaceBasis.build(SubspaceSpec(N=3, n=2))
    bh = assemble_blocks(basis, ModelParams.resonant([1.0, 0.5, 2.0]))
    dark = solve_dark_states(bh)
    print(dark.size)                    # 3 dark states
    print(verify_dark(bh, dark).passed)  # True
    ```
"""

from darklattice._base._basis import (
    Atom,
    FockState,
    Sector,
    SubspaceBasis,
    SubspaceSpec,
    canonical_occupations,
)
from darklattice._base._hamiltonian import (
    BlockHamiltonian,
    Frame,
    ModelParams,
    assemble_blocks,
    full_matrix,
    verify_block_template,
)
from darklattice._base._linalg import TolerancePolicy, VectorSet
from darklattice.darkstates import (
    DarkStateSet,
    closed_form_family,
    dark_state_count,
    solve_dark_states,
    verify_dark,
)
from darklattice.darkmodes import build_mode_transform, dark_mode_fock_states
from darklattice.dynamics import make_schedule, propagate, run_stirap
from darklattice.export import build_lattice_graph, to_dot, to_json

__all__ = [
    "Atom",
    "FockState",
    "Sector",
    "SubspaceBasis",
    "SubspaceSpec",
    "canonical_occupations",
    "BlockHamiltonian",
    "Frame",
    "ModelParams",
    "assemble_blocks",
    "full_matrix",
    "verify_block_template",
    "TolerancePolicy",
    "VectorSet",
    "DarkStateSet",
    "closed_form_family",
    "dark_state_count",
    "solve_dark_states",
    "verify_dark",
    "build_mode_transform",
    "dark_mode_fock_states",
    "make_schedule",
    "propagate",
    "run_stirap",
    "build_lattice_graph",
    "to_dot",
    "to_json",
]
