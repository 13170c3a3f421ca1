from darklattice.export._graph import (
    LatticeEdge,
    LatticeGraph,
    LatticeNode,
    build_lattice_graph,
    to_dot,
)
from darklattice.export._serialize import (
    SCHEMA,
    block_hamiltonian_from_json,
    dark_state_set_from_json,
    graph_to_json,
    matrix_from_payload,
    matrix_payload,
    matrix_to_text,
    to_csv,
    to_json,
    write,
)


__all__ = [
    "LatticeEdge",
    "LatticeGraph",
    "LatticeNode",
    "build_lattice_graph",
    "to_dot",
    "SCHEMA",
    "block_hamiltonian_from_json",
    "dark_state_set_from_json",
    "graph_to_json",
    "matrix_from_payload",
    "matrix_payload",
    "matrix_to_text",
    "to_csv",
    "to_json",
    "write",
]
