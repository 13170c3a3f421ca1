from typing import Literal, Optional

from jinja2 import Template
from pydantic import BaseModel, ConfigDict

from darklattice._base._basis import SubspaceBasis
from darklattice._base._exceptions import DimensionMismatch, ZeroCoupling
from darklattice._base._hamiltonian import BlockHamiltonian, transitions


class LatticeNode(BaseModel):
    """A Fock state of the lattice with its diagonal energy."""

    model_config = ConfigDict(frozen=True)

    label: str
    sector: Literal["upper", "lower"]
    energy: float


class LatticeEdge(BaseModel):
    """
    A transition channel between an upper and a lower state.

    Attributes:
        upper (int): 0-based position in the upper sector.
        lower (int): 0-based position in the lower sector.
        amplitude (float): g_j * sqrt(n_j' + 1).
        mode (int): 1-based mode index j.
    """

    model_config = ConfigDict(frozen=True)

    upper: int
    lower: int
    amplitude: float
    mode: int


class LatticeGraph(BaseModel):
    """The Fock-state lattice of one subspace."""

    N: int
    n: int
    nodes: list[LatticeNode]
    edges: list[LatticeEdge]

    @property
    def upper_nodes(self) -> list[LatticeNode]:
        return [node for node in self.nodes if node.sector == "upper"]

    @property
    def lower_nodes(self) -> list[LatticeNode]:
        return [node for node in self.nodes if node.sector == "lower"]


def build_lattice_graph(
    bh: BlockHamiltonian, basis: Optional[SubspaceBasis] = None
) -> LatticeGraph:
    """
    One node per basis state and one edge per nonzero entry of C.

    Raises:
        ZeroCoupling: If any g_j is zero
        DimensionMismatch: If ``basis`` is not the basis ``bh`` was assembled on
    """
    basis = basis or bh.basis
    if basis.spec != bh.spec:
        raise DimensionMismatch("build_lattice_graph (subspace)", bh.spec, basis.spec)
    zeros = bh.params.zero_coupling_modes()
    if zeros:
        raise ZeroCoupling(zeros)
    nodes = [
        LatticeNode(label=str(state), sector="upper", energy=float(energy))
        for state, energy in zip(basis.upper, bh.U)
    ]
    nodes += [
        LatticeNode(label=str(state), sector="lower", energy=float(energy))
        for state, energy in zip(basis.lower, bh.L)
    ]
    edges = [
        LatticeEdge(upper=row, lower=column, amplitude=float(bh.C[row, column]), mode=mode + 1)
        for row, column, mode, _ in transitions(basis)
    ]
    return LatticeGraph(N=bh.spec.N, n=bh.spec.n, nodes=nodes, edges=edges)


DOT_TEMPLATE = Template(
    """digraph FSL_N{{ graph.N }}_n{{ graph.n }} {
  graph [rankdir=LR];
  edge [dir=none];
{%- for node in upper %}
  u{{ loop.index0 }} [shape=box, label="{{ node.label }}"];
{%- endfor %}
{%- for node in lower %}
  l{{ loop.index0 }} [shape=circle, label="{{ node.label }}"];
{%- endfor %}
{%- for edge in graph.edges %}
  u{{ edge.upper }} -> l{{ edge.lower }} [label="{{ '%.6g' | format(edge.amplitude) }}", \
tooltip="mode {{ edge.mode }}"];
{%- endfor %}
}
""",
    keep_trailing_newline=True,
)


def to_dot(graph: LatticeGraph) -> str:
    """
    Graphviz text of the lattice: boxes for upper states, circles for lower states.

    Edges are drawn undirected and labelled with their amplitude to six significant digits.
    """
    return DOT_TEMPLATE.render(graph=graph, upper=graph.upper_nodes, lower=graph.lower_nodes)
