"""
Deterministic serialization of result objects.

JSON documents carry ``"schema": "darklattice/1"`` and a ``kind``; keys are sorted and
floats are written with Python's shortest round-trip representation, so identical
inputs give byte-identical text and every stored double reads back unchanged.

That representation uses at most 17 significant digits and fewer whenever fewer
identify the same double: 0.1 is written as ``0.1``, not ``0.10000000000000001``.
Parsed values are identical to a fixed 17-digit rendering; only the text is shorter.
"""

import csv
import dataclasses
import io
import json
from enum import Enum
from pathlib import Path
from typing import Any, Sequence, Union

import numpy as np
from pydantic import BaseModel

from darklattice._base._basis import FockState, SubspaceBasis, SubspaceSpec
from darklattice._base._hamiltonian import BlockHamiltonian, Frame, ModelParams
from darklattice._base._linalg import VectorSet
from darklattice.darkmodes._fock import DarkModeBasisMatrix
from darklattice.darkmodes._transform import ModeTransform
from darklattice.darkstates._set import DarkStateSet
from darklattice.dynamics._propagate import Trajectory, trajectory_to_csv
from darklattice.export._graph import LatticeGraph
from darklattice.logging import get_logger
from darklattice.models.reports import CountCell

logger = get_logger(__name__)

SCHEMA = "darklattice/1"


def matrix_payload(M: np.ndarray) -> dict:
    """{"rows", "cols", "data"} with row-major data."""
    M = np.atleast_2d(np.asarray(M, dtype=float))
    return {"rows": M.shape[0], "cols": M.shape[1], "data": [float(x) for x in M.ravel()]}


def matrix_from_payload(payload: dict) -> np.ndarray:
    return np.array(payload["data"], dtype=float).reshape(payload["rows"], payload["cols"])


def _dark_state_set(ds: DarkStateSet) -> dict:
    vectors = []
    for index, label in enumerate(ds.labels):
        vectors.append(
            {
                "p": label.p,
                "provenance": label.provenance.value,
                "norm": label.norm,
                "coefficients": ds.coefficients(index),
            }
        )
    return {
        "N": ds.spec.N,
        "n": ds.spec.n,
        "count": ds.size,
        "normalized": ds.normalized,
        "orthonormal": ds.vectors.orthonormal,
        "vectors": vectors,
    }


def _block_hamiltonian(bh: BlockHamiltonian) -> dict:
    return {
        "N": bh.spec.N,
        "n": bh.spec.n,
        "frame": bh.frame.value,
        "params": bh.params.model_dump(mode="json"),
        "upper": [str(state) for state in bh.basis.upper],
        "lower": [str(state) for state in bh.basis.lower],
        "U": [float(x) for x in bh.U],
        "L": [float(x) for x in bh.L],
        "C": matrix_payload(bh.C),
    }


def _trajectory(trajectory: Trajectory) -> dict:
    return {
        "N": trajectory.basis.spec.N,
        "n": trajectory.basis.spec.n,
        "states": [str(state) for state in trajectory.basis.states()],
        "times": [float(t) for t in trajectory.times],
        "populations": matrix_payload(trajectory.populations()),
        "steps": trajectory.steps,
        "norm_drift": trajectory.norm_drift,
    }


def payload(obj: Any) -> tuple[str, Any]:
    """
    The (kind, JSON-ready payload) pair of a result object.

    Raises:
        TypeError: For objects with no serialization
    """
    match obj:
        case DarkStateSet():
            return "dark_state_set", _dark_state_set(obj)
        case BlockHamiltonian():
            return "block_hamiltonian", _block_hamiltonian(obj)
        case Trajectory():
            return "trajectory", _trajectory(obj)
        case LatticeGraph():
            return "lattice_graph", obj.model_dump(mode="json")
        case DarkModeBasisMatrix():
            return "dark_mode_basis", {
                "N": obj.N,
                "n": obj.n,
                "labels": [list(label) for label in obj.labels],
                "B": matrix_payload(obj.B),
            }
        case ModeTransform():
            return "mode_transform", {"g": list(obj.g), "T": matrix_payload(obj.T)}
        case VectorSet():
            return "vector_set", {
                "orthonormal": obj.orthonormal,
                "vectors": matrix_payload(obj.matrix),
            }
        case np.ndarray():
            return "matrix", matrix_payload(obj)
        case BaseModel():
            return _snake(type(obj).__name__), obj.model_dump(mode="json")
        case list() | tuple():
            kinds, items = zip(*(payload(item) for item in obj)) if obj else ((), ())
            kind = f"list[{kinds[0]}]" if kinds and len(set(kinds)) == 1 else "list"
            return kind, list(items)
        case dict():
            return "mapping", {str(key): _plain(value) for key, value in obj.items()}
    raise TypeError(f"No serialization for {type(obj).__name__}")


def _plain(value: Any) -> Any:
    if isinstance(value, (str, bool, int, float)) or value is None:
        return value
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, Enum):
        return value.value
    if dataclasses.is_dataclass(value) or isinstance(value, (BaseModel, np.ndarray)):
        return payload(value)[1]
    if isinstance(value, (list, tuple)):
        return [_plain(item) for item in value]
    if isinstance(value, dict):
        return {str(key): _plain(item) for key, item in value.items()}
    raise TypeError(f"No serialization for {type(value).__name__}")


def _snake(name: str) -> str:
    return "".join(f"_{c.lower()}" if c.isupper() and i else c.lower() for i, c in enumerate(name))


def to_json(obj: Any, indent: int = 2) -> str:
    """Schema-versioned, key-sorted JSON text of any result object."""
    kind, data = payload(obj)
    document = {"schema": SCHEMA, "kind": kind, "data": data}
    return json.dumps(document, indent=indent, sort_keys=True, allow_nan=False) + "\n"


def graph_to_json(graph: LatticeGraph) -> str:
    return to_json(graph)


def block_hamiltonian_from_json(text: str) -> BlockHamiltonian:
    """Rebuild a BlockHamiltonian written by ``to_json``."""
    data = json.loads(text)["data"]
    spec = SubspaceSpec(N=data["N"], n=data["n"])
    basis = SubspaceBasis(
        spec,
        [FockState.parse(s) for s in data["upper"]],
        [FockState.parse(s) for s in data["lower"]],
    )
    return BlockHamiltonian(
        basis=basis,
        params=ModelParams(**data["params"]),
        frame=Frame(data["frame"]),
        U=np.array(data["U"], dtype=float),
        L=np.array(data["L"], dtype=float),
        C=matrix_from_payload(data["C"]),
    )


def dark_state_set_from_json(text: str) -> tuple[SubspaceSpec, np.ndarray]:
    """The subspace and the (lower dimension x count) coefficient matrix of a saved set."""
    data = json.loads(text)["data"]
    spec = SubspaceSpec(N=data["N"], n=data["n"])
    basis = SubspaceBasis.build(spec)
    matrix = np.zeros((basis.n_lower, data["count"]))
    for column, vector in enumerate(data["vectors"]):
        for state, value in vector["coefficients"].items():
            _, row = basis.index_of(FockState.parse(state))
            matrix[row, column] = value
    return spec, matrix


def _count_rows(cells: Sequence[CountCell]) -> list[list]:
    header = ["N", "n", "formula", "svd_nullity", "echelon_free_columns", "match"]
    rows = [[c.N, c.n, c.formula, c.svd_nullity, c.echelon_free_columns, c.match] for c in cells]
    return [header] + rows


def to_csv(obj: Union[Trajectory, Sequence[CountCell], np.ndarray], overlap=None) -> str:
    """CSV text of a trajectory, a count table or a matrix."""
    if isinstance(obj, Trajectory):
        return trajectory_to_csv(obj, overlap)
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    if isinstance(obj, np.ndarray):
        for row in np.atleast_2d(obj):
            writer.writerow([repr(float(x)) for x in row])
    else:
        writer.writerows(_count_rows(list(obj)))
    return buffer.getvalue()


def matrix_to_text(M: np.ndarray, precision: int = 6) -> str:
    """Fixed-width dump of a matrix, one row per line."""
    M = np.atleast_2d(np.asarray(M, dtype=float))
    if M.size == 0:
        return f"# empty {M.shape[0]}x{M.shape[1]} matrix\n"
    width = precision + 8
    buffer = io.StringIO()
    np.savetxt(buffer, M, fmt=f"%{width}.{precision}g", delimiter="")
    return buffer.getvalue()


def write(text: str, path: Union[str, Path]) -> Path:
    """Write ``text`` to ``path``, creating parent directories."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    logger.info(f"Wrote {path}")
    return path
