"""
JSON documents read and written by the command line.

Every ``*_to_json`` function has a ``*_from_json`` counterpart so that all
outputs can be read back.
"""

import json
import os
from typing import Any, Dict, List, Optional

import numpy as np

from frobtwist.cube import ChainComplex, ChainMap, HomologyGroup
from frobtwist.diagram import LinkDiagram, State, all_states, resolve
from frobtwist.weights import PartialAssignment, TwistingWeight, Violation, ViolationReport


def load_json(path: str) -> Any:
    """
    Read a JSON document.

    Raises:
        FileNotFoundError: If the file doesn't exist
        ValueError: If the file is not valid JSON
    """
    if not os.path.exists(path):
        raise FileNotFoundError(f"File not found: {path}")
    with open(path, "r") as handle:
        try:
            return json.load(handle)
        except json.JSONDecodeError as e:
            raise ValueError(f"Error parsing JSON file {path}: {e}")


def dump_json(document: Any, path: Optional[str] = None) -> str:
    text = json.dumps(document, indent=2)
    if path is not None:
        with open(path, "w") as handle:
            handle.write(text + "\n")
    return text


def weight_to_json(diagram: LinkDiagram, weight: TwistingWeight) -> Dict[str, Any]:
    """States by ascending mask, circles by canonical id."""
    states = []
    for state in all_states(diagram.n):
        circles = [
            {
                "id": circle.canonical_id,
                "edges": sorted(circle.edges),
                "nu": weight.get(state, circle.canonical_id),
            }
            for circle in resolve(diagram, state).circles
        ]
        states.append({"bits": state.to_string(), "circles": circles})
    return {"states": states}


def _state_entries(document: Dict[str, Any]) -> List[Dict[str, Any]]:
    if not isinstance(document, dict) or not isinstance(document.get("states"), list):
        raise ValueError("Expected an object with a 'states' list")
    return document["states"]


def _read_labels(document: Dict[str, Any], require_all: bool) -> PartialAssignment:
    entries = _state_entries(document)
    if not entries:
        raise ValueError("The 'states' list is empty")

    lengths = {len(entry.get("bits", "")) for entry in entries}
    if len(lengths) != 1:
        raise ValueError(f"States have inconsistent lengths {sorted(lengths)}")
    n = lengths.pop()

    values = {}
    for entry in entries:
        state = State.from_string(entry.get("bits", ""))
        for circle in entry.get("circles", []):
            if "id" not in circle:
                raise ValueError(f"Circle without 'id' at state {state.to_string()!r}")
            if "nu" not in circle:
                if require_all:
                    raise ValueError(
                        f"Circle {circle['id']} at state {state.to_string()!r} has no 'nu'"
                    )
                continue
            key = (state, int(circle["id"]))
            if key in values:
                raise ValueError(f"Circle {key[1]} listed twice at state {state.to_string()!r}")
            values[key] = int(circle["nu"])
    return PartialAssignment(n, values)


def weight_from_json(document: Dict[str, Any]) -> TwistingWeight:
    """
    Read a weight document.

    Raises:
        ValueError: On a malformed document
    """
    labels = _read_labels(document, require_all=True)
    return TwistingWeight(labels.n_crossings, dict(labels.values))


def partial_from_json(document: Dict[str, Any]) -> PartialAssignment:
    """Read a partial assignment; circles without 'nu' and missing states are allowed."""
    return _read_labels(document, require_all=False)


def partial_to_json(pins: PartialAssignment, diagram: Optional[LinkDiagram] = None) -> Dict[str, Any]:
    grouped: Dict[State, list] = {}
    for (state, cid), value in sorted(pins.values.items(), key=lambda kv: (kv[0][0].mask, kv[0][1])):
        record = {"id": cid, "nu": value}
        if diagram is not None:
            record["edges"] = sorted(resolve(diagram, state).circle(cid).edges)
        grouped.setdefault(state, []).append(record)
    if not grouped:
        return {"states": [{"bits": "0" * pins.n_crossings, "circles": []}]}
    return {
        "states": [
            {"bits": state.to_string(), "circles": circles}
            for state, circles in sorted(grouped.items(), key=lambda kv: kv[0].mask)
        ]
    }


def violations_to_json(report: ViolationReport) -> Dict[str, Any]:
    return {
        "ok": report.ok,
        "violations": [
            {
                "state": v.state.to_string(),
                "crossing": v.crossing,
                "kind": v.kind,
                "lhs": v.lhs,
                "rhs": v.rhs,
            }
            for v in report
        ],
    }


def violations_from_json(document: Dict[str, Any]) -> ViolationReport:
    return ViolationReport(
        [
            Violation(
                State.from_string(item["state"]),
                int(item["crossing"]),
                item["kind"],
                int(item["lhs"]),
                int(item["rhs"]),
            )
            for item in document.get("violations", [])
        ]
    )


def _matrix_to_json(degree: int, matrix: np.ndarray) -> Dict[str, Any]:
    return {
        "degree": degree,
        "shape": list(matrix.shape),
        "data": [int(v) for v in matrix.reshape(-1)],
    }


def _matrix_from_json(item: Dict[str, Any]) -> np.ndarray:
    rows, cols = item["shape"]
    data = np.array(item["data"], dtype=np.int64)
    if data.size != rows * cols:
        raise ValueError(f"Matrix of shape {rows}x{cols} has {data.size} entries")
    return data.reshape(rows, cols)


def complex_to_json(complex_: ChainComplex) -> Dict[str, Any]:
    document = {
        "ranks": list(complex_.ranks),
        "differentials": [_matrix_to_json(i, d) for i, d in enumerate(complex_.differentials)],
    }
    if complex_.summands:
        document["summands"] = [[s.to_string() for s in group] for group in complex_.summands]
    return document


def complex_from_json(document: Dict[str, Any]) -> ChainComplex:
    differentials = sorted(document.get("differentials", []), key=lambda item: item["degree"])
    summands = tuple(
        tuple(State.from_string(bits) for bits in group)
        for group in document.get("summands", [])
    )
    return ChainComplex(
        tuple(int(r) for r in document["ranks"]),
        tuple(_matrix_from_json(item) for item in differentials),
        summands,
    )


def chain_map_to_json(f: ChainMap) -> Dict[str, Any]:
    return {
        "source": complex_to_json(f.source),
        "target": complex_to_json(f.target),
        "maps": [_matrix_to_json(i, m) for i, m in enumerate(f.maps)],
    }


def chain_map_from_json(document: Dict[str, Any]) -> ChainMap:
    maps = sorted(document["maps"], key=lambda item: item["degree"])
    return ChainMap(
        complex_from_json(document["source"]),
        complex_from_json(document["target"]),
        tuple(_matrix_from_json(item) for item in maps),
    )


def homology_to_json(groups: List[HomologyGroup]) -> List[Dict[str, Any]]:
    return [{"degree": g.degree, "rank": g.rank, "torsion": list(g.torsion)} for g in groups]


def homology_from_json(document: List[Dict[str, Any]]) -> List[HomologyGroup]:
    return [
        HomologyGroup(int(item["degree"]), int(item["rank"]), tuple(int(t) for t in item["torsion"]))
        for item in document
    ]
