"""
Independent feasibility oracle for twisting weights.

Every saddle condition is one integer linear equation in the unknown labels,
so existence of a weight extending given pins is a question of integral
solvability. The answer comes from exact Smith-form elimination, never from
rational arithmetic, which would miss parity obstructions.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from frobtwist.diagram import LinkDiagram, all_states, classify, resolve
from frobtwist.snf import solve_integer
from frobtwist.weights import (
    Key,
    PartialAssignment,
    TwistingWeight,
    WeightConstructionError,
    check_partial,
    check_weight,
)

logger = logging.getLogger(__name__)

DEFAULT_ORACLE_CAP = 8


class SizeGuardError(ValueError):
    """Raised when a diagram exceeds a crossing cap."""


@dataclass
class ConstraintSystem:
    """
    The saddle conditions of a diagram as sparse integer equations.

    Attributes:
        variables: One entry per (state, circle), in index order
        rows: Coefficient maps, one per equation
        rhs: Right-hand sides
    """

    variables: List[Key]
    rows: List[Dict[int, int]]
    rhs: List[int]

    @property
    def index(self) -> Dict[Key, int]:
        return {key: i for i, key in enumerate(self.variables)}

    def add(self, row: Dict[int, int], value: int) -> None:
        self.rows.append(row)
        self.rhs.append(value)

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.rows), len(self.variables)


def build_system(diagram: LinkDiagram) -> ConstraintSystem:
    """One variable per (state, circle); one equation per saddle component."""
    variables = [
        (state, cid) for state in all_states(diagram.n) for cid in resolve(diagram, state).ids()
    ]
    system = ConstraintSystem(variables, [], [])
    index = system.index

    for state in all_states(diagram.n):
        for c in range(diagram.n):
            if c in state:
                continue
            saddle = classify(diagram, state, c)
            target = state.with_(c)
            row: Dict[int, int] = {}
            for circle in saddle.inputs:
                row[index[(state, circle.canonical_id)]] = 1
            for circle in saddle.outputs:
                row[index[(target, circle.canonical_id)]] = -1
            system.add(row, -saddle.gamma)
            for src, tgt in saddle.untouched:
                system.add({index[(state, src)]: 1, index[(target, tgt)]: -1}, 0)
    return system


def oracle_solve(
    diagram: LinkDiagram,
    pins: Optional[PartialAssignment] = None,
    cap: int = DEFAULT_ORACLE_CAP,
) -> Optional[TwistingWeight]:
    """
    Decide whether a twisting weight extending ``pins`` exists and return one.

    Args:
        diagram: The link diagram
        pins: Labels the solution must take; None for no constraint
        cap: Largest crossing count accepted

    Returns:
        A twisting weight agreeing with the pins, or None if none exists

    Raises:
        SizeGuardError: If the diagram has more than ``cap`` crossings
        DomainMismatchError: If a pin names a circle the diagram lacks
    """
    if diagram.n > cap:
        raise SizeGuardError(f"Oracle accepts at most {cap} crossings, got {diagram.n}")
    if pins is None:
        pins = PartialAssignment(diagram.n, {})
    check_partial(diagram, pins)

    system = build_system(diagram)
    index = system.index
    for key, value in pins.values.items():
        system.add({index[key]: 1}, int(value))

    n_eq, n_var = system.shape
    logger.debug(f"Oracle system for {diagram!r}: {n_eq} equations, {n_var} variables")

    solution = solve_integer(system.rows, system.rhs, n_var)
    if solution is None:
        logger.info(f"No integral twisting weight extends {len(pins)} pin(s)")
        return None

    weight = TwistingWeight(diagram.n, dict(zip(system.variables, solution)))
    report = check_weight(diagram, weight)
    if not report.ok:
        raise WeightConstructionError(
            f"Oracle solution fails the checker: {report.violations[0]}"
        )
    for key, value in pins.values.items():
        if weight[key] != value:
            raise WeightConstructionError(f"Oracle solution ignores pin {key} = {value}")
    return weight
