"""
Twisting weights: integer labels on every circle of every state.

A labelling is a twisting weight when each saddle of the cube satisfies

    split  C -> C1, C2 :  ν(C) = ν(C1) + ν(C2) - 1
    merge  C1, C2 -> C :  ν(C1) + ν(C2) = ν(C)
    untouched  C -> C  :  values agree

This module checks that condition exhaustively and constructs weights for
every diagram.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Literal, Mapping, Optional, Sequence, Tuple

import networkx as nx

from frobtwist.diagram import (
    EdgeId,
    LinkDiagram,
    Saddle,
    State,
    adjacent_circles,
    all_states,
    classify,
    component_index,
    crossing_change,
    find_connected_state,
    gamma_state,
    resolve,
    states_by_size,
)

logger = logging.getLogger(__name__)

Key = Tuple[State, EdgeId]


class DomainMismatchError(ValueError):
    """Raised when labels do not cover exactly the circles of a diagram."""


class InvalidWeightError(ValueError):
    """Raised when an input labelling is not a twisting weight."""


class WeightConstructionError(RuntimeError):
    """Raised when an internal invariant of the constructor fails."""


@dataclass(frozen=True, eq=False)
class TwistingWeight:
    """
    Labels for every (state, circle) pair of a diagram.

    Attributes:
        n_crossings: Crossing count of the diagram the weight was built for
        values: Map from (state, canonical circle id) to integer
    """

    n_crossings: int
    values: Mapping[Key, int] = field(default_factory=dict)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TwistingWeight):
            return NotImplemented
        return self.n_crossings == other.n_crossings and dict(self.values) == dict(other.values)

    __hash__ = None

    def __getitem__(self, key: Key) -> int:
        return self.values[key]

    def __len__(self) -> int:
        return len(self.values)

    def get(self, state: State, cid: EdgeId) -> int:
        return self.values[(state, cid)]

    def on_state(self, state: State) -> Dict[EdgeId, int]:
        """Labels of one state keyed by canonical id."""
        return {cid: v for (s, cid), v in self.values.items() if s == state}

    def by_state(self) -> Dict[State, Dict[EdgeId, int]]:
        grouped: Dict[State, Dict[EdgeId, int]] = {}
        for (state, cid), value in self.values.items():
            grouped.setdefault(state, {})[cid] = value
        return grouped

    def updated(self, changes: Mapping[Key, int]) -> "TwistingWeight":
        values = dict(self.values)
        values.update(changes)
        return TwistingWeight(self.n_crossings, values)

    def shifted_along_edge(self, diagram: LinkDiagram, edge: EdgeId) -> "TwistingWeight":
        """
        Add 1 to the circle through ``edge`` in every state.

        The circle through a fixed edge is the parent of a split iff it is
        one of its children, so the result is again a twisting weight.
        """
        values = dict(self.values)
        for state in all_states(self.n_crossings):
            cid = resolve(diagram, state).containing(edge).canonical_id
            values[(state, cid)] += 1
        return TwistingWeight(self.n_crossings, values)

    @classmethod
    def zero(cls, diagram: LinkDiagram) -> "TwistingWeight":
        return cls(
            diagram.n,
            {
                (state, cid): 0
                for state in all_states(diagram.n)
                for cid in resolve(diagram, state).ids()
            },
        )


@dataclass(frozen=True)
class PartialAssignment:
    """
    Labels on a subset of the (state, circle) pairs.

    Attributes:
        n_crossings: Crossing count the states are written for
        values: Map from (state, canonical circle id) to integer
    """

    n_crossings: int
    values: Mapping[Key, int] = field(default_factory=dict, hash=False)

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class Violation:
    """
    One failed saddle condition.

    Attributes:
        state: Source state of the saddle
        crossing: Crossing added by the saddle
        kind: "split", "merge" or "identity"
        lhs: Left side of the failed equation
        rhs: Right side of the failed equation
    """

    state: State
    crossing: int
    kind: Literal["split", "merge", "identity"]
    lhs: int
    rhs: int


@dataclass
class ViolationReport:
    """All failed conditions of a labelling; empty iff it is a twisting weight."""

    violations: List[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __len__(self) -> int:
        return len(self.violations)

    def __iter__(self) -> Iterator[Violation]:
        return iter(self.violations)

    def kinds(self) -> List[str]:
        return [v.kind for v in self.violations]


def check_domain(diagram: LinkDiagram, weight: TwistingWeight) -> None:
    """
    Raise unless the weight labels exactly the circles of every state.

    Raises:
        DomainMismatchError: On a crossing-count or circle mismatch
    """
    if weight.n_crossings != diagram.n:
        raise DomainMismatchError(
            f"Weight is for {weight.n_crossings} crossings, diagram has {diagram.n}"
        )
    grouped = weight.by_state()
    for state in grouped:
        if state.n_crossings != diagram.n:
            raise DomainMismatchError(f"Weight state {state!r} has the wrong length")
    for state in all_states(diagram.n):
        expected = set(resolve(diagram, state).ids())
        found = set(grouped.get(state, {}))
        if expected != found:
            raise DomainMismatchError(
                f"At {state!r} the weight labels circles {sorted(found)}, "
                f"the diagram has {sorted(expected)}"
            )


def _saddle_violations(saddle: Saddle, before: Mapping[EdgeId, int], after: Mapping[EdgeId, int]) -> List[Violation]:
    found = []
    ins = sum(before[c.canonical_id] for c in saddle.inputs)
    outs = sum(after[c.canonical_id] for c in saddle.outputs)
    if saddle.is_split and ins != outs - 1:
        found.append(Violation(saddle.state, saddle.crossing, "split", ins, outs - 1))
    elif not saddle.is_split and ins != outs:
        found.append(Violation(saddle.state, saddle.crossing, "merge", ins, outs))
    for src, tgt in saddle.untouched:
        if before[src] != after[tgt]:
            found.append(
                Violation(saddle.state, saddle.crossing, "identity", before[src], after[tgt])
            )
    return found


def check_weight(diagram: LinkDiagram, weight: TwistingWeight) -> ViolationReport:
    """
    Check the saddle condition on every edge of the cube.

    Args:
        diagram: The link diagram
        weight: Labels for every circle of every state

    Returns:
        Report listing every failed condition

    Raises:
        DomainMismatchError: If the weight does not match the diagram
    """
    check_domain(diagram, weight)
    grouped = weight.by_state()
    report = ViolationReport()
    for state in all_states(diagram.n):
        for c in range(diagram.n):
            if c in state:
                continue
            saddle = classify(diagram, state, c)
            report.violations.extend(
                _saddle_violations(saddle, grouped[state], grouped[state.with_(c)])
            )
    logger.debug(f"check_weight on {diagram!r}: {len(report)} violation(s)")
    return report


def compatible_pair(
    diagram: LinkDiagram,
    state: State,
    c: int,
    before: Mapping[EdgeId, int],
    after: Mapping[EdgeId, int],
) -> bool:
    """
    Whether two labellings are compatible with one saddle.

    Every component of the saddle cobordism must satisfy
    out-sum = in-sum + γ, with γ = 1 on the split component and 0 elsewhere.

    Raises:
        DomainMismatchError: If a labelling misses or adds circles
    """
    saddle = classify(diagram, state, c)
    for s, labels in ((state, before), (state.with_(c), after)):
        expected = set(resolve(diagram, s).ids())
        if set(labels) != expected:
            raise DomainMismatchError(
                f"Labels {sorted(labels)} do not match circles {sorted(expected)} at {s!r}"
            )
    return not _saddle_violations(saddle, before, after)


def chain_compatible(
    diagram: LinkDiagram,
    start: State,
    crossings: Sequence[int],
    labels: Sequence[Mapping[EdgeId, int]],
) -> bool:
    """
    Whether the first and last labellings are compatible with a composite.

    The composite cobordism of the saddles start -> start + c1 -> ... has one
    component per connected piece of the layered circle graph. Each piece must
    satisfy out-sum = in-sum + (number of splits inside it).

    Args:
        diagram: The link diagram
        start: First state of the chain
        crossings: Crossings added one at a time
        labels: One labelling per state of the chain, ``len(crossings) + 1`` in total
    """
    if len(labels) != len(crossings) + 1:
        raise ValueError(f"Need {len(crossings) + 1} labellings, got {len(labels)}")

    graph = nx.Graph()
    state = start
    for cid in resolve(diagram, state).ids():
        graph.add_node((0, cid), gamma=0)
    for step, c in enumerate(crossings):
        saddle = classify(diagram, state, c)
        nxt = state.with_(c)
        for cid in resolve(diagram, nxt).ids():
            graph.add_node((step + 1, cid), gamma=0)
        touched = [(step, x.canonical_id) for x in saddle.inputs]
        touched += [(step + 1, x.canonical_id) for x in saddle.outputs]
        for node in touched[1:]:
            graph.add_edge(touched[0], node)
        graph.nodes[touched[0]]["gamma"] += saddle.gamma
        for src, tgt in saddle.untouched:
            graph.add_edge((step, src), (step + 1, tgt))
        state = nxt

    last = len(crossings)
    for component in nx.connected_components(graph):
        ins = sum(labels[0][cid] for layer, cid in component if layer == 0)
        outs = sum(labels[last][cid] for layer, cid in component if layer == last)
        gamma = sum(graph.nodes[node]["gamma"] for node in component)
        if outs != ins + gamma:
            return False
    return True


def _seed(diagram: LinkDiagram, c: int) -> Dict[EdgeId, int]:
    saddle = classify(diagram, State.empty(diagram.n), c)
    labels = {cid: 0 for cid in resolve(diagram, saddle.state.with_(c)).ids()}
    if saddle.is_split:
        smallest = saddle.inputs[0].canonical_id
        for child in saddle.outputs:
            if smallest in child.edges:
                labels[child.canonical_id] = 1
    return labels


def _case_two_center(diagram: LinkDiagram, state: State) -> Optional[EdgeId]:
    """The circle touched by every crossing of the state, each crossing touching one other."""
    common = None
    for c in state.members:
        adjacent = adjacent_circles(diagram, state, c)
        if len(adjacent) != 2:
            return None
        common = adjacent if common is None else common & adjacent
        if not common:
            return None
    if common is None or len(common) != 1:
        return None
    return next(iter(common))


def _candidates(
    diagram: LinkDiagram, state: State, values: Mapping[Key, int]
) -> Dict[EdgeId, List[Tuple[int, int]]]:
    """For each circle, (crossing, value) for every saddle with that circle as sole output."""
    found: Dict[EdgeId, List[Tuple[int, int]]] = {
        cid: [] for cid in resolve(diagram, state).ids()
    }
    for c in state.members:
        prev = state.without(c)
        saddle = classify(diagram, prev, c)
        if not saddle.is_split:
            total = sum(values[(prev, x.canonical_id)] for x in saddle.inputs)
            found[saddle.outputs[0].canonical_id].append((c, total))
        for src, tgt in saddle.untouched:
            found[tgt].append((c, values[(prev, src)]))
    return found


def _agreed(cid: EdgeId, state: State, options: List[Tuple[int, int]]) -> int:
    distinct = {value for _, value in options}
    if len(distinct) != 1:
        raise WeightConstructionError(
            f"Value of circle {cid} at {state!r} depends on the crossing used: {options}; "
            "the diagram is probably not plane-realizable"
        )
    return distinct.pop()


def construct_connected(diagram: LinkDiagram, *, validate: bool = True) -> TwistingWeight:
    """
    Build a twisting weight on a diagram whose empty-state resolution is one circle.

    The weight is 0 on the empty state. A single-crossing state splitting the
    circle gives 1 to the child through the smallest edge. Larger states take
    their values from the states one crossing below: a circle produced by a
    merge or left untouched inherits the sum of its inputs; when no such
    saddle exists for a circle, that circle is touched by every crossing and
    absorbs the remaining γ.

    With ``validate=False`` the result is returned without running the checker.

    Raises:
        ValueError: If the empty-state resolution is not a single circle
        WeightConstructionError: If an internal consistency check fails
    """
    empty = State.empty(diagram.n)
    if len(resolve(diagram, empty)) != 1:
        raise ValueError(
            f"Empty-state resolution has {len(resolve(diagram, empty))} circles, expected 1"
        )

    values: Dict[Key, int] = {(empty, resolve(diagram, empty).ids()[0]): 0}
    levels = states_by_size(diagram.n)
    for state in levels.get(1, []):
        (c,) = state.members
        for cid, value in _seed(diagram, c).items():
            values[(state, cid)] = value

    merged_cases = centered_cases = 0
    for size in range(2, diagram.n + 1):
        for state in levels[size]:
            candidates = _candidates(diagram, state, values)
            missing = [cid for cid, options in candidates.items() if not options]
            center = _case_two_center(diagram, state)

            if not missing:
                if center is not None:
                    raise WeightConstructionError(
                        f"Both induction cases apply at {state!r}"
                    )
                for cid, options in candidates.items():
                    values[(state, cid)] = _agreed(cid, state, options)
                merged_cases += 1
            elif len(missing) == 1 and center == missing[0]:
                rest = 0
                for cid, options in candidates.items():
                    if cid == center:
                        continue
                    values[(state, cid)] = _agreed(cid, state, options)
                    rest += values[(state, cid)]
                values[(state, center)] = gamma_state(diagram, state) - rest
                centered_cases += 1
            else:
                raise WeightConstructionError(
                    f"No induction case applies at {state!r} (unlabelled circles {missing})"
                )

    logger.debug(
        f"construct_connected on {diagram!r}: {merged_cases} inherited, "
        f"{centered_cases} centred states"
    )
    weight = TwistingWeight(diagram.n, values)
    if validate:
        _assert_valid(diagram, weight, "construct_connected")
    return weight


def _assert_valid(diagram: LinkDiagram, weight: TwistingWeight, where: str) -> None:
    report = check_weight(diagram, weight)
    if not report.ok:
        raise WeightConstructionError(
            f"{where} produced {len(report)} violation(s), first: {report.violations[0]}"
        )


def transfer(
    d_plus: LinkDiagram, weight: TwistingWeight, c0: int, edge: EdgeId, *, validate: bool = True
) -> TwistingWeight:
    """
    Move a twisting weight across the crossing change at ``c0``.

    A state S of the changed diagram has the same circles as S Δ {c0} of the
    original. Labels are carried over and the circle through ``edge`` is
    corrected by φ. φ is 1 when c0 ∉ S if c0 is unflipped in ``d_plus``, and
    -1 when c0 ∈ S if it is flipped, so transferring twice at the same
    crossing and edge restores the original weight.

    Args:
        d_plus: Diagram carrying ``weight``
        weight: A valid twisting weight on ``d_plus``
        c0: Crossing to change
        edge: Edge label occurring in a slot of ``c0``
        validate: Check the input and the result. ``construct`` turns this off
            for its chain of transfers and checks the final weight once

    Returns:
        A twisting weight on ``crossing_change(d_plus, c0)``

    Raises:
        ValueError: If ``edge`` is not incident to ``c0``
        InvalidWeightError: If ``weight`` is not a twisting weight on ``d_plus``
    """
    if edge not in d_plus.crossings[c0].slots:
        raise ValueError(f"Edge {edge} is not incident to crossing {c0}")
    if validate:
        report = check_weight(d_plus, weight)
        if not report.ok:
            raise InvalidWeightError(f"Cannot transfer an invalid weight ({len(report)} violations)")

    d_minus = crossing_change(d_plus, c0)
    flipped = d_plus.crossings[c0].flip
    values: Dict[Key, int] = {}
    for state in all_states(d_minus.n):
        source = state.toggled(c0)
        for circle in resolve(d_minus, state).circles:
            phi = 0
            if edge in circle.edges:
                if not flipped and c0 not in state:
                    phi = 1
                elif flipped and c0 in state:
                    phi = -1
            values[(state, circle.canonical_id)] = weight.get(source, circle.canonical_id) - phi

    result = TwistingWeight(d_minus.n, values)
    if validate:
        _assert_valid(d_minus, result, "transfer")
    return result


def _construct_component(diagram: LinkDiagram) -> TwistingWeight:
    connected = find_connected_state(diagram)
    current = diagram
    for c in connected.members:
        current = crossing_change(current, c)

    weight = construct_connected(current, validate=False)
    for c in connected.members:
        edge = min(current.crossings[c].slots)
        weight = transfer(current, weight, c, edge, validate=False)
        current = crossing_change(current, c)
    logger.debug(f"Component with {diagram.n} crossings used {connected.size} transfer(s)")
    return weight


def construct(diagram: LinkDiagram) -> TwistingWeight:
    """
    Build a twisting weight on any diagram.

    Each connected component is routed through crossing changes to a diagram
    whose empty-state resolution is one circle, built there, and transferred
    back one crossing at a time in ascending order. Free loops get 0.

    Raises:
        WeightConstructionError: If the result fails the checker
    """
    parts = []
    for indices, loops in component_index(diagram):
        if not indices:
            continue
        sub = LinkDiagram(tuple(diagram.crossings[i] for i in indices))
        parts.append((indices, sub, _construct_component(sub)))

    values: Dict[Key, int] = {}
    for state in all_states(diagram.n):
        for loop in diagram.free_loops:
            values[(state, loop)] = 0
        for indices, sub, weight in parts:
            local = state.restrict(indices)
            for cid in resolve(sub, local).ids():
                values[(state, cid)] = weight.get(local, cid)

    result = TwistingWeight(diagram.n, values)
    _assert_valid(diagram, result, "construct")
    return result


def check_partial(diagram: LinkDiagram, pins: PartialAssignment) -> None:
    """
    Raise unless every pinned pair names an existing circle.

    Raises:
        DomainMismatchError: On a state-length mismatch or an unknown circle
    """
    if pins.n_crossings != diagram.n:
        raise DomainMismatchError(
            f"Pins are for {pins.n_crossings} crossings, diagram has {diagram.n}"
        )
    for state, cid in pins.values:
        if state.n_crossings != diagram.n:
            raise DomainMismatchError(f"Pinned state {state!r} has the wrong length")
        if cid not in resolve(diagram, state).ids():
            raise DomainMismatchError(f"Pinned circle {cid} does not exist at {state!r}")
