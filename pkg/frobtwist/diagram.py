"""
Diagram module for link diagrams, states and their resolutions.

A diagram is read from PD-code text. Every state picks one of the two
smoothings at each crossing; the resulting circles are traced with a
union-find over edge labels.
"""

import itertools
import logging
import re
from collections import Counter
from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, Iterator, List, Literal, Tuple

import networkx as nx
from networkx.utils import UnionFind

logger = logging.getLogger(__name__)

EdgeId = int
Pair = Tuple[EdgeId, EdgeId]


class PDParseError(ValueError):
    """Raised when PD text is malformed or describes an inconsistent diagram."""


class NonPlanarSaddleError(ValueError):
    """Raised when a saddle maps one circle onto one circle."""


@dataclass(frozen=True)
class Crossing:
    """
    A crossing with four edge slots.

    Attributes:
        slots: Edge labels at positions 0, 1, 2, 3
        flip: Smoothing-convention bit; toggling it realizes a crossing change
    """

    slots: Tuple[EdgeId, EdgeId, EdgeId, EdgeId]
    flip: bool = False

    def pairs(self, included: bool) -> Tuple[Pair, Pair]:
        """
        Return the two arcs of the smoothing chosen by state membership.

        Args:
            included: Whether the crossing belongs to the state

        Returns:
            Two slot-edge pairs joined by the smoothing
        """
        a, b, c, d = self.slots
        if included != self.flip:
            return (a, d), (b, c)
        return (a, b), (c, d)

    def flipped(self) -> "Crossing":
        return replace(self, flip=not self.flip)


@dataclass(frozen=True)
class LinkDiagram:
    """
    A link diagram given by its crossings and crossing-free loops.

    Attributes:
        crossings: Crossings in file order; index i is bit i of a state
        free_loops: Edge labels of closed components without crossings
    """

    crossings: Tuple[Crossing, ...] = ()
    free_loops: Tuple[EdgeId, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "free_loops", tuple(sorted(self.free_loops)))

        counts = Counter(e for x in self.crossings for e in x.slots)
        for edge in counts:
            if not isinstance(edge, int) or edge <= 0:
                raise PDParseError(f"Edge labels must be positive integers, got {edge!r}")
        bad = sorted(e for e, k in counts.items() if k != 2)
        if bad:
            raise PDParseError(
                f"Edges {bad} do not occur exactly twice among crossing slots"
            )

        seen = set()
        for loop in self.free_loops:
            if not isinstance(loop, int) or loop <= 0:
                raise PDParseError(f"Free-loop labels must be positive integers, got {loop!r}")
            if loop in seen:
                raise PDParseError(f"Free loop {loop} declared twice")
            if loop in counts:
                raise PDParseError(f"Free loop {loop} collides with a crossing edge")
            seen.add(loop)

    @property
    def n(self) -> int:
        """Number of crossings."""
        return len(self.crossings)

    @property
    def n_states(self) -> int:
        return 2 ** len(self.crossings)

    def edges(self) -> FrozenSet[EdgeId]:
        """All edge labels, crossing edges and free loops together."""
        return frozenset(e for x in self.crossings for e in x.slots) | frozenset(
            self.free_loops
        )

    def __repr__(self) -> str:
        return f"LinkDiagram(n={self.n}, free_loops={list(self.free_loops)})"


@dataclass(frozen=True)
class State:
    """
    A subset of the crossings, stored as a bit vector.

    Attributes:
        bits: bits[i] is True iff crossing i belongs to the state
    """

    bits: Tuple[bool, ...]

    @classmethod
    def empty(cls, n: int) -> "State":
        return cls((False,) * n)

    @classmethod
    def from_mask(cls, n: int, mask: int) -> "State":
        return cls(tuple(bool((mask >> i) & 1) for i in range(n)))

    @classmethod
    def from_members(cls, n: int, members: Iterable[int]) -> "State":
        members = set(members)
        for c in members:
            if not 0 <= c < n:
                raise ValueError(f"Crossing index {c} out of range for {n} crossings")
        return cls(tuple(i in members for i in range(n)))

    @classmethod
    def from_string(cls, text: str) -> "State":
        """Parse a 0/1 string with bit 0 first."""
        if not re.fullmatch(r"[01]*", text):
            raise ValueError(f"State string must contain only 0 and 1, got {text!r}")
        return cls(tuple(ch == "1" for ch in text))

    def to_string(self) -> str:
        return "".join("1" if b else "0" for b in self.bits)

    @property
    def n_crossings(self) -> int:
        return len(self.bits)

    @property
    def mask(self) -> int:
        return sum(1 << i for i, b in enumerate(self.bits) if b)

    @property
    def members(self) -> Tuple[int, ...]:
        return tuple(i for i, b in enumerate(self.bits) if b)

    @property
    def size(self) -> int:
        return sum(self.bits)

    def __contains__(self, c: int) -> bool:
        return self.bits[c]

    def with_(self, c: int) -> "State":
        return self._set(c, True)

    def without(self, c: int) -> "State":
        return self._set(c, False)

    def toggled(self, c: int) -> "State":
        return self._set(c, not self.bits[c])

    def restrict(self, indices: Iterable[int]) -> "State":
        """The sub-state on the given crossings, in the order given."""
        return State(tuple(self.bits[i] for i in indices))

    def _set(self, c: int, value: bool) -> "State":
        bits = list(self.bits)
        bits[c] = value
        return State(tuple(bits))

    def __repr__(self) -> str:
        return f"State({self.to_string() or '-'})"


@dataclass(frozen=True)
class Circle:
    """
    A circle of a resolution.

    Attributes:
        canonical_id: Minimum edge label on the circle
        edges: Edge labels traced by the circle
    """

    canonical_id: EdgeId
    edges: FrozenSet[EdgeId]


@dataclass(frozen=True)
class Resolution:
    """
    The circles of a smoothed state, ordered by canonical id.

    Attributes:
        circles: Circles sorted by canonical id
        circle_of_edge: Map from edge label to position in ``circles``
    """

    circles: Tuple[Circle, ...]
    circle_of_edge: Dict[EdgeId, int] = field(compare=False, hash=False, repr=False)

    def __len__(self) -> int:
        return len(self.circles)

    def ids(self) -> Tuple[EdgeId, ...]:
        return tuple(circle.canonical_id for circle in self.circles)

    def circle(self, cid: EdgeId) -> Circle:
        """
        Look up a circle by canonical id.

        Raises:
            KeyError: If no circle has this id
        """
        index = self.circle_of_edge.get(cid)
        if index is None or self.circles[index].canonical_id != cid:
            raise KeyError(f"No circle with canonical id {cid}")
        return self.circles[index]

    def containing(self, edge: EdgeId) -> Circle:
        return self.circles[self.circle_of_edge[edge]]


@dataclass(frozen=True)
class Saddle:
    """
    The effect of adding one crossing to a state.

    Attributes:
        kind: "split" (one circle into two) or "merge" (two circles into one)
        state: Source state
        crossing: Index of the crossing added
        inputs: Touched circles of the source resolution
        outputs: Touched circles of the target resolution
        untouched: (source id, target id) pairs for every other circle
    """

    kind: Literal["split", "merge"]
    state: State
    crossing: int
    inputs: Tuple[Circle, ...]
    outputs: Tuple[Circle, ...]
    untouched: Tuple[Tuple[EdgeId, EdgeId], ...]

    @property
    def gamma(self) -> int:
        return 1 if self.kind == "split" else 0

    @property
    def is_split(self) -> bool:
        return self.kind == "split"


_LINE = re.compile(r"^([XO])((?:\s+\S+)+)$")


def parse_pd(text: str) -> LinkDiagram:
    """
    Parse PD-code text into a diagram.

    Items are separated by newlines or ``/``. ``X a b c d`` declares a crossing,
    ``O k`` a free loop; ``#`` starts a comment.

    Args:
        text: PD-code text

    Returns:
        The parsed diagram

    Raises:
        PDParseError: On a malformed item or an inconsistent edge labelling
    """
    crossings: List[Crossing] = []
    loops: List[EdgeId] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        for item in line.split("/"):
            item = item.strip()
            if not item:
                continue
            match = _LINE.match(item)
            if match is None:
                raise PDParseError(f"Line {lineno}: cannot parse {item!r}")
            tag, rest = match.group(1), match.group(2).split()
            try:
                labels = [int(tok) for tok in rest]
            except ValueError:
                raise PDParseError(f"Line {lineno}: non-integer edge label in {item!r}")
            if any(label <= 0 for label in labels):
                raise PDParseError(f"Line {lineno}: edge labels must be positive")
            if tag == "X":
                if len(labels) != 4:
                    raise PDParseError(
                        f"Line {lineno}: crossing needs 4 edge labels, got {len(labels)}"
                    )
                crossings.append(Crossing(tuple(labels)))
            else:
                if len(labels) != 1:
                    raise PDParseError(f"Line {lineno}: free loop needs exactly 1 label")
                loops.append(labels[0])

    diagram = LinkDiagram(tuple(crossings), tuple(loops))
    logger.debug(f"Parsed {diagram!r}")
    return diagram


def _check_state(diagram: LinkDiagram, state: State) -> None:
    if state.n_crossings != diagram.n:
        raise ValueError(
            f"State has {state.n_crossings} bits but the diagram has {diagram.n} crossings"
        )


@lru_cache(maxsize=4096)
def resolve(diagram: LinkDiagram, state: State) -> Resolution:
    """
    Smooth every crossing according to the state and trace the circles.

    Args:
        diagram: The link diagram
        state: A state of matching length

    Returns:
        The resolution, circles ordered by canonical id
    """
    _check_state(diagram, state)
    uf = UnionFind(diagram.edges())
    for i, crossing in enumerate(diagram.crossings):
        for a, b in crossing.pairs(state.bits[i]):
            uf.union(a, b)

    circles = sorted(
        (Circle(min(group), frozenset(group)) for group in uf.to_sets()),
        key=lambda circle: circle.canonical_id,
    )
    circle_of_edge = {e: i for i, circle in enumerate(circles) for e in circle.edges}
    return Resolution(tuple(circles), circle_of_edge)


def adjacent_circles(diagram: LinkDiagram, state: State, c: int) -> FrozenSet[EdgeId]:
    """Canonical ids of the circles of the resolution touching crossing ``c``."""
    resolution = resolve(diagram, state)
    return frozenset(resolution.containing(e).canonical_id for e in diagram.crossings[c].slots)


def classify(diagram: LinkDiagram, state: State, c: int) -> Saddle:
    """
    Classify the saddle from ``state`` to ``state ∪ {c}``.

    Args:
        diagram: The link diagram
        state: Source state
        c: Crossing index not in the state

    Returns:
        The saddle with its split/merge kind and the untouched bijection

    Raises:
        ValueError: If ``c`` already belongs to the state
        NonPlanarSaddleError: If the saddle neither splits nor merges
    """
    _check_state(diagram, state)
    if c in state:
        raise ValueError(f"Crossing {c} already belongs to {state!r}")

    source = resolve(diagram, state)
    target = resolve(diagram, state.with_(c))
    slots = diagram.crossings[c].slots

    src_ids = sorted({source.containing(e).canonical_id for e in slots})
    tgt_ids = sorted({target.containing(e).canonical_id for e in slots})
    inputs = tuple(source.circle(i) for i in src_ids)
    outputs = tuple(target.circle(i) for i in tgt_ids)

    if len(inputs) == 1 and len(outputs) == 2:
        kind = "split"
    elif len(inputs) == 2 and len(outputs) == 1:
        kind = "merge"
    else:
        raise NonPlanarSaddleError(
            f"Crossing {c} at {state!r} maps {len(inputs)} circle(s) to "
            f"{len(outputs)}; the diagram is not plane-realizable"
        )

    by_edges = {circle.edges: circle.canonical_id for circle in target.circles}
    untouched = []
    for circle in source.circles:
        if circle.canonical_id in src_ids:
            continue
        untouched.append((circle.canonical_id, by_edges[circle.edges]))

    return Saddle(kind, state, c, inputs, outputs, tuple(untouched))


def gamma_state(diagram: LinkDiagram, state: State) -> int:
    """
    Number of splits on any chain of saddles from the empty state to ``state``.

    Raises:
        ValueError: If the circle counts have the wrong parity
    """
    delta = (
        len(resolve(diagram, state))
        - len(resolve(diagram, State.empty(diagram.n)))
        + state.size
    )
    if delta % 2:
        raise ValueError(f"Parity violation at {state!r}; the diagram is corrupted")
    return delta // 2


def crossing_change(diagram: LinkDiagram, c: int) -> LinkDiagram:
    """Toggle the smoothing convention of crossing ``c``."""
    crossings = list(diagram.crossings)
    crossings[c] = crossings[c].flipped()
    return replace(diagram, crossings=tuple(crossings))


def component_index(diagram: LinkDiagram) -> List[Tuple[Tuple[int, ...], Tuple[EdgeId, ...]]]:
    """
    Group crossings into connected components of the 4-valent graph.

    Returns:
        (crossing indices, free loops) per component; crossing components come
        first, ordered by smallest crossing index, then one entry per free loop
    """
    graph = nx.MultiGraph()
    graph.add_nodes_from(range(diagram.n))
    ends: Dict[EdgeId, List[int]] = {}
    for i, crossing in enumerate(diagram.crossings):
        for e in crossing.slots:
            ends.setdefault(e, []).append(i)
    for e, (u, v) in ends.items():
        graph.add_edge(u, v, key=e)

    groups = sorted(tuple(sorted(comp)) for comp in nx.connected_components(graph))
    components = [(group, ()) for group in groups]
    components.extend(((), (loop,)) for loop in diagram.free_loops)
    return components


def split_components(diagram: LinkDiagram) -> List[LinkDiagram]:
    """Split a diagram into connected pieces, keeping edge labels."""
    return [
        LinkDiagram(tuple(diagram.crossings[i] for i in indices), loops)
        for indices, loops in component_index(diagram)
    ]


def _require_distinct(*crossings: int) -> None:
    if len(set(crossings)) != len(crossings):
        raise ValueError(f"Crossing indices must be distinct, got {crossings}")


def disjoint_in(diagram: LinkDiagram, state: State, c1: int, c2: int) -> bool:
    """True iff no circle of the resolution touches both crossings."""
    _require_distinct(c1, c2)
    return not adjacent_circles(diagram, state, c1) & adjacent_circles(diagram, state, c2)


def parallel_in(diagram: LinkDiagram, state: State, c1: int, c2: int) -> bool:
    """True iff both crossings touch the same two distinct circles."""
    _require_distinct(c1, c2)
    first = adjacent_circles(diagram, state, c1)
    return len(first) == 2 and first == adjacent_circles(diagram, state, c2)


def triangles_in(diagram: LinkDiagram, state: State) -> List[Tuple[int, int, int]]:
    """
    Triples of crossings of the state arranged as a triangle.

    Each crossing touches exactly two circles, and the three circle pairs are
    the three sides of a triangle on three distinct circles.
    """
    _check_state(diagram, state)
    sides = {}
    for c in state.members:
        adjacent = adjacent_circles(diagram, state, c)
        if len(adjacent) == 2:
            sides[c] = adjacent

    found = []
    for triple in itertools.combinations(sorted(sides), 3):
        pairs = [sides[c] for c in triple]
        if len(set(pairs)) == 3 and len(frozenset().union(*pairs)) == 3:
            found.append(triple)
    return found


def find_connected_state(diagram: LinkDiagram) -> State:
    """
    Find a state whose resolution is a single circle.

    Starting from the empty state, repeatedly toggle the lowest crossing that
    touches two distinct circles; every toggle merges those two circles.

    Raises:
        ValueError: If the diagram is not one connected crossing component
    """
    components = component_index(diagram)
    if len(components) != 1 or diagram.free_loops:
        raise ValueError(
            f"Expected one connected component without free loops, got {len(components)}"
        )

    state = State.empty(diagram.n)
    while len(resolve(diagram, state)) >= 2:
        for c in range(diagram.n):
            if len(adjacent_circles(diagram, state, c)) == 2:
                state = state.toggled(c)
                break
        else:
            raise ValueError("No crossing joins two circles; the diagram is disconnected")

    logger.debug(f"Connected state {state!r}")
    return state


def all_states(n: int) -> Iterator[State]:
    """All 2^n states in ascending mask order."""
    for mask in range(2**n):
        yield State.from_mask(n, mask)


def states_by_size(n: int) -> Dict[int, List[State]]:
    """States grouped by size, each group in ascending mask order."""
    groups: Dict[int, List[State]] = {k: [] for k in range(n + 1)}
    for state in all_states(n):
        groups[state.size].append(state)
    return groups
