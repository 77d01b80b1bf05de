"""
Cube of modules, chain complexes and the comparison isomorphism.

Each state carries the tensor power of the algebra with one leg per circle,
legs in ascending canonical id and basis in ``np.kron`` order (last leg
fastest). Saddle maps apply Δ or μ on the touched legs and the identity on
the others.
"""

import logging
import string
import time
from dataclasses import dataclass, field
from functools import reduce
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np
import sympy

from frobtwist.diagram import LinkDiagram, Saddle, State, all_states, classify, resolve, states_by_size
from frobtwist.frobenius import (
    ElementLike,
    FrobeniusAlgebra,
    multiplication_matrix,
    power,
    twist,
    validate_axioms,
)
from frobtwist.snf import invariant_factors
from frobtwist.weights import TwistingWeight, check_domain, check_weight

logger = logging.getLogger(__name__)

_LETTERS = string.ascii_letters


class ComplexError(ValueError):
    """Raised on non-commuting cubes, d∘d ≠ 0 and shape mismatches."""


@dataclass(frozen=True, eq=False)
class CubeOfModules:
    """
    The cube of free modules over a diagram.

    Attributes:
        diagram: The link diagram
        algebra: Algebra placed on every circle
        legs: Canonical circle ids per state, ascending
        maps: Saddle matrix per (source state, crossing)
    """

    diagram: LinkDiagram
    algebra: FrobeniusAlgebra
    legs: Dict[State, Tuple[int, ...]]
    maps: Dict[Tuple[State, int], np.ndarray]

    def rank_of(self, state: State) -> int:
        return self.algebra.rank ** len(self.legs[state])


@dataclass(frozen=True, eq=False)
class ChainComplex:
    """
    A cochain complex of free modules.

    Attributes:
        ranks: Rank of C^i for i = 0..n
        differentials: d_i : C^i -> C^{i+1} as (ranks[i+1], ranks[i]) matrices
        summands: States making up each C^i, in block order
    """

    ranks: Tuple[int, ...]
    differentials: Tuple[np.ndarray, ...]
    summands: Tuple[Tuple[State, ...], ...] = field(default=())

    def __post_init__(self):
        if len(self.differentials) != max(len(self.ranks) - 1, 0):
            raise ComplexError(
                f"{len(self.ranks)} degrees need {len(self.ranks) - 1} differentials, "
                f"got {len(self.differentials)}"
            )
        for i, d in enumerate(self.differentials):
            if d.shape != (self.ranks[i + 1], self.ranks[i]):
                raise ComplexError(
                    f"d_{i} has shape {d.shape}, expected {(self.ranks[i + 1], self.ranks[i])}"
                )


@dataclass(frozen=True, eq=False)
class ChainMap:
    """
    Degreewise maps f_i : source^i -> target^i.
    """

    source: ChainComplex
    target: ChainComplex
    maps: Tuple[np.ndarray, ...]


@dataclass(frozen=True)
class HomologyGroup:
    """
    H^i as a free rank plus torsion coefficients.
    """

    degree: int
    rank: int
    torsion: Tuple[int, ...] = ()


def _saddle_matrix(
    algebra: FrobeniusAlgebra,
    saddle: Saddle,
    source_legs: Tuple[int, ...],
    target_legs: Tuple[int, ...],
) -> np.ndarray:
    r = algebra.rank
    if len(source_legs) + len(target_legs) > len(_LETTERS):
        raise ComplexError(
            f"Saddle on {len(source_legs)} -> {len(target_legs)} circles is too large"
        )
    src = {cid: _LETTERS[i] for i, cid in enumerate(source_legs)}
    tgt = {cid: _LETTERS[len(source_legs) + i] for i, cid in enumerate(target_legs)}

    subscripts: List[str] = []
    operands: List[np.ndarray] = []
    ins = [c.canonical_id for c in saddle.inputs]
    outs = [c.canonical_id for c in saddle.outputs]
    if saddle.is_split:
        subscripts.append(src[ins[0]] + tgt[outs[0]] + tgt[outs[1]])
        operands.append(algebra.comult)
    else:
        subscripts.append(src[ins[0]] + src[ins[1]] + tgt[outs[0]])
        operands.append(algebra.mult)
    identity = np.eye(r, dtype=np.int64)
    for a, b in saddle.untouched:
        subscripts.append(tgt[b] + src[a])
        operands.append(identity)

    output = "".join(tgt[cid] for cid in target_legs) + "".join(src[cid] for cid in source_legs)
    tensor = np.einsum(",".join(subscripts) + "->" + output, *operands)
    return tensor.reshape(r ** len(target_legs), r ** len(source_legs))


def build_cube(diagram: LinkDiagram, algebra: FrobeniusAlgebra) -> CubeOfModules:
    """
    Place the algebra on every circle and Δ/μ on every saddle.

    Raises:
        ValueError: If the algebra fails its axioms
    """
    failures = validate_axioms(algebra)
    if failures:
        raise ValueError(f"{algebra!r} is not a Frobenius algebra: {', '.join(failures)}")

    legs = {state: resolve(diagram, state).ids() for state in all_states(diagram.n)}
    maps = {}
    for state in all_states(diagram.n):
        for c in range(diagram.n):
            if c in state:
                continue
            saddle = classify(diagram, state, c)
            maps[(state, c)] = _saddle_matrix(algebra, saddle, legs[state], legs[state.with_(c)])
    logger.debug(f"Cube over {diagram!r}: {len(legs)} states, {len(maps)} saddle maps")
    return CubeOfModules(diagram, algebra, legs, maps)


def check_faces(cube: CubeOfModules) -> List[Tuple[State, int, int]]:
    """Square faces (state, c, c') whose two paths disagree."""
    failing = []
    n = cube.diagram.n
    for state in all_states(n):
        free = [c for c in range(n) if c not in state]
        for i, c in enumerate(free):
            for c2 in free[i + 1:]:
                first = cube.maps[(state.with_(c), c2)] @ cube.maps[(state, c)]
                second = cube.maps[(state.with_(c2), c)] @ cube.maps[(state, c2)]
                if not np.array_equal(first, second):
                    failing.append((state, c, c2))
    return failing


def edge_sign(state: State, c: int) -> int:
    """(-1) to the number of members of the state below ``c``."""
    return -1 if sum(1 for m in state.members if m < c) % 2 else 1


def assemble_complex(cube: CubeOfModules) -> ChainComplex:
    """
    Sum the cube into a complex with signed saddle blocks.

    Raises:
        ComplexError: If a face of the cube does not commute
    """
    failing = check_faces(cube)
    if failing:
        raise ComplexError(f"{len(failing)} cube face(s) do not commute, first {failing[0]}")

    n = cube.diagram.n
    levels = states_by_size(n)
    summands = tuple(tuple(levels[i]) for i in range(n + 1))
    offsets: Dict[State, int] = {}
    ranks = []
    for group in summands:
        total = 0
        for state in group:
            offsets[state] = total
            total += cube.rank_of(state)
        ranks.append(total)

    differentials = []
    for i in range(n):
        d = np.zeros((ranks[i + 1], ranks[i]), dtype=np.int64)
        for state in summands[i]:
            col = offsets[state]
            width = cube.rank_of(state)
            for c in range(n):
                if c in state:
                    continue
                target = state.with_(c)
                row = offsets[target]
                height = cube.rank_of(target)
                d[row:row + height, col:col + width] += edge_sign(state, c) * cube.maps[(state, c)]
        differentials.append(d)

    complex_ = ChainComplex(tuple(ranks), tuple(differentials), summands)
    for i in range(n - 1):
        if np.any(differentials[i + 1] @ differentials[i]):
            raise ComplexError(f"d_{i + 1} ∘ d_{i} is nonzero")
    logger.debug(f"Complex ranks {ranks}")
    return complex_


def build_complex(diagram: LinkDiagram, algebra: FrobeniusAlgebra) -> ChainComplex:
    return assemble_complex(build_cube(diagram, algebra))


def _block_diagonal(blocks: Sequence[np.ndarray]) -> np.ndarray:
    rows = sum(b.shape[0] for b in blocks)
    cols = sum(b.shape[1] for b in blocks)
    out = np.zeros((rows, cols), dtype=np.int64)
    r = c = 0
    for block in blocks:
        out[r:r + block.shape[0], c:c + block.shape[1]] = block
        r += block.shape[0]
        c += block.shape[1]
    return out


def _theta_maps(
    diagram: LinkDiagram,
    algebra: FrobeniusAlgebra,
    theta: ElementLike,
    weight: TwistingWeight,
    summands: Tuple[Tuple[State, ...], ...],
    sign: int,
) -> Tuple[np.ndarray, ...]:
    cache: Dict[int, np.ndarray] = {}

    def scale(k: int) -> np.ndarray:
        if k not in cache:
            cache[k] = multiplication_matrix(algebra, power(algebra, theta, k))
        return cache[k]

    maps = []
    for group in summands:
        blocks = []
        for state in group:
            legs = [scale(sign * weight.get(state, cid)) for cid in resolve(diagram, state).ids()]
            blocks.append(reduce(np.kron, legs, np.ones((1, 1), dtype=np.int64)))
        maps.append(_block_diagonal(blocks))
    return tuple(maps)


def twisted_pair(
    diagram: LinkDiagram, algebra: FrobeniusAlgebra, theta: ElementLike
) -> Tuple[ChainComplex, ChainComplex]:
    """The complexes C(D; A^θ) and C(D; A)."""
    return build_complex(diagram, twist(algebra, theta)), build_complex(diagram, algebra)


def build_theta_iso(
    diagram: LinkDiagram,
    algebra: FrobeniusAlgebra,
    theta: ElementLike,
    weight: TwistingWeight,
    source: Optional[ChainComplex] = None,
    target: Optional[ChainComplex] = None,
) -> ChainMap:
    """
    Multiply the leg of each circle C by θ^ν(C), from C(D; A^θ) to C(D; A).

    An invalid weight still yields a map; the caller sees the failure through
    :func:`verify_chain_map`.

    Raises:
        NotInvertibleError: If θ is not invertible
        DomainMismatchError: If the weight does not label the diagram
    """
    check_domain(diagram, weight)
    if source is None or target is None:
        source, target = twisted_pair(diagram, algebra, theta)
    if not check_weight(diagram, weight).ok:
        logger.warning("Building the comparison map from a labelling that is not a twisting weight")
    maps = _theta_maps(diagram, algebra, theta, weight, target.summands, 1)
    return ChainMap(source, target, maps)


def inverse_theta_iso(
    diagram: LinkDiagram,
    algebra: FrobeniusAlgebra,
    theta: ElementLike,
    weight: TwistingWeight,
    source: Optional[ChainComplex] = None,
    target: Optional[ChainComplex] = None,
) -> ChainMap:
    """The inverse map, multiplying each leg by θ^-ν(C), from C(D; A) to C(D; A^θ)."""
    check_domain(diagram, weight)
    if source is None or target is None:
        target, source = twisted_pair(diagram, algebra, theta)
    maps = _theta_maps(diagram, algebra, theta, weight, source.summands, -1)
    return ChainMap(source, target, maps)


def compose_chain_maps(first: ChainMap, second: ChainMap) -> ChainMap:
    """second ∘ first."""
    if len(first.maps) != len(second.maps):
        raise ComplexError("Chain maps have different lengths")
    return ChainMap(
        first.source,
        second.target,
        tuple(g @ f for f, g in zip(first.maps, second.maps)),
    )


def _check_shapes(f: ChainMap) -> None:
    if len(f.maps) != len(f.source.ranks) or len(f.source.ranks) != len(f.target.ranks):
        raise ComplexError(
            f"Map has {len(f.maps)} degrees, complexes have "
            f"{len(f.source.ranks)} and {len(f.target.ranks)}"
        )
    for i, m in enumerate(f.maps):
        expected = (f.target.ranks[i], f.source.ranks[i])
        if m.shape != expected:
            raise ComplexError(f"f_{i} has shape {m.shape}, expected {expected}")


def verify_chain_map(f: ChainMap) -> bool:
    """
    Check f_{i+1} d_i = d'_i f_i in every degree.

    Raises:
        ComplexError: On a shape mismatch
    """
    _check_shapes(f)
    for i, d in enumerate(f.source.differentials):
        if not np.array_equal(f.maps[i + 1] @ d, f.target.differentials[i] @ f.maps[i]):
            logger.debug(f"Chain-map identity fails in degree {i}")
            return False
    return True


def is_unimodular(matrix: np.ndarray) -> bool:
    """
    Whether a square integer matrix has determinant ±1.

    The determinant is taken block by block over the connected components of
    the bipartite row/column graph of nonzero entries.
    """
    rows, cols = matrix.shape
    if rows != cols:
        return False
    if rows == 0:
        return True

    graph = nx.Graph()
    graph.add_nodes_from(("r", i) for i in range(rows))
    graph.add_nodes_from(("c", j) for j in range(cols))
    for i, j in zip(*np.nonzero(matrix)):
        graph.add_edge(("r", int(i)), ("c", int(j)))

    det = 1
    for component in nx.connected_components(graph):
        block_rows = sorted(i for kind, i in component if kind == "r")
        block_cols = sorted(j for kind, j in component if kind == "c")
        if len(block_rows) != len(block_cols):
            return False
        block = matrix[np.ix_(block_rows, block_cols)]
        det *= int(sympy.Matrix(block.tolist()).det())
        if det == 0:
            return False
    return abs(det) == 1


def verify_iso(f: ChainMap) -> bool:
    """A chain map whose every component is invertible over the integers."""
    return verify_chain_map(f) and all(is_unimodular(m) for m in f.maps)


def homology_snf(complex_: ChainComplex) -> List[HomologyGroup]:
    """
    Integral cohomology of a complex from the Smith forms of its differentials.

    Raises:
        ComplexError: If some d_{i+1} d_i is nonzero
    """
    ds = complex_.differentials
    for i in range(len(ds) - 1):
        if np.any(ds[i + 1] @ ds[i]):
            raise ComplexError(f"d_{i + 1} ∘ d_{i} is nonzero")

    started = time.perf_counter()
    factors = [invariant_factors(d) for d in ds]
    groups = []
    for i, rank in enumerate(complex_.ranks):
        out_rank = len(factors[i]) if i < len(ds) else 0
        incoming = factors[i - 1] if i > 0 else ()
        groups.append(
            HomologyGroup(
                degree=i,
                rank=rank - out_rank - len(incoming),
                torsion=tuple(f for f in incoming if f > 1),
            )
        )
    logger.debug(f"Homology of ranks {list(complex_.ranks)} in {time.perf_counter() - started:.3f}s")
    return groups
