"""
frobtwist - twisting weights on the cube of resolutions and twisted Frobenius-algebra link complexes.
"""

from frobtwist.diagram import (
    Circle,
    Crossing,
    LinkDiagram,
    NonPlanarSaddleError,
    PDParseError,
    Resolution,
    Saddle,
    State,
    adjacent_circles,
    all_states,
    classify,
    crossing_change,
    disjoint_in,
    find_connected_state,
    gamma_state,
    parallel_in,
    parse_pd,
    resolve,
    split_components,
    triangles_in,
)
from frobtwist.weights import (
    DomainMismatchError,
    InvalidWeightError,
    PartialAssignment,
    TwistingWeight,
    Violation,
    ViolationReport,
    WeightConstructionError,
    chain_compatible,
    check_weight,
    compatible_pair,
    construct,
    construct_connected,
    transfer,
)
from frobtwist.oracle import SizeGuardError, oracle_solve
from frobtwist.frobenius import (
    AlgebraElement,
    FrobeniusAlgebra,
    NotInvertibleError,
    builtin,
    check_twist_comparison,
    invert,
    power,
    twist,
    validate_axioms,
)
from frobtwist.registry import AlgebraRegistry, register_algebra
from frobtwist.cube import (
    ChainComplex,
    ChainMap,
    ComplexError,
    CubeOfModules,
    HomologyGroup,
    assemble_complex,
    build_cube,
    build_theta_iso,
    homology_snf,
    inverse_theta_iso,
    verify_chain_map,
    verify_iso,
)
from frobtwist.config import RunConfig, load_algebra, load_yaml

__all__ = [
    "Circle",
    "Crossing",
    "LinkDiagram",
    "NonPlanarSaddleError",
    "PDParseError",
    "Resolution",
    "Saddle",
    "State",
    "adjacent_circles",
    "all_states",
    "classify",
    "crossing_change",
    "disjoint_in",
    "find_connected_state",
    "gamma_state",
    "parallel_in",
    "parse_pd",
    "resolve",
    "split_components",
    "triangles_in",
    "DomainMismatchError",
    "InvalidWeightError",
    "PartialAssignment",
    "TwistingWeight",
    "Violation",
    "ViolationReport",
    "WeightConstructionError",
    "chain_compatible",
    "check_weight",
    "compatible_pair",
    "construct",
    "construct_connected",
    "transfer",
    "SizeGuardError",
    "oracle_solve",
    "AlgebraElement",
    "FrobeniusAlgebra",
    "NotInvertibleError",
    "builtin",
    "check_twist_comparison",
    "invert",
    "power",
    "twist",
    "validate_axioms",
    "AlgebraRegistry",
    "register_algebra",
    "ChainComplex",
    "ChainMap",
    "ComplexError",
    "CubeOfModules",
    "HomologyGroup",
    "assemble_complex",
    "build_cube",
    "build_theta_iso",
    "homology_snf",
    "inverse_theta_iso",
    "verify_chain_map",
    "verify_iso",
    "RunConfig",
    "load_algebra",
    "load_yaml",
]

__version__ = "0.1.0"
