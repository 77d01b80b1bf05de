"""
Configuration module: run settings and algebra files loaded from YAML or JSON.
"""

import logging
import os
from dataclasses import dataclass, replace
from typing import Any, Dict, Optional, Tuple

try:
    import yaml
except ImportError:
    raise ImportError(
        "PyYAML is required for configuration loading. "
        "Please install it with: pip install pyyaml"
    )

from frobtwist.frobenius import FrobeniusAlgebra, builtin, validate_axioms
from frobtwist.oracle import DEFAULT_ORACLE_CAP

logger = logging.getLogger(__name__)

DEFAULT_MAX_CROSSINGS = 16

RUN_KEYS = {"max_crossings", "oracle_cap", "algebra", "theta", "corpus", "output"}


def load_yaml(path: str) -> Dict[str, Any]:
    """
    Load a YAML configuration file and return Python objects.

    JSON documents load through the same path.

    Args:
        path: Path to the YAML configuration file

    Returns:
        Dictionary containing the configuration

    Raises:
        FileNotFoundError: If the file doesn't exist
        yaml.YAMLError: If the YAML file is invalid
    """
    if not os.path.exists(path):
        raise FileNotFoundError(f"Configuration file not found: {path}")

    with open(path, "r") as file:
        try:
            config = yaml.safe_load(file)
            return config
        except yaml.YAMLError as e:
            raise yaml.YAMLError(f"Error parsing YAML file: {e}")


def parse_theta(text: str) -> Tuple[int, ...]:
    """
    Parse a comma-separated coordinate vector such as ``"1,1"``.

    Raises:
        ValueError: On an empty or non-integer entry
    """
    parts = [p.strip() for p in str(text).split(",")]
    if not parts or any(not p for p in parts):
        raise ValueError(f"θ must be a comma-separated list of integers, got {text!r}")
    try:
        return tuple(int(p) for p in parts)
    except ValueError:
        raise ValueError(f"θ must be a comma-separated list of integers, got {text!r}")


@dataclass(frozen=True)
class RunConfig:
    """
    Settings for one command-line run.

    Attributes:
        subcommand: Name of the command being run
        input_path: PD file or corpus name
        algebra: Builtin algebra name or path to an algebra file
        theta: Coordinates of θ, if given
        max_crossings: Largest diagram accepted by weight, check, iso and homology
        oracle_cap: Largest diagram accepted by the oracle
        output: Path for the JSON output, if any
        corpus: Directory overriding the bundled corpus
    """

    subcommand: str = ""
    input_path: str = ""
    algebra: Optional[str] = None
    theta: Optional[Tuple[int, ...]] = None
    max_crossings: int = DEFAULT_MAX_CROSSINGS
    oracle_cap: int = DEFAULT_ORACLE_CAP
    output: Optional[str] = None
    corpus: Optional[str] = None

    def __post_init__(self):
        if self.max_crossings <= 0:
            raise ValueError(f"max_crossings must be positive, got {self.max_crossings}")
        if self.oracle_cap <= 0:
            raise ValueError(f"oracle_cap must be positive, got {self.oracle_cap}")

    def validate_theta(self, rank: int) -> None:
        """
        Raises:
            ValueError: If θ is given with the wrong number of coordinates
        """
        if self.theta is not None and len(self.theta) != rank:
            raise ValueError(f"θ has {len(self.theta)} coordinates, algebra rank is {rank}")

    def merged(self, **overrides: Any) -> "RunConfig":
        """A copy with every override that is not None applied."""
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})


def create_run_config_from_cfg(entry: Optional[Dict[str, Any]], **overrides: Any) -> RunConfig:
    """
    Create run settings from a configuration entry.

    Supported configuration keys:
    - max_crossings: Crossing cap (optional, defaults to 16)
    - oracle_cap: Oracle crossing cap (optional, defaults to 8)
    - algebra: Builtin name or algebra file (optional)
    - theta: List of integers or comma-separated string (optional)
    - corpus: Corpus directory (optional)
    - output: Output path (optional)

    Explicit keyword overrides win over the entry; None overrides are ignored.

    Raises:
        ValueError: On unknown keys or invalid values
    """
    entry = dict(entry or {})
    unknown = sorted(set(entry) - RUN_KEYS)
    if unknown:
        raise ValueError(f"Unknown configuration keys: {', '.join(unknown)}")

    theta = entry.get("theta")
    if theta is not None and not isinstance(theta, (list, tuple)):
        theta = parse_theta(theta)
    elif theta is not None:
        theta = tuple(int(v) for v in theta)

    config = RunConfig(
        algebra=entry.get("algebra"),
        theta=theta,
        max_crossings=int(entry.get("max_crossings", DEFAULT_MAX_CROSSINGS)),
        oracle_cap=int(entry.get("oracle_cap", DEFAULT_ORACLE_CAP)),
        output=entry.get("output"),
        corpus=entry.get("corpus"),
    )
    return config.merged(**overrides)


def load_run_config(path: str, **overrides: Any) -> RunConfig:
    cfg = load_yaml(path)
    if cfg is not None and not isinstance(cfg, dict):
        raise ValueError(f"Configuration file {path} must contain a mapping")
    logger.debug(f"Loaded run configuration from {path}")
    return create_run_config_from_cfg(cfg, **overrides)


def create_algebra_from_cfg(entry: Dict[str, Any], name: str = "") -> FrobeniusAlgebra:
    """
    Create an algebra from an algebra-file entry.

    Required keys: rank, unit, counit, mult, comult, with
    ``mult[i][j][k]`` the coefficient of e_k in e_i e_j and
    ``comult[i][j][k]`` the coefficient of e_j ⊗ e_k in Δ(e_i).

    Raises:
        ValueError: If keys are missing or the axioms fail
    """
    missing = [k for k in ("rank", "unit", "counit", "mult", "comult") if k not in entry]
    if missing:
        raise ValueError(f"Algebra configuration missing required fields: {', '.join(missing)}")

    algebra = FrobeniusAlgebra(
        rank=int(entry["rank"]),
        unit=entry["unit"],
        counit=entry["counit"],
        mult=entry["mult"],
        comult=entry["comult"],
        name=str(entry.get("name", name)),
    )
    failures = validate_axioms(algebra)
    if failures:
        raise ValueError(f"Algebra fails axioms: {', '.join(failures)}")
    return algebra


def load_algebra(selector: str) -> FrobeniusAlgebra:
    """
    Resolve a builtin name or an algebra file.

    Raises:
        KeyError: If the selector is neither a file nor a builtin name
        ValueError: If the file describes an invalid algebra
    """
    if os.path.isfile(selector):
        entry = load_yaml(selector)
        if not isinstance(entry, dict):
            raise ValueError(f"Algebra file {selector} must contain a mapping")
        name = os.path.splitext(os.path.basename(selector))[0]
        return create_algebra_from_cfg(entry, name=name)
    return builtin(selector)
