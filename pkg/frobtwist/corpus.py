"""
Bundled PD corpus.
"""

import os
from typing import Dict, List, Optional

from frobtwist.diagram import LinkDiagram, parse_pd

CORPUS_ENV = "FROBTWIST_CORPUS"

_BUNDLED = os.path.join(os.path.dirname(os.path.abspath(__file__)), "corpus")


def corpus_dir(override: Optional[str] = None) -> str:
    """The corpus directory: explicit override, then $FROBTWIST_CORPUS, then the bundled one."""
    return override or os.environ.get(CORPUS_ENV) or _BUNDLED


def names(directory: Optional[str] = None) -> List[str]:
    root = corpus_dir(directory)
    if not os.path.isdir(root):
        return []
    return sorted(f[:-3] for f in os.listdir(root) if f.endswith(".pd"))


def resolve_input(name_or_path: str, directory: Optional[str] = None) -> str:
    """
    Map a path or a bare corpus name to an existing PD file.

    Raises:
        FileNotFoundError: If neither exists
    """
    if os.path.isfile(name_or_path):
        return name_or_path
    candidate = os.path.join(corpus_dir(directory), f"{name_or_path}.pd")
    if os.path.isfile(candidate):
        return candidate
    raise FileNotFoundError(f"No PD file or corpus entry named {name_or_path!r}")


def read_pd(path: str) -> LinkDiagram:
    with open(path, "r") as handle:
        return parse_pd(handle.read())


def load(name: str, directory: Optional[str] = None) -> LinkDiagram:
    return read_pd(resolve_input(name, directory))


def load_all(directory: Optional[str] = None) -> Dict[str, LinkDiagram]:
    return {name: load(name, directory) for name in names(directory)}
