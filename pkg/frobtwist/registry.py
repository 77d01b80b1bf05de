"""
Registry module for named Frobenius algebras.
"""

import logging
import threading
from typing import Callable, Dict, List

# Forward reference to avoid circular imports
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from frobtwist.frobenius import FrobeniusAlgebra

AlgebraFactory = Callable[[], "FrobeniusAlgebra"]

logger = logging.getLogger(__name__)


class AlgebraRegistry:
    """
    Singleton registry mapping algebra names to factories.
    """

    _instance = None
    _lock = threading.Lock()

    def __new__(cls):
        with cls._lock:
            if cls._instance is None:
                cls._instance = super(AlgebraRegistry, cls).__new__(cls)
                cls._instance._factories = {}
            return cls._instance

    def add(self, name: str, factory: AlgebraFactory) -> None:
        """
        Register a factory under a name.

        Args:
            name: Selector used on the command line and in config files
            factory: Zero-argument callable building the algebra

        Raises:
            ValueError: If the name is already taken by another factory
        """
        existing = self._factories.get(name)
        if existing is not None and existing is not factory:
            raise ValueError(f"Algebra with name '{name}' already exists")
        self._factories[name] = factory

    def get(self, name: str) -> "FrobeniusAlgebra":
        """
        Build the algebra registered under a name.

        Raises:
            KeyError: If no algebra with the given name exists
        """
        if name not in self._factories:
            known = ", ".join(sorted(self._factories)) or "none"
            raise KeyError(f"No algebra with name '{name}' found (known: {known})")
        return self._factories[name]()

    def remove(self, name: str) -> None:
        self._factories.pop(name, None)

    def names(self) -> List[str]:
        return sorted(self._factories)

    def list_all(self) -> Dict[str, AlgebraFactory]:
        return self._factories.copy()


def register_algebra(name: str) -> Callable[[AlgebraFactory], AlgebraFactory]:
    """
    Decorator registering an algebra factory.

    Example:
        ```python
        @register_algebra("kh")
        def khovanov() -> FrobeniusAlgebra:
            ...
        ```
    """

    def decorator(factory: AlgebraFactory) -> AlgebraFactory:
        logger.debug(f"Registering algebra: {name}")
        AlgebraRegistry().add(name, factory)
        return factory

    return decorator
