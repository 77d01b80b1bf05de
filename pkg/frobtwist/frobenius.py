"""
Frobenius algebras over the integers, given by structure constants.

Index conventions follow the algebra file format: ``mult[i][j][k]`` is the
coefficient of e_k in e_i e_j, and ``comult[i][j][k]`` the coefficient of
e_j ⊗ e_k in Δ(e_i). Tensor products use ``np.kron`` order, so basis vector
e_i ⊗ e_j sits at index ``i * rank + j``.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Union

import numpy as np
import sympy

from frobtwist.registry import AlgebraRegistry, register_algebra

logger = logging.getLogger(__name__)


class NotInvertibleError(ValueError):
    """Raised when an element has no inverse with integer coordinates."""


@dataclass(frozen=True)
class AlgebraElement:
    """
    An element of a Frobenius algebra in its fixed basis.

    Attributes:
        coords: Integer coordinates
    """

    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(int(x) for x in self.coords))

    def as_array(self) -> np.ndarray:
        return np.array(self.coords, dtype=np.int64)

    def __repr__(self) -> str:
        return f"AlgebraElement({list(self.coords)})"


ElementLike = Union[AlgebraElement, Sequence[int], np.ndarray]


@dataclass(frozen=True, eq=False)
class FrobeniusAlgebra:
    """
    A commutative Frobenius algebra on a free module of finite rank.

    Attributes:
        rank: Rank of the underlying free module
        unit: Coordinates of the unit
        counit: Counit covector
        mult: Multiplication tensor of shape (rank, rank, rank)
        comult: Comultiplication tensor of shape (rank, rank, rank)
        name: Optional label used in reports
    """

    rank: int
    unit: np.ndarray
    counit: np.ndarray
    mult: np.ndarray
    comult: np.ndarray
    name: str = ""

    def __post_init__(self):
        for attr in ("unit", "counit", "mult", "comult"):
            object.__setattr__(self, attr, np.asarray(getattr(self, attr), dtype=np.int64))

    def __eq__(self, other) -> bool:
        if not isinstance(other, FrobeniusAlgebra):
            return NotImplemented
        return self.rank == other.rank and all(
            np.array_equal(getattr(self, attr), getattr(other, attr))
            for attr in ("unit", "counit", "mult", "comult")
        )

    __hash__ = None

    def element(self, coords: Sequence[int]) -> AlgebraElement:
        return _element(self, coords)

    @property
    def one(self) -> AlgebraElement:
        return AlgebraElement(self.unit)

    def mult_matrix(self) -> np.ndarray:
        """μ as a (rank, rank²) matrix."""
        r = self.rank
        return self.mult.reshape(r * r, r).T

    def comult_matrix(self) -> np.ndarray:
        """Δ as a (rank², rank) matrix."""
        r = self.rank
        return self.comult.reshape(r, r * r).T

    def __repr__(self) -> str:
        label = f" {self.name!r}" if self.name else ""
        return f"FrobeniusAlgebra{label}(rank={self.rank})"


def _element(algebra: FrobeniusAlgebra, x: ElementLike) -> AlgebraElement:
    element = x if isinstance(x, AlgebraElement) else AlgebraElement(tuple(x))
    if len(element.coords) != algebra.rank:
        raise ValueError(
            f"Element has {len(element.coords)} coordinates, algebra rank is {algebra.rank}"
        )
    return element


def multiplication_matrix(algebra: FrobeniusAlgebra, x: ElementLike) -> np.ndarray:
    """Matrix of y ↦ x·y."""
    coords = _element(algebra, x).as_array()
    return np.einsum("i,ijk->kj", coords, algebra.mult)


def multiply(algebra: FrobeniusAlgebra, x: ElementLike, y: ElementLike) -> AlgebraElement:
    a = _element(algebra, x).as_array()
    b = _element(algebra, y).as_array()
    return AlgebraElement(np.einsum("i,j,ijk->k", a, b, algebra.mult))


def validate_axioms(algebra: FrobeniusAlgebra) -> List[str]:
    """
    Evaluate every Frobenius algebra axiom as an exact matrix identity.

    Args:
        algebra: The algebra to check

    Returns:
        Names of the failed identities; empty iff the algebra is valid

    Raises:
        ValueError: If a structure tensor does not match the rank
    """
    r = algebra.rank
    expected = {
        "unit": (r,),
        "counit": (r,),
        "mult": (r, r, r),
        "comult": (r, r, r),
    }
    if r < 1:
        raise ValueError(f"Rank must be at least 1, got {r}")
    for attr, shape in expected.items():
        if getattr(algebra, attr).shape != shape:
            raise ValueError(
                f"{attr} has shape {getattr(algebra, attr).shape}, expected {shape}"
            )

    ident = np.eye(r, dtype=np.int64)
    mu = algebra.mult_matrix()
    delta = algebra.comult_matrix()
    eta = algebra.unit.reshape(r, 1)
    eps = algebra.counit.reshape(1, r)

    checks = {
        "commutativity": np.array_equal(algebra.mult, algebra.mult.transpose(1, 0, 2)),
        "associativity": np.array_equal(mu @ np.kron(mu, ident), mu @ np.kron(ident, mu)),
        "left unit": np.array_equal(mu @ np.kron(eta, ident), ident),
        "right unit": np.array_equal(mu @ np.kron(ident, eta), ident),
        "coassociativity": np.array_equal(
            np.kron(delta, ident) @ delta, np.kron(ident, delta) @ delta
        ),
        "left counit": np.array_equal(np.kron(eps, ident) @ delta, ident),
        "right counit": np.array_equal(np.kron(ident, eps) @ delta, ident),
        "frobenius (left)": np.array_equal(
            delta @ mu, np.kron(mu, ident) @ np.kron(ident, delta)
        ),
        "frobenius (right)": np.array_equal(
            delta @ mu, np.kron(ident, mu) @ np.kron(delta, ident)
        ),
    }
    failures = [name for name, ok in checks.items() if not ok]
    if failures:
        logger.debug(f"{algebra!r} fails {failures}")
    return failures


def builtin(name: str) -> FrobeniusAlgebra:
    """
    Build a registered algebra by name.

    Raises:
        KeyError: If the name is unknown
    """
    return AlgebraRegistry().get(name)


def _two_dim(name: str, x_squared: Sequence[int], delta_x: np.ndarray) -> FrobeniusAlgebra:
    mult = np.zeros((2, 2, 2), dtype=np.int64)
    mult[0, 0, 0] = 1
    mult[0, 1, 1] = mult[1, 0, 1] = 1
    mult[1, 1] = x_squared

    comult = np.zeros((2, 2, 2), dtype=np.int64)
    comult[0, 0, 1] = comult[0, 1, 0] = 1
    comult[1] = delta_x
    return FrobeniusAlgebra(2, [1, 0], [0, 1], mult, comult, name=name)


@register_algebra("kh")
def khovanov() -> FrobeniusAlgebra:
    """Z[X]/(X²) with Δ(1) = 1⊗X + X⊗1, Δ(X) = X⊗X, ε(X) = 1."""
    return _two_dim("kh", [0, 0], np.array([[0, 0], [0, 1]]))


@register_algebra("lee")
def lee() -> FrobeniusAlgebra:
    """Z[X]/(X² − 1) with Δ(X) = X⊗X + 1⊗1."""
    return _two_dim("lee", [1, 0], np.array([[1, 0], [0, 1]]))


def invert(algebra: FrobeniusAlgebra, theta: ElementLike) -> Optional[AlgebraElement]:
    """
    Inverse of θ, if it has integer coordinates.

    Solves x·θ = 1 exactly over the rationals and keeps the answer only when it
    is integral.
    """
    theta = _element(algebra, theta)
    matrix = sympy.Matrix(multiplication_matrix(algebra, theta).tolist())
    if matrix.det() == 0:
        return None
    solution = matrix.LUsolve(sympy.Matrix(algebra.unit.tolist()))
    if not all(value.is_integer for value in solution):
        return None

    inverse = AlgebraElement(tuple(int(value) for value in solution))
    if multiply(algebra, theta, inverse) != algebra.one:
        return None
    return inverse


def _require_inverse(algebra: FrobeniusAlgebra, theta: AlgebraElement) -> AlgebraElement:
    inverse = invert(algebra, theta)
    if inverse is None:
        raise NotInvertibleError(f"{theta!r} is not invertible in {algebra!r}")
    return inverse


def power(algebra: FrobeniusAlgebra, theta: ElementLike, k: int) -> AlgebraElement:
    """
    θ^k, with θ⁰ the unit and negative powers taken through the inverse.

    Raises:
        NotInvertibleError: If k < 0 and θ is not invertible
    """
    base = _element(algebra, theta)
    if k < 0:
        base = _require_inverse(algebra, base)
        k = -k
    result = algebra.one
    for _ in range(k):
        result = multiply(algebra, result, base)
    return result


def twist(algebra: FrobeniusAlgebra, theta: ElementLike) -> FrobeniusAlgebra:
    """
    The twist A^θ: same algebra, ε^θ(x) = ε(θx) and Δ^θ(x) = Δ(θ⁻¹x).

    Raises:
        NotInvertibleError: If θ is not invertible
    """
    theta = _element(algebra, theta)
    inverse = _require_inverse(algebra, theta)
    r = algebra.rank

    counit = algebra.counit @ multiplication_matrix(algebra, theta)
    delta = algebra.comult_matrix() @ multiplication_matrix(algebra, inverse)
    comult = delta.T.reshape(r, r, r)

    name = f"{algebra.name}^{list(theta.coords)}" if algebra.name else ""
    return FrobeniusAlgebra(r, algebra.unit, counit, algebra.mult, comult, name=name)


def check_twist_comparison(
    algebra: FrobeniusAlgebra,
    theta: ElementLike,
    p: int,
    q: int,
    twisted: Optional[FrobeniusAlgebra] = None,
) -> bool:
    """
    Check the two comparison squares between A and A^θ for exponents p, q.

    Δ ∘ θ^{p+q-1} must equal (θ^p ⊗ θ^q) ∘ Δ^θ, and θ^{p+q} ∘ μ must equal
    μ ∘ (θ^p ⊗ θ^q).

    Args:
        algebra: The untwisted algebra A
        theta: Invertible element θ
        p: Exponent on the first leg
        q: Exponent on the second leg
        twisted: Algebra standing in for A^θ; defaults to ``twist(algebra, theta)``

    Raises:
        NotInvertibleError: If θ is not invertible
    """
    theta = _element(algebra, theta)
    if twisted is None:
        twisted = twist(algebra, theta)
    else:
        _require_inverse(algebra, theta)

    def scale(k: int) -> np.ndarray:
        return multiplication_matrix(algebra, power(algebra, theta, k))

    legs = np.kron(scale(p), scale(q))
    split_ok = np.array_equal(
        algebra.comult_matrix() @ scale(p + q - 1), legs @ twisted.comult_matrix()
    )
    merge_ok = np.array_equal(
        scale(p + q) @ twisted.mult_matrix(), algebra.mult_matrix() @ legs
    )
    return split_ok and merge_ok
