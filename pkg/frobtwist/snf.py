"""
Exact integer linear algebra built on sympy's Smith normal form.

Both entry points first pivot on ±1 entries of a sparse row representation.
A unit pivot is a unimodular step, so it keeps the invariant factors and the
set of integral solutions. The much smaller residual matrix then goes to
sympy over ZZ.
"""

import logging
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from sympy import ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import invariant_factors as _invariant_factors
from sympy.polys.matrices.normalforms import smith_normal_decomp

logger = logging.getLogger(__name__)

SparseRow = Dict[int, int]


def to_domain_matrix(rows: Sequence[Sequence[int]], shape: Tuple[int, int]) -> DomainMatrix:
    if 0 in shape:
        return DomainMatrix.zeros(shape, ZZ)
    return DomainMatrix.from_list([[int(v) for v in row] for row in rows], ZZ)


def normalize_factors(values: Sequence[int]) -> Tuple[int, ...]:
    """
    Rewrite nonzero diagonal entries as a divisibility chain.

    The diagonal sympy returns is not always a chain; replacing pairs by their
    gcd and lcm keeps the cokernel and makes the list canonical.
    """
    vals = sorted(abs(int(v)) for v in values if v)
    changed = True
    while changed:
        changed = False
        for i in range(len(vals)):
            for j in range(i + 1, len(vals)):
                a, b = vals[i], vals[j]
                if b % a:
                    g = gcd(a, b)
                    vals[i], vals[j] = g, a * b // g
                    changed = True
        vals.sort()
    return tuple(vals)


class _Eliminator:
    """Sparse Gaussian elimination restricted to ±1 pivots."""

    def __init__(self, rows: List[SparseRow], rhs: Optional[List[int]] = None):
        self.rows: Dict[int, SparseRow] = {i: dict(r) for i, r in enumerate(rows) if r}
        self.rhs: Dict[int, int] = {i: v for i, v in enumerate(rhs or [])}
        self.cols: Dict[int, set] = {}
        for i, row in self.rows.items():
            for j in row:
                self.cols.setdefault(j, set()).add(i)
        self.pivots: List[Tuple[int, int, SparseRow, int]] = []

    def _find_pivot(self) -> Optional[Tuple[int, int]]:
        best = None
        for i, row in self.rows.items():
            for j, v in row.items():
                if v in (1, -1):
                    cost = (len(row) - 1) * (len(self.cols[j]) - 1)
                    if best is None or cost < best[0]:
                        best = (cost, i, j)
                        if cost == 0:
                            return i, j
        return None if best is None else (best[1], best[2])

    def run(self) -> None:
        while True:
            found = self._find_pivot()
            if found is None:
                return
            i, j = found
            pivot_row = self.rows.pop(i)
            p = pivot_row[j]
            b = self.rhs.pop(i, 0)

            for k in list(self.cols[j]):
                if k == i:
                    continue
                row = self.rows[k]
                f = row[j] * p
                for u, a in pivot_row.items():
                    value = row.get(u, 0) - f * a
                    if value:
                        row[u] = value
                        self.cols.setdefault(u, set()).add(k)
                    else:
                        row.pop(u, None)
                        self.cols[u].discard(k)
                if k in self.rhs or b:
                    self.rhs[k] = self.rhs.get(k, 0) - f * b
                if not row:
                    del self.rows[k]

            for u in pivot_row:
                self.cols[u].discard(i)
            del self.cols[j]
            rest = {u: a for u, a in pivot_row.items() if u != j}
            self.pivots.append((j, p, rest, b))


def invariant_factors(matrix: np.ndarray) -> Tuple[int, ...]:
    """
    Nonzero invariant factors of an integer matrix, as a divisibility chain.

    The length of the result is the rank of the matrix.
    """
    matrix = np.asarray(matrix)
    rows = [
        {j: int(v) for j, v in enumerate(line) if v}
        for line in matrix.tolist()
    ] if matrix.size else []

    elim = _Eliminator(rows)
    elim.run()
    units = len(elim.pivots)

    residual_rows = [row for row in elim.rows.values() if row]
    if not residual_rows:
        return (1,) * units

    columns = sorted({j for row in residual_rows for j in row})
    position = {j: n for n, j in enumerate(columns)}
    dense = [[0] * len(columns) for _ in residual_rows]
    for r, row in enumerate(residual_rows):
        for j, v in row.items():
            dense[r][position[j]] = v

    logger.debug(
        f"Invariant factors: {units} unit pivots, residual {len(dense)}x{len(columns)}"
    )
    factors = _invariant_factors(to_domain_matrix(dense, (len(dense), len(columns))))
    return (1,) * units + normalize_factors([int(f) for f in factors])


def solve_integer(
    rows: List[SparseRow], rhs: List[int], n_vars: int
) -> Optional[List[int]]:
    """
    Find an integral solution of a sparse linear system.

    Args:
        rows: One coefficient map (variable index -> coefficient) per equation
        rhs: Right-hand side per equation
        n_vars: Number of variables

    Returns:
        A solution with free variables set to 0, or None if no integral
        solution exists
    """
    if len(rows) != len(rhs):
        raise ValueError(f"{len(rows)} equations but {len(rhs)} right-hand sides")

    # Empty equations are either trivially true or contradictions.
    for row, b in zip(rows, rhs):
        if not any(row.values()) and b:
            return None

    elim = _Eliminator([{j: v for j, v in r.items() if v} for r in rows], list(rhs))
    elim.run()

    residual = []
    for i, row in elim.rows.items():
        residual.append((row, elim.rhs.get(i, 0)))
    for i, b in elim.rhs.items():
        if i not in elim.rows and b:
            return None

    values = [0] * n_vars
    if residual:
        columns = sorted({j for row, _ in residual for j in row})
        position = {j: n for n, j in enumerate(columns)}
        dense = [[0] * len(columns) for _ in residual]
        for r, (row, _) in enumerate(residual):
            for j, v in row.items():
                dense[r][position[j]] = v
        y = _solve_dense(dense, [b for _, b in residual])
        if y is None:
            return None
        for j, value in zip(columns, y):
            values[j] = value
        logger.debug(f"Residual system {len(dense)}x{len(columns)} solved by Smith form")

    for j, p, rest, b in reversed(elim.pivots):
        values[j] = p * (b - sum(a * values[u] for u, a in rest.items()))
    return values


def _solve_dense(dense: List[List[int]], rhs: List[int]) -> Optional[List[int]]:
    m, n = len(dense), len(dense[0])
    a = to_domain_matrix(dense, (m, n))
    _, s, t = smith_normal_decomp(a)
    diag = (s * a * t).to_list()
    for i in range(m):
        for j in range(n):
            if i != j and diag[i][j] != 0:
                raise RuntimeError("Smith decomposition did not diagonalize the system")

    b = DomainMatrix.from_list([[int(v)] for v in rhs], ZZ)
    c = [int(row[0]) for row in (s * b).to_list()]

    y = [0] * n
    for i in range(m):
        d = int(diag[i][i]) if i < n else 0
        if d == 0:
            if c[i] != 0:
                return None
        elif c[i] % d:
            return None
        else:
            y[i] = c[i] // d

    x = (t * DomainMatrix.from_list([[v] for v in y], ZZ)).to_list()
    return [int(row[0]) for row in x]
