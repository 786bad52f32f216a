"""
Dense Gauss-Jordan elimination over F_q.

Matrices are 2-D galois FieldArrays. Row operations are vectorized per pivot
so each elimination step is a handful of array ops regardless of width.
"""

from typing import List, Sequence, Tuple

import numpy as np

from errors import Inconsistent, LengthMismatch
from finite_field import FiniteField, FieldElement


def matrix(F: FiniteField, rows: Sequence[Sequence[int]], cols: int = None) -> FieldElement:
    """
    Build a rows x cols matrix from canonical integers.

    ``cols`` is only needed for an empty row list.
    """
    rows = [list(map(int, r)) for r in rows]
    if not rows:
        return F.GF.Zeros((0, cols or 0))
    width = len(rows[0])
    if cols is not None and width != cols:
        raise LengthMismatch(f"expected {cols} columns, got {width}")
    if any(len(r) != width for r in rows):
        raise LengthMismatch("ragged rows")
    return F.GF(np.array(rows, dtype=np.int64))


def _first_nonzero(column: FieldElement) -> int:
    hits = np.flatnonzero(column.view(np.ndarray))
    return int(hits[0]) if hits.size else -1


def rref(M: FieldElement) -> Tuple[FieldElement, int, List[int]]:
    """
    Reduced row-echelon form.

    Args:
        M: rows x cols FieldArray (not modified)

    Returns:
        (R, rank, pivot_cols) with pivot columns strictly increasing
    """
    R = M.copy()
    rows, cols = R.shape
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        offset = _first_nonzero(R[r:, c])
        if offset < 0:
            continue
        p = r + offset
        if p != r:
            R[[r, p]] = R[[p, r]]
        R[r] = R[r] * (R[r, c] ** -1)
        others = np.flatnonzero(R[:, c].view(np.ndarray))
        others = others[others != r]
        if others.size:
            factors = R[others, c].reshape(-1, 1)
            R[others] = R[others] - factors * R[r].reshape(1, -1)
        pivots.append(c)
        r += 1
    return R, r, pivots


def rank(M: FieldElement) -> int:
    return rref(M)[1]


def kernel_basis(M: FieldElement) -> FieldElement:
    """
    Basis of the right null space {x : M x^T = 0}, in RREF.

    Row count is cols - rank (dim C + dim C^perp = n for generator matrices).
    """
    GF = type(M)
    _, cols = M.shape
    R, r, pivots = rref(M)
    free = [c for c in range(cols) if c not in set(pivots)]
    if not free:
        return GF.Zeros((0, cols))
    K = GF.Zeros((len(free), cols))
    K[np.arange(len(free)), free] = 1
    if r:
        K[:, pivots] = -R[:r][:, free].T
    Kr, kr, _ = rref(K)
    return Kr[:kr].copy()


def solve(M: FieldElement, b: FieldElement) -> FieldElement:
    """
    One particular solution of M x = b with free variables set to zero.

    Raises:
        LengthMismatch: If len(b) != rows(M)
        Inconsistent: If the system has no solution
    """
    GF = type(M)
    rows, cols = M.shape
    b = GF(np.asarray(b.view(np.ndarray) if isinstance(b, GF) else b, dtype=np.int64))
    if b.shape != (rows,):
        raise LengthMismatch(f"right-hand side has length {b.shape[0]}, expected {rows}")
    aug = GF.Zeros((rows, cols + 1))
    aug[:, :cols] = M
    aug[:, cols] = b
    R, r, pivots = rref(aug)
    if pivots and pivots[-1] == cols:
        raise Inconsistent("system M x = b has no solution")
    x = GF.Zeros(cols)
    for i, c in enumerate(pivots):
        x[c] = R[i, cols]
    return x


def independent_rows(M: FieldElement) -> List[int]:
    """
    Indices of a maximal independent subset of rows, chosen greedily in order.

    These are the pivot columns of rref(M^T).
    """
    if M.shape[0] == 0:
        return []
    _, _, pivots = rref(M.T.copy())
    return pivots


def row_space_contains(A: FieldElement, B: FieldElement) -> bool:
    """True iff every row of B lies in the row space of A (rank test)."""
    if B.shape[0] == 0:
        return True
    GF = type(A)
    stacked = GF(np.vstack([A.view(np.ndarray), B.view(np.ndarray)]))
    return rank(stacked) == rank(A)


def stack(GF, *blocks: FieldElement, cols: int) -> FieldElement:
    """Vertical concatenation that tolerates empty blocks."""
    parts = [blk.view(np.ndarray).reshape(-1, cols) for blk in blocks if blk.size]
    if not parts:
        return GF.Zeros((0, cols))
    return GF(np.vstack(parts))
