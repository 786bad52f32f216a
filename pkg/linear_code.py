"""
Linear codes over F_q: canonical generator matrices, duals, weights,
minimum distance and the self-orthogonality / self-duality predicates.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from errors import BudgetExceeded, LengthMismatch, ZeroCode
from exact_linalg import kernel_basis, matrix, rref, row_space_contains, stack
from finite_field import FiniteField, FieldElement

logger = logging.getLogger('selfdual_codes')

DEFAULT_BUDGET = 2 ** 24
DEFAULT_CHUNK = 2 ** 16


@dataclass(frozen=True, eq=False)
class LinearCode:
    """
    A linear [n, k] code, stored by its RREF generator matrix.

    Two codes are equal iff their canonical generator matrices are equal.
    """
    field: FiniteField
    n: int
    gen: FieldElement

    @property
    def k(self) -> int:
        return int(self.gen.shape[0])

    @property
    def q(self) -> int:
        return self.field.q

    def rows(self):
        """Generator rows as lists of canonical integers."""
        return self.gen.view(np.ndarray).astype(int).tolist()

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinearCode):
            return NotImplemented
        return (self.field == other.field and self.n == other.n
                and self.gen.shape == other.gen.shape
                and bool(np.array_equal(self.gen.view(np.ndarray), other.gen.view(np.ndarray))))

    def __hash__(self) -> int:
        return hash((self.field, self.n, self.gen.view(np.ndarray).tobytes()))

    def __repr__(self) -> str:
        return f"LinearCode([{self.n},{self.k}] over {self.field})"


@dataclass(frozen=True)
class CodeParams:
    n: int
    k: int
    d: Optional[int]
    rate: Fraction
    relative_distance: Optional[Fraction]


def _canonical(F: FiniteField, n: int, M: FieldElement) -> LinearCode:
    R, r, _ = rref(M)
    return LinearCode(field=F, n=n, gen=R[:r].copy())


def from_rows(F: FiniteField, n: int, rows) -> LinearCode:
    """
    Code spanned by ``rows``; dependent rows collapse.

    Args:
        F: Field
        n: Length
        rows: Sequence of length-n integer rows, or a FieldArray

    Raises:
        LengthMismatch: If a row does not have length n
    """
    if isinstance(rows, F.GF):
        if rows.ndim != 2 or rows.shape[1] != n:
            raise LengthMismatch(f"rows have shape {rows.shape}, expected (k, {n})")
        M = rows
    else:
        rows = [list(r) for r in rows]
        for i, r in enumerate(rows):
            if len(r) != n:
                raise LengthMismatch(f"row {i} has length {len(r)}, expected {n}", row=i)
        M = matrix(F, rows, cols=n)
    return _canonical(F, n, M)


def zero_code(F: FiniteField, n: int) -> LinearCode:
    return LinearCode(field=F, n=n, gen=F.GF.Zeros((0, n)))


def full_space(F: FiniteField, n: int) -> LinearCode:
    return LinearCode(field=F, n=n, gen=F.GF.Identity(n))


def dual(C: LinearCode) -> LinearCode:
    """C^perp under <x, y> = sum x_i y_i; dimension n - k."""
    if C.k == 0:
        return full_space(C.field, C.n)
    return LinearCode(field=C.field, n=C.n, gen=kernel_basis(C.gen))


def inner(x: FieldElement, y: FieldElement) -> FieldElement:
    """
    Standard symmetric bilinear form.

    Raises:
        LengthMismatch: If the vectors differ in length
    """
    if x.shape != y.shape:
        raise LengthMismatch(f"vector lengths differ: {x.shape} vs {y.shape}")
    if x.size == 0:
        return type(x)(0)
    return np.sum(x * y)


def gram(C: LinearCode) -> FieldElement:
    return C.gen @ C.gen.T


def is_self_orthogonal(C: LinearCode) -> bool:
    """C is contained in C^perp iff G G^T = 0."""
    if C.k == 0:
        return True
    return bool(np.all(gram(C).view(np.ndarray) == 0))


def is_self_dual(C: LinearCode) -> bool:
    return 2 * C.k == C.n and is_self_orthogonal(C)


def contains(big: LinearCode, small: LinearCode) -> bool:
    """Row-space inclusion small <= big."""
    if big.n != small.n or big.field != small.field:
        return False
    if small.k == 0:
        return True
    if big.k < small.k:
        return False
    return row_space_contains(big.gen, small.gen)


def extend(C: LinearCode, vectors: FieldElement) -> LinearCode:
    """Code spanned by C and the given rows."""
    return _canonical(C.field, C.n, stack(C.field.GF, C.gen, vectors, cols=C.n))


def weight(x: FieldElement) -> int:
    """Hamming weight"""
    return int(np.count_nonzero(x.view(np.ndarray)))


def projective_count(q: int, k: int) -> int:
    """Number of projective points (q^k - 1)/(q - 1)."""
    return (q ** k - 1) // (q - 1)


def _projective_messages(q: int, k: int, lead: int, start: int, stop: int) -> np.ndarray:
    """
    Messages whose first nonzero coordinate is a 1 at index ``lead``, for
    tail indices start..stop-1 written in base q.
    """
    tail = k - 1 - lead
    idx = np.arange(start, stop, dtype=np.int64)
    msgs = np.zeros((stop - start, k), dtype=np.int64)
    msgs[:, lead] = 1
    if tail:
        powers = q ** np.arange(tail, dtype=np.int64)
        msgs[:, lead + 1:] = (idx[:, None] // powers[None, :]) % q
    return msgs


def min_distance(C: LinearCode, budget: int = DEFAULT_BUDGET,
                 chunk_size: int = DEFAULT_CHUNK) -> int:
    """
    Exact minimum distance by projective enumeration.

    Scalar multiples share a weight, so only codewords whose message has
    leading coefficient 1 are evaluated. Work is split into disjoint prefix
    ranges (one per leading position, chunked) with a final min-reduction.

    Args:
        C: Code with k >= 1
        budget: Maximum number of codeword evaluations
        chunk_size: Codewords per vectorized batch

    Raises:
        ZeroCode: If k = 0
        BudgetExceeded: If (q^k - 1)/(q - 1) > budget
    """
    if C.k == 0:
        raise ZeroCode("minimum distance of the zero code is undefined")
    q, k = C.q, C.k
    total = projective_count(q, k)
    if total > budget:
        raise BudgetExceeded(f"{total} codewords exceed the enumeration budget {budget}",
                             codewords=total, budget=budget)

    GF = C.field.GF
    best = C.n
    for lead in range(k):
        count = q ** (k - 1 - lead)
        for start in range(0, count, chunk_size):
            stop = min(count, start + chunk_size)
            words = GF(_projective_messages(q, k, lead, start, stop)) @ C.gen
            weights = np.count_nonzero(words.view(np.ndarray), axis=1)
            best = min(best, int(weights.min()))
            if best == 1:
                return best
    logger.debug(f"min_distance over {total} projective codewords: {best}")
    return best


def params(C: LinearCode, d: Optional[int] = None) -> CodeParams:
    """Rate and relative distance as exact rationals."""
    rate = Fraction(C.k, C.n) if C.n else Fraction(0)
    rel = Fraction(d, C.n) if d is not None and C.n else None
    return CodeParams(n=C.n, k=C.k, d=d, rate=rate, relative_distance=rel)


def is_canonical(F: FiniteField, n: int, rows: Sequence[Sequence[int]]) -> bool:
    """True iff ``rows`` already is an RREF basis (no zero rows)."""
    if not rows:
        return True
    M = matrix(F, rows, cols=n)
    R, r, _ = rref(M)
    return r == len(rows) and bool(np.array_equal(R[:r].view(np.ndarray), M.view(np.ndarray)))
