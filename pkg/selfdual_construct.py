"""
Self-dual codes: the existence condition, explicit base codes, and the
extension of a self-orthogonal code to a self-dual code containing it.

The extension is constructive. The quotient C^perp / C carries a
nondegenerate form; when the existence condition holds it is split, so a
totally isotropic subspace of dimension n/2 - dim C can be read off one
diagonalization (odd q) or one symplectic reduction (even q) and added to C.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np

from errors import AlreadyMaximal, NoSolution, NotSelfOrthogonal, StarViolated
from exact_linalg import independent_rows, kernel_basis, stack
from finite_field import (FiniteField, FieldElement, prime_power_decomposition,
                          solve_alpha_beta, sqrt_of_minus_one,
                          square_root_table)
from linear_code import (LinearCode, extend, from_rows, inner, is_self_dual,
                         is_self_orthogonal)

logger = logging.getLogger('selfdual_codes')


@dataclass(frozen=True)
class StarCondition:
    """n even, and 4 | n when q = 3 (mod 4)"""
    q: int
    n: int
    satisfied: bool


def star_condition(q: int, n: int) -> StarCondition:
    prime_power_decomposition(q)
    satisfied = n >= 1 and n % 2 == 0 and (q % 4 != 3 or n % 4 == 0)
    return StarCondition(q=q, n=n, satisfied=satisfied)


def exists_selfdual(q: int, n: int) -> bool:
    """
    Whether a self-dual code of length n over F_q exists.

    Raises:
        NotPrimePower: If q is not a prime power
    """
    return star_condition(q, n).satisfied


def _require_star(q: int, n: int) -> None:
    if not exists_selfdual(q, n):
        reason = "n is odd" if n % 2 else "q = 3 (mod 4) requires 4 | n"
        raise StarViolated(f"no self-dual code of length {n} over GF({q}): {reason}", q=q, n=n)


def base_selfdual(F: FiniteField, n: int) -> LinearCode:
    """
    Explicit self-dual code of length n.

    q even or q = 1 (mod 4): rows (alpha, 1) on coordinate pairs, alpha^2 = -1.
    q = 3 (mod 4): per block of four coordinates the rows (alpha, beta, 1, 0)
    and (-beta, alpha, 0, 1) with alpha^2 + beta^2 + 1 = 0.

    Raises:
        StarViolated: If no self-dual code of length n exists
    """
    _require_star(F.q, n)
    GF = F.GF
    if F.q % 4 == 3:
        alpha, beta = solve_alpha_beta(F)
        blocks = [[alpha, beta, F.one, F.zero], [-beta, alpha, F.zero, F.one]]
        width = 4
    else:
        alpha = sqrt_of_minus_one(F)
        blocks = [[alpha, F.one]]
        width = 2

    rows = GF.Zeros((n // 2, n))
    block = GF([[int(x) for x in row] for row in blocks])
    per_block = len(blocks)
    for b in range(n // width):
        rows[b * per_block:(b + 1) * per_block, b * width:(b + 1) * width] = block

    code = from_rows(F, n, rows)
    if not is_self_dual(code):
        raise AssertionError(f"base code over {F} of length {n} is not self-dual")
    return code


def diagonalize_symmetric(B: FieldElement) -> Tuple[FieldElement, FieldElement]:
    """
    Congruence-diagonalize a symmetric matrix in odd characteristic.

    A zero pivot is first swapped with the smallest later nonzero diagonal
    entry; if none exists, the smallest-index transvection "add row/column j
    to row/column i" with B[i, j] != 0 creates B[i, i] = 2 B[i, j] != 0.

    Returns:
        (P, d) with P B P^T = diag(d)
    """
    GF = type(B)
    t = B.shape[0]
    A = B.copy()
    P = GF.Identity(t)
    for i in range(t):
        if A[i, i] == 0:
            diag = np.flatnonzero(np.diagonal(A.view(np.ndarray))[i + 1:])
            if diag.size:
                j = i + 1 + int(diag[0])
                A[[i, j]] = A[[j, i]]
                A[:, [i, j]] = A[:, [j, i]]
                P[[i, j]] = P[[j, i]]
            else:
                off = np.flatnonzero(A[i, i + 1:].view(np.ndarray))
                if not off.size:
                    # degenerate direction; leave a zero on the diagonal
                    continue
                j = i + 1 + int(off[0])
                A[i] = A[i] + A[j]
                A[:, i] = A[:, i] + A[:, j]
                P[i] = P[i] + P[j]
        pivot_inv = A[i, i] ** -1
        below = np.flatnonzero(A[i + 1:, i].view(np.ndarray))
        if not below.size:
            continue
        rows = i + 1 + below
        factors = (A[rows, i] * pivot_inv).reshape(-1, 1)
        A[rows] = A[rows] - factors * A[i].reshape(1, -1)
        A[:, rows] = A[:, rows] - A[:, i].reshape(-1, 1) * factors.reshape(1, -1)
        P[rows] = P[rows] - factors * P[i].reshape(1, -1)
    return P, GF(np.diagonal(A.view(np.ndarray)).copy())


def _complement_lifts(C: LinearCode) -> FieldElement:
    """Rows of C^perp that, together with C, span C^perp (lifts of a basis of C^perp / C)."""
    n = C.n
    perp = kernel_basis(C.gen) if C.k else C.field.GF.Identity(n)
    combined = stack(C.field.GF, C.gen, perp, cols=n)
    chosen = [i - C.k for i in independent_rows(combined) if i >= C.k]
    return perp[chosen].copy()


def _isotropic_basis_char2(F: FiniteField, W: FieldElement) -> List[FieldElement]:
    """
    Totally isotropic subspace of span(W) in characteristic 2.

    <x, x> = (sum x_i)^2 here, so the isotropic vectors form the kernel S of
    the sum functional and the form is alternating on S. A symplectic
    reduction of S yields one vector per hyperbolic pair plus the radical.
    """
    sums = np.sum(W, axis=1).reshape(1, -1)
    S = kernel_basis(sums) @ W
    remaining = [S[i] for i in range(S.shape[0])]
    found: List[FieldElement] = []
    while remaining:
        e = remaining.pop(0)
        partner = next((j for j, g in enumerate(remaining) if inner(e, g) != 0), None)
        if partner is not None:
            f = remaining.pop(partner)
            f = f * inner(e, f) ** -1
            remaining = [g + inner(g, f) * e + inner(g, e) * f for g in remaining]
        found.append(e)
    return found


def _square_pair(F: FiniteField, roots: Dict[int, int],
                 diag: List[FieldElement]) -> Optional[Tuple[int, int, FieldElement]]:
    """First (i, j, s), i < j, with d_i + s^2 d_j = 0."""
    D = F.array([int(x) for x in diag])
    ratios = -D.reshape(-1, 1) / D.reshape(1, -1)
    hits = np.argwhere(np.triu(ratios.is_square(), k=1))
    if not hits.size:
        return None
    i, j = int(hits[0][0]), int(hits[0][1])
    return i, j, F.element(roots[int(ratios[i, j])])


def _ternary_solution(F: FiniteField, roots: Dict[int, int], a: FieldElement,
                      b: FieldElement, c: FieldElement) -> Tuple[FieldElement, FieldElement]:
    """(x, y) with a x^2 + b y^2 + c = 0."""
    xs = F.elements()
    targets = (-c - a * xs * xs) / b
    for x, target in zip(xs, targets):
        root = roots.get(int(target))
        if root is not None:
            return x, F.element(root)
    raise NoSolution("a1 x^2 + a2 y^2 = -a3 has no solution")


def _isotropic_basis_odd(F: FiniteField, W: FieldElement) -> List[FieldElement]:
    """
    Totally isotropic subspace of span(W) in odd characteristic.

    One congruence diagonalization gives pairwise orthogonal v_i with
    <v_i, v_i> = d_i. Pairs with -d_i / d_j a square give v_i + s v_j. Three
    entries with no such pair give an isotropic x v_1 + y v_2 + v_3, and the
    anisotropic remainder b y v_1 - a x v_2 (self product -abc) replaces them.
    """
    P, d = diagonalize_symmetric(W @ W.T)
    if np.any(d.view(np.ndarray) == 0):
        raise NoSolution("quotient form is degenerate")
    V = P @ W
    roots = square_root_table(F)
    vecs = [V[i] for i in range(V.shape[0])]
    diag = [d[i] for i in range(d.shape[0])]
    found: List[FieldElement] = []
    while vecs:
        pair = _square_pair(F, roots, diag)
        if pair is not None:
            i, j, s = pair
            found.append(vecs[i] + s * vecs[j])
            for idx in (j, i):
                del vecs[idx]
                del diag[idx]
            continue
        if len(vecs) < 3:
            # -a1 a2 is a square exactly when a self-dual extension exists
            raise NoSolution("plane quotient carries an anisotropic form")
        a, b, c = diag[:3]
        x, y = _ternary_solution(F, roots, a, b, c)
        found.append(x * vecs[0] + y * vecs[1] + vecs[2])
        vecs = [b * y * vecs[0] - a * x * vecs[1]] + vecs[3:]
        diag = [-(a * b * c)] + diag[3:]
    return found


def _isotropic_directions(C: LinearCode) -> FieldElement:
    """(n/2 - k) x n rows spanning, together with C, a self-dual code."""
    F = C.field
    W = _complement_lifts(C)
    found = _isotropic_basis_char2(F, W) if F.p == 2 else _isotropic_basis_odd(F, W)
    needed = C.n // 2 - C.k
    if len(found) < needed:
        raise NoSolution(f"found {len(found)} isotropic directions, need {needed}")
    return stack(F.GF, *[v.reshape(1, -1) for v in found[:needed]], cols=C.n)


def isotropic_in_complement(C: LinearCode) -> FieldElement:
    """
    A vector x in C^perp \\ C with <x, x> = 0.

    Raises:
        NotSelfOrthogonal: If C is not self-orthogonal
        AlreadyMaximal: If dim C = n/2
        StarViolated: If no self-dual code of length n exists
    """
    if not is_self_orthogonal(C):
        raise NotSelfOrthogonal("code is not contained in its dual")
    if 2 * C.k >= C.n:
        raise AlreadyMaximal(f"dimension {C.k} is already n/2", k=C.k, n=C.n)
    _require_star(C.q, C.n)
    return _isotropic_directions(C)[0]


def embed_selfdual(C: LinearCode) -> LinearCode:
    """
    Self-dual code containing C.

    All n/2 - k new directions come from one pass over C^perp / C.

    Raises:
        NotSelfOrthogonal: If C is not self-orthogonal
        StarViolated: If no self-dual code of length n exists
    """
    if not is_self_orthogonal(C):
        raise NotSelfOrthogonal("code is not contained in its dual")
    _require_star(C.q, C.n)
    if 2 * C.k == C.n:
        return C

    directions = _isotropic_directions(C)
    grown = extend(C, directions)
    logger.debug(f"added {directions.shape[0]} isotropic directions: dim {C.k} -> {grown.k}/{C.n // 2}")
    if grown.k != C.k + directions.shape[0] or not is_self_dual(grown):
        raise AssertionError("embedding produced an invalid code")
    return grown



def _random_monomial_image(F: FiniteField, code: LinearCode,
                           rng: np.random.Generator) -> LinearCode:
    # coordinate permutations and +-1 scalings are isometries of the form
    perm = rng.permutation(code.n)
    signs = F.GF(np.where(rng.integers(0, 2, size=code.n) == 1, 1, int(-F.one)))
    return from_rows(F, code.n, code.gen[:, perm] * signs.reshape(1, -1))


def random_self_orthogonal(F: FiniteField, n: int, k: Optional[int],
                           rng: np.random.Generator) -> LinearCode:
    """
    Random self-orthogonal code of length n and dimension at most k.

    Drawn as a random subcode of a randomly permuted and sign-flipped base
    self-dual code; ``k=None`` draws the dimension uniformly from 0..n/2.
    """
    base = _random_monomial_image(F, base_selfdual(F, n), rng)
    half = n // 2
    if k is None:
        k = int(rng.integers(0, half + 1))
    k = max(0, min(k, half))
    if k == 0:
        return from_rows(F, n, F.GF.Zeros((0, n)))
    coeffs = F.GF(rng.integers(0, F.q, size=(k, half)))
    return from_rows(F, n, coeffs @ base.gen)


def selfdual_grid(qs: List[int], ns: List[int]) -> List[Tuple[int, int, bool]]:
    """(q, n, exists) rows over a parameter grid."""
    return [(q, n, exists_selfdual(q, n)) for q in qs for n in ns]
