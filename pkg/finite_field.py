"""
Exact arithmetic in F_q, q = p^m, on top of galois field arrays.

Elements are 0-d ``galois.FieldArray`` values. Their canonical integer
encoding is e = sum(c_i * p**i) over the polynomial-basis coordinates, which
is exactly galois' integer representation; it is the wire format of every
matrix the toolkit reads or writes.
"""

import itertools
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Tuple

import galois
import numpy as np

from errors import (DegreeOutOfRange, DivisionByZero, NoSolution, NotPrime,
                    NotPrimePower, WrongResidueClass)

logger = logging.getLogger('selfdual_codes')

FieldElement = galois.FieldArray

ARITH_OPS = ("add", "sub", "mul", "div", "neg", "inv", "pow")


@dataclass(frozen=True)
class FiniteField:
    """F_q with a fixed polynomial basis; immutable and shareable across threads"""
    p: int
    m: int
    modulus: Tuple[int, ...]
    GF: type = field(compare=False, repr=False, hash=False)

    @property
    def q(self) -> int:
        return self.p ** self.m

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def zero(self) -> FieldElement:
        return self.GF(0)

    @property
    def one(self) -> FieldElement:
        return self.GF(1)

    def element(self, e: int) -> FieldElement:
        """Decode a canonical integer in [0, q)."""
        return self.GF(int(e))

    @staticmethod
    def encode(x: FieldElement) -> int:
        return int(x)

    def elements(self) -> FieldElement:
        """All q elements in canonical encoding order."""
        return self.GF(np.arange(self.q))

    def array(self, values) -> FieldElement:
        """Field array from canonical integers (any shape)."""
        return self.GF(np.asarray(values, dtype=np.int64))

    def __str__(self) -> str:
        return f"GF({self.p}^{self.m})" if self.m > 1 else f"GF({self.p})"


def _monic_poly(p: int, low_to_high: Tuple[int, ...]) -> galois.Poly:
    """Monic polynomial x^m + c_{m-1} x^{m-1} + ... + c_0 over F_p."""
    descending = [1] + list(reversed(low_to_high))
    return galois.Poly(descending, field=galois.GF(p))


def smallest_irreducible(p: int, m: int) -> Tuple[int, ...]:
    """
    Lexicographically smallest monic irreducible of degree m over F_p.

    Candidates (c_0, ..., c_{m-1}) are compared low-degree coefficient first,
    which is the order itertools.product produces.

    Returns:
        Full coefficient list low-to-high, leading 1 included
    """
    if m == 1:
        return (0, 1)
    for lower in itertools.product(range(p), repeat=m):
        if lower[0] == 0:
            # divisible by x
            continue
        if _monic_poly(p, lower).is_irreducible():
            logger.debug(f"modulus for GF({p}^{m}): {lower + (1,)}")
            return lower + (1,)
    raise DegreeOutOfRange(f"no irreducible polynomial of degree {m} over F_{p}")


@lru_cache(maxsize=None)
def make_field(p: int, m: int = 1) -> FiniteField:
    """
    Build F_{p^m} with a deterministically chosen modulus.

    Args:
        p: Prime characteristic
        m: Extension degree (>= 1)

    Returns:
        FiniteField instance (cached per (p, m))

    Raises:
        NotPrime: If p is not a prime
        DegreeOutOfRange: If m < 1
    """
    if not isinstance(p, (int, np.integer)) or p < 2 or not galois.is_prime(int(p)):
        raise NotPrime(f"characteristic must be prime, got {p}")
    if not isinstance(m, (int, np.integer)) or m < 1:
        raise DegreeOutOfRange(f"extension degree must be >= 1, got {m}")
    p, m = int(p), int(m)

    modulus = smallest_irreducible(p, m)
    if m == 1:
        GF = galois.GF(p)
    else:
        GF = galois.GF(p ** m, irreducible_poly=_monic_poly(p, modulus[:-1]))
    return FiniteField(p=p, m=m, modulus=modulus, GF=GF)


def prime_power_decomposition(q: int) -> Tuple[int, int]:
    """
    Write q = p^m with p prime.

    Raises:
        NotPrimePower: If q is not a prime power
    """
    if not isinstance(q, (int, np.integer)) or q < 2 or not galois.is_prime_power(int(q)):
        raise NotPrimePower(f"{q} is not a prime power")
    primes, exponents = galois.factors(int(q))
    return int(primes[0]), int(exponents[0])


def field_from_order(q: int) -> FiniteField:
    """F_q for a prime power q."""
    p, m = prime_power_decomposition(q)
    return make_field(p, m)


def field_arith(a: FieldElement, b, op: str) -> FieldElement:
    """
    Exact field arithmetic.

    Args:
        a: Left operand
        b: Right operand (an integer exponent for "pow"; ignored for "neg"/"inv")
        op: One of add, sub, mul, div, neg, inv, pow

    Raises:
        DivisionByZero: On division by zero or inverting zero
        ValueError: On an unknown op
    """
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    if op == "pow":
        exponent = int(b)
        if exponent < 0 and a == 0:
            raise DivisionByZero("zero raised to a negative power")
        return a ** exponent
    if op in ("div", "inv"):
        divisor = b if op == "div" else a
        if divisor == 0:
            raise DivisionByZero("division by the zero element")
        return a / b if op == "div" else divisor ** -1
    raise ValueError(f"unknown op {op!r}, expected one of {ARITH_OPS}")


def frobenius(x: FieldElement) -> FieldElement:
    """x -> x^p"""
    return x ** type(x).characteristic


def minus_one(F: FiniteField) -> FieldElement:
    return -F.one


def sqrt_of_minus_one(F: FiniteField) -> FieldElement:
    """
    Smallest alpha (in encoding order) with alpha^2 = -1.

    Raises:
        NoSolution: If q = 3 (mod 4), where -1 is a non-square
    """
    if F.p == 2:
        return F.one
    if F.q % 4 == 3:
        raise NoSolution(f"-1 is not a square in GF({F.q})", q=F.q)
    elems = F.elements()
    hits = np.flatnonzero((elems * elems == minus_one(F)).view(np.ndarray))
    # q = 1 mod 4 always has a solution
    return elems[int(hits[0])]


def solve_alpha_beta(F: FiniteField) -> Tuple[FieldElement, FieldElement]:
    """
    Lexicographically smallest (alpha, beta) with alpha^2 + beta^2 + 1 = 0.

    Raises:
        WrongResidueClass: Unless q = 3 (mod 4)
    """
    if F.q % 4 != 3:
        raise WrongResidueClass(f"GF({F.q}) is not 3 mod 4", q=F.q)
    roots = square_root_table(F)
    elems = F.elements()
    targets = -(elems * elems) - F.one  # beta^2 must equal -1 - alpha^2
    for alpha, target in zip(elems, targets):
        beta = roots.get(int(target))
        if beta is not None:
            return alpha, F.element(beta)
    # |{1 + a^2}| + |{-b^2 : b != 0}| = q, so this is unreachable
    raise NoSolution(f"no alpha, beta in GF({F.q})")


@lru_cache(maxsize=64)
def _square_root_table(F: FiniteField) -> Dict[int, int]:
    elems = F.elements()
    squares = (elems * elems).view(np.ndarray)
    table: Dict[int, int] = {}
    # iterate high to low so the smallest root wins
    for root in range(F.q - 1, -1, -1):
        table[int(squares[root])] = root
    return table


def square_root_table(F: FiniteField) -> Dict[int, int]:
    """Map every square (encoded) to its smallest square root (encoded)."""
    return _square_root_table(F)

