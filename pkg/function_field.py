"""
The rational function field F_q(z): places, divisors, reduced rational
functions, differentials f dz, valuations, principal divisors, Riemann-Roch
spaces and residues at rational places.

Everything here is genus 0, so (dz) = -2 P_inf and dim L(A) = deg A + 1
whenever deg A >= 0.
"""

import logging
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Tuple

import galois

from errors import DivisionByZero, DomainError, NonRationalPlace, ZeroFunction
from finite_field import FiniteField, FieldElement

logger = logging.getLogger('selfdual_codes')


# ---------- polynomial helpers ----------

def poly(F: FiniteField, descending: Iterable) -> galois.Poly:
    return galois.Poly([int(c) for c in descending], field=F.GF)


def const_poly(F: FiniteField, c) -> galois.Poly:
    return galois.Poly([int(c)], field=F.GF)


def monomial(F: FiniteField, j: int) -> galois.Poly:
    """z^j"""
    return galois.Poly([1] + [0] * j, field=F.GF)


def is_zero_poly(f: galois.Poly) -> bool:
    return f.degree == 0 and int(f.coeffs[0]) == 0


def leading(f: galois.Poly) -> FieldElement:
    return f.coeffs[0]


def make_monic(F: FiniteField, f: galois.Poly) -> galois.Poly:
    lead = leading(f)
    if lead == 1:
        return f
    return f * const_poly(F, lead ** -1)


def multiplicity(f: galois.Poly, p: galois.Poly) -> Tuple[int, galois.Poly]:
    """(e, f / p^e) with p^e the exact power of p dividing f != 0."""
    e = 0
    while f.degree >= p.degree:
        quotient, remainder = divmod(f, p)
        if not is_zero_poly(remainder):
            break
        f = quotient
        e += 1
    return e, f


# ---------- places ----------

@dataclass(frozen=True)
class Place:
    """
    A place of F_q(z): a monic irreducible polynomial (descending canonical
    coefficients) or the infinite place (coeffs is None). Rational finite
    places z - alpha also keep alpha's encoding in ``root``.
    """
    coeffs: Optional[Tuple[int, ...]]
    root: Optional[int] = None

    @property
    def is_infinite(self) -> bool:
        return self.coeffs is None

    @property
    def degree(self) -> int:
        return 1 if self.coeffs is None else len(self.coeffs) - 1

    @property
    def is_rational(self) -> bool:
        return self.degree == 1

    def sort_key(self):
        # finite places by degree, rational ones by root; P_inf last
        if self.coeffs is None:
            return (1, 0, 0, ())
        return (0, self.degree, self.root if self.root is not None else 0, self.coeffs)

    def __lt__(self, other: "Place") -> bool:
        return self.sort_key() < other.sort_key()

    def to_poly(self, F: FiniteField) -> galois.Poly:
        if self.coeffs is None:
            raise DomainError("the infinite place has no polynomial")
        return poly(F, self.coeffs)

    def __repr__(self) -> str:
        if self.coeffs is None:
            return "P_inf"
        if self.root is not None:
            return f"P_{self.root}"
        return "P(" + ",".join(str(c) for c in self.coeffs) + ")"


INFINITY = Place(None)


def rational_place(F: FiniteField, alpha) -> Place:
    """The place z - alpha; ``alpha`` is an element or its encoding."""
    a = F.element(int(alpha))
    return Place(coeffs=(1, int(-a)), root=int(a))


def place_from_poly(F: FiniteField, p: galois.Poly) -> Place:
    """
    Place of a monic irreducible polynomial.

    Raises:
        DomainError: If p is not monic and irreducible of degree >= 1
    """
    if p.degree < 1 or leading(p) != 1 or not p.is_irreducible():
        raise DomainError(f"{p} is not a monic irreducible polynomial")
    coeffs = tuple(int(c) for c in p.coeffs)
    root = int(-p.coeffs[1]) if p.degree == 1 else None
    return Place(coeffs=coeffs, root=root)


def rational_places(F: FiniteField, points: Iterable[int]) -> List[Place]:
    """Rational finite places for the given element encodings, sorted."""
    return sorted({rational_place(F, a) for a in points})


# ---------- divisors ----------

class Divisor:
    """Finite formal sum of places with nonzero integer coefficients"""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Optional[Mapping[Place, int]] = None):
        self._coeffs: Dict[Place, int] = {
            P: int(a) for P, a in (coeffs or {}).items() if int(a) != 0
        }

    @classmethod
    def from_places(cls, places: Iterable[Place], coefficient: int = 1) -> "Divisor":
        total: Dict[Place, int] = {}
        for P in places:
            total[P] = total.get(P, 0) + coefficient
        return cls(total)

    @classmethod
    def single(cls, P: Place, a: int = 1) -> "Divisor":
        return cls({P: a})

    def coefficient(self, P: Place) -> int:
        return self._coeffs.get(P, 0)

    __getitem__ = coefficient

    def support(self) -> List[Place]:
        return sorted(self._coeffs)

    def items(self) -> List[Tuple[Place, int]]:
        return [(P, self._coeffs[P]) for P in self.support()]

    def __iter__(self) -> Iterator[Place]:
        return iter(self.support())

    def __len__(self) -> int:
        return len(self._coeffs)

    @property
    def degree(self) -> int:
        return sum(a * P.degree for P, a in self._coeffs.items())

    def __add__(self, other: "Divisor") -> "Divisor":
        total = dict(self._coeffs)
        for P, a in other._coeffs.items():
            total[P] = total.get(P, 0) + a
        return Divisor(total)

    def __neg__(self) -> "Divisor":
        return Divisor({P: -a for P, a in self._coeffs.items()})

    def __sub__(self, other: "Divisor") -> "Divisor":
        return self + (-other)

    def __mul__(self, k: int) -> "Divisor":
        return Divisor({P: k * a for P, a in self._coeffs.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, Divisor):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(frozenset(self._coeffs.items()))

    def is_zero(self) -> bool:
        return not self._coeffs

    def is_effective(self) -> bool:
        return all(a > 0 for a in self._coeffs.values())

    def __le__(self, other: "Divisor") -> bool:
        return (other - self).is_effective()

    def __ge__(self, other: "Divisor") -> bool:
        return (self - other).is_effective()

    def is_even(self) -> bool:
        return all(a % 2 == 0 for a in self._coeffs.values())

    def floor_even(self) -> "Divisor":
        """Largest even divisor <= self."""
        return Divisor({P: a - (a % 2) for P, a in self._coeffs.items()})

    def ceil_even(self) -> "Divisor":
        """Smallest even divisor >= self."""
        return Divisor({P: a + (a % 2) for P, a in self._coeffs.items()})

    def halve(self) -> "Divisor":
        if not self.is_even():
            raise DomainError(f"{self} is not even")
        return Divisor({P: a // 2 for P, a in self._coeffs.items()})

    def disjoint_from(self, other: "Divisor") -> bool:
        return not (set(self._coeffs) & set(other._coeffs))

    def __repr__(self) -> str:
        if not self._coeffs:
            return "0"
        terms = []
        for P, a in self.items():
            sign = "-" if a < 0 else "+"
            body = repr(P) if abs(a) == 1 else f"{abs(a)}*{P!r}"
            terms.append(f"{sign} {body}")
        text = " ".join(terms)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]


# ---------- rational functions ----------

class RationalFunction:
    """num/den over F_q with gcd 1 and monic denominator"""

    __slots__ = ("field", "num", "den")

    def __init__(self, F: FiniteField, num: galois.Poly, den: Optional[galois.Poly] = None):
        if den is None:
            den = const_poly(F, 1)
        if is_zero_poly(den):
            raise DivisionByZero("rational function with zero denominator")
        if is_zero_poly(num):
            num, den = const_poly(F, 0), const_poly(F, 1)
        else:
            g = galois.gcd(num, den)
            if g.degree > 0:
                num, den = num // g, den // g
            lead_inv = leading(den) ** -1
            if lead_inv != 1:
                num = num * const_poly(F, lead_inv)
                den = den * const_poly(F, lead_inv)
        self.field = F
        self.num = num
        self.den = den

    @classmethod
    def constant(cls, F: FiniteField, c) -> "RationalFunction":
        return cls(F, const_poly(F, c))

    @classmethod
    def z(cls, F: FiniteField) -> "RationalFunction":
        return cls(F, monomial(F, 1))

    @classmethod
    def linear(cls, F: FiniteField, alpha) -> "RationalFunction":
        """z - alpha"""
        return cls(F, poly(F, [1, int(-F.element(int(alpha)))]))

    def is_zero(self) -> bool:
        return is_zero_poly(self.num)

    def __add__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(self.field, self.num * other.den + other.num * self.den,
                                self.den * other.den)

    def __sub__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(self.field, self.num * other.den - other.num * self.den,
                                self.den * other.den)

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(self.field, -self.num, self.den)

    def __mul__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(self.field, self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "RationalFunction") -> "RationalFunction":
        if other.is_zero():
            raise DivisionByZero("division by the zero function")
        return RationalFunction(self.field, self.num * other.den, self.den * other.num)

    def __pow__(self, e: int) -> "RationalFunction":
        if e < 0:
            return RationalFunction.constant(self.field, 1) / (self ** -e)
        result = RationalFunction.constant(self.field, 1)
        for _ in range(e):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.field == other.field and self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((tuple(int(c) for c in self.num.coeffs), tuple(int(c) for c in self.den.coeffs)))

    def evaluate(self, P: Place) -> FieldElement:
        """
        Value at a rational place.

        Raises:
            NonRationalPlace: If P has degree > 1
            DomainError: If f has a pole at P
        """
        F = self.field
        if P.is_infinite:
            if self.num.degree < self.den.degree or self.is_zero():
                return F.zero
            if self.num.degree == self.den.degree:
                return leading(self.num) / leading(self.den)
            raise DomainError(f"pole at {P!r}")
        if not P.is_rational:
            raise NonRationalPlace(f"{P!r} has degree {P.degree}")
        alpha = F.element(P.root)
        d = self.den(alpha)
        if d == 0:
            raise DomainError(f"pole at {P!r}")
        return self.num(alpha) / d

    def to_json(self) -> Dict[str, List[int]]:
        return {"num": [int(c) for c in self.num.coeffs],
                "den": [int(c) for c in self.den.coeffs]}

    def __repr__(self) -> str:
        if self.den.degree == 0:
            return f"({self.num})"
        return f"({self.num})/({self.den})"


@dataclass(frozen=True, eq=False)
class Differential:
    """omega = f dz"""
    f: RationalFunction

    @property
    def field(self) -> FiniteField:
        return self.f.field

    def __repr__(self) -> str:
        return f"{self.f!r} dz"


# ---------- valuations and divisors of functions ----------

def valuation(f: RationalFunction, P: Place) -> int:
    """
    Normalized discrete valuation v_P(f).

    Raises:
        ZeroFunction: If f = 0
    """
    if f.is_zero():
        raise ZeroFunction("valuation of the zero function")
    if P.is_infinite:
        return f.den.degree - f.num.degree
    p = P.to_poly(f.field)
    return multiplicity(f.num, p)[0] - multiplicity(f.den, p)[0]


def _factor_places(F: FiniteField, f: galois.Poly) -> Dict[Place, int]:
    if f.degree < 1:
        return {}
    factors, exponents = make_monic(F, f).factors()
    return {place_from_poly(F, g): int(e) for g, e in zip(factors, exponents)}


def principal_divisor(f: RationalFunction) -> Divisor:
    """
    (f) = zeros - poles, including the infinite place.

    Raises:
        ZeroFunction: If f = 0
    """
    if f.is_zero():
        raise ZeroFunction("principal divisor of the zero function")
    F = f.field
    coeffs: Dict[Place, int] = dict(_factor_places(F, f.num))
    for P, e in _factor_places(F, f.den).items():
        coeffs[P] = coeffs.get(P, 0) - e
    coeffs[INFINITY] = f.den.degree - f.num.degree
    return Divisor(coeffs)


def differential_divisor(omega: Differential) -> Divisor:
    """(f dz) = (f) + (dz) with (dz) = -2 P_inf."""
    return principal_divisor(omega.f) + Divisor.single(INFINITY, -2)


def differential_valuation(omega: Differential, P: Place) -> int:
    return valuation(omega.f, P) - (2 if P.is_infinite else 0)


# ---------- Riemann-Roch spaces ----------

def riemann_roch_basis(A: Divisor, F: FiniteField) -> List[RationalFunction]:
    """
    Basis of L(A) = {x : (x) + A >= 0} + {0}.

    With d = prod p_P^{a_P} over a_P > 0 and m = prod p_P^{-a_P} over a_P < 0
    (finite places), the basis is z^j m/d for 0 <= j <= deg d + a_inf - deg m.
    """
    d = const_poly(F, 1)
    m = const_poly(F, 1)
    a_inf = 0
    for P, a in A.items():
        if P.is_infinite:
            a_inf = a
        elif a > 0:
            d = d * P.to_poly(F) ** a
        else:
            m = m * P.to_poly(F) ** (-a)
    top = d.degree + a_inf - m.degree
    return [RationalFunction(F, monomial(F, j) * m, d) for j in range(top + 1)]


# ---------- residues ----------

def _shift(F: FiniteField, f: galois.Poly, alpha: FieldElement) -> galois.Poly:
    """f(t + alpha) by Horner's scheme."""
    lin = poly(F, [1, int(alpha)])
    result = const_poly(F, 0)
    for c in f.coeffs:
        result = result * lin + const_poly(F, c)
    return result


def _series(F: FiniteField, num_asc, den_asc, order: int) -> List[FieldElement]:
    """Power-series coefficients 0..order of num/den, den_asc[0] != 0."""
    b0_inv = den_asc[0] ** -1
    out: List[FieldElement] = []
    for i in range(order + 1):
        s = num_asc[i] if i < len(num_asc) else F.zero
        for j in range(1, min(i, len(den_asc) - 1) + 1):
            s = s - den_asc[j] * out[i - j]
        out.append(s * b0_inv)
    return out


def _ascending(f: galois.Poly):
    return f.coeffs[::-1]


def residue(omega: Differential, P: Place) -> FieldElement:
    """
    res_P(f dz) at a rational place.

    Finite P = z - alpha: the coefficient of (z - alpha)^-1 of the Laurent
    expansion of f. At infinity, via t = 1/z: f dz = -f(1/t) t^-2 dt.

    Raises:
        NonRationalPlace: If deg P > 1
    """
    F = omega.field
    f = omega.f
    if not P.is_rational:
        raise NonRationalPlace(f"residues are only computed at rational places, {P!r} has degree {P.degree}")
    if f.is_zero():
        return F.zero

    if P.is_infinite:
        s = f.den.degree - f.num.degree
        idx = 1 - s
        if idx < 0:
            return F.zero
        # reversed polynomials: t^deg N(1/t) has ascending coefficients = descending of N
        coeffs = _series(F, f.num.coeffs, f.den.coeffs, idx)
        return -coeffs[idx]

    alpha = F.element(P.root)
    e, rest = multiplicity(f.den, P.to_poly(F))
    if e == 0:
        return F.zero
    shifted_num = _shift(F, f.num, alpha)
    shifted_den = _shift(F, rest, alpha)
    coeffs = _series(F, _ascending(shifted_num), _ascending(shifted_den), e - 1)
    return coeffs[e - 1]
