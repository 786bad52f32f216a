"""
Evaluation codes C_L(G, D) on the rational function field, their duals via a
certified differential, and the self-dual pipeline

    G = floor(D + (omega)) / 2  ->  C_L(G, D) self-orthogonal  ->  extend.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

from errors import (DomainError, InfinitePlaceInD, NonRationalEvaluationPlace,
                    OmegaNotCertified, StarViolated, SupportOverlap)
from finite_field import FiniteField, FieldElement
from function_field import (Differential, Divisor, Place, RationalFunction,
                            differential_divisor, differential_valuation,
                            monomial, poly, rational_places, residue,
                            riemann_roch_basis)
from linear_code import (LinearCode, from_rows, is_self_dual,
                         is_self_orthogonal, zero_code)
from selfdual_construct import embed_selfdual, exists_selfdual

logger = logging.getLogger('selfdual_codes')


@dataclass(frozen=True, eq=False)
class AGCodeSpec:
    field: FiniteField
    D: Divisor
    G: Divisor
    omega: Optional[Differential] = None
    certified: bool = False

    @property
    def n(self) -> int:
        return self.D.degree


@dataclass(frozen=True, eq=False)
class SelfDualAGReport:
    """Everything the self-dual pipeline decided along the way"""
    code: LinearCode
    G: Divisor
    base_code: LinearCode
    extended: bool
    designed_distance: int
    dual_divisor: Divisor

    @property
    def dual_designed_distance(self) -> int:
        return self.code.n - self.dual_divisor.degree


def _check_evaluation_divisor(D: Divisor) -> None:
    for P, a in D.items():
        if not P.is_rational:
            raise NonRationalEvaluationPlace(f"{P!r} has degree {P.degree}")
        if a != 1:
            raise DomainError(f"evaluation divisor has coefficient {a} at {P!r}")


def certify_omega(D: Divisor, omega: Differential) -> bool:
    """v_P(omega) = -1 at every P in supp D, and all residues there agree."""
    residues = set()
    for P in D.support():
        if omega.f.is_zero() or differential_valuation(omega, P) != -1:
            return False
        residues.add(int(residue(omega, P)))
    return len(residues) <= 1


def make_spec(F: FiniteField, D: Divisor, G: Divisor,
              omega: Optional[Differential] = None) -> AGCodeSpec:
    """
    Validate and bundle an evaluation code description.

    Raises:
        NonRationalEvaluationPlace: If D contains a place of degree > 1
        SupportOverlap: If supp G meets supp D
    """
    _check_evaluation_divisor(D)
    if not G.disjoint_from(D):
        raise SupportOverlap(f"supp G and supp D intersect: G = {G!r}")
    certified = omega is not None and certify_omega(D, omega)
    return AGCodeSpec(field=F, D=D, G=G, omega=omega, certified=certified)


def evaluation_places(D: Divisor) -> List[Place]:
    """Finite places sorted by root encoding, P_inf last."""
    return D.support()


def _evaluate_all(F: FiniteField, f: RationalFunction, places: List[Place]) -> FieldElement:
    finite = [P for P in places if not P.is_infinite]
    values = F.GF.Zeros(len(places))
    if finite:
        alphas = F.array([P.root for P in finite])
        values[:len(finite)] = f.num(alphas) / f.den(alphas)
    if len(finite) < len(places):
        values[-1] = f.evaluate(places[-1])
    return values


def cl_code(spec: AGCodeSpec) -> LinearCode:
    """
    C_L(G, D) = {(f(P_1), ..., f(P_n)) : f in L(G)}.

    Raises:
        SupportOverlap: If supp G meets supp D
        NonRationalEvaluationPlace: If D contains a place of degree > 1
    """
    _check_evaluation_divisor(spec.D)
    if not spec.G.disjoint_from(spec.D):
        raise SupportOverlap(f"supp G and supp D intersect: G = {spec.G!r}")
    F = spec.field
    places = evaluation_places(spec.D)
    n = len(places)
    basis = riemann_roch_basis(spec.G, F)
    if not basis:
        return zero_code(F, n)
    rows = F.GF.Zeros((len(basis), n))
    for i, f in enumerate(basis):
        rows[i] = _evaluate_all(F, f, places)
    return from_rows(F, n, rows)


def designed_distance(spec: AGCodeSpec) -> int:
    """n - deg G, meaningful when deg G < n"""
    return spec.n - spec.G.degree


def ag_dual(spec: AGCodeSpec) -> LinearCode:
    """
    C_L(G, D)^perp = C_L(D + (omega) - G, D).

    Raises:
        OmegaNotCertified: If omega does not satisfy the residue hypotheses on D
    """
    if spec.omega is None or not spec.certified:
        raise OmegaNotCertified("differential is missing or not certified for D")
    dual_G = spec.D + differential_divisor(spec.omega) - spec.G
    return cl_code(AGCodeSpec(field=spec.field, D=spec.D, G=dual_G,
                              omega=spec.omega, certified=True))


def make_omega_for(F: FiniteField, D: Divisor) -> Differential:
    """
    omega = du/u with u = prod (z - alpha) over supp D.

    Raises:
        InfinitePlaceInD: If P_inf is in supp D
        NonRationalEvaluationPlace: If D contains a place of degree > 1
    """
    if any(P.is_infinite for P in D.support()):
        raise InfinitePlaceInD("du/u cannot have a simple pole at P_inf")
    _check_evaluation_divisor(D)
    u = monomial(F, 0)
    for P in D.support():
        u = u * poly(F, [1, int(-F.element(P.root))])
    omega = Differential(RationalFunction(F, u.derivative(), u))
    if not certify_omega(D, omega):
        raise AssertionError(f"du/u failed certification for {D!r}")
    return omega


def _pipeline(D: Divisor, omega: Differential) -> SelfDualAGReport:
    F = omega.field
    _check_evaluation_divisor(D)
    if not certify_omega(D, omega):
        raise OmegaNotCertified("differential is not certified for D")
    n = D.degree
    if not exists_selfdual(F.q, n):
        raise StarViolated(f"no self-dual code of length {n} over GF({F.q})", q=F.q, n=n)

    A = D + differential_divisor(omega)
    floor_A = A.floor_even()
    G = floor_A.halve()
    spec = AGCodeSpec(field=F, D=D, G=G, omega=omega, certified=True)
    base = cl_code(spec)
    if not is_self_orthogonal(base):
        raise AssertionError(f"C_L({G!r}, D) is not self-orthogonal")

    extended = not is_self_dual(base)
    code = embed_selfdual(base) if extended else base
    designed = floor_A.degree // 2 - differential_divisor(omega).degree
    logger.info(f"self-dual AG code [{n},{code.k}] over {F}: G = {G!r}, "
                f"base dim {base.k}, designed distance {designed}")
    return SelfDualAGReport(code=code, G=G, base_code=base, extended=extended,
                            designed_distance=designed,
                            dual_divisor=A.ceil_even().halve())


def selfdual_ag(D: Divisor, omega: Differential) -> Tuple[LinearCode, int]:
    """
    Self-dual code from a certified differential with its designed distance
    deg(floor(D + (omega)))/2 - deg(omega).

    Raises:
        StarViolated: If n violates the existence condition
        OmegaNotCertified: If omega is not certified for D
    """
    report = _pipeline(D, omega)
    return report.code, report.designed_distance


def selfdual_ag_report(D: Divisor, omega: Differential) -> SelfDualAGReport:
    return _pipeline(D, omega)


def full_field_divisor(F: FiniteField, exclude_zero: bool = False) -> Divisor:
    """Sum of the rational finite places, optionally without P_0."""
    start = 1 if exclude_zero else 0
    return Divisor.from_places(rational_places(F, range(start, F.q)))
