"""
Unit tests for the rational function field

Test coverage:
- Valuations, principal and differential divisors
- Riemann-Roch bases and the genus-0 dimension formula
- Residues at finite and infinite rational places, residue theorem
- Divisor arithmetic and even-divisor rounding
"""

import os
import sys

import numpy as np
import pytest

# Add repository directory to path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from errors import DomainError, NonRationalPlace, ZeroFunction
from finite_field import field_from_order, make_field
from function_field import (INFINITY, Differential, Divisor, RationalFunction,
                            differential_divisor, place_from_poly, poly,
                            principal_divisor, rational_place, rational_places,
                            residue, riemann_roch_basis, valuation)


def _z(F):
    return RationalFunction.z(F)


def _const(F, c):
    return RationalFunction.constant(F, c)


def _random_poly(F, rng, max_degree):
    while True:
        coeffs = rng.integers(0, F.q, size=int(rng.integers(1, max_degree + 2)))
        p = poly(F, coeffs)
        if not (p.degree == 0 and int(p.coeffs[0]) == 0):
            return p


def _random_divisor(F, rng, places, low=-3, high=3):
    return Divisor({P: int(rng.integers(low, high + 1)) for P in places})


class TestValuation:
    """Test valuations and principal divisors"""

    def test_z(self):
        """v_0(z) = 1 and v_inf(z) = -1"""
        F = make_field(5)
        assert valuation(_z(F), rational_place(F, 0)) == 1
        assert valuation(_z(F), INFINITY) == -1

    def test_quotient(self):
        """(z - 1)/z has a zero at P_1 and a pole at P_0"""
        F = make_field(5)
        f = RationalFunction.linear(F, 1) / _z(F)
        assert valuation(f, rational_place(F, 1)) == 1
        assert valuation(f, rational_place(F, 0)) == -1
        assert valuation(f, INFINITY) == 0

    def test_degree_two_place(self):
        """z^2 + 1 is a place of degree 2 over GF(3)"""
        F = make_field(3)
        P = place_from_poly(F, poly(F, [1, 0, 1]))
        f = RationalFunction(F, poly(F, [1, 0, 1]))
        assert P.degree == 2
        assert valuation(f, P) == 1
        assert valuation(f, INFINITY) == -2

    def test_zero_function(self):
        """The zero function has no valuation or divisor"""
        F = make_field(3)
        with pytest.raises(ZeroFunction):
            valuation(_const(F, 0), INFINITY)
        with pytest.raises(ZeroFunction):
            principal_divisor(_const(F, 0))

    def test_principal_divisor_of_z(self):
        """(z) = P_0 - P_inf"""
        F = make_field(7)
        assert principal_divisor(_z(F)) == Divisor({rational_place(F, 0): 1, INFINITY: -1})

    def test_principal_divisor_degree_zero(self):
        """deg (f) = 0 for 200 seeded functions"""
        rng = np.random.default_rng(1)
        for q in (3, 4, 5, 8):
            F = field_from_order(q)
            for _ in range(50):
                f = RationalFunction(F, _random_poly(F, rng, 5), _random_poly(F, rng, 5))
                if f.is_zero():
                    continue
                assert principal_divisor(f).degree == 0

    def test_reducible_place_rejected(self):
        """Places need irreducible polynomials"""
        F = make_field(5)
        with pytest.raises(DomainError):
            place_from_poly(F, poly(F, [1, 0, 4]))


class TestDifferentials:
    """Test divisors of differentials"""

    def test_dz(self):
        """(dz) = -2 P_inf"""
        F = make_field(5)
        assert differential_divisor(Differential(_const(F, 1))) == Divisor.single(INFINITY, -2)

    def test_simple_pole(self):
        """(dz/(z - 1)) = -P_1 - P_inf"""
        F = make_field(5)
        omega = Differential(_const(F, 1) / RationalFunction.linear(F, 1))
        assert differential_divisor(omega) == Divisor({rational_place(F, 1): -1, INFINITY: -1})

    def test_degree_minus_two(self):
        """deg (omega) = -2 for seeded differentials"""
        rng = np.random.default_rng(2)
        F = field_from_order(9)
        for _ in range(50):
            f = RationalFunction(F, _random_poly(F, rng, 4), _random_poly(F, rng, 4))
            if not f.is_zero():
                assert differential_divisor(Differential(f)).degree == -2


class TestRiemannRoch:
    """Test bases of L(A)"""

    def test_zero_divisor(self):
        """L(0) is the constants"""
        F = make_field(5)
        assert riemann_roch_basis(Divisor(), F) == [_const(F, 1)]

    def test_multiple_of_infinity(self):
        """L(3 P_inf) has basis 1, z, z^2, z^3"""
        F = make_field(5)
        basis = riemann_roch_basis(Divisor.single(INFINITY, 3), F)
        assert basis == [_z(F) ** j for j in range(4)]

    def test_negative_degree(self):
        """L(-P_0) = 0"""
        F = make_field(5)
        assert riemann_roch_basis(Divisor.single(rational_place(F, 0), -1), F) == []

    def test_dimension_formula(self):
        """dim L(A) = deg A + 1 and (b) + A >= 0 for 200 seeded divisors"""
        rng = np.random.default_rng(3)
        F = make_field(3)
        places = rational_places(F, range(3)) + [INFINITY, place_from_poly(F, poly(F, [1, 0, 1]))]
        checked = 0
        while checked < 200:
            A = _random_divisor(F, rng, places)
            if A.degree < 0:
                continue
            basis = riemann_roch_basis(A, F)
            assert len(basis) == A.degree + 1
            for b in basis:
                assert Divisor() <= principal_divisor(b) + A
            checked += 1


class TestResidue:
    """Test residues"""

    def test_simple_pole_at_one(self):
        """res_{P_1} dz/(z - 1) = 1"""
        F = make_field(7)
        omega = Differential(_const(F, 1) / RationalFunction.linear(F, 1))
        assert int(residue(omega, rational_place(F, 1))) == 1

    def test_logarithmic_derivative(self):
        """du/u has residue 1 at each root of u"""
        F = field_from_order(8)
        roots = [1, 3, 6]
        u = _const(F, 1)
        for a in roots:
            u = u * RationalFunction.linear(F, a)
        omega = Differential(RationalFunction(F, u.num.derivative(), u.num))
        for a in roots:
            assert int(residue(omega, rational_place(F, a))) == 1

    def test_no_pole(self):
        """dz has residue 0 at P_0"""
        F = make_field(5)
        assert int(residue(Differential(_const(F, 1)), rational_place(F, 0))) == 0

    def test_infinity(self):
        """dz/z has residue -1 at P_inf"""
        F = make_field(5)
        omega = Differential(_const(F, 1) / _z(F))
        assert int(residue(omega, INFINITY)) == 4

    def test_double_pole(self):
        """(z + 1)/z^2 dz has residue 1 at P_0"""
        F = make_field(5)
        omega = Differential((_z(F) + _const(F, 1)) / (_z(F) ** 2))
        assert int(residue(omega, rational_place(F, 0))) == 1

    def test_non_rational_place(self):
        """Residues at places of degree 2 are not computed"""
        F = make_field(3)
        P = place_from_poly(F, poly(F, [1, 0, 1]))
        with pytest.raises(NonRationalPlace):
            residue(Differential(_const(F, 1)), P)

    @pytest.mark.parametrize("q", [5, 7, 9, 16])
    def test_residue_theorem(self, q):
        """Residues over all poles sum to zero for simple rational poles"""
        F = field_from_order(q)
        rng = np.random.default_rng(q)
        for _ in range(30):
            roots = sorted(set(int(a) for a in rng.integers(0, q, size=4)))
            den = _const(F, 1)
            for a in roots:
                den = den * RationalFunction.linear(F, a)
            num = RationalFunction(F, _random_poly(F, rng, len(roots) + 1))
            omega = Differential(num / den)
            places = rational_places(F, roots) + [INFINITY]
            total = F.zero
            for P in places:
                total = total + residue(omega, P)
            assert int(total) == 0


class TestDivisor:
    """Test divisor arithmetic and rounding to even divisors"""

    def test_arithmetic(self):
        """Degree, support, sums and scalar multiples"""
        F = make_field(3)
        P0, P1 = rational_place(F, 0), rational_place(F, 1)
        Q = place_from_poly(F, poly(F, [1, 0, 1]))
        A = Divisor({P0: 2, Q: -1})
        B = Divisor({P0: -2, P1: 1})
        assert A.degree == 0
        assert (A + B) == Divisor({P1: 1, Q: -1})
        assert (2 * A).degree == 0
        assert A.support() == [P0, Q]
        assert (A - A).is_zero()

    def test_support_order(self):
        """Rational places by root, then higher degree, P_inf last"""
        F = make_field(3)
        Q = place_from_poly(F, poly(F, [1, 0, 1]))
        D = Divisor.from_places([INFINITY, Q, rational_place(F, 2), rational_place(F, 0)])
        assert D.support() == [rational_place(F, 0), rational_place(F, 2), Q, INFINITY]

    def test_halve_requires_even(self):
        """Only even divisors can be halved"""
        F = make_field(5)
        with pytest.raises(DomainError):
            Divisor.single(rational_place(F, 0), 3).halve()

    def test_even_rounding(self):
        """2A = floor(A) + ceil(A), both even, floor(A) <= A <= ceil(A) on 500 divisors"""
        rng = np.random.default_rng(4)
        F = make_field(3)
        places = rational_places(F, range(3)) + [INFINITY, place_from_poly(F, poly(F, [1, 0, 1]))]
        for _ in range(500):
            A = _random_divisor(F, rng, places, low=-7, high=7)
            lo, hi = A.floor_even(), A.ceil_even()
            assert 2 * A == lo + hi
            assert lo.is_even() and hi.is_even()
            assert lo <= A <= hi


class TestRationalFunction:
    """Test canonical rational functions"""

    def test_reduced(self):
        """(z^2 - 1)/(z - 1) = z + 1"""
        F = make_field(5)
        f = (_z(F) ** 2 - _const(F, 1)) / RationalFunction.linear(F, 1)
        assert f == _z(F) + _const(F, 1)

    def test_monic_denominator(self):
        """1/(2z) is stored as 3/z over GF(5)"""
        F = make_field(5)
        f = _const(F, 1) / (_const(F, 2) * _z(F))
        assert [int(c) for c in f.den.coeffs] == [1, 0]
        assert [int(c) for c in f.num.coeffs] == [3]

    def test_evaluate(self):
        """Values at finite places and at infinity"""
        F = make_field(7)
        f = (_z(F) + _const(F, 1)) / (_const(F, 2) * _z(F) + _const(F, 3))
        assert int(f.evaluate(rational_place(F, 1))) == int(F.element(2) / F.element(5))
        assert int(f.evaluate(INFINITY)) == int(F.element(1) / F.element(2))
        with pytest.raises(DomainError):
            _z(F).evaluate(INFINITY)
