"""
Unit tests for self-dual code construction

Test coverage:
- Existence condition over a parameter grid
- base_selfdual on the (q, n) grid and fixed small cases
- embed_selfdual on seeded self-orthogonal codes over the full (q, n) grid, error cases
- The even-characteristic isotropy criterion
- diagonalize_symmetric and random_self_orthogonal
"""

import os
import sys

import numpy as np
import pytest

# Add repository directory to path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from errors import AlreadyMaximal, NotPrimePower, NotSelfOrthogonal, StarViolated
from exact_linalg import matrix, rank
from finite_field import field_from_order, make_field
from linear_code import (contains, from_rows, is_self_dual, is_self_orthogonal,
                         zero_code)
from selfdual_construct import (base_selfdual, diagonalize_symmetric,
                                embed_selfdual, exists_selfdual,
                                isotropic_in_complement, random_self_orthogonal,
                                selfdual_grid, star_condition)

GRID_Q = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25]
GRID_N = [2, 4, 8, 12, 16]


class TestExistence:
    """Test the existence condition"""

    def test_known_cases(self):
        """n odd fails; q = 3 (mod 4) needs 4 | n"""
        assert exists_selfdual(5, 2)
        assert exists_selfdual(4, 6)
        assert not exists_selfdual(3, 6)
        assert exists_selfdual(3, 8)
        assert not exists_selfdual(8, 5)

    def test_not_prime_power(self):
        """q = 12 is rejected"""
        with pytest.raises(NotPrimePower):
            exists_selfdual(12, 4)

    def test_star_condition_record(self):
        """The record keeps q and n"""
        star = star_condition(7, 6)
        assert (star.q, star.n, star.satisfied) == (7, 6, False)

    def test_grid(self):
        """selfdual_grid agrees with exists_selfdual"""
        rows = selfdual_grid([3, 5], [2, 4])
        assert rows == [(3, 2, False), (3, 4, True), (5, 2, True), (5, 4, True)]


class TestBaseSelfDual:
    """Test the explicit construction"""

    def test_grid(self):
        """Self-dual exactly where the condition holds, StarViolated elsewhere"""
        for q in GRID_Q:
            F = field_from_order(q)
            for n in GRID_N:
                if exists_selfdual(q, n):
                    C = base_selfdual(F, n)
                    assert C.k == n // 2
                    assert is_self_dual(C)
                else:
                    with pytest.raises(StarViolated):
                        base_selfdual(F, n)

    def test_gf5_length_two(self):
        """Over GF(5) the code spanned by (2, 1) is reported in reduced form (1, 3)"""
        C = base_selfdual(make_field(5), 2)
        assert C.rows() == [[1, 3]]
        assert C == from_rows(make_field(5), 2, [[2, 1]])

    def test_gf3_length_four(self):
        """The q = 3 (mod 4) block over GF(3)"""
        C = base_selfdual(make_field(3), 4)
        assert C.rows() == [[1, 0, 2, 1], [0, 1, 2, 2]]

    def test_odd_length(self):
        """Odd n never admits a self-dual code"""
        with pytest.raises(StarViolated):
            base_selfdual(make_field(2), 3)


class TestEmbed:
    """Test extension of self-orthogonal codes"""

    @pytest.mark.parametrize("q", GRID_Q)
    def test_random_self_orthogonal_codes(self, q):
        """100 seeded codes per length embed into self-dual codes of dimension n/2"""
        F = field_from_order(q)
        rng = np.random.default_rng(100 + q)
        for n in GRID_N:
            if not exists_selfdual(q, n):
                continue
            for _ in range(100):
                C = random_self_orthogonal(F, n, None, rng)
                E = embed_selfdual(C)
                assert contains(E, C)
                assert is_self_dual(E)
                assert E.k == n // 2

    def test_zero_code(self):
        """Starting from nothing still reaches dimension n/2"""
        F = field_from_order(9)
        E = embed_selfdual(zero_code(F, 6))
        assert is_self_dual(E)

    @pytest.mark.parametrize("q, n", [(3, 4), (3, 12), (7, 8), (2, 8), (4, 6), (8, 2)])
    def test_zero_code_small_fields(self, q, n):
        """Diagonal forms with no square ratio and even characteristic both reach n/2"""
        F = field_from_order(q)
        E = embed_selfdual(zero_code(F, n))
        assert is_self_dual(E)
        assert E.k == n // 2

    def test_not_self_orthogonal(self):
        """e_1 cannot be extended"""
        F = make_field(5)
        with pytest.raises(NotSelfOrthogonal):
            embed_selfdual(from_rows(F, 4, [[1, 0, 0, 0]]))

    def test_star_violated(self):
        """GF(3), n = 6 has no self-dual code"""
        with pytest.raises(StarViolated):
            embed_selfdual(zero_code(make_field(3), 6))

    def test_already_maximal(self):
        """span{(2, 1)} over GF(5) is already self-dual"""
        F = make_field(5)
        with pytest.raises(AlreadyMaximal):
            isotropic_in_complement(from_rows(F, 2, [[2, 1]]))

    def test_isotropic_vector(self):
        """The returned vector lies in C^perp \\ C and is isotropic"""
        F = make_field(7)
        C = from_rows(F, 8, [[1, 2, 3, 0, 0, 0, 0, 0]])
        assert is_self_orthogonal(C)
        x = isotropic_in_complement(C)
        assert int(np.sum(x * x)) == 0
        assert not np.any((C.gen @ x).view(np.ndarray))
        assert not contains(C, from_rows(F, 8, x.reshape(1, -1)))


class TestDiagonalize:
    """Test symmetric congruence diagonalization"""

    @pytest.mark.parametrize("q", [3, 5, 7, 9, 25])
    def test_random_symmetric(self, q):
        """P B P^T is diagonal and P is invertible"""
        F = field_from_order(q)
        rng = np.random.default_rng(q)
        for _ in range(20):
            A = F.GF(rng.integers(0, q, size=(5, 5)))
            B = A + A.T
            P, d = diagonalize_symmetric(B)
            D = P @ B @ P.T
            off = D.view(np.ndarray) - np.diag(np.diagonal(D.view(np.ndarray)))
            assert not np.any(off)
            assert np.array_equal(np.diagonal(D.view(np.ndarray)), d.view(np.ndarray))
            assert rank(P) == 5

    def test_hyperbolic_plane(self):
        """A zero diagonal is repaired by a transvection"""
        F = make_field(5)
        B = matrix(F, [[0, 1], [1, 0]])
        P, d = diagonalize_symmetric(B)
        assert np.count_nonzero(d.view(np.ndarray)) == 2


class TestRandomSelfOrthogonal:
    """Test the seeded sampler"""

    def test_self_orthogonal_and_bounded(self):
        """Samples are self-orthogonal with k <= n/2"""
        rng = np.random.default_rng(5)
        F = field_from_order(13)
        for _ in range(20):
            C = random_self_orthogonal(F, 8, 3, rng)
            assert is_self_orthogonal(C)
            assert C.k <= 3

    def test_reproducible(self):
        """Equal seeds give equal codes"""
        F = field_from_order(9)
        A = random_self_orthogonal(F, 8, None, np.random.default_rng(42))
        B = random_self_orthogonal(F, 8, None, np.random.default_rng(42))
        assert A == B


class TestCharacteristicTwoForm:
    """Test the isotropy criterion used in even characteristic"""

    @pytest.mark.parametrize("q", [2, 4, 8])
    def test_self_product_is_square_of_sum(self, q):
        """<x, x> = (sum x_i)^2 on 1000 seeded vectors"""
        F = field_from_order(q)
        rng = np.random.default_rng(2000 + q)
        X = F.GF(rng.integers(0, q, size=(1000, 9)))
        self_products = np.sum(X * X, axis=1)
        sums = np.sum(X, axis=1)
        assert np.array_equal(self_products.view(np.ndarray), (sums * sums).view(np.ndarray))

    @pytest.mark.parametrize("q", [2, 4, 8])
    def test_isotropic_vector_even_q(self, q):
        """The vector found in C^perp \\ C has zero coordinate sum"""
        F = field_from_order(q)
        C = random_self_orthogonal(F, 8, 1, np.random.default_rng(q))
        x = isotropic_in_complement(C)
        assert int(np.sum(x)) == 0
        assert not np.any((C.gen @ x).view(np.ndarray))
        assert not contains(C, from_rows(F, 8, x.reshape(1, -1)))
