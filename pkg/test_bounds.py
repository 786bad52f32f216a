"""
Unit tests for the asymptotic bound numerics

Test coverage:
- q-ary entropy values, domain errors, vectorized curve
- delta_0 by bisection, residuals and monotonicity
- Exact tower bounds, factorizations, sufficiency and proof chain
- Finite-level tower bound, length condition, advantage interval
- Scan table over ranges of q
"""

import os
import sys
from fractions import Fraction

import numpy as np
import pandas as pd
import pytest

# Add repository directory to path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from bounds import (SCAN_COLUMNS, bbgs_gamma, beats_gv, entropy, entropy_curve,
                    factorizations, gv_delta_at_half, prime_powers, proof_chain,
                    scan, sufficiency_check, tower_length_condition,
                    tower_level_bound, tower_rate_bound, tvz_advantage_interval,
                    tvz_epsilon, tvz_selfdual_delta)
from errors import DomainError, NotPrimePower, RankTooSmall, RequiresOddR


class TestEntropy:
    """Test H_q"""

    def test_binary_midpoint(self):
        """H_2(1/2) = 1"""
        assert entropy(2, 0.5) == pytest.approx(1.0)

    def test_zero(self):
        """H_q(0) = 0"""
        assert entropy(7, 0.0) == 0.0

    @pytest.mark.parametrize("q", [2, 3, 4, 49, 64])
    def test_right_endpoint(self, q):
        """H_q(1 - 1/q) = 1"""
        assert entropy(q, 1 - 1 / q) == pytest.approx(1.0)

    def test_domain(self):
        """delta outside [0, 1 - 1/q] is rejected"""
        with pytest.raises(DomainError):
            entropy(2, 0.6)
        with pytest.raises(DomainError):
            entropy(4, -0.1)
        with pytest.raises(DomainError):
            entropy(1, 0.1)

    @pytest.mark.parametrize("q", [2, 4, 49, 64, 125])
    def test_curve_increasing(self, q):
        """The vectorized curve matches scalars and strictly increases"""
        grid = np.linspace(0.0, 1.0 - 1.0 / q, 200)
        curve = entropy_curve(q, grid)
        assert np.all(np.diff(curve) > 0)
        assert curve[0] == 0.0
        for i in (1, 57, 123, 199):
            assert curve[i] == pytest.approx(entropy(q, grid[i]))

    def test_curve_domain(self):
        """A grid leaving the domain is rejected"""
        with pytest.raises(DomainError):
            entropy_curve(3, [0.1, 0.9])


class TestGVDelta:
    """Test delta_0 with H_q(delta_0) = 1/2"""

    @pytest.mark.parametrize("q, expected, tol", [(2, 0.1100, 1e-4), (49, 0.3375, 2e-3),
                                                  (64, 0.3462, 1e-3), (125, 0.3647, 2e-3)])
    def test_values(self, q, expected, tol):
        """Known approximate values"""
        assert gv_delta_at_half(q) == pytest.approx(expected, abs=tol)

    @pytest.mark.parametrize("q", [2, 3, 4, 5, 8, 49, 64, 1024])
    def test_residual(self, q):
        """|H_q(delta_0) - 1/2| is below the bisection tolerance"""
        assert abs(entropy(q, gv_delta_at_half(q)) - 0.5) < 1e-12

    def test_increasing_in_q(self):
        """delta_0 grows with q"""
        values = [gv_delta_at_half(q) for q in prime_powers(2, 200)]
        assert all(a < b for a, b in zip(values, values[1:]))


class TestTowerBounds:
    """Test the exact tower-based quantities"""

    def test_selfdual_delta(self):
        """Exact fractions for small (l, r)"""
        assert tvz_selfdual_delta(2, 6) == Fraction(5, 14)
        assert tvz_selfdual_delta(7, 2) == Fraction(1, 3)
        assert tvz_selfdual_delta(5, 3) == Fraction(17, 48)
        assert tvz_epsilon(8, 2) == Fraction(1, 7)

    def test_errors(self):
        """l must be a prime power and r at least 2"""
        with pytest.raises(NotPrimePower):
            tvz_epsilon(6, 2)
        with pytest.raises(RankTooSmall):
            tvz_epsilon(4, 1)

    def test_factorizations(self):
        """(l, r) pairs by increasing r, none for primes"""
        assert factorizations(64) == [(8, 2), (4, 3), (2, 6)]
        assert factorizations(81) == [(9, 2), (3, 4)]
        assert factorizations(13) == []
        with pytest.raises(NotPrimePower):
            factorizations(12)

    def test_bbgs_gamma(self):
        """Odd r only"""
        assert bbgs_gamma(5, 3) == Fraction(7, 48)
        assert bbgs_gamma(2, 3) == Fraction(2, 3)
        with pytest.raises(RequiresOddR):
            bbgs_gamma(2, 4)
        with pytest.raises(RequiresOddR):
            bbgs_gamma(2, 1)

    def test_rate_bound(self):
        """1/2 - gamma/m"""
        assert tower_rate_bound(3, Fraction(7, 48)) == Fraction(65, 144)
        assert tower_rate_bound(1, 0) == Fraction(1, 2)
        with pytest.raises(DomainError):
            tower_rate_bound(0, 1)
        with pytest.raises(DomainError):
            tower_rate_bound(2, -1)

    def test_level_bound(self):
        """One splitting place, N = 100, g = 10, one ramified place of degree 1 with e = 50"""
        assert tower_level_bound(1, 100, 10, [(1, 50)]) == Fraction(2, 5)
        with pytest.raises(DomainError):
            tower_level_bound(0, 100, 10, [])

    def test_length_condition(self):
        """4 | N m for q = 3 (mod 4), 2 | N m otherwise"""
        assert not tower_length_condition(3, 2, 1)
        assert tower_length_condition(3, 4, 1)
        assert tower_length_condition(5, 1, 2)
        assert not tower_length_condition(5, 1, 1)


class TestComparison:
    """Test delta_0 against delta_1"""

    def test_gf64(self):
        """64 = 8^2 beats GV"""
        report = beats_gv(64)
        assert report.beats_gv
        assert not report.borderline
        assert (report.best.l, report.best.r) == (8, 2)
        assert report.delta1 == Fraction(5, 14)

    def test_gf49(self):
        """49 = 7^2 does not"""
        report = beats_gv(49)
        assert not report.beats_gv
        assert report.delta1 == Fraction(1, 3)

    def test_gf125(self):
        """125 = 5^3 does not"""
        assert not beats_gv(125).beats_gv

    def test_prime(self):
        """Primes have no factorization"""
        report = beats_gv(13)
        assert report.best is None
        assert report.delta1 is None
        assert not report.beats_gv

    def test_sufficiency_values(self):
        """l^floor(r/2) > 3 + 2 ln(l^r)"""
        assert sufficiency_check(23, 2)
        assert not sufficiency_check(2, 6)
        assert sufficiency_check(2, 8)

    def test_sufficiency_implies_beats_gv(self):
        """Whenever the sufficient condition holds the comparison does too"""
        checked = 0
        for l in prime_powers(2, 256):
            r = 2
            while l ** r <= 2 ** 16:
                if sufficiency_check(l, r):
                    assert beats_gv(l ** r).beats_gv
                    checked += 1
                r += 1
        assert checked > 0

    def test_proof_chain(self):
        """The chain for (2, 8) holds at every step"""
        chain = proof_chain(2, 8)
        assert chain.epsilon == tvz_epsilon(2, 8)
        assert chain.floor_power_inequality
        assert chain.direct


class TestAdvantageInterval:
    """Test where the tower line lies above the GV curve for q = l^2"""

    def test_empty(self):
        """l = 2 gives nothing"""
        interval = tvz_advantage_interval(2)
        assert not interval.nonempty
        assert not interval.contains_half_rate

    def test_gf49(self):
        """q = 49 has an interval that misses rate 1/2"""
        interval = tvz_advantage_interval(7)
        assert interval.nonempty
        assert not interval.contains_half_rate
        assert interval.half_rate_delta == Fraction(1, 3)

    def test_gf64(self):
        """q = 64 contains rate 1/2"""
        interval = tvz_advantage_interval(8)
        assert interval.nonempty
        assert interval.contains_half_rate
        assert interval.low < 63 / 127 < interval.high

    def test_not_prime_power(self):
        """l = 6 is rejected"""
        with pytest.raises(NotPrimePower):
            tvz_advantage_interval(6)


class TestScan:
    """Test the scan table"""

    def test_columns_and_winners(self):
        """Columns in order; only 64, 81, 121, 128 win up to 128"""
        df = scan(4, 128)
        assert list(df.columns[:len(SCAN_COLUMNS)]) == SCAN_COLUMNS
        assert set(df.loc[df["beats_gv"], "q"]) == {64, 81, 121, 128}
        assert list(df["q"]) == prime_powers(4, 128)

    def test_prime_rows_empty(self):
        """Primes have missing l, r and delta1"""
        df = scan(4, 16)
        row = df[df["q"] == 5].iloc[0]
        assert pd.isna(row["l"])
        assert pd.isna(row["r"])
        assert pd.isna(row["delta1"])
        assert str(df["l"].dtype) == "Int64"

    def test_acceptance_range(self):
        """Up to 1024 the winners are exactly the non-prime q >= 64 except 125"""
        df = scan(4, 1024)
        assert not df["borderline"].any()
        assert (df["residual"] < 1e-12).all()
        winners = set(df.loc[df["beats_gv"], "q"])
        expected = {q for q in prime_powers(4, 1024)
                    if factorizations(q) and q >= 64 and q != 125}
        assert winners == expected
