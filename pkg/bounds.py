"""
Asymptotic bound numerics: q-ary entropy, the Gilbert-Varshamov relative
distance at rate 1/2, the tower-based self-dual bound, and the comparison
between the two over ranges of q.

delta_1 values are exact Fractions; delta_0 comes from bisection in floating
point, so the comparison carries a guard band and reports ``borderline``.
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import galois
import numpy as np
import pandas as pd

from errors import DomainError, NotPrimePower, RankTooSmall, RequiresOddR
from finite_field import prime_power_decomposition

logger = logging.getLogger('selfdual_codes')

BISECTION_TOLERANCE = 1e-12
BORDERLINE_BAND = 1e-9
MAX_ITERATIONS = 200

SCAN_COLUMNS = ["q", "l", "r", "delta0", "delta1", "beats_gv"]

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class Factorization:
    l: int
    r: int
    delta1: Fraction


@dataclass(frozen=True)
class BoundsReport:
    q: int
    delta0: float
    residual: float
    factorizations: List[Factorization] = field(default_factory=list)
    beats_gv: bool = False
    borderline: bool = False

    @property
    def best(self) -> Optional[Factorization]:
        if not self.factorizations:
            return None
        return max(self.factorizations, key=lambda f: f.delta1)

    @property
    def delta1(self) -> Optional[Fraction]:
        best = self.best
        return best.delta1 if best else None


@dataclass(frozen=True)
class ProofChain:
    """Sufficient conditions for delta_0 < delta_1, strongest last."""
    l: int
    r: int
    epsilon: Fraction
    direct: bool
    series_inequality: bool
    harmonic_inequality: bool
    floor_power_inequality: bool


@dataclass(frozen=True)
class AdvantageInterval:
    l: int
    q: int
    low: Optional[float]
    high: Optional[float]
    half_rate_delta: Fraction

    @property
    def nonempty(self) -> bool:
        return self.low is not None

    @property
    def contains_half_rate(self) -> bool:
        return self.nonempty and self.low < float(self.half_rate_delta) < self.high


# ---------- entropy ----------

def _check_q(q: int) -> None:
    if not isinstance(q, (int, np.integer)) or q < 2:
        raise DomainError(f"alphabet size must be an integer >= 2, got {q}")


def entropy(q: int, delta: float) -> float:
    """
    H_q(delta) = delta log_q(q-1) - delta log_q(delta) - (1-delta) log_q(1-delta),
    with H_q(0) = 0.

    Raises:
        DomainError: If delta is outside [0, 1 - 1/q]
    """
    _check_q(q)
    delta = float(delta)
    if not 0.0 <= delta <= 1.0 - 1.0 / q:
        raise DomainError(f"delta = {delta} outside [0, 1 - 1/{q}]")
    if delta == 0.0:
        return 0.0
    ln_q = math.log(q)
    return (delta * math.log(q - 1) - delta * math.log(delta)
            - (1.0 - delta) * math.log(1.0 - delta)) / ln_q


def entropy_curve(q: int, deltas: Sequence[float]) -> np.ndarray:
    """Vectorized entropy over a grid."""
    _check_q(q)
    d = np.asarray(deltas, dtype=float)
    if d.size and (d.min() < 0.0 or d.max() > 1.0 - 1.0 / q):
        raise DomainError(f"grid leaves [0, 1 - 1/{q}]")
    with np.errstate(divide="ignore", invalid="ignore"):
        h = (d * np.log(q - 1) - d * np.log(d) - (1.0 - d) * np.log1p(-d)) / np.log(q)
    return np.where(d == 0.0, 0.0, h)


def gv_delta_at_half(q: int, tolerance: float = BISECTION_TOLERANCE,
                     max_iterations: int = MAX_ITERATIONS) -> float:
    """
    The delta_0 in (0, 1 - 1/q) with H_q(delta_0) = 1/2, by bisection.

    H_q(0) = 0 < 1/2 < 1 = H_q(1 - 1/q) and H_q is strictly increasing there,
    so the bracket is always valid.
    """
    _check_q(q)
    lo, hi = 0.0, 1.0 - 1.0 / q
    mid = (lo + hi) / 2
    for _ in range(max_iterations):
        mid = (lo + hi) / 2
        value = entropy(q, mid) - 0.5
        if abs(value) < tolerance:
            break
        if value < 0:
            lo = mid
        else:
            hi = mid
    return mid


# ---------- tower bounds ----------

def _check_l_r(l: int, r: int) -> None:
    if not isinstance(l, (int, np.integer)) or l < 2 or not galois.is_prime_power(int(l)):
        raise NotPrimePower(f"{l} is not a prime power")
    if r < 2:
        raise RankTooSmall(f"r must be >= 2, got {r}", r=r)


def tvz_epsilon(l: int, r: int) -> Fraction:
    """
    (1/(l^ceil(r/2) - 1) + 1/(l^floor(r/2) - 1)) / 2, so delta_1 = 1/2 - epsilon.

    Raises:
        NotPrimePower: If l is not a prime power
        RankTooSmall: If r < 2
    """
    _check_l_r(l, r)
    up, down = (r + 1) // 2, r // 2
    return HALF * (Fraction(1, l ** up - 1) + Fraction(1, l ** down - 1))


def tvz_selfdual_delta(l: int, r: int) -> Fraction:
    """Asymptotic relative distance of self-dual codes over F_{l^r} from towers."""
    return HALF - tvz_epsilon(l, r)


def factorizations(q: int) -> List[Tuple[int, int]]:
    """All (l, r) with l^r = q and r > 1, by increasing r."""
    p, m = prime_power_decomposition(q)
    return [(p ** (m // r), r) for r in range(2, m + 1) if m % r == 0]


def beats_gv(q: int, tolerance: float = BISECTION_TOLERANCE,
             band: float = BORDERLINE_BAND,
             max_iterations: int = MAX_ITERATIONS) -> BoundsReport:
    """
    Compare delta_0 with the best delta_1 over all factorizations of q.

    Raises:
        NotPrimePower: If q is not a prime power
    """
    pairs = factorizations(q)
    delta0 = gv_delta_at_half(q, tolerance=tolerance, max_iterations=max_iterations)
    residual = abs(entropy(q, delta0) - 0.5)
    facts = [Factorization(l=l, r=r, delta1=tvz_selfdual_delta(l, r)) for l, r in pairs]
    if not facts:
        return BoundsReport(q=q, delta0=delta0, residual=residual)
    best = max(f.delta1 for f in facts)
    borderline = abs(delta0 - float(best)) < band
    if borderline:
        logger.warning(f"q = {q}: delta0 and delta1 agree within {band}")
    return BoundsReport(q=q, delta0=delta0, residual=residual, factorizations=facts,
                        beats_gv=delta0 < float(best), borderline=borderline)


def sufficiency_check(l: int, r: int) -> bool:
    """l^floor(r/2) > 3 + 2 ln(l^r); True settles the comparison, False is inconclusive."""
    return l ** (r // 2) > 3 + 2 * math.log(l ** r)


def proof_chain(l: int, r: int) -> ProofChain:
    """
    The direct comparison 1 - H_q(delta_1) < 1/2 together with the three
    successively cruder sufficient inequalities used to establish it.
    """
    eps = tvz_epsilon(l, r)
    q = l ** r
    ln_q = math.log(q)
    e = float(eps)
    series = (0.5 - e) * (1 - 1 / (ln_q * (q - 1)) + (1 + 2 * e) / ln_q) > 0.5
    return ProofChain(
        l=l, r=r, epsilon=eps,
        direct=1 - entropy(q, float(HALF - eps)) < 0.5,
        series_inequality=series,
        harmonic_inequality=float(1 / eps) > 2 + 2 * ln_q,
        floor_power_inequality=sufficiency_check(l, r),
    )


def tower_rate_bound(m: int, gamma) -> Fraction:
    """
    1/2 - gamma/m.

    Raises:
        DomainError: If m < 1 or gamma < 0
    """
    gamma = Fraction(gamma)
    if m < 1 or gamma < 0:
        raise DomainError(f"need m >= 1 and gamma >= 0, got m = {m}, gamma = {gamma}")
    return HALF - gamma / m


def bbgs_gamma(l: int, r: int) -> Fraction:
    """
    (1/(l^((r-1)/2) - 1) + 1/(l^((r+1)/2) - 1)) / 2 for odd r > 1.

    Raises:
        RequiresOddR: If r is even or r <= 1
    """
    if r <= 1 or r % 2 == 0:
        raise RequiresOddR(f"r must be odd and > 1, got {r}", r=r)
    return HALF * (Fraction(1, l ** ((r - 1) // 2) - 1) + Fraction(1, l ** ((r + 1) // 2) - 1))


def tower_level_bound(m: int, degree: int, genus: int,
                      ramification: Sequence[Tuple[int, int]]) -> Fraction:
    """
    Finite-level lower bound on d/n for the code at one level of a tower:

        1/2 - g/(mN) + 1/(mN) - sum(deg P / e(P)) / (2m)

    Args:
        m: Number of completely splitting places used
        degree: N = [F_i : F_0]
        genus: g(F_i)
        ramification: (deg P, e_i(P)) over the ramification locus
    """
    if m < 1 or degree < 1:
        raise DomainError(f"need m >= 1 and N >= 1, got m = {m}, N = {degree}")
    mN = m * degree
    spread = sum((Fraction(d, e) for d, e in ramification), Fraction(0))
    return HALF - Fraction(genus, mN) + Fraction(1, mN) - spread / (2 * m)


def tower_length_condition(q: int, degree: int, m: int) -> bool:
    """4 | N m when q = 3 (mod 4), otherwise 2 | N m."""
    prime_power_decomposition(q)
    need = 4 if q % 4 == 3 else 2
    return (degree * m) % need == 0


def _bisect_root(g, lo: float, hi: float, tolerance: float, max_iterations: int) -> float:
    # g(lo) and g(hi) have opposite signs
    sign_lo = g(lo) > 0
    mid = (lo + hi) / 2
    for _ in range(max_iterations):
        mid = (lo + hi) / 2
        if hi - lo < tolerance:
            break
        if (g(mid) > 0) == sign_lo:
            lo = mid
        else:
            hi = mid
    return mid


def tvz_advantage_interval(l: int, tolerance: float = BISECTION_TOLERANCE,
                           max_iterations: int = MAX_ITERATIONS) -> AdvantageInterval:
    """
    For q = l^2, the delta-interval where R = 1 - 1/(l-1) - delta lies above
    the GV curve R = 1 - H_q(delta).

    The gap H_q(delta) - delta - 1/(l-1) is concave with its maximum at
    delta* = (q-1)/(2q-1) and negative at both ends of [0, 1 - 1/q].
    """
    _check_l_r(l, 2)
    q = l * l
    shift = 1.0 / (l - 1)

    def gap(delta: float) -> float:
        return entropy(q, delta) - delta - shift

    peak = (q - 1) / (2 * q - 1)
    half_rate = HALF - Fraction(1, l - 1)
    if gap(peak) <= 0:
        return AdvantageInterval(l=l, q=q, low=None, high=None, half_rate_delta=half_rate)
    low = _bisect_root(gap, 0.0, peak, tolerance, max_iterations)
    high = _bisect_root(gap, peak, 1.0 - 1.0 / q, tolerance, max_iterations)
    return AdvantageInterval(l=l, q=q, low=low, high=high, half_rate_delta=half_rate)


def prime_powers(q_from: int, q_to: int) -> List[int]:
    return [q for q in range(max(2, q_from), q_to + 1) if galois.is_prime_power(q)]


def scan(q_from: int, q_to: int, tolerance: float = BISECTION_TOLERANCE,
         band: float = BORDERLINE_BAND,
         max_iterations: int = MAX_ITERATIONS) -> pd.DataFrame:
    """
    One row per prime power q in [q_from, q_to], using the factorization with
    the largest delta_1. Primes have empty l, r and delta1.
    """
    records = []
    for q in prime_powers(q_from, q_to):
        report = beats_gv(q, tolerance=tolerance, band=band, max_iterations=max_iterations)
        best = report.best
        records.append({
            "q": q,
            "l": best.l if best else None,
            "r": best.r if best else None,
            "delta0": report.delta0,
            "delta1": float(best.delta1) if best else None,
            "beats_gv": report.beats_gv,
            "borderline": report.borderline,
            "residual": report.residual,
        })
    df = pd.DataFrame.from_records(
        records, columns=SCAN_COLUMNS + ["borderline", "residual"])
    df["l"] = df["l"].astype("Int64")
    df["r"] = df["r"].astype("Int64")
    df["delta1"] = df["delta1"].astype(float)
    df["beats_gv"] = df["beats_gv"].astype(bool)
    logger.info(f"scanned {len(df)} prime powers in [{q_from}, {q_to}], "
                f"{int(df['beats_gv'].sum())} beat GV")
    return df
