"""Stopping-time and distribution tables, the mod-3 mixing heuristic, and
the real interpolation of the conjugate map.

Two sigma display conventions exist side by side:

  STEPS  the true stopping time (least k reaching the target); default.
  TERMS  number of trajectory terms through the target, inclusive - one
         more than STEPS.  The shipped reference tables were published in
         this convention (calibrated against them), so table checks use it.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from fractions import Fraction

from .errors import DomainError
from .maps import MapId, apply_TR, conjugate_S_inv
from .trajectories import (
    DEFAULT_CAP,
    TABLE2_WINDOW,
    DistributionCounts,
    StopReason,
    class_distribution,
    run_trajectory,
    sigma_T,
    sigma_TR,
)


class SigmaConvention(enum.Enum):
    STEPS = "steps"
    TERMS = "terms"

    def offset(self) -> int:
        return 0 if self is SigmaConvention.STEPS else 1


def round_ratio(num: int, den: int) -> float:
    """num/den rounded half-up to 3 decimal places (0.0 when den == 0)."""
    if den == 0:
        return 0.0
    q = (Decimal(num) / Decimal(den)).quantize(Decimal("0.001"), rounding=ROUND_HALF_UP)
    return float(q)


@dataclass
class StoppingRow:
    """One row comparing stopping times under T and under TR (via S^-1)."""

    n: int
    sigma_t: int | None
    sigma_tr: int | None
    ratio: float | None
    error: str | None = None


def stopping_table(
    ns,
    cap: int = DEFAULT_CAP,
    convention: SigmaConvention = SigmaConvention.STEPS,
) -> list[StoppingRow]:
    """Rows (n, sigma_T(n), sigma_TR(S^-1(n)), ratio) for seeds in [2]_3.

    Rows whose seed is outside [2]_3 or whose run exceeds cap are flagged
    with an error, never fabricated.
    """
    rows = []
    for n in ns:
        if n % 3 != 2 or n < 2:
            rows.append(StoppingRow(n, None, None, None, "seed must be >= 2 and in [2]_3"))
            continue
        st = sigma_T(n, cap)
        str_ = sigma_TR(conjugate_S_inv(n), cap)
        if st is None or str_ is None:
            rows.append(StoppingRow(n, st, str_, None, f"cap {cap} exceeded"))
            continue
        off = convention.offset()
        rows.append(StoppingRow(n, st + off, str_ + off, round_ratio(str_ + off, st + off)))
    return rows


@dataclass
class DistributionRow:
    n: int
    sigma_tr: int | None
    counts: DistributionCounts | None
    error: str | None = None


def distribution_table(
    ns,
    cap: int = DEFAULT_CAP,
    window: str = TABLE2_WINDOW,
    convention: SigmaConvention = SigmaConvention.STEPS,
) -> list[DistributionRow]:
    """Rows (n, sigma_TR(S^-1(n)), mod-3 tallies of the TR-trajectory)."""
    rows = []
    for n in ns:
        if n % 3 != 2:
            rows.append(DistributionRow(n, None, None, "seed must be in [2]_3"))
            continue
        m = conjugate_S_inv(n)
        if m < 0:
            rows.append(DistributionRow(n, None, None, "S^-1(n) is negative"))
            continue
        traj = run_trajectory(MapId.TR, m, cap)
        if traj.stop_reason is not StopReason.REACHED_TARGET:
            rows.append(DistributionRow(n, None, None, f"cap {cap} exceeded"))
            continue
        counts = class_distribution(traj, 3, window)
        rows.append(DistributionRow(n, traj.steps + convention.offset(), counts))
    return rows


def heuristic_Pk(p0, k: int) -> Fraction:
    """k-th term of the recursion P_k = (1 - P_{k-1}) / 2, exactly.

    Models the chance that the k-th term of a long T-orbit lies in [1]_3
    under a mixing assumption; converges to 1/3.  The recursion value is
    cross-checked against the closed form 1/3 + (p0 - 1/3) * (-1/2)^k.
    """
    p0 = Fraction(p0)
    if not 0 <= p0 <= 1:
        raise DomainError(f"p0 must lie in [0, 1], got {p0}")
    if k < 0:
        raise DomainError(f"k must be nonnegative, got {k}")
    pk = p0
    for _ in range(k):
        pk = (1 - pk) / 2
    closed = Fraction(1, 3) + (p0 - Fraction(1, 3)) * Fraction(-1, 2) ** k
    if pk != closed:
        raise ArithmeticError(f"recursion {pk} disagrees with closed form {closed}")
    return pk


@dataclass
class HeuristicSeries:
    """P_0 .. P_k of the mixing recursion as exact rationals."""

    p0: Fraction
    terms: list[Fraction]

    @property
    def limit(self) -> Fraction:
        return Fraction(1, 3)


def heuristic_series(p0, k: int) -> HeuristicSeries:
    p0 = Fraction(p0)
    return HeuristicSeries(p0=p0, terms=[heuristic_Pk(p0, i) for i in range(k + 1)])


@dataclass
class ModFractions:
    """Share of T-orbit terms in [1]_3 and [2]_3, over the window from the
    seed through the first target term inclusive."""

    mod1: float
    mod2: float
    mod1_count: int
    mod2_count: int
    total: int


def empirical_mod1_fraction(n: int, cap: int = DEFAULT_CAP) -> ModFractions | None:
    """Fractions of T-orbit terms of n congruent to 1 and to 2 mod 3.

    The window runs from the seed through the first occurrence of the
    target, inclusive (repetitions of the terminal cycle excluded), which
    is the window under which sigma_T - sigma_TR equals the mod-1 count.
    Returns None if the orbit does not reach the target within cap.
    """
    if n % 3 != 2:
        raise DomainError(f"seed must be in [2]_3, got {n}")
    traj = run_trajectory(MapId.T, n, cap)
    if traj.stop_reason is not StopReason.REACHED_TARGET:
        return None
    c1 = sum(1 for v in traj.terms if v % 3 == 1)
    c2 = sum(1 for v in traj.terms if v % 3 == 2)
    total = len(traj.terms)
    return ModFractions(c1 / total, c2 / total, c1, c2, total)


def real_extension_f(x: float) -> float:
    """Real function interpolating the conjugate map at the integers.

    f(x) = (3x+1)/2 + ((x+1)/4) cos(pi x/2) - ((4x+3)/4) cos^2(pi x/2);
    at integers the cosine collapses to 0, 1 or -1 and the three branch
    formulas of the integer map drop out.
    """
    c = math.cos(math.pi * x / 2)
    return (3 * x + 1) / 2 + (x + 1) / 4 * c - (4 * x + 3) / 4 * c * c


def interpolation_error(n: int) -> float:
    """|f(n) - TR(n)| scaled by max(1, |TR(n)|)."""
    exact = apply_TR(n)
    return abs(real_extension_f(float(n)) - exact) / max(1.0, abs(exact))
