"""Iteration engine, stopping times, and structural validators for orbits.

Stopping times here are true step counts: sigma is the least k for which
the k-th iterate equals the map's target.  (The shipped reference tables
use a term-count convention that is exactly one larger; see
``analysis.SigmaConvention``.)
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .errors import DomainError, TransienceError
from .maps import (
    MapId,
    apply_map,
    apply_T,
    apply_TR_star,
    conjugate_S,
    step_compression,
)

DEFAULT_CAP = 10**6


class StopReason(enum.Enum):
    REACHED_TARGET = "reached-target"
    CYCLE_DETECTED = "cycle-detected"
    CAP_EXCEEDED = "cap-exceeded"


@dataclass
class Trajectory:
    """Recorded orbit of one seed under one map.

    terms[0] is the seed; terms[k+1] = map(terms[k]).  On CYCLE_DETECTED
    the first repeated value is kept as the final term so the closure is
    visible.
    """

    map: MapId
    seed: int
    terms: list[int]
    stop_reason: StopReason

    @property
    def steps(self) -> int:
        return len(self.terms) - 1

    def residues(self, modulus: int) -> list[int]:
        return [t % modulus for t in self.terms]


def run_trajectory(map_id: MapId, seed: int, cap: int = DEFAULT_CAP) -> Trajectory:
    """Iterate until the map's target value is reached (inclusive), a value
    recurs, or cap steps elapse."""
    if cap < 1:
        raise ValueError(f"cap must be positive, got {cap}")
    if not map_id.domain.contains(seed):
        raise DomainError(
            f"seed {seed} is outside the domain {map_id.domain} of {map_id.value}"
        )
    target = map_id.target
    terms = [seed]
    if seed == target:
        return Trajectory(map_id, seed, terms, StopReason.REACHED_TARGET)
    seen = {seed}
    cur = seed
    for _ in range(cap):
        cur = apply_map(map_id, cur)
        terms.append(cur)
        if cur == target:
            return Trajectory(map_id, seed, terms, StopReason.REACHED_TARGET)
        if cur in seen:
            return Trajectory(map_id, seed, terms, StopReason.CYCLE_DETECTED)
        seen.add(cur)
    return Trajectory(map_id, seed, terms, StopReason.CAP_EXCEEDED)


def sigma_T(n: int, cap: int = DEFAULT_CAP) -> int | None:
    """Least k with the k-th T-iterate of n equal to 1, for n >= 1.

    Returns None when cap steps pass without reaching 1.
    """
    if n < 1:
        raise DomainError(f"sigma_T needs a positive seed, got {n}")
    k = 0
    while n != 1:
        n = n // 2 if n % 2 == 0 else (3 * n + 1) // 2
        k += 1
        if k > cap:
            return None
    return k


def sigma_TR(n: int, cap: int = DEFAULT_CAP) -> int | None:
    """Least k with the k-th TR-iterate of n equal to 0, for n >= 0.

    Returns None when cap steps pass without reaching 0.
    """
    if n < 0:
        raise DomainError(f"sigma_TR needs a nonnegative seed, got {n}")
    k = 0
    while n != 0:
        m = n % 4
        if m == 0:
            n = 3 * n // 4
        elif m == 2:
            n = (n - 2) // 4
        else:
            n = (3 * n + 1) // 2
        k += 1
        if k > cap:
            return None
    return k


MOD0_AFTER_PREFIX = "MOD0_AFTER_PREFIX"
CONSECUTIVE_MOD1 = "CONSECUTIVE_MOD1"
CONSECUTIVE_5MOD9 = "CONSECUTIVE_5MOD9"


@dataclass
class StructureReport:
    """Structural facts about a T-orbit: multiples of 3 confined to an
    initial prefix, and no two consecutive terms in [1]_3 or in [5]_9."""

    prefix_len_mod0: int
    violations: list[tuple[int, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def validate_structure(terms) -> StructureReport:
    """Scan any term sequence for the T-orbit structure properties."""
    terms = list(terms)
    prefix = 0
    for v in terms:
        if v % 3 == 0:
            prefix += 1
        else:
            break
    violations = []
    for i, v in enumerate(terms[prefix:], start=prefix):
        if v % 3 == 0:
            violations.append((i, MOD0_AFTER_PREFIX))
    for i in range(len(terms) - 1):
        if terms[i] % 3 == 1 and terms[i + 1] % 3 == 1:
            violations.append((i, CONSECUTIVE_MOD1))
        if terms[i] % 9 == 5 and terms[i + 1] % 9 == 5:
            violations.append((i, CONSECUTIVE_5MOD9))
    return StructureReport(prefix_len_mod0=prefix, violations=violations)


def validate_structure_T(traj: Trajectory) -> StructureReport:
    """Structure validation of a recorded T-trajectory (seed must be nonzero)."""
    if traj.map is not MapId.T:
        raise DomainError(f"expected a T trajectory, got {traj.map.value}")
    if traj.seed == 0:
        raise DomainError("structure validation needs a nonzero seed")
    return validate_structure(traj.terms)


def validate_transience_TRstar(n: int, cap: int = DEFAULT_CAP) -> int:
    """Steps until the accelerated-TR orbit of n leaves [1]_3 (0 if outside).

    While inside [1]_3 the iterates must strictly decrease in magnitude,
    and the first iterate taken from outside must again avoid [1]_3; any
    violation, or running past cap, raises TransienceError since it would
    contradict the map's proven transience.
    """
    k = 0
    cur = n
    while cur % 3 == 1:
        nxt = apply_TR_star(cur)
        if nxt % 3 == 1 and abs(nxt) >= abs(cur):
            raise TransienceError(
                f"magnitude did not decrease inside [1]_3: |{nxt}| >= |{cur}|"
            )
        cur = nxt
        k += 1
        if k > cap:
            raise TransienceError(f"orbit of {n} stayed in [1]_3 for over {cap} steps")
    if apply_TR_star(cur) % 3 == 1:
        raise TransienceError(
            f"orbit re-entered [1]_3 from {cur} after exiting"
        )
    return k


@dataclass
class DistributionCounts:
    """Residue-class tallies of trajectory terms modulo a fixed modulus."""

    modulus: int
    counts: dict[int, int]
    total: int

    def as_tuple(self) -> tuple[int, ...]:
        return tuple(self.counts.get(r, 0) for r in range(self.modulus))


# Selectable counting windows over a recorded trajectory.  "full" counts
# every recorded term, seed and final target included; it is the window
# that reproduces the shipped distribution reference table.  "drop-last"
# and "drop-first" each cover exactly sigma terms.
WINDOW_FULL = "full"
WINDOW_DROP_LAST = "drop-last"
WINDOW_DROP_FIRST = "drop-first"
TABLE2_WINDOW = WINDOW_FULL

_WINDOWS = {
    WINDOW_FULL: lambda terms: terms,
    WINDOW_DROP_LAST: lambda terms: terms[:-1],
    WINDOW_DROP_FIRST: lambda terms: terms[1:],
}


def class_distribution(
    traj: Trajectory, modulus: int, window: str = TABLE2_WINDOW
) -> DistributionCounts:
    """Tally the residues of the trajectory terms inside the chosen window."""
    if modulus < 2:
        raise DomainError(f"distribution modulus must be >= 2, got {modulus}")
    try:
        selected = _WINDOWS[window](traj.terms)
    except KeyError:
        raise ValueError(
            f"unknown window {window!r}; expected one of {sorted(_WINDOWS)}"
        ) from None
    counts = {r: 0 for r in range(modulus)}
    for v in selected:
        counts[v % modulus] += 1
    return DistributionCounts(modulus=modulus, counts=counts, total=len(selected))


def check_subsequence_consistency(n: int, cap: int = DEFAULT_CAP) -> bool | None:
    """Cross-map consistency for one seed.

    Checks that (a) applying S(x) = 3x + 2 termwise to the TR-trajectory
    of n gives the F-trajectory of S(n), and (b) that F-trajectory equals
    the subsequence of the T-trajectory of S(n) formed by the terms
    congruent to 2 mod 3.  Returns None (indeterminate) if any of the
    three runs hits the cap.
    """
    tr_traj = run_trajectory(MapId.TR, n, cap)
    m = conjugate_S(n)
    f_traj = run_trajectory(MapId.F, m, cap)
    t_traj = run_trajectory(MapId.T, m, cap)
    if StopReason.CAP_EXCEEDED in (
        tr_traj.stop_reason,
        f_traj.stop_reason,
        t_traj.stop_reason,
    ):
        return None
    if [conjugate_S(v) for v in tr_traj.terms] != f_traj.terms:
        return False
    return [v for v in t_traj.terms if v % 3 == 2] == f_traj.terms


def check_Tstar_embedding(n: int, cap: int = DEFAULT_CAP) -> bool | None:
    """True iff the accelerated trajectory of n embeds into raw T iteration,
    each accelerated step skipping exactly its branch's T-step count.

    The raw iteration is continued past the target where needed: the final
    accelerated step may jump over the 1 of the underlying T-orbit.
    Returns None if the accelerated run hits the cap.
    """
    star = run_trajectory(MapId.T_STAR, n, cap)
    if star.stop_reason is StopReason.CAP_EXCEEDED:
        return None
    cur = n
    for a, b in zip(star.terms, star.terms[1:]):
        if cur != a:
            return False
        for _ in range(step_compression(MapId.T_STAR, a)):
            cur = apply_T(cur)
        if cur != b:
            return False
    return True


def enter_domain_by_T(n: int, cap: int = DEFAULT_CAP) -> tuple[int, int]:
    """Advance a nonzero seed by T until it lands in [2]_3.

    Returns (entered_value, steps_taken).  Guaranteed to terminate for
    nonzero seeds: multiples of 3 occur only in a finite prefix and a
    value in [1]_3 steps straight into [2]_3.
    """
    if n == 0:
        raise DomainError("the orbit of 0 never enters [2]_3")
    k = 0
    while n % 3 != 2:
        n = apply_T(n)
        k += 1
        if k > cap:
            raise DomainError(f"seed did not enter [2]_3 within {cap} steps")
    return n, k
