"""Named verification suites: each check re-derives one structural fact
about the maps by exact computation over a stated range, or certifies a
symbolic claim.  Used by ``collatzkit verify`` and by the acceptance tests.
"""

from __future__ import annotations

from dataclasses import dataclass

from .claims import claims_for_suite
from .errors import TransienceError
from .maps import (
    ACCELERATION_PARTITION_MOD3_2,
    ACCELERATION_PARTITION_Z,
    MOD3_CLASS_2,
    MapId,
    apply_F,
    apply_T,
    apply_TR,
    apply_TR_star,
    apply_T_star,
    conjugate_S,
    verify_claim,
)
from .residues import INTEGERS, verify_partition
from .trajectories import (
    DEFAULT_CAP,
    check_subsequence_consistency,
    run_trajectory,
    sigma_T,
    sigma_TR,
    validate_structure_T,
    validate_transience_TRstar,
)

SUITE_NAMES = (
    "partitions",
    "fig2",
    "thm2",
    "thm5",
    "structure",
    "transience",
    "conjugacy",
)


@dataclass
class SuiteCheck:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        suffix = f": {self.detail}" if self.detail and not self.passed else ""
        return f"{status}  {self.name}{suffix}"


def partitions_suite() -> list[SuiteCheck]:
    """Certify the two seven-class partitions behind the accelerated maps."""
    checks = []
    for label, parts, universe in (
        ("acceleration partition of Z", ACCELERATION_PARTITION_Z, INTEGERS),
        ("acceleration partition of [2]_3", ACCELERATION_PARTITION_MOD3_2, MOD3_CLASS_2),
    ):
        report = verify_partition(parts, universe)
        checks.append(SuiteCheck(label, report.is_partition, report.summary()))
    return checks


def claims_suite(suite: str) -> list[SuiteCheck]:
    """Certify every class-map arrow of one shipped claim group."""
    checks = []
    for claim in claims_for_suite(suite):
        result = verify_claim(claim)
        checks.append(SuiteCheck(f"{suite} {claim!r}", result.ok, result.certificate()))
    return checks


def structure_suite(
    lo: int = 1,
    hi: int = 100_000,
    cap: int = DEFAULT_CAP,
    congruence_bound: int = 1_000_000,
) -> list[SuiteCheck]:
    """Orbit-structure checks for T and single-step congruence facts.

    - every T-orbit of lo..hi (run to target) passes the structure
      validator: multiples of 3 only in the leading prefix, no two
      consecutive terms in [1]_3, none in [5]_9;
    - T maps [1]_3 into [2]_3 for |n| <= congruence_bound;
    - TR maps [1]_3 off [1]_3 for |n| <= congruence_bound.
    """
    checks = []

    bad = []
    for n in range(lo, hi + 1):
        report = validate_structure_T(run_trajectory(MapId.T, n, cap))
        if not report.ok:
            bad.append((n, report.violations[:3]))
            if len(bad) >= 5:
                break
    checks.append(
        SuiteCheck(
            f"T-orbit structure for seeds {lo}..{hi}",
            not bad,
            f"violations at {bad}" if bad else "",
        )
    )

    bad = [
        n
        for n in range(-congruence_bound, congruence_bound + 1)
        if n % 3 == 1 and apply_T(n) % 3 != 2
    ]
    checks.append(
        SuiteCheck(
            f"T sends [1]_3 into [2]_3 for |n| <= {congruence_bound}",
            not bad,
            f"counterexamples {bad[:5]}" if bad else "",
        )
    )

    bad = [
        n
        for n in range(-congruence_bound, congruence_bound + 1)
        if n % 3 == 1 and apply_TR(n) % 3 == 1
    ]
    checks.append(
        SuiteCheck(
            f"TR sends [1]_3 off [1]_3 for |n| <= {congruence_bound}",
            not bad,
            f"counterexamples {bad[:5]}" if bad else "",
        )
    )
    return checks


def transience_suite(bound: int = 100_000, cap: int = DEFAULT_CAP) -> list[SuiteCheck]:
    """Accelerated-map behaviour over |n| <= bound.

    - orbits starting in [1]_3 leave it (with strictly shrinking magnitude
      while inside) and do not come back;
    - the accelerated TR step agrees with composing plain TR steps
      (the step function self-checks; this drives it across the range);
    - the accelerated T step keeps [2]_3 inside [2]_3.
    """
    checks = []

    bad = []
    for n in range(-bound, bound + 1):
        if n % 3 != 1:
            continue
        try:
            validate_transience_TRstar(n, cap)
        except TransienceError as exc:
            bad.append((n, str(exc)))
            if len(bad) >= 5:
                break
    checks.append(
        SuiteCheck(
            f"[1]_3 is transient under accelerated TR for |n| <= {bound}",
            not bad,
            f"violations {bad}" if bad else "",
        )
    )

    bad = []
    for n in range(-bound, bound + 1):
        try:
            apply_TR_star(n)
        except Exception as exc:  # self-check failure would surface here
            bad.append((n, str(exc)))
            if len(bad) >= 5:
                break
    checks.append(
        SuiteCheck(
            f"accelerated TR dual-form agreement for |n| <= {bound}",
            not bad,
            f"violations {bad}" if bad else "",
        )
    )

    bad = []
    for n in range(-bound, bound + 1):
        if n % 3 == 2 and apply_T_star(n) % 3 != 2:
            bad.append(n)
            if len(bad) >= 5:
                break
    checks.append(
        SuiteCheck(
            f"accelerated T maps [2]_3 into [2]_3 for |n| <= {bound}",
            not bad,
            f"counterexamples {bad}" if bad else "",
        )
    )
    return checks


def conjugacy_suite(
    bound: int = 100_000,
    subsequence_hi: int = 10_000,
    cap: int = DEFAULT_CAP,
    sigma_identity_hi: int = 1_000,
) -> list[SuiteCheck]:
    """Conjugacy between the filtered and conjugate maps via S(n) = 3n + 2.

    - F(S(n)) = S(TR(n)) pointwise for |n| <= bound;
    - termwise S-image of TR-orbits equals F-orbits, which equal the
      [2]_3 subsequence of T-orbits, for seeds 0..subsequence_hi;
    - sigma_T(S(n)) - sigma_TR(n) counts the [1]_3 terms of the T-orbit
      of S(n), for seeds 0..sigma_identity_hi.
    """
    checks = []

    bad = [
        n
        for n in range(-bound, bound + 1)
        if apply_F(conjugate_S(n)) != conjugate_S(apply_TR(n))
    ]
    checks.append(
        SuiteCheck(
            f"F(S(n)) = S(TR(n)) for |n| <= {bound}",
            not bad,
            f"counterexamples {bad[:5]}" if bad else "",
        )
    )

    bad = []
    for n in range(subsequence_hi + 1):
        if check_subsequence_consistency(n, cap) is not True:
            bad.append(n)
            if len(bad) >= 5:
                break
    checks.append(
        SuiteCheck(
            f"trajectory subsequence consistency for 0 <= n <= {subsequence_hi}",
            not bad,
            f"counterexamples {bad}" if bad else "",
        )
    )

    bad = []
    for n in range(sigma_identity_hi + 1):
        m = conjugate_S(n)
        st = sigma_T(m, cap)
        stt = sigma_TR(n, cap)
        if st is None or stt is None:
            bad.append((n, "cap"))
            continue
        traj = run_trajectory(MapId.T, m, cap)
        mod1 = sum(1 for v in traj.terms if v % 3 == 1)
        if st - stt != mod1:
            bad.append((n, st, stt, mod1))
            if len(bad) >= 5:
                break
    checks.append(
        SuiteCheck(
            f"sigma difference counts [1]_3 terms for 0 <= n <= {sigma_identity_hi}",
            not bad,
            f"counterexamples {bad}" if bad else "",
        )
    )
    return checks


def run_suite(name: str, **kwargs) -> list[SuiteCheck]:
    """Dispatch a named suite; 'all' concatenates every suite."""
    if name == "all":
        out = []
        out += partitions_suite()
        for s in ("fig2", "thm2", "thm5"):
            out += claims_suite(s)
        out += structure_suite(**kwargs.get("structure", {}))
        out += transience_suite(**kwargs.get("transience", {}))
        out += conjugacy_suite(**kwargs.get("conjugacy", {}))
        return out
    if name == "partitions":
        return partitions_suite()
    if name in ("fig2", "thm2", "thm5"):
        return claims_suite(name)
    if name == "structure":
        return structure_suite(**kwargs.get("structure", {}))
    if name == "transience":
        return transience_suite(**kwargs.get("transience", {}))
    if name == "conjugacy":
        return conjugacy_suite(**kwargs.get("conjugacy", {}))
    raise ValueError(f"unknown suite {name!r}; expected one of {SUITE_NAMES + ('all',)}")
