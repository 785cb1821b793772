"""Exact algebra of residue classes: membership, containment, disjointness,
and partition certification.

A class ``[b]_m`` is the set of integers congruent to ``b`` modulo ``m``.
Residues are always stored in canonical nonnegative form ``0 <= b < m``;
``[0]_1`` denotes all of the integers.  Everything here is exact integer
arithmetic - densities are ``Fraction``, never floats.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm

from .errors import InvalidModulusError


def canonical_residue(n: int, m: int) -> int:
    """Mathematical mod: the unique r with 0 <= r < m and m | (n - r).

    Correct for negative n; raises InvalidModulusError unless m >= 1.
    """
    if m < 1:
        raise InvalidModulusError(f"modulus must be positive, got {m}")
    return n % m


@dataclass(frozen=True, order=True)
class ResidueClass:
    """The congruence class [residue]_modulus, residue kept canonical."""

    residue: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 1:
            raise InvalidModulusError(f"modulus must be positive, got {self.modulus}")
        object.__setattr__(self, "residue", self.residue % self.modulus)

    def __repr__(self):
        return f"[{self.residue}]_{self.modulus}"

    def contains(self, n: int) -> bool:
        return n % self.modulus == self.residue

    def member(self, j: int = 0) -> int:
        """The member modulus*j + residue."""
        return self.modulus * j + self.residue

    @property
    def density(self) -> Fraction:
        """Natural density of the class within the integers."""
        return Fraction(1, self.modulus)


INTEGERS = ResidueClass(0, 1)


def class_subset(inner: ResidueClass, outer: ResidueClass) -> bool:
    """True iff inner is contained in outer.

    [b]_a is a subset of [d]_c exactly when c | a and b = d (mod c).
    """
    return (
        inner.modulus % outer.modulus == 0
        and inner.residue % outer.modulus == outer.residue
    )


def classes_disjoint(a: ResidueClass, b: ResidueClass) -> bool:
    """True iff the two classes share no integer.

    By CRT, [b1]_m1 and [b2]_m2 meet exactly when b1 = b2 (mod gcd(m1, m2)).
    """
    g = gcd(a.modulus, b.modulus)
    return a.residue % g != b.residue % g


@dataclass
class PartitionReport:
    """Exact certificate that a list of classes partitions a universe class.

    is_partition holds iff there are no containment violations, no pairwise
    overlaps, no coverage gap, and the densities sum to exactly 1 relative
    to the universe.
    """

    universe: ResidueClass
    parts: tuple[ResidueClass, ...]
    is_partition: bool
    overlaps: list[tuple[ResidueClass, ResidueClass]] = field(default_factory=list)
    containment_violations: list[ResidueClass] = field(default_factory=list)
    density_sum: Fraction = Fraction(0)
    gap_witness: int | None = None

    def summary(self) -> str:
        if self.is_partition:
            return (
                f"partition of {self.universe}: {len(self.parts)} classes, "
                f"density sum {self.density_sum}"
            )
        problems = []
        if self.containment_violations:
            problems.append(f"{len(self.containment_violations)} part(s) outside universe")
        if self.overlaps:
            problems.append(f"{len(self.overlaps)} overlapping pair(s)")
        if self.gap_witness is not None:
            problems.append(f"uncovered member {self.gap_witness}")
        if self.density_sum != 1:
            problems.append(f"density sum {self.density_sum} != 1")
        return f"NOT a partition of {self.universe}: " + "; ".join(problems)


def verify_partition(parts, universe: ResidueClass = INTEGERS) -> PartitionReport:
    """Certify that ``parts`` tile ``universe`` exactly.

    Disjointness is decided pairwise by gcd congruence; coverage by an
    exhaustive residue scan modulo the lcm of all part moduli (small for
    every partition shipped here); densities are summed as exact rationals
    relative to the universe.
    """
    parts = tuple(parts)
    report = PartitionReport(universe=universe, parts=parts, is_partition=False)

    report.containment_violations = [p for p in parts if not class_subset(p, universe)]

    for i in range(len(parts)):
        for j in range(i + 1, len(parts)):
            if not classes_disjoint(parts[i], parts[j]):
                report.overlaps.append((parts[i], parts[j]))

    # Density of each part relative to the universe is universe.modulus / part.modulus.
    report.density_sum = sum(
        (Fraction(universe.modulus, p.modulus) for p in parts), Fraction(0)
    )

    period = universe.modulus
    for p in parts:
        period = lcm(period, p.modulus)
    for r in range(period):
        if not universe.contains(r):
            continue
        if not any(p.contains(r) for p in parts):
            report.gap_witness = r
            break

    report.is_partition = (
        not report.overlaps
        and not report.containment_violations
        and report.gap_witness is None
        and report.density_sum == 1
    )
    return report
