"""The five integer maps, their conjugacy, and symbolic class propagation.

The maps:

  T        halved 3x+1 step on all integers: n/2, or (3n+1)/2 for odd n.
  F        T restricted to [2]_3, advancing two T-steps where one would
           land on [1]_3, so every value stays in [2]_3.
  TR       conjugate of F under S(n) = 3n+2; a three-branch map on all
           integers with fixed point 0.
  TR_STAR  accelerated TR: one step equals 1-3 TR-steps, the count picked
           by a seven-class partition of the integers.
  T_STAR   accelerated T on [2]_3: one step equals 1-6 T-steps; its range
           is again [2]_3.

Every map is stored both as a step function on exact integers and as a
table of affine branches ``n -> (p*n + q) / r`` guarded by residue
classes, so that whole congruence classes can be pushed through the map
symbolically (`image_of_class`) and class-map claims ``f^k(a*j + b) =
c*j + d`` can be certified exactly (`verify_claim`).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from math import lcm

from .errors import BranchInconsistencyError, DomainError, SplitRequiredError
from .residues import INTEGERS, ResidueClass, class_subset, classes_disjoint


class MapId(enum.Enum):
    T = "t"
    F = "f"
    TR = "tr"
    TR_STAR = "tr-star"
    T_STAR = "t-star"

    @classmethod
    def from_name(cls, name: str) -> "MapId":
        try:
            return cls(name.strip().lower())
        except ValueError:
            valid = ", ".join(m.value for m in cls)
            raise DomainError(f"unknown map {name!r}; expected one of: {valid}") from None

    @property
    def domain(self) -> ResidueClass:
        return MOD3_CLASS_2 if self in (MapId.F, MapId.T_STAR) else INTEGERS

    @property
    def target(self) -> int:
        """The fixed value a convergent trajectory is expected to reach."""
        return _TARGETS[self]

    @property
    def branches(self) -> tuple["AffineBranch", ...]:
        return _BRANCHES[self]


MOD3_CLASS_2 = ResidueClass(2, 3)

_TARGETS = {
    MapId.T: 1,
    MapId.F: 2,
    MapId.TR: 0,
    MapId.TR_STAR: 0,
    MapId.T_STAR: 2,
}


@dataclass(frozen=True)
class AffineBranch:
    """One piece n -> (p*n + q) / r of a piecewise map, valid on ``guard``.

    t_power is the number of base-map steps this branch compresses.
    Divisibility is proven at construction: (p*n + q) is divisible by r for
    every n in the guard iff r | p*guard.modulus and r | p*guard.residue + q.
    """

    guard: ResidueClass
    p: int
    q: int
    r: int
    t_power: int = 1

    def __post_init__(self):
        if self.r < 1:
            raise ValueError(f"divisor must be positive, got {self.r}")
        if self.t_power < 0:
            raise ValueError(f"t_power must be nonnegative, got {self.t_power}")
        a, b = self.guard.modulus, self.guard.residue
        if (self.p * a) % self.r or (self.p * b + self.q) % self.r:
            raise BranchInconsistencyError(
                f"(({self.p})*n + ({self.q}))/{self.r} is not integral on {self.guard}"
            )

    def apply(self, n: int) -> int:
        num = self.p * n + self.q
        quot, rem = divmod(num, self.r)
        if rem:
            raise BranchInconsistencyError(f"{num} not divisible by {self.r} at n={n}")
        return quot

    def image(self, cls: ResidueClass) -> ResidueClass:
        """Exact image of a class contained in this branch's guard.

        For cls = [b]_a the image is [(p*b + q)/r]_(p*a/r); both
        divisibilities were certified at construction and are re-checked.
        """
        num_mod, rem_mod = divmod(self.p * cls.modulus, self.r)
        num_res, rem_res = divmod(self.p * cls.residue + self.q, self.r)
        if rem_mod or rem_res:
            raise BranchInconsistencyError(
                f"branch on {self.guard} does not propagate {cls} integrally"
            )
        return ResidueClass(num_res, num_mod)


def _branch(res, mod, p, q, r, t_power=1) -> AffineBranch:
    return AffineBranch(ResidueClass(res, mod), p, q, r, t_power)


_BRANCHES = {
    MapId.T: (
        _branch(0, 2, 1, 0, 2),
        _branch(1, 2, 3, 1, 2),
    ),
    # F advances one T-step from [5]_6 and two from [2]_6; the two-step
    # branch splits mod 12 because T^2 is affine only on classes mod 12.
    MapId.F: (
        _branch(5, 6, 3, 1, 2, t_power=1),
        _branch(2, 12, 3, 2, 4, t_power=2),
        _branch(8, 12, 1, 0, 4, t_power=2),
    ),
    MapId.TR: (
        _branch(0, 4, 3, 0, 4),
        _branch(2, 4, 1, -2, 4),
        _branch(1, 2, 3, 1, 2),
    ),
    MapId.TR_STAR: (
        _branch(1, 2, 3, 1, 2, t_power=1),
        _branch(0, 4, 3, 0, 4, t_power=1),
        _branch(6, 8, 3, -2, 8, t_power=2),
        _branch(2, 16, 3, -6, 16, t_power=2),
        _branch(26, 32, 3, -14, 32, t_power=3),
        _branch(10, 64, 3, -30, 64, t_power=3),
        _branch(42, 64, 1, -42, 64, t_power=3),
    ),
    MapId.T_STAR: (
        _branch(5, 6, 3, 1, 2, t_power=1),
        _branch(2, 12, 3, 2, 4, t_power=2),
        _branch(20, 24, 3, 4, 8, t_power=3),
        _branch(8, 48, 3, 8, 16, t_power=4),
        _branch(80, 96, 3, 16, 32, t_power=5),
        _branch(32, 192, 3, 32, 64, t_power=6),
        _branch(128, 192, 1, 0, 64, t_power=6),
    ),
}


def _require_domain(map_id: MapId, n: int):
    if not map_id.domain.contains(n):
        raise DomainError(f"{n} is outside the domain {map_id.domain} of {map_id.value}")


def branch_for(map_id: MapId, n: int) -> AffineBranch:
    """The unique branch whose guard contains n."""
    _require_domain(map_id, n)
    for br in map_id.branches:
        if br.guard.contains(n):
            return br
    raise BranchInconsistencyError(f"no branch of {map_id.value} covers {n}")


def apply_T(n: int) -> int:
    """One halved 3x+1 step: n/2 for even n, (3n+1)/2 for odd n."""
    return n // 2 if n % 2 == 0 else (3 * n + 1) // 2


def apply_F(n: int) -> int:
    """One step of T restricted to [2]_3 (two T-steps where needed)."""
    _require_domain(MapId.F, n)
    return apply_T(n) if n % 6 == 5 else apply_T(apply_T(n))


def apply_TR(n: int) -> int:
    """One step of the conjugate map: 3n/4, (n-2)/4, or (3n+1)/2 by n mod 4."""
    m = n % 4
    if m == 0:
        return 3 * n // 4
    if m == 2:
        return (n - 2) // 4
    return (3 * n + 1) // 2


def apply_TR_star(n: int) -> int:
    """One accelerated TR step.

    Evaluates the closed-form branch and, as a self-check, the equivalent
    composition of plain TR steps; the two must agree.
    """
    br = branch_for(MapId.TR_STAR, n)
    value = br.apply(n)
    check = n
    for _ in range(br.t_power):
        check = apply_TR(check)
    if check != value:
        raise BranchInconsistencyError(
            f"closed form {value} != TR^{br.t_power}({n}) = {check}"
        )
    return value


def apply_T_star(n: int) -> int:
    """One accelerated T step on [2]_3; compresses 1-6 plain T steps."""
    br = branch_for(MapId.T_STAR, n)
    value = br.apply(n)
    check = n
    for _ in range(br.t_power):
        check = apply_T(check)
    if check != value:
        raise BranchInconsistencyError(
            f"closed form {value} != T^{br.t_power}({n}) = {check}"
        )
    return value


_STEP_FUNCS = {
    MapId.T: apply_T,
    MapId.F: apply_F,
    MapId.TR: apply_TR,
    MapId.TR_STAR: apply_TR_star,
    MapId.T_STAR: apply_T_star,
}


def apply_map(map_id: MapId, n: int) -> int:
    """One step of any of the five maps (domain-checked)."""
    _require_domain(map_id, n)
    return _STEP_FUNCS[map_id](n)


def step_compression(map_id: MapId, n: int) -> int:
    """How many base-map steps one step of map_id performs at n."""
    return branch_for(map_id, n).t_power


def conjugate_S(n: int) -> int:
    """The change of variable S(n) = 3n + 2 onto [2]_3."""
    return 3 * n + 2


def conjugate_S_inv(n: int) -> int:
    """Inverse change of variable (n - 2) / 3; requires n in [2]_3."""
    if n % 3 != 2:
        raise DomainError(f"{n} is not congruent to 2 mod 3")
    return (n - 2) // 3


def image_of_class(map_id: MapId, cls: ResidueClass) -> ResidueClass:
    """Push a whole residue class through one step of the map, exactly.

    The class must lie inside a single branch guard.  If it straddles
    several guards a SplitRequiredError names the modulus the class would
    have to be refined to; if it misses the map's domain entirely a
    DomainError is raised.
    """
    if not class_subset(cls, map_id.domain):
        if classes_disjoint(cls, map_id.domain):
            raise DomainError(
                f"{cls} is disjoint from the domain {map_id.domain} of {map_id.value}"
            )
        raise SplitRequiredError(
            cls, lcm(cls.modulus, map_id.domain.modulus), (map_id.domain,)
        )
    touching = [br for br in map_id.branches if not classes_disjoint(cls, br.guard)]
    containing = [br for br in touching if class_subset(cls, br.guard)]
    if containing:
        return containing[0].image(cls)
    refinement = lcm(cls.modulus, *(br.guard.modulus for br in touching))
    raise SplitRequiredError(cls, refinement, [br.guard for br in touching])


class ClaimStatus(enum.Enum):
    VERIFIED = "verified"
    MISMATCH = "mismatch"
    SPLIT_REQUIRED = "split-required"


@dataclass(frozen=True)
class ClassMapClaim:
    """The statement map^power(a*j + b) = c*j + d for every integer j,
    written source -> target with source = [b]_a, target = [d]_c."""

    map: MapId
    power: int
    source: ResidueClass
    target: ResidueClass

    def __repr__(self):
        return f"{self.source} --{self.map.value}^{self.power}--> {self.target}"


@dataclass
class ClaimCheck:
    """Outcome of verifying one claim, with the intermediate classes as
    an exact certificate.

    SPLIT_REQUIRED means the claim is not uniformly checkable at the
    stated modulus (the class would need refining) - deliberately distinct
    from MISMATCH, which is a disproof.
    """

    claim: ClassMapClaim
    status: ClaimStatus
    chain: list[ResidueClass] = field(default_factory=list)
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.status is ClaimStatus.VERIFIED

    def certificate(self) -> str:
        arrow = " -> ".join(repr(c) for c in self.chain)
        if self.status is ClaimStatus.VERIFIED:
            return arrow
        return f"{arrow} [{self.status.value}: {self.detail}]"


def verify_claim(claim: ClassMapClaim) -> ClaimCheck:
    """Certify a class-map claim by propagating the source class
    ``power`` steps through the map and comparing with the target."""
    chain = [claim.source]
    cur = claim.source
    for step in range(claim.power):
        try:
            cur = image_of_class(claim.map, cur)
        except SplitRequiredError as exc:
            return ClaimCheck(
                claim,
                ClaimStatus.SPLIT_REQUIRED,
                chain,
                f"step {step + 1}: {cur} needs refinement to modulus "
                f"{exc.refinement_modulus}",
            )
        chain.append(cur)
    if cur == claim.target:
        return ClaimCheck(claim, ClaimStatus.VERIFIED, chain)
    return ClaimCheck(
        claim, ClaimStatus.MISMATCH, chain, f"reached {cur}, expected {claim.target}"
    )


# The two seven-class partitions the accelerated maps are built on, plus the
# five-class split that feeds the single-step class schematic of TR.
ACCELERATION_PARTITION_Z = (
    ResidueClass(1, 2),
    ResidueClass(0, 4),
    ResidueClass(6, 8),
    ResidueClass(2, 16),
    ResidueClass(26, 32),
    ResidueClass(10, 64),
    ResidueClass(42, 64),
)

ACCELERATION_PARTITION_MOD3_2 = (
    ResidueClass(5, 6),
    ResidueClass(2, 12),
    ResidueClass(20, 24),
    ResidueClass(8, 48),
    ResidueClass(80, 96),
    ResidueClass(32, 192),
    ResidueClass(128, 192),
)

FIVE_CLASS_PARTITION_Z = (
    ResidueClass(0, 4),
    ResidueClass(2, 12),
    ResidueClass(6, 12),
    ResidueClass(10, 12),
    ResidueClass(1, 2),
)
