"""Loader for the shipped class-map claim table.

The table lives in ``data/class_map_claims.txt``; its line format is
documented in the file header and in the README.  Claims are grouped into
named suites consumed by ``collatzkit verify``.
"""

from __future__ import annotations

from importlib import resources

from .maps import ClassMapClaim, MapId
from .residues import ResidueClass

CLAIM_SUITES = ("fig2", "thm2", "thm5")

_EXPECTED_COUNTS = {"fig2": 5, "thm2": 21, "thm5": 21}


def parse_claim_line(line: str) -> tuple[str, ClassMapClaim] | None:
    """Parse one record; returns None for blank/comment lines."""
    body = line.split("#", 1)[0].strip()
    if not body:
        return None
    fields = body.split()
    if len(fields) != 7:
        raise ValueError(f"claim record needs 7 fields, got {len(fields)}: {line!r}")
    suite, map_name = fields[0], fields[1]
    power, src_res, src_mod, dst_res, dst_mod = map(int, fields[2:])
    claim = ClassMapClaim(
        map=MapId.from_name(map_name),
        power=power,
        source=ResidueClass(src_res, src_mod),
        target=ResidueClass(dst_res, dst_mod),
    )
    return suite, claim


def load_claim_table() -> list[tuple[str, ClassMapClaim]]:
    """All shipped claims as (suite, claim) pairs, in file order."""
    text = (
        resources.files("collatzkit").joinpath("data/class_map_claims.txt").read_text()
    )
    records = []
    for line in text.splitlines():
        parsed = parse_claim_line(line)
        if parsed is not None:
            records.append(parsed)
    counts = {s: sum(1 for g, _ in records if g == s) for s in CLAIM_SUITES}
    if counts != _EXPECTED_COUNTS:
        raise ValueError(f"claim table is incomplete: {counts} != {_EXPECTED_COUNTS}")
    return records


def claims_for_suite(suite: str) -> list[ClassMapClaim]:
    if suite not in CLAIM_SUITES:
        raise ValueError(f"unknown claim suite {suite!r}; expected one of {CLAIM_SUITES}")
    return [claim for s, claim in load_claim_table() if s == suite]
