"""Embedded reference values for the two published comparison tables.

Kept as constants so `tables --check` needs no network or external files.
Both tables use the TERMS sigma convention: the sigma columns count
trajectory terms from the seed through the first target term inclusive,
one more than the step count (calibrated; see README).  Ratios are
sigma_TR / sigma_T rounded half-up to three decimals, stored as the exact
display strings.
"""

TABLE_SEEDS = (41, 1307, 13886, 115547, 1256699)

# (n, sigma_T, sigma_TR(S^-1(n)), ratio)
STOPPING_REFERENCE = (
    (41, 70, 49, "0.700"),
    (1307, 113, 79, "0.699"),
    (13886, 164, 114, "0.695"),
    (115547, 221, 157, "0.710"),
    (1256699, 329, 233, "0.708"),
)

# (n, sigma_TR(S^-1(n)), count mod 0, count mod 1, count mod 2) over the
# full trajectory window (seed through final 0 inclusive).
DISTRIBUTION_REFERENCE = (
    (41, 49, 16, 5, 28),
    (1307, 79, 27, 7, 45),
    (13886, 114, 42, 7, 65),
    (115547, 157, 54, 9, 94),
    (1256699, 233, 79, 16, 138),
)
