"""Odd-value counts along a checkpoint grid."""

# %%
import sys

from multiparity import odd_density, odd_density_paths, write_density_csv
from multiparity.density import halving_check, lower_bound_ratio, progression_odd_density

est = odd_density(1, 100_000)
for x, c in est.checkpoints:
    print(f"x={x:>7} odd={c:>6} ratio={c / (x + 1):.5f}")

# %%
# The two independent routes must agree exactly.
write_density_csv(odd_density_paths(1, 20_000), sys.stdout)

# %%
# Even t is pinned down by odd t.
for c in (1, 2, 3):
    print(c, halving_check(3, c, 10_000).passed)

# %%
# Residue classes mod 5.
for r in range(5):
    e = progression_odd_density(1, 5, r, 50_000)
    print(r, e.odd_count, e.ratio_decimal)

# %%
print(lower_bound_ratio(100_000, [1_000, 10_000, 100_000]))
