"""Light cones, causal complements, and the common-cause slab.

Two spacelike-separated unit double cones, one at the origin and one at
x = 10. A slab of depth 6 below them lies entirely inside the union of
their backward light cones, and its causal completion contains both. Run:

    python3 demos/lightcone_geometry.py
"""

import numpy as np

from ccbench import geometry as geo

v1 = geo.double_cone(u=(-1, 1), v=(-1, 1))  # unit cone at the origin
v2 = geo.double_cone(u=(-11, -9), v=(9, 11))  # unit cone at x = 10

print("the two regions:")
print(" ", geo.describe(v1))
print(" ", geo.describe(v2))
print("spacelike separated:", geo.spacelike_separated(v1, v2))

comp = geo.causal_complement(v1)
print("\ncausal complement of the first cone (two wedges):")
print(" ", geo.describe(comp))
print("complement of the complement recovers the double cone:")
print(" ", geo.describe(geo.causal_complement(comp)))

built = geo.weak_cc_region(v1, v2, margin=0.5, depth=6.0)
print("\nslab at depth 6 with margin 0.5:")
print("  region:    ", geo.describe(built.region))
print("  completion:", geo.describe(built.completion))
print("  checks:    ", built.checks)

tilde = geo.tilde_regions(v1, v2, built.region)
t = -6.25
print(f"\nslicing the slab at t = {t}: which backward cone covers what")
for name, part in (("only V1's past", tilde.part1), ("only V2's past", tilde.part2), ("both", tilde.common)):
    spans = ", ".join(f"({lo:g}, {hi:g})" for lo, hi in geo.slice_at(part, t))
    print(f"  {name:15s} x in {spans}")

# Monte Carlo spot check: every slab point is in one of the two pasts
rng = np.random.default_rng(0)
b1, b2 = geo.blc(v1), geo.blc(v2)
pts = geo.sample_points(built.region, 2000, rng)
inside = sum(
    1
    for t_, x_ in pts
    if b1.contains(geo.Point(t_, x_)) or b2.contains(geo.Point(t_, x_))
)
print(f"\n{inside} of {len(pts)} sampled slab points lie in the union of the pasts")
