"""Neighborhoods, a Hausdorff witness, diameters and a non-diametral point."""
import numpy as np

from menger_pcm import (Neighborhood, ball_members, diameter_profile, find_nondiametral,
                        fraction_space, hausdorff_witness, is_fc_bounded, member,
                        totally_bounded_cover)

space = fraction_space()
probes = np.linspace(0.0, 1.0, 201)

w = hausdorff_witness(space, 0.0, 1.0, 1.0)
bp, bq = w.balls(0.0, 1.0)
print(f"witness lambda={w.lam} lambda1={w.lambda1:.3f}")
print("ball around 0 reaches", ball_members(space, bp, probes).max())
print("ball around 1 starts at", ball_members(space, bq, probes).min())

A = [0.0, 0.5, 1.0]
prof = diameter_profile(space, A, [0.5, 1.0, 2.0, 8.0])
print("diameter profile:", {t: round(v, 4) for t, v in prof.values.items()})
print("FC-bounded witness (eps, lambda):", is_fc_bounded(space, A))
nd = find_nondiametral(space, A, [1.0])
print(f"non-diametral x={nd.x} margin={nd.margin:.6f}")
print("cover centers eps=0.2 lambda=0.3:", totally_bounded_cover(space, probes, 0.2, 0.3))
print("N(0.5; 0.1, 0.2) contains 0.52:", member(space, Neighborhood(0.5, 0.1, 0.2), 0.52))
