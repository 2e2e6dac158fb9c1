"""Convexity inequalities and strict convexity of the affine structure."""
import numpy as np

from menger_pcm import (ConvexStructure, check_g1, check_g3, check_strict_convexity,
                        closed_convex_shell, heaviside_space)

cs = ConvexStructure.affine()
space = heaviside_space()
pts = np.linspace(0.0, 1.0, 5)
mus = [0.25, 0.5, 0.75]

for rep in (check_g1(space, cs, pts, mus, [0.3, 0.7]), check_g3(space, cs, pts, mus, [0.3, 0.7])):
    for c in rep:
        print(f"{c.axiom_id:18s} {c.status}")

# a step kernel only pins z down on a fine, offset t-grid
fine_t = np.arange(1, 2000) * 0.001 + 0.0003
rep = check_strict_convexity(space, cs, pts, mus, fine_t, z_candidates=np.linspace(0, 1, 101))
print("strict convexity:", {c.axiom_id: c.status for c in rep})
print("closed convex shell of {0.2, 0.7, 0.4}:", closed_convex_shell(space, cs, [0.2, 0.7, 0.4]))
