"""Common fixed points for the two worked maps."""
import math

import numpy as np

from menger_pcm import (SelfMap, check_nonexpansive, check_pair_condition,
                        find_common_fixed_point, fraction_space, heaviside_space)

half = SelfMap.scale_half()
grid = np.linspace(0.0, 1.0, 11)
print("pair condition (x/2):", check_pair_condition(fraction_space(), half, half, grid,
                                                    [0.5, 1.0, 2.0]).ok)
print("fixed point of x/2:", find_common_fixed_point(fraction_space(), half, half))

quad = SelfMap.quad()
print("x^2/3 + 1/2 nonexpansive:",
      check_nonexpansive(heaviside_space(), quad, np.linspace(0, 1, 21), [0.1, 0.5, 1.0]).ok)
for stage in ("picard", "mann", "grid"):
    r = find_common_fixed_point(heaviside_space(), quad, quad, stages=(stage,))
    print(f"{stage:7s} x={r.point:.12f} iterations={r.iterations}")
print("closed form       ", f"{(3 - math.sqrt(3)) / 2:.12f}")
