"""Cone orders, the interior lower bound, and t-norm axiom sweeps."""
import numpy as np

from menger_pcm import ConeSpec, TNorm, check_tnorm_axioms, common_lower_interior, find_companion

cone = ConeSpec(2)
a, b = np.array([1.0, 2.0]), np.array([1.5, 2.5])
print("a <= b:", cone.leq(a, b), " b - a interior:", cone.in_interior(b - a))
print("common interior lower bound of (1, 3), (2, 0.5):",
      common_lower_interior(cone, [1.0, 3.0], [2.0, 0.5]))

grid = np.linspace(0.0, 1.0, 11)
bounded_sum = TNorm.custom("bounded-sum", lambda x, y: np.minimum(1.0, x + y))
for t in (TNorm.product(), TNorm.minimum(), bounded_sum):
    failed = [c.axiom_id for c in check_tnorm_axioms(t, grid).failures()]
    print(f"{t.kind:12s} failing axioms: {failed or 'none'}")

print("product companion for r1=0.9, r2=0.6:", find_companion(TNorm.product(), 0.9, 0.6))
