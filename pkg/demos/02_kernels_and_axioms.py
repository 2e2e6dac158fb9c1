"""PCM axioms on the built-in kernels and a broken cone metric."""
from menger_pcm import (ConeMetric, FinitePoints, check_pcm_axioms, exp_ratio_space,
                        fraction_space, from_cone_metric, heaviside_space, rational_pair_space)
from menger_pcm.errors import ConstructionError

spaces = {
    "heaviside": (heaviside_space(), [0.3, 0.7, 1.5]),
    "fraction": (fraction_space(), [0.25, 1.0, 3.0]),
    "exp-ratio": (exp_ratio_space(), [0.25, 1.0, 3.0]),
    "rational-pair": (rational_pair_space(), [0.5, 1.0, 2.0]),
}
for name, (space, ts) in spaces.items():
    rep = check_pcm_axioms(space, space.points(), ts)
    print(f"{name:14s} ok={rep.ok}  PCM5 margin={rep['PCM5'].margin:.3g}")

try:
    from_cone_metric(ConeMetric.power(2.0), FinitePoints((0.0, 0.6, 1.0)))
except ConstructionError as exc:
    print("squared distance rejected, witness", exc.witness)
