import numpy as np
import pytest

from menger_pcm import (ConeMetric, ConeSpec, FinitePoints, Interval, Kernel, Naturals, PcmSpace,
                        TNorm, check_cone_metric_axioms, check_pcm_axioms, exp_ratio_space,
                        fraction_space, from_cone_metric, heaviside_space, rational_pair_space)
from menger_pcm.errors import ConstructionError, DomainError, InputError, PreconditionError

BUILTINS = {
    "heaviside": heaviside_space,
    "fraction": fraction_space,
    "exp-ratio": exp_ratio_space,
    "rational-pair": rational_pair_space,
}
T3 = [0.5, 1.0, 2.0]


def test_eval_kernel_examples(frac, heav):
    assert frac.eval_kernel(0, 1, 1) == 0.5
    assert heav.eval_kernel(0.3, 0.3, 5.0) == 1.0
    assert rational_pair_space().eval_kernel(2, 4, 1.0) == 0.5


def test_exp_ratio_uses_vector_norm():
    sp = exp_ratio_space()
    assert sp.eval_kernel(0, 1, (1.0, 0.5)) == pytest.approx(np.exp(-1.0))
    assert sp.eval_kernel(0, 1, 2.0) == pytest.approx(np.exp(-0.5))


def test_eval_kernel_errors(frac):
    with pytest.raises(DomainError):
        frac.eval_kernel(0, 1, 0.0)
    with pytest.raises(InputError):
        frac.eval_kernel(0, 2, 1.0)


def test_rational_pair_needs_naturals():
    with pytest.raises(InputError, match="incompatible with carrier"):
        PcmSpace(Interval(0, 1), ConeSpec(1), TNorm.product(), Kernel.rational_pair())


def test_naturals_carrier():
    n = Naturals(5)
    assert n.contains(3) and not n.contains(0) and not n.contains(2.5)
    np.testing.assert_array_equal(n.points(), [1, 2, 3, 4, 5])


@pytest.mark.parametrize("name", sorted(BUILTINS))
def test_builtin_spaces_satisfy_pcm_axioms(name):
    sp = BUILTINS[name]()
    rep = check_pcm_axioms(sp, sp.points()[:9], T3)
    assert rep.ok, rep.failures()
    for ax in ("PCM1", "PCM2", "PCM3", "PCM4", "PCM5", "DF-nondecreasing"):
        assert rep[ax].status == "pass"
    assert rep["PCM5"].margin >= -1e-12


def test_pcm5_checks_every_5_tuple(frac):
    rep = check_pcm_axioms(frac, frac.points(), T3)
    assert rep["PCM5"].checked == 9 ** 3 * 3 ** 2


def test_heaviside_flags_step_behaviour(heav):
    # a step kernel is 0 below the distance and 1 above it, even for p != q
    rep = check_pcm_axioms(heav, heav.points(), T3)
    assert rep["PCM1-pointwise"].status == "degenerate"
    assert rep["PCM2-converse"].status == "degenerate"
    assert rep.ok


def test_clipped_sum_tnorm_breaks_menger_inequality():
    broken = TNorm.custom("clipped-sum", lambda a, b: np.minimum(1.0, np.add(a, b)))
    sp = PcmSpace(Interval(0, 1), ConeSpec(1), broken, Kernel.fraction())
    rep = check_pcm_axioms(sp, sp.points(), T3)
    c = rep["PCM5"]
    assert c.status == "fail"
    p, q, r, t, s = c.witness
    lhs = t / (t + abs(p - r))
    rhs = min(1.0, t / (t + abs(p - q)) + s / (s + abs(q - r)))
    assert lhs < rhs


def test_pcm_axiom_input_validation(frac):
    with pytest.raises(PreconditionError):
        check_pcm_axioms(frac, [0.5, 0.5], T3)
    with pytest.raises(InputError):
        check_pcm_axioms(frac, [0.0, 1.0], [])
    with pytest.raises(DomainError):
        check_pcm_axioms(frac, [0.0, 1.0], [0.0])


def test_from_cone_metric_abs():
    sp = from_cone_metric(ConeMetric.power(), Interval(0, 1))
    assert sp.kernel.family == "from-cone-metric"
    assert check_pcm_axioms(sp, sp.points(), T3).ok


def test_from_cone_metric_single_point():
    sp = from_cone_metric(ConeMetric.power(), FinitePoints((0.5,)))
    assert sp.eval_kernel(0.5, 0.5, 1e-6) == 1.0


def test_from_cone_metric_squared_violates_triangle():
    with pytest.raises(ConstructionError) as info:
        from_cone_metric(ConeMetric.power(2.0), FinitePoints((0.0, 0.6, 1.0)))
    assert info.value.witness == (0.0, 0.6, 1.0)


def test_vector_cone_metric():
    d = ConeMetric(lambda x, y: np.stack([np.abs(x - y), 2 * np.abs(x - y)], axis=-1), dim=2)
    rep = check_cone_metric_axioms(d, np.linspace(0, 1, 5))
    assert rep.ok
    sp = from_cone_metric(d, Interval(0, 1, 5))
    assert sp.eval_kernel(0, 0.5, (0.6, 1.1)) == 1.0
    assert sp.eval_kernel(0, 0.5, (0.6, 0.9)) == 0.0
