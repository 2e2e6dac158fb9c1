import numpy as np
import pytest

from menger_pcm import (Neighborhood, balls_disjoint, converges, diameter_profile,
                        find_nondiametral, hausdorff_witness, heaviside_space, is_cauchy,
                        is_fc_bounded, member, neighborhood_monotone_check, prob_diameter,
                        rational_pair_space, totally_bounded_cover)
from menger_pcm.errors import DomainError, InputError, PreconditionError


def test_member_strictness(frac):
    assert member(frac, Neighborhood(0.0, 1.0, 0.6), 1.0)
    assert not member(frac, Neighborhood(0.0, 1.0, 0.5), 1.0)
    assert member(frac, Neighborhood(0.0, 1.0, 0.5, closed=True), 1.0)
    assert member(frac, Neighborhood(0.3, 0.01, 0.01), 0.3)
    with pytest.raises(DomainError):
        member(frac, Neighborhood(0.0, 1.0, 1.0), 0.5)


def test_neighborhood_monotone(frac, heav):
    probe = np.linspace(0, 1, 21)
    assert neighborhood_monotone_check(frac, 0.0, 0.5, 0.3, 1.0, 0.5, probe)
    assert neighborhood_monotone_check(frac, 0.0, 1.0, 0.5, 1.0, 0.5, probe)
    big = heaviside_space(-2, 2)
    assert neighborhood_monotone_check(big, 0.0, 0.5, 0.5, 2.0, 0.5, [0.4, 1.1])
    assert member(big, Neighborhood(0.0, 0.5, 0.5), 0.4)
    assert not member(big, Neighborhood(0.0, 0.5, 0.5), 1.1)
    assert member(big, Neighborhood(0.0, 2.0, 0.5), 1.1)
    with pytest.raises(PreconditionError):
        neighborhood_monotone_check(frac, 0.0, 1.0, 0.5, 0.5, 0.5, probe)


def test_hausdorff_fraction_example(frac):
    w = hausdorff_witness(frac, 0.0, 1.0, 1.0)
    assert w.lam == 0.5 and w.lam0 == pytest.approx(0.6) and w.lambda1 == pytest.approx(0.6)
    np.testing.assert_array_equal(w.eps, [1.0])
    probes = np.linspace(0, 1, 301)
    bp, bq = w.balls(0.0, 1.0)
    near_p = probes[[member(frac, bp, r) for r in probes]]
    near_q = probes[[member(frac, bq, r) for r in probes]]
    assert near_p.max() < 1 / 3 and near_q.min() > 2 / 3
    assert balls_disjoint(frac, 0.0, 1.0, w, probes)


def test_hausdorff_heaviside(heav):
    w = hausdorff_witness(heav, 0.0, 1.0, 0.5)
    np.testing.assert_array_equal(w.eps, [0.5])
    assert 0 < w.lambda1 < 1
    assert balls_disjoint(heav, 0.0, 1.0, w, np.linspace(0, 1, 201))


def test_hausdorff_halves_t_for_close_step_pairs(heav):
    w = hausdorff_witness(heav, 0.4, 0.5, 1.0)
    assert w.eps[0] < 0.1 + 1e-12
    assert balls_disjoint(heav, 0.4, 0.5, w, np.linspace(0, 1, 1001))


def test_hausdorff_needs_distinct_points(frac):
    with pytest.raises(PreconditionError):
        hausdorff_witness(frac, 0.3, 0.3, 1.0)


def test_converges(frac):
    seq = [2.0 ** -n for n in range(1, 31)]
    assert converges(frac, seq, 0.0, [0.1], [0.1]).consistent
    assert converges(frac, [0.4] * 10, 0.4, [0.1], [0.1]).consistent
    v = converges(frac, [0.0, 1.0] * 10, 0.0, [1.0], [0.4])
    assert not v.consistent
    assert v.witness[3] == 1.0


def test_is_cauchy(frac):
    seq = [2.0 ** -n for n in range(1, 31)]
    assert is_cauchy(frac, seq, [0.1], [0.1]).consistent
    assert is_cauchy(frac, [0.7] * 8, [0.1], [0.1]).consistent
    v = is_cauchy(rational_pair_space(), np.arange(1, 13), [1.0], [0.1])
    assert not v.consistent
    n, m = v.witness[3]
    assert min(n, m) / max(n, m) <= 0.9


def test_prob_diameter(frac, heav):
    assert prob_diameter(frac, [0.0, 1.0], 1.0) == pytest.approx(0.5, abs=1e-8)
    assert prob_diameter(frac, [0.3], 0.2) == 1.0
    assert prob_diameter(heav, [0.0, 0.3, 1.0], 0.5) == 0.0
    with pytest.raises(InputError):
        prob_diameter(frac, [], 1.0)


def test_prob_diameter_honours_left_limit(heav):
    # H(s - 0.5) is 0 for every s < 0.5 even though the value at 0.5+ is 1
    assert prob_diameter(heav, [0.0, 0.5], 0.5) == 0.0
    assert prob_diameter(heav, [0.0, 0.5], 0.6) == 1.0


def test_diameter_profile(frac):
    prof = diameter_profile(frac, [0.0, 0.5, 1.0], [0.5, 1.0, 4.0])
    vals = list(prof.values.values())
    assert vals == sorted(vals)
    assert prof.overall == vals[-1]
    assert prof.semi_bounded and not prof.bounded


def test_fc_bounded(frac):
    eps, lam = is_fc_bounded(frac, np.linspace(0, 1, 11))
    assert eps[0] / (eps[0] + 1) > 1 - lam
    assert is_fc_bounded(frac, [0.5]) is not None
    rp = rational_pair_space()
    assert is_fc_bounded(rp, [1, 10 ** 6], lambda_grid=[0.1, 0.3, 0.5]) is None


def test_fc_bounded_strict_boundary(frac):
    # worst pair has distance 1, so F(eps) = eps / (eps + 1); at lambda = 0.2
    # eps = 4 gives exactly 0.8, which is not > 0.8, and eps = 5 gives 5/6
    A = np.linspace(0, 1, 11)
    assert is_fc_bounded(frac, A, eps_grid=[4.0], lambda_grid=[0.2]) is None
    eps, lam = is_fc_bounded(frac, A, eps_grid=[10.0, 4.0, 5.0, 9.0], lambda_grid=[0.2])
    np.testing.assert_array_equal(eps, [5.0])
    assert is_fc_bounded(frac, A, eps_grid=[9.0], lambda_grid=[0.2]) is not None


def test_find_nondiametral(frac):
    nd = find_nondiametral(frac, [0.0, 0.5, 1.0], [1.0])
    assert nd.x == 0.5
    assert nd.margin == pytest.approx(1 / 1.5 - 0.5, abs=1e-8)
    assert find_nondiametral(frac, [0.0, 1.0], [1.0]) is None
    with pytest.raises(PreconditionError):
        find_nondiametral(frac, [0.3], [1.0])


def test_totally_bounded_cover(frac):
    assert totally_bounded_cover(frac, np.linspace(0, 1, 11), 1.0, 0.6) == [0.0]
    assert totally_bounded_cover(frac, [0.25], 1.0, 0.6) == [0.25]
    hv = heaviside_space()
    assert totally_bounded_cover(hv, [0.0, 0.5, 1.0], 0.3, 0.5) == [0.0, 0.5, 1.0]
