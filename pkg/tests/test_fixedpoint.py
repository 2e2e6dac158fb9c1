import math
import warnings

import numpy as np
import pytest

from menger_pcm import (FixedPointResult, SelfMap, check_nonexpansive, check_pair_condition,
                        find_common_fixed_point, fraction_space, heaviside_space,
                        verify_fixed_point)
from menger_pcm.errors import ConstructionError, DomainError, FixedPointNotFoundError

ROOT = (3 - math.sqrt(3)) / 2
HALF, QUAD, IDENT = SelfMap.scale_half(), SelfMap.quad(), SelfMap.identity()


def test_quad_closed_form_root_is_independent_of_solver():
    # x^2/3 + 1/2 = x  <=>  2x^2 - 6x + 3 = 0
    assert 2 * ROOT ** 2 - 6 * ROOT + 3 == pytest.approx(0.0, abs=1e-15)
    assert QUAD.fixed_points() == [pytest.approx(ROOT)]


def test_range_check_at_construction():
    with pytest.raises(ConstructionError) as info:
        SelfMap.affine(1.0, 0.9)
    assert info.value.witness == (0.2,)
    SelfMap.affine(2.0, -0.5, check_range=False)


def test_nonexpansive(heav):
    assert check_nonexpansive(heav, QUAD, np.linspace(0, 1, 21), [0.2, 0.5, 1.0]).ok
    rep = check_nonexpansive(heav, IDENT, np.linspace(0, 1, 11), [0.5])
    assert rep.ok and rep["nonexpansive"].margin == 0.0
    expand = SelfMap.affine(2.0, -0.5, check_range=False)
    rep = check_nonexpansive(heav, expand, [0.0, 0.5], [0.6])
    c = rep["nonexpansive"]
    assert c.status == "fail" and c.witness == (0.0, 0.5, 0.6)


def test_pair_condition(frac):
    assert check_pair_condition(frac, HALF, HALF, np.linspace(0, 1, 11), [0.5, 1, 2]).ok
    rep = check_pair_condition(frac, IDENT, IDENT, np.linspace(0, 1, 11), [1.0])
    assert rep.ok and rep["pair-condition"].margin == 0.0


def test_pair_condition_failure_warns_but_solves(frac):
    up = SelfMap.affine(0.0, 1.0)
    with pytest.warns(RuntimeWarning, match="pair condition"):
        with pytest.raises(FixedPointNotFoundError) as info:
            find_common_fixed_point(frac, HALF, up, grid_n=101)
    assert isinstance(info.value.best, FixedPointResult)


def test_solver_examples(frac, heav):
    r = find_common_fixed_point(frac, HALF, HALF, tol=1e-9)
    assert abs(r.point) <= 1e-9 and r.method in ("exact", "picard")
    r = find_common_fixed_point(heav, QUAD, QUAD, tol=1e-9)
    assert abs(r.point - ROOT) <= 1e-9 and r.residual <= 1e-9
    r = find_common_fixed_point(heav, IDENT, IDENT)
    assert r.point == 0.5 and r.residual == 0.0 and r.method == "picard"


@pytest.mark.parametrize("stage", ["picard", "mann", "grid"])
def test_each_stage_alone_reaches_quad_root(heav, stage):
    r = find_common_fixed_point(heav, QUAD, QUAD, tol=1e-9, stages=(stage,))
    assert r.method == stage
    assert abs(r.point - ROOT) <= 1e-8
    assert verify_fixed_point(heav, QUAD, QUAD, r.point, 1e-9)


def test_picard_geometric_decay():
    x = 0.8
    for n in range(1, 40):
        x = HALF(x)
        assert x == 0.8 * 2.0 ** -n


def test_verify_fixed_point(heav):
    assert verify_fixed_point(heav, HALF, HALF, 0.0, 0.0)
    assert verify_fixed_point(heav, QUAD, QUAD, ROOT, 1e-12)
    with pytest.raises(DomainError):
        verify_fixed_point(heav, QUAD, QUAD, (3 + math.sqrt(3)) / 2, 1e-12)


def test_tabulated_map():
    m = SelfMap.tabulated([0.0, 0.5, 1.0], [0.2, 0.5, 0.6])
    assert m.fixed_points() == [0.5]
    r = find_common_fixed_point(heaviside_space(), m, m)
    assert r.point == 0.5


def test_affine_roots():
    assert SelfMap.affine(0.5, 0.25).fixed_points() == [0.5]
    assert SelfMap.affine(1.0, 0.0).fixed_points() is None


def test_no_warning_for_valid_pair(frac):
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        find_common_fixed_point(frac, HALF, HALF)
