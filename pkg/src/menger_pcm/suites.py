"""Check suites run by the command-line front end, one function per subcommand.

Each suite takes a validated :class:`SpaceConfig` plus run options and
returns a list of checks; the CLI wraps them into a report.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import topology as topo
from .config import SpaceConfig
from .convexity import (ConvexStructure, check_g1, check_g3, check_strict_convexity,
                        closed_ball_convexity_check, s_point)
from .cone import check_cone_axioms
from .errors import FixedPointNotFoundError, WitnessNotFoundError
from .fixedpoint import (check_nonexpansive, check_pair_condition, find_common_fixed_point,
                         verify_fixed_point)
from .pcm_space import Interval, PcmSpace, check_cone_metric_axioms, check_pcm_axioms
from .report import DEGENERATE, FAIL, PASS, Check, Tally, to_plain
from .tnorm import check_tnorm_axioms

HAUSDORFF_PAIRS = 20
PROBES = 201
DENSE_T = 400


@dataclass(frozen=True)
class RunOptions:
    tol: float
    seed: int = 0


def _probes(space: PcmSpace, n: int = PROBES) -> np.ndarray:
    c = space.carrier
    if isinstance(c, Interval):
        return np.linspace(c.lo, c.hi, n)
    return space.points()


def _info(axiom_id, witness=None, margin=None) -> Check:
    return Check(axiom_id, PASS, to_plain(witness), margin)


def _merge(axiom_id: str, checks) -> Check:
    """Fold checks of one property into one: first failure wins, else worst margin."""
    checks = list(checks)
    total = sum(c.checked for c in checks)
    for c in checks:
        if c.status == FAIL:
            return Check(axiom_id, FAIL, c.witness, c.margin, total)
    margins = [c.margin for c in checks if c.margin is not None]
    return Check(axiom_id, PASS, None, min(margins) if margins else None, total)


def axioms_suite(cfg: SpaceConfig, space: PcmSpace, opts: RunOptions) -> list[Check]:
    ts = cfg.grids["t_values"]
    cone_samples = [space.cone.vector(t) for t in ts] + [space.cone.zero]
    checks = list(check_cone_axioms(space.cone, cone_samples, (0.0, 0.5, 1.0, 2.0)))
    checks += list(check_tnorm_axioms(space.tnorm, np.linspace(0.0, 1.0, 11)))
    if space.kernel.family == "from-cone-metric":
        checks += list(check_cone_metric_axioms(space.kernel.metric, space.points(), space.cone,
                                                tol=opts.tol))
    checks += list(check_pcm_axioms(space, space.points(), ts, tol=opts.tol))
    return checks


def diameter_suite(cfg: SpaceConfig, space: PcmSpace, opts: RunOptions) -> list[Check]:
    pts = space.points()
    ts = sorted(cfg.grids["t_values"])
    prof = topo.diameter_profile(space, pts, ts)
    vals = list(prof.values.values())
    checks = [_info("diameter-profile", tuple(zip(ts, vals)), prof.overall)]

    mono = Tally("diameter-nondecreasing", tol=opts.tol)
    for (t1, v1), (t2, v2) in zip(zip(ts, vals), zip(ts[1:], vals[1:])):
        mono.observe(v2 - v1, (t1, t2))
    checks.append(mono.check())

    left = Tally("diameter-left-limit", tol=opts.tol)
    for t, v in zip(ts, vals):
        at_t = space.F(pts[:, None], pts[None, :], space.t_vector(t)).min()
        left.observe(at_t - v, (t,))
    checks.append(left.check())

    fc = topo.is_fc_bounded(space, pts)
    if fc is not None:
        checks.append(_info("fc-bounded", fc))
    elif prof.overall > 0:
        checks.append(Check("fc-bounded", FAIL, ("overall", prof.overall), None))
    else:
        checks.append(Check("fc-bounded", DEGENERATE, ("overall", 0.0), None))

    nd = topo.find_nondiametral(space, pts, ts)
    checks.append(_info("nondiametral", None if nd is None else (nd.x, nd.t0, nd.margin)))

    cover = Tally("cover")
    for t, lam in itertools.product(ts, cfg.grids["lambda_values"]):
        centers = topo.totally_bounded_cover(space, pts, t, lam)
        balls = [topo.Neighborhood(c, space.t_vector(t), lam) for c in centers]
        for p in pts:
            cover.observe_bool(any(topo.member(space, b, p) for b in balls), (t, lam, p))
    checks.append(cover.check())
    return checks


def hausdorff_suite(cfg: SpaceConfig, space: PcmSpace, opts: RunOptions) -> list[Check]:
    rng = np.random.default_rng(opts.seed)
    probes = _probes(space)
    t0 = cfg.grids["t_values"][0]
    n = probes.size
    all_pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    pick = rng.choice(len(all_pairs), size=min(HAUSDORFF_PAIRS, len(all_pairs)), replace=False)
    tally = Tally("hausdorff-disjoint")
    for k in sorted(int(v) for v in pick):
        p, q = probes[all_pairs[k][0]], probes[all_pairs[k][1]]
        try:
            w = topo.hausdorff_witness(space, p, q, t0)
        except WitnessNotFoundError:
            tally.observe_bool(False, (p, q, "no witness"))
            continue
        tally.observe_bool(topo.balls_disjoint(space, p, q, w, probes), (p, q, w.eps, w.lambda1))
    return [tally.check()]


def convexity_suite(cfg: SpaceConfig, space: PcmSpace, opts: RunOptions) -> list[Check]:
    if cfg.structure == "none":
        return [Check("convexity", DEGENERATE, ("structure none",), None)]
    cs = ConvexStructure.affine()
    pts = space.points()
    mus = cfg.grids["mu_values"]
    ts = cfg.grids["t_values"]
    checks = list(check_g1(space, cs, pts, mus, ts, tol=opts.tol))
    checks += list(check_g3(space, cs, pts, mus, ts, tol=opts.tol))
    # step kernels only separate z from its neighbours on a fine t-grid; the
    # -0.37 offset keeps grid values off the jump points of dyadic data
    span = max(ts)
    dense = span * (np.arange(1, DENSE_T + 1) - 0.37) / (DENSE_T / 2)
    checks += list(check_strict_convexity(space, cs, pts, mus, dense, tol=opts.tol))

    lemma_c = Tally("structure-leaves-endpoints")
    inner = [m for m in mus if 0.0 < m < 1.0]
    for x, y in itertools.product(pts, repeat=2):
        if x != y:
            lemma_c.observe_bool(any(s_point(cs, x, y, m) not in (x, y) for m in inner), (x, y))
    checks.append(lemma_c.check())

    probes = _probes(space, 41)
    ball_mus = sorted(set(mus) | {0.0, 1.0})
    checks.append(_merge("closed-ball-convex", (
        closed_ball_convexity_check(space, cs, c, t, lam, probes, ball_mus, tol=opts.tol)[
            "ball-convex"]
        for c, t, lam in itertools.product(pts, ts, cfg.grids["lambda_values"]))))
    return checks


def fixed_point_suite(cfg: SpaceConfig, space: PcmSpace, opts: RunOptions) -> list[Check]:
    f, g = cfg.build_maps()
    lo, hi = f.domain
    grid = np.linspace(lo, hi, 11)
    ts = cfg.grids["t_values"]
    tol = cfg.maps["tol"]
    checks = list(check_pair_condition(space, f, g, grid, ts, tol=opts.tol))
    if f == g:
        checks += list(check_nonexpansive(space, f, np.linspace(lo, hi, 21), ts, tol=opts.tol))
    try:
        res = find_common_fixed_point(space, f, g, tol=tol, check=False)
    except FixedPointNotFoundError as exc:
        best = exc.best
        wit = ("not found",) if best is None else (best.point, best.method, best.residual)
        return checks + [Check("common-fixed-point", FAIL, to_plain(wit), None)]
    checks.append(_info("common-fixed-point",
                        (res.point, res.method, res.residual_f, res.residual_g, res.iterations),
                        tol - res.residual))
    ok = verify_fixed_point(space, f, g, res.point, tol)
    checks.append(Check("verify-fixed-point", PASS if ok else FAIL, (res.point,),
                        tol - res.residual))
    return checks


SUITES = {
    "check-axioms": axioms_suite,
    "diameter": diameter_suite,
    "hausdorff-witness": hausdorff_suite,
    "convexity": convexity_suite,
    "fixed-point": fixed_point_suite,
}


def full_suite(cfg: SpaceConfig, space: PcmSpace, opts: RunOptions) -> list[Check]:
    """Every suite, ids prefixed ``<suite>:``; fixed-point only with a maps section."""
    out = []
    for name, suite in PARTS.items():
        if name == "fixed-point" and cfg.maps is None:
            continue
        for c in suite(cfg, space, opts):
            out.append(Check(f"{name}:{c.axiom_id}", c.status, c.witness, c.margin, c.checked))
    return out


PARTS = dict(SUITES)
SUITES["full-suite"] = full_suite
