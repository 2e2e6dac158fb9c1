"""The (eps, lambda)-neighborhood topology of a probabilistic cone metric space.

``N_p(eps, lam) = {q : F(p, q, eps) > 1 - lam}`` (``>=`` for the closed
variant). Everything here works on finite samples: a refuted verdict is a
disproof, a consistent one is only evidence at sample resolution.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .errors import DomainError, InputError, PreconditionError, WitnessNotFoundError
from .pcm_space import PcmSpace
from .tnorm import find_idempotent_bound

LEFT_LIMIT = 1e-9  # sup over s < t is sampled on a grid ending at t * (1 - LEFT_LIMIT)
DIAMETRAL_TOL = 1e-9
DEFAULT_EPS_GRID = (0.1, 0.25, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 50.0, 100.0, 1000.0)
DEFAULT_LAMBDA_GRID = (0.05, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95)


@dataclass(frozen=True)
class Neighborhood:
    center: float
    eps: object
    lam: float
    closed: bool = False


def _check_lambda(lam: float) -> float:
    lam = float(lam)
    if not 0.0 < lam < 1.0:
        raise DomainError(f"lambda must lie in (0, 1), got {lam!r}")
    return lam


def _ball_mask(space: PcmSpace, center, eps, lam, qs, closed=False) -> np.ndarray:
    eps = space.t_vector(eps)
    lam = _check_lambda(lam)
    vals = space.F(float(center), np.asarray(qs, dtype=float), eps)
    return vals >= 1.0 - lam if closed else vals > 1.0 - lam


def member(space: PcmSpace, nbhd: Neighborhood, q) -> bool:
    if not space.carrier.contains(q):
        raise InputError(f"point {q!r} is outside the carrier")
    return bool(_ball_mask(space, nbhd.center, nbhd.eps, nbhd.lam, q, nbhd.closed))


def ball_members(space: PcmSpace, nbhd: Neighborhood, probes) -> np.ndarray:
    """The probes that lie in ``nbhd``."""
    probes = np.asarray(probes, dtype=float)
    return probes[_ball_mask(space, nbhd.center, nbhd.eps, nbhd.lam, probes, nbhd.closed)]


def neighborhood_monotone_check(space: PcmSpace, p, eps1, lam1, eps2, lam2, probe) -> bool:
    """Whether ``N_p(eps1, lam1)`` sits inside ``N_p(eps2, lam2)`` on the probes."""
    e1, e2 = space.t_vector(eps1), space.t_vector(eps2)
    if not space.cone.leq(e1, e2) or lam1 > lam2:
        raise PreconditionError("need eps1 ⪯ eps2 and lam1 <= lam2")
    small = _ball_mask(space, p, e1, lam1, probe)
    large = _ball_mask(space, p, e2, lam2, probe)
    return bool(np.all(~small | large))


@dataclass(frozen=True)
class HausdorffWitness:
    """Separating balls ``N_p(eps/2, 1 - lambda1)`` and ``N_q(eps/2, 1 - lambda1)``.

    ``lam`` is ``F(p, q, eps)`` and ``lam0`` the intermediate level with
    ``lam < lam0 <= lambda1 * lambda1``.
    """

    eps: np.ndarray
    lambda1: float
    lam: float
    lam0: float

    def balls(self, p, q) -> tuple[Neighborhood, Neighborhood]:
        half = self.eps / 2.0
        return (Neighborhood(p, half, 1.0 - self.lambda1),
                Neighborhood(q, half, 1.0 - self.lambda1))


def hausdorff_witness(space: PcmSpace, p, q, t0, max_halvings: int = 60) -> HausdorffWitness:
    """Separate distinct points by two disjoint open balls.

    With ``lam = F(p, q, t0) < 1``, pick ``lam0 = lam + (1 - lam) / 5`` and
    ``lambda1`` with ``lambda1 * lambda1 >= lam0``. Any common point r of the
    two radius-``t0/2`` balls would give ``lam >= F(p,r) * F(r,q) >= lam0``
    by the Menger inequality. When ``F(p, q, t0) = 1`` (a step kernel with
    ``t0`` past the distance) ``t0`` is halved until the value drops.
    """
    if float(p) == float(q):
        raise PreconditionError("hausdorff_witness needs two distinct points")
    t = space.t_vector(t0)
    for _ in range(max_halvings + 1):
        lam = float(space.F(float(p), float(q), t))
        if lam < 1.0:
            break
        t = t / 2.0
    else:
        raise WitnessNotFoundError(f"F({p}, {q}, t) stays 1 down to t = {t}")
    lam0 = lam + (1.0 - lam) / 5.0
    if not lam0 < 1.0:
        raise WitnessNotFoundError(f"no level strictly between {lam} and 1")
    lambda1 = find_idempotent_bound(space.tnorm, lam0)
    return HausdorffWitness(t, lambda1, lam, lam0)


def balls_disjoint(space: PcmSpace, p, q, witness: HausdorffWitness, probes) -> bool:
    bp, bq = witness.balls(p, q)
    probes = np.asarray(probes, dtype=float)
    both = (_ball_mask(space, p, bp.eps, bp.lam, probes)
            & _ball_mask(space, q, bq.eps, bq.lam, probes))
    return not bool(np.any(both))


class Verdict(NamedTuple):
    """``consistent`` is evidence only; ``witness`` explains a refutation as
    ``(eps, lam, index, term)`` for the last offending term."""

    consistent: bool
    witness: tuple | None = None


def _schedule(space, eps_schedule, lam_schedule):
    if len(eps_schedule) == 0 or len(lam_schedule) == 0:
        raise InputError("schedules must be nonempty")
    for e, lam in itertools.product(eps_schedule, lam_schedule):
        yield space.t_vector(e), _check_lambda(lam)


def converges(space: PcmSpace, seq: Sequence, x, eps_schedule, lam_schedule,
              min_tail: float = 0.5) -> Verdict:
    """Test ``F(x_n, x, eps) > 1 - lam`` on a tail of the prefix.

    For each (eps, lam) the smallest admissible start index ``n0`` must leave
    a tail covering at least ``min_tail`` of the prefix; otherwise refuted.
    """
    xs = np.asarray(seq, dtype=float)
    if xs.size == 0:
        raise InputError("sequence prefix must be nonempty")
    latest = int(np.floor(xs.size * (1.0 - min_tail)))
    for eps, lam in _schedule(space, eps_schedule, lam_schedule):
        inside = space.F(xs, float(x), eps) > 1.0 - lam
        bad = np.flatnonzero(~inside)
        if bad.size and bad[-1] + 1 > latest:
            k = int(bad[-1])
            return Verdict(False, (eps, lam, k, float(xs[k])))
    return Verdict(True)


def is_cauchy(space: PcmSpace, seq: Sequence, eps_schedule, lam_schedule,
              min_tail: float = 0.5) -> Verdict:
    """Pairwise analogue of :func:`converges`; the witness index is the pair
    ``(n, m)`` forcing the start index furthest right."""
    xs = np.asarray(seq, dtype=float)
    if xs.size == 0:
        raise InputError("sequence prefix must be nonempty")
    latest = int(np.floor(xs.size * (1.0 - min_tail)))
    idx = np.arange(xs.size)
    lower = np.minimum(idx[:, None], idx[None, :])
    for eps, lam in _schedule(space, eps_schedule, lam_schedule):
        inside = space.F(xs[:, None], xs[None, :], eps) > 1.0 - lam
        forced = np.where(inside, -1, lower)
        n, m = np.unravel_index(int(np.argmax(forced)), forced.shape)
        if forced[n, m] >= 0 and forced[n, m] + 1 > latest:
            return Verdict(False, (eps, lam, (int(n), int(m)), (float(xs[n]), float(xs[m]))))
    return Verdict(True)


def _left_limits(space: PcmSpace, P, Q, t: np.ndarray, s_grid: int) -> np.ndarray:
    """``sup_{s < t} F(P, Q, s)`` sampled along the ray ``c * t``, ``0 < c < 1``."""
    cs = np.linspace(1.0 / s_grid, 1.0 - LEFT_LIMIT, s_grid)
    best = None
    for c in cs:
        v = space.F(P, Q, c * t)
        best = v if best is None else np.maximum(best, v)
    return best


def prob_diameter(space: PcmSpace, A: Sequence, t, s_grid: int = 64) -> float:
    """``inf_{x,y in A} sup_{s<t} F(x, y, s)``."""
    pts = np.asarray(A, dtype=float).reshape(-1)
    if pts.size == 0:
        raise InputError("A must be nonempty")
    t = space.t_vector(t)
    return float(_left_limits(space, pts[:, None], pts[None, :], t, s_grid).min())


@dataclass(frozen=True)
class DiameterProfile:
    points: tuple
    values: dict  # t (float or tuple) -> delta_A(t)
    overall: float

    @property
    def semi_bounded(self) -> bool:
        """``overall`` is ``1 - lambda`` for some lambda in (0, 1)."""
        return 0.0 < self.overall < 1.0

    @property
    def bounded(self) -> bool:
        return self.overall >= 1.0


def diameter_profile(space: PcmSpace, A: Sequence, t_grid: Sequence, s_grid: int = 64
                     ) -> DiameterProfile:
    vals = {}
    for t in t_grid:
        v = space.t_vector(t)
        key = float(v[0]) if v.size == 1 else tuple(float(c) for c in v)
        vals[key] = prob_diameter(space, A, v, s_grid)
    overall = max(vals.values()) if vals else 0.0
    return DiameterProfile(tuple(float(a) for a in A), vals, overall)


def is_fc_bounded(space: PcmSpace, A: Sequence, eps_grid=DEFAULT_EPS_GRID,
                  lambda_grid=DEFAULT_LAMBDA_GRID):
    """First ``(eps, lam)`` with ``F(x, y, eps) > 1 - lam`` for all pairs of A.

    Lambdas are tried smallest first, and for each lambda the eps grid
    ascending. Returns ``None`` if the grids hold no witness.
    """
    pts = np.asarray(A, dtype=float).reshape(-1)
    if pts.size == 0:
        raise InputError("A must be nonempty")
    P, Q = pts[:, None], pts[None, :]
    worst = {}
    for lam in sorted(float(v) for v in lambda_grid):
        _check_lambda(lam)
        for e in sorted(eps_grid, key=lambda e: space.cone.norm_of(space.cone.vector(e))):
            eps = space.t_vector(e)
            key = tuple(eps)
            if key not in worst:
                worst[key] = float(space.F(P, Q, eps).min())
            if worst[key] > 1.0 - lam:
                return eps, lam
    return None


class NonDiametral(NamedTuple):
    x: float
    t0: object
    margin: float


def find_nondiametral(space: PcmSpace, A: Sequence, t_grid: Sequence, s_grid: int = 64,
                      tol: float = DIAMETRAL_TOL) -> NonDiametral | None:
    """The point of A beating the diameter by the largest margin, or None.

    ``margin = inf_y sup_{s<t0} F(x, y, s) - delta_A(t0)``; points with
    ``margin <= tol`` count as diametral. Ties go to the earliest point and
    grid entry.
    """
    pts = np.asarray(A, dtype=float).reshape(-1)
    if pts.size < 2:
        raise PreconditionError("need at least two points")
    best = None
    for t in t_grid:
        t = space.t_vector(t)
        lim = _left_limits(space, pts[:, None], pts[None, :], t, s_grid)
        per_point = lim.min(axis=1)
        delta = per_point.min()
        i = int(np.argmax(per_point))
        margin = float(per_point[i] - delta)
        if margin > tol and (best is None or margin > best.margin):
            best = NonDiametral(float(pts[i]), t, margin)
    return best


def totally_bounded_cover(space: PcmSpace, A: Sequence, eps, lam) -> list[float]:
    """Greedy centers from A whose open (eps, lam)-balls cover A."""
    pts = np.asarray(A, dtype=float).reshape(-1)
    if pts.size == 0:
        raise InputError("A must be nonempty")
    covered = np.zeros(pts.size, dtype=bool)
    centers = []
    while not covered.all():
        c = float(pts[int(np.argmin(covered))])
        centers.append(c)
        covered |= _ball_mask(space, c, eps, lam, pts)
    return centers
