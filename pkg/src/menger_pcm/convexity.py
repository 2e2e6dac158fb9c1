"""Convex structures ``S(x, y, mu)`` on probabilistic cone metric spaces.

The affine structure ``S(x, y, mu) = mu*x + (1 - mu)*y`` is built in; a
tabulated structure maps explicit ``(x, y, mu)`` keys to carrier points.
Three sweeps are provided:

* ``G1``  ``F(S(x,y,mu), z, 2e) >= F(x, z, e/mu) * F(y, z, e/(1-mu))``
* ``G3``  ``F(S(x,y,mu), z, e) > min(F(x, z, e), F(z, y, e))``
* strict convexity, ``F(z, x, t) = F(x, y, t/(1-mu))`` and
  ``F(z, y, t) = F(x, y, t/mu)`` with ``z = S(x, y, mu)`` the only such point.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .errors import DomainError, InputError, UnsupportedError
from .pcm_space import Interval, FinitePoints, PcmSpace
from .report import DEGENERATE, Check, Report, Tally, flag_check, to_plain

KINDS = ("affine", "tabulated")


@dataclass(frozen=True)
class ConvexStructure:
    kind: str = "affine"
    table: Mapping = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InputError(f"unknown convex structure {self.kind!r}")
        if self.kind == "tabulated" and not self.table:
            raise InputError("tabulated structure needs a table")

    @classmethod
    def affine(cls) -> "ConvexStructure":
        return cls("affine")

    def __call__(self, x, y, mu):
        return s_point(self, x, y, mu)


def _check_mu(mu) -> np.ndarray:
    m = np.asarray(mu, dtype=float)
    if np.any(~np.isfinite(m)) or np.any((m < 0) | (m > 1)):
        raise DomainError(f"mu must lie in [0, 1], got {mu!r}")
    return m


def s_point(cs: ConvexStructure, x, y, mu):
    """``S(x, y, mu)``; broadcasts for the affine kind.

    The boundary laws ``S(x, y, 0) = y``, ``S(x, y, 1) = x`` and
    ``S(x, x, mu) = x`` hold bit-exactly, not just up to rounding.
    """
    m = _check_mu(mu)
    if cs.kind == "tabulated":
        x, y, m = float(x), float(y), float(m)
        if m == 0.0:
            return y
        if m == 1.0 or x == y:
            return x
        try:
            return float(cs.table[(x, y, m)])
        except KeyError:
            raise InputError(f"structure table has no entry for {(x, y, m)}") from None
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    out = m * x + (1.0 - m) * y
    out = np.where(m == 0.0, y, np.where((m == 1.0) | (x == y), x, out))
    return float(out) if out.ndim == 0 else out


def _sweep_setup(space: PcmSpace, samples, mus, t_samples):
    pts = np.asarray(list(samples), dtype=float).reshape(-1)
    if pts.size == 0 or len(t_samples) == 0:
        raise InputError("samples and t_samples must be nonempty")
    mus = [float(m) for m in _check_mu(list(mus)).reshape(-1)]
    ts = [space.t_vector(t) for t in t_samples]
    return pts, mus, ts


def _grid3(pts):
    return pts[:, None, None], pts[None, :, None], pts[None, None, :]


def _boundary_check(cs: ConvexStructure, pts) -> Check:
    law = Tally("S-boundary")
    for x, y in itertools.product(pts, repeat=2):
        law.observe_bool(s_point(cs, x, y, 0.0) == y, (x, y, 0.0))
        law.observe_bool(s_point(cs, x, y, 1.0) == x, (x, y, 1.0))
    return law.check()


def _s_grid(cs, X, Y, mu):
    if cs.kind == "affine":
        return s_point(cs, X, Y, mu)
    out = np.empty(np.broadcast(X, Y).shape)
    for idx in np.ndindex(out.shape):
        out[idx] = s_point(cs, np.broadcast_to(X, out.shape)[idx],
                           np.broadcast_to(Y, out.shape)[idx], mu)
    return out


def check_g1(space: PcmSpace, cs: ConvexStructure, samples, mus, t_samples,
             tol: float = 1e-12) -> Report:
    """The probabilistic convexity inequality over every ``(x, y, z, mu, eps)``.

    Endpoint mus are not swept (``eps/0`` is undefined); they are covered
    by the exact boundary law instead.
    """
    pts, mus, ts = _sweep_setup(space, samples, mus, t_samples)
    X, Y, Z = _grid3(pts)
    n = pts.size
    g1 = Tally("G1", tol=tol)
    for mu, eps in itertools.product([m for m in mus if 0.0 < m < 1.0], ts):
        S = _s_grid(cs, X, Y, mu)
        lhs = space.F(S, Z, 2.0 * eps)
        rhs = space.tnorm.combine(space.F(X, Z, eps / mu), space.F(Y, Z, eps / (1.0 - mu)))

        def tup(i, mu=mu, eps=eps):
            a, b, c = np.unravel_index(i, (n, n, n))
            return (pts[a], pts[b], pts[c], mu, eps)

        g1.observe_array(lhs - rhs, tup)
    return Report("convexity-g1", [g1.check(), _boundary_check(cs, pts)])


def check_g3(space: PcmSpace, cs: ConvexStructure, samples, mus, t_samples,
             tol: float = 1e-12) -> Report:
    """The strict structural inequality.

    Only a reversed inequality fails. Ties are collected under ``G3-ties``
    (both sides 1, or a coincidence such as ``x == y``) and reported as
    degenerate. ``G3-equality-tuple`` flags a tuple with ``x != y``,
    ``S`` off ``{x, y}`` and equality at every t with some side below 1;
    for the min t-norm such a tuple contradicts ``S in {x, y}``.
    """
    pts, mus, ts = _sweep_setup(space, samples, mus, t_samples)
    X, Y, Z = _grid3(pts)
    n = pts.size
    g3 = Tally("G3", tol=tol)
    ties, tie_count = None, 0
    lemma = None
    for mu in [m for m in mus if 0.0 < m < 1.0]:
        S = _s_grid(cs, X, Y, mu)
        equal_all = np.ones((n, n, n), dtype=bool)
        below_one = np.zeros((n, n, n), dtype=bool)
        for eps in ts:
            lhs = space.F(S, Z, eps)
            rhs = np.minimum(space.F(X, Z, eps), space.F(Z, Y, eps))
            lhs, rhs = np.broadcast_arrays(lhs, rhs)

            def tup(i, mu=mu, eps=eps):
                a, b, c = np.unravel_index(i, (n, n, n))
                return (pts[a], pts[b], pts[c], mu, eps)

            g3.observe_array(lhs - rhs, tup)
            tie = np.abs(lhs - rhs) <= tol
            tie_count += int(tie.sum())
            if ties is None and tie.any():
                ties = tup(int(np.flatnonzero(tie)[0]))
            equal_all &= tie
            below_one |= np.minimum(lhs, rhs) < 1.0
        if lemma is None:
            off = (X != Y) & (S != X) & (S != Y)
            hit = np.flatnonzero(equal_all & below_one & off)
            if hit.size:
                a, b, c = np.unravel_index(int(hit[0]), (n, n, n))
                lemma = (pts[a], pts[b], pts[c], mu)
    tie_check = (Check("G3-ties", DEGENERATE, to_plain(ties), None, tie_count)
                 if ties is not None else flag_check("G3-ties", None, 0))
    return Report("convexity-g3", [
        g3.check(), tie_check, flag_check("G3-equality-tuple", lemma, g3.checked),
    ])


def _split_gaps(space, S, X, Y, mu, t):
    """Deviations from the two distance-splitting equalities at ``z = S``."""
    a = np.abs(space.F(S, X, t) - space.F(X, Y, t / (1.0 - mu)))
    b = np.abs(space.F(S, Y, t) - space.F(X, Y, t / mu))
    return np.maximum(a, b)


def check_strict_convexity(space: PcmSpace, cs: ConvexStructure, samples, mus, t_samples,
                           tol: float = 1e-12, z_candidates=None) -> Report:
    """Distance-splitting equalities at ``z = S(x, y, mu)`` plus sampled uniqueness.

    ``SC-uniqueness`` fails when a candidate ``z' != z`` satisfies both
    equalities at every t; pairs with ``x == y`` are skipped there because
    every point near x then qualifies at coarse t resolution. Candidates
    default to the carrier's sample points.
    """
    pts, mus, ts = _sweep_setup(space, samples, mus, t_samples)
    inner = [m for m in mus if 0.0 < m < 1.0]
    cands = (space.points() if z_candidates is None
             else np.asarray(list(z_candidates), dtype=float).reshape(-1))
    n = pts.size
    X, Y = pts[:, None], pts[None, :]
    eq = Tally("SC-equalities", tol=tol)
    uniq = Tally("SC-uniqueness")
    C = cands[None, None, :]
    for mu in inner:
        S = _s_grid(cs, X, Y, mu)
        for t in ts:
            eq.observe_array(-_split_gaps(space, S, X, Y, mu, t), lambda i, mu=mu, t=t: (
                pts[i // n], pts[i % n], mu, t))
        # alive[i, j, k]: candidate k matches both equalities for (x_i, y_j) at every t
        alive = ~np.isclose(C, S[:, :, None], rtol=0.0, atol=tol)
        alive &= (X != Y)[:, :, None]
        for t in ts:
            if not alive.any():
                break
            alive &= _split_gaps(space, C, X[:, :, None], Y[:, :, None], mu, t) <= tol
        hits = np.argwhere(alive)
        for i, j in itertools.product(range(n), repeat=2):
            if pts[i] == pts[j]:
                continue
            row = hits[(hits[:, 0] == i) & (hits[:, 1] == j)]
            z = None if row.size == 0 else cands[row[0, 2]]
            uniq.observe_bool(z is None, (pts[i], pts[j], mu, z))
    return Report("strict-convexity", [eq.check(), uniq.check()])


def _in_union(values, intervals) -> np.ndarray:
    v = np.asarray(values, dtype=float)
    inside = np.zeros(v.shape, dtype=bool)
    for lo, hi in intervals:
        inside |= (v >= lo) & (v <= hi)
    return inside


def _normalize_intervals(A) -> list[tuple[float, float]]:
    out = []
    for item in A:
        lo, hi = (item, item) if np.isscalar(item) else item
        lo, hi = float(lo), float(hi)
        if lo > hi:
            raise InputError(f"interval [{lo}, {hi}] has lo > hi")
        out.append((lo, hi))
    if not out:
        raise InputError("A must contain at least one interval")
    return out


def is_convex_set(space: PcmSpace, cs: ConvexStructure, A, mus, points=None,
                  samples_per_interval: int = 11) -> bool:
    """Whether every sampled ``S(x, y, mu)`` with ``x, y`` in A stays in A.

    A is a union of closed intervals given as ``(lo, hi)`` pairs (a bare
    number is a degenerate interval). ``points`` overrides the default
    evenly spaced samples from each interval.
    """
    intervals = _normalize_intervals(A)
    if points is None:
        points = np.concatenate([np.linspace(lo, hi, samples_per_interval)
                                 for lo, hi in intervals])
    pts = np.asarray(list(points), dtype=float).reshape(-1)
    if not np.all(_in_union(pts, intervals)):
        raise InputError("sample points must lie in A")
    X, Y = pts[:, None], pts[None, :]
    for mu in [float(m) for m in _check_mu(list(mus)).reshape(-1)]:
        if not np.all(_in_union(_s_grid(cs, X, Y, mu), intervals)):
            return False
    return True


def closed_convex_shell(space: PcmSpace, cs: ConvexStructure, Y) -> tuple[float, float]:
    """Smallest closed affinely convex set containing Y: ``[min Y, max Y]``."""
    if cs.kind != "affine":
        raise UnsupportedError("closed convex shell is only available for the affine structure")
    if not isinstance(space.carrier, (Interval, FinitePoints)):
        raise UnsupportedError("closed convex shell needs a real carrier")
    ys = np.asarray(list(Y), dtype=float).reshape(-1)
    if ys.size == 0:
        raise InputError("Y must be nonempty")
    return float(ys.min()), float(ys.max())


def closed_ball_convexity_check(space: PcmSpace, cs: ConvexStructure, center, eps, lam,
                                probes, mus, tol: float = 0.0) -> Report:
    """Convexity of the closed ball ``{q : F(center, q, eps) >= 1 - lam}`` on probes."""
    eps = space.t_vector(eps)
    lam = float(lam)
    if not 0.0 < lam < 1.0:
        raise DomainError(f"lambda must lie in (0, 1), got {lam!r}")
    probes = np.asarray(list(probes), dtype=float).reshape(-1)
    inside = probes[space.F(float(center), probes, eps) >= 1.0 - lam]
    m = inside.size
    tally = Tally("ball-convex", tol=tol)
    X, Y = inside[:, None], inside[None, :]
    for mu in [float(v) for v in _check_mu(list(mus)).reshape(-1)]:
        if m == 0:
            break
        S = _s_grid(cs, X, Y, mu)
        margin = space.F(float(center), S, eps) - (1.0 - lam)
        tally.observe_array(margin, lambda i, mu=mu: (inside[i // m], inside[i % m], mu))
    return Report("ball-convexity", [tally.check()])
