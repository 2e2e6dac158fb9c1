"""Self-maps of real intervals, non-expansiveness checks and common fixed points.

Existence of a common fixed point is non-constructive, so the solver is a
pipeline of our own: exact roots for the built-in map kinds, then Picard
iteration, then Mann iteration through the affine structure, then a
refining grid search that always terminates on a compact interval.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .convexity import ConvexStructure, s_point
from .errors import ConstructionError, DomainError, FixedPointNotFoundError, InputError
from .pcm_space import PcmSpace
from .report import Report, Tally

KINDS = ("scale-half", "quad", "affine", "identity", "tabulated")
RANGE_GRID = 11
METHODS = ("exact", "picard", "mann", "grid")


@dataclass(frozen=True)
class SelfMap:
    """A map of the closed interval ``domain`` into itself.

    ``scale-half`` is ``x/2``, ``quad`` is ``x**2/3 + 1/2``, ``affine`` is
    ``a*x + b`` and ``tabulated`` interpolates ``params['xs'] -> params['ys']``
    linearly. The self-map property is checked on an 11-point grid unless
    ``check_range`` is false.
    """

    kind: str
    domain: tuple = (0.0, 1.0)
    params: Mapping = field(default_factory=dict)
    check_range: bool = True

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InputError(f"unknown map kind {self.kind!r}")
        lo, hi = (float(v) for v in self.domain)
        if not lo < hi:
            raise InputError(f"domain needs lo < hi, got {self.domain!r}")
        object.__setattr__(self, "domain", (lo, hi))
        if self.kind == "affine" and not {"a", "b"} <= set(self.params):
            raise InputError("affine map needs params a and b")
        if self.kind == "tabulated":
            xs = np.asarray(self.params.get("xs", ()), dtype=float)
            ys = np.asarray(self.params.get("ys", ()), dtype=float)
            if xs.size < 2 or xs.shape != ys.shape or np.any(np.diff(xs) <= 0):
                raise InputError("tabulated map needs matching xs, ys with xs increasing")
            if xs[0] > lo or xs[-1] < hi:
                raise InputError("tabulated map must cover its whole domain")
        if self.check_range:
            grid = np.linspace(lo, hi, RANGE_GRID)
            img = self(grid)
            bad = np.flatnonzero((img < lo) | (img > hi))
            if bad.size:
                x = float(grid[bad[0]])
                raise ConstructionError(
                    f"{self.kind} map sends {x} to {float(img[bad[0]])}, outside [{lo}, {hi}]",
                    witness=(x,))

    @classmethod
    def scale_half(cls, domain=(0.0, 1.0)) -> "SelfMap":
        return cls("scale-half", domain)

    @classmethod
    def quad(cls, domain=(0.0, 1.0)) -> "SelfMap":
        return cls("quad", domain)

    @classmethod
    def identity(cls, domain=(0.0, 1.0)) -> "SelfMap":
        return cls("identity", domain)

    @classmethod
    def affine(cls, a: float, b: float, domain=(0.0, 1.0), check_range: bool = True) -> "SelfMap":
        return cls("affine", domain, {"a": float(a), "b": float(b)}, check_range)

    @classmethod
    def tabulated(cls, xs, ys, domain=None, check_range: bool = True) -> "SelfMap":
        xs = tuple(float(v) for v in xs)
        ys = tuple(float(v) for v in ys)
        return cls("tabulated", domain or (xs[0], xs[-1]), {"xs": xs, "ys": ys}, check_range)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        if self.kind == "scale-half":
            out = x / 2.0
        elif self.kind == "quad":
            out = x * x / 3.0 + 0.5
        elif self.kind == "affine":
            out = self.params["a"] * x + self.params["b"]
        elif self.kind == "identity":
            out = x.copy()
        else:
            out = np.interp(x, self.params["xs"], self.params["ys"])
        return float(out) if out.ndim == 0 else out

    def contains(self, x) -> bool:
        lo, hi = self.domain
        return bool(lo <= float(x) <= hi)

    def fixed_points(self):
        """Closed-form fixed points inside the domain, ascending.

        Returns ``None`` when every point of the domain is fixed.
        """
        lo, hi = self.domain
        if self.kind == "identity":
            return None
        if self.kind == "scale-half":
            roots = [0.0]
        elif self.kind == "quad":
            # x^2/3 - x + 1/2 = 0
            r = math.sqrt(3.0)
            roots = [(3.0 - r) / 2.0, (3.0 + r) / 2.0]
        elif self.kind == "affine":
            a, b = self.params["a"], self.params["b"]
            if a == 1.0:
                return None if b == 0.0 else []
            roots = [b / (1.0 - a)]
        else:
            roots = _tabulated_roots(np.asarray(self.params["xs"]), np.asarray(self.params["ys"]))
            if roots is None:
                return None
        return sorted(r for r in roots if lo <= r <= hi)


def _tabulated_roots(xs: np.ndarray, ys: np.ndarray):
    g = ys - xs
    if np.all(g == 0):
        return None
    roots = set(float(x) for x in xs[g == 0])
    for i in range(xs.size - 1):
        if g[i] * g[i + 1] < 0:
            roots.add(float(xs[i] - g[i] * (xs[i + 1] - xs[i]) / (g[i + 1] - g[i])))
    return sorted(roots)


@dataclass(frozen=True)
class FixedPointResult:
    point: float
    residual_f: float
    residual_g: float
    iterations: int
    method: str
    converged: bool = True

    @property
    def residual(self) -> float:
        return max(self.residual_f, self.residual_g)


def _samples_in_domain(f: SelfMap, samples) -> np.ndarray:
    pts = np.asarray(list(samples), dtype=float).reshape(-1)
    if pts.size == 0:
        raise InputError("samples must be nonempty")
    lo, hi = f.domain
    if np.any((pts < lo) | (pts > hi)):
        raise InputError(f"samples must lie in the domain [{lo}, {hi}]")
    return pts


def check_nonexpansive(space: PcmSpace, f: SelfMap, samples, t_samples,
                       tol: float = 1e-12) -> Report:
    """``F(fx, fy, eps) >= F(x, y, eps)`` over every sampled ``(x, y, eps)``."""
    pts = _samples_in_domain(f, samples)
    if len(t_samples) == 0:
        raise InputError("t_samples must be nonempty")
    n = pts.size
    X, Y = pts[:, None], pts[None, :]
    fx = f(pts)
    FX, FY = fx[:, None], fx[None, :]
    tally = Tally("nonexpansive", tol=tol)
    for t in t_samples:
        t = space.t_vector(t)
        tally.observe_array(space.F(FX, FY, t) - space.F(X, Y, t),
                            lambda i, t=t: (pts[i // n], pts[i % n], t))
    return Report("nonexpansive", [tally.check()])


def check_pair_condition(space: PcmSpace, f: SelfMap, g: SelfMap, samples, t_samples,
                         tol: float = 1e-12) -> Report:
    """``F(f(x), g(y), t) >= F(x, y, t)`` for sampled ``x != y``, plus the range law.

    ``pair-range`` checks that the overlap of the sampled images ``f(E)`` and
    ``g(E)`` lies inside E.
    """
    if f.domain != g.domain:
        raise InputError("f and g must share a domain")
    pts = _samples_in_domain(f, samples)
    if len(t_samples) == 0:
        raise InputError("t_samples must be nonempty")
    n = pts.size
    X, Y = pts[:, None], pts[None, :]
    FX, GY = f(pts)[:, None], g(pts)[None, :]
    distinct = X != Y
    tally = Tally("pair-condition", tol=tol)
    for t in t_samples:
        t = space.t_vector(t)
        margin = np.where(distinct, space.F(FX, GY, t) - space.F(X, Y, t), np.inf)
        tally.observe_array(margin, lambda i, t=t: (pts[i // n], pts[i % n], t))

    lo, hi = f.domain
    grid = np.linspace(lo, hi, max(n, RANGE_GRID))
    fi, gi = f(grid), g(grid)
    a, b = max(fi.min(), gi.min()), min(fi.max(), gi.max())
    rng = Tally("pair-range")
    rng.observe_bool(a > b or (lo <= a and b <= hi), (float(a), float(b)))
    return Report("pair-condition", [tally.check(), rng.check()])


def _result(f, g, x, iterations, method, tol) -> FixedPointResult:
    rf, rg = abs(f(x) - x), abs(g(x) - x)
    return FixedPointResult(float(x), float(rf), float(rg), iterations, method,
                            bool(max(rf, rg) <= tol))


def _exact(f, g, tol):
    rf, rg = f.fixed_points(), g.fixed_points()
    if rf is None and rg is None:
        return None
    cands = rg if rf is None else rf
    for x in cands:
        res = _result(f, g, x, 0, "exact", tol)
        if res.converged:
            return res
    return None


def _iterate(f, g, step, x0, tol, max_iter, method):
    x = x0
    lo, hi = f.domain
    for k in range(1, max_iter + 1):
        nxt = step(x)
        if not math.isfinite(nxt) or not lo <= nxt <= hi:
            return None
        delta = abs(nxt - x)
        x = nxt
        if delta <= tol / 10.0:
            res = _result(f, g, x, k, method, tol)
            return res if res.converged else None
    return None


def _grid_search(f, g, tol, grid_n, rounds: int = 80) -> FixedPointResult:
    lo, hi = f.domain
    a, b = lo, hi
    best = None
    total = 0
    for _ in range(rounds):
        xs = np.linspace(a, b, grid_n)
        r = np.maximum(np.abs(f(xs) - xs), np.abs(g(xs) - xs))
        i = int(np.argmin(r))  # lowest index wins ties
        total += grid_n
        if best is None or r[i] < best.residual:
            best = _result(f, g, xs[i], total, "grid", tol)
        if best.converged:
            break
        h = (b - a) / (grid_n - 1)
        if h <= np.spacing(max(abs(a), abs(b), 1.0)):
            break
        a, b = max(lo, xs[i] - h), min(hi, xs[i] + h)
    return best


def find_common_fixed_point(space: PcmSpace, f: SelfMap, g: SelfMap, tol: float = 1e-9,
                            max_iter: int = 10**6, mann_mu: float = 0.5, grid_n: int = 10001,
                            check: bool = True, stages=METHODS) -> FixedPointResult:
    """Search for ``x`` with ``|f(x) - x| <= tol`` and ``|g(x) - x| <= tol``.

    Stages run in the order exact, picard, mann, grid; the first to succeed
    wins. When ``check`` is set and the pair condition fails on an 11-point
    grid a warning is issued but the search still runs.
    """
    if f.domain != g.domain:
        raise InputError("f and g must share a domain")
    if not 0.0 < mann_mu < 1.0:
        raise DomainError(f"mann_mu must lie in (0, 1), got {mann_mu!r}")
    if check:
        lo, hi = f.domain
        rep = check_pair_condition(space, f, g, np.linspace(lo, hi, RANGE_GRID), (0.5, 1.0, 2.0))
        if not rep.ok:
            warnings.warn(f"pair condition fails: {rep.failures()[0]}", RuntimeWarning,
                          stacklevel=2)
    x0 = sum(f.domain) / 2.0
    cs = ConvexStructure.affine()
    runners = {
        "exact": lambda: _exact(f, g, tol),
        "picard": lambda: _iterate(f, g, f, x0, tol, max_iter, "picard"),
        "mann": lambda: _iterate(f, g, lambda x: s_point(cs, x, f(x), mann_mu), x0, tol,
                                 max_iter, "mann"),
        "grid": lambda: _grid_search(f, g, tol, grid_n),
    }
    best = None
    for name in stages:
        res = runners[name]()
        if res is None:
            continue
        if res.converged:
            return res
        if best is None or res.residual < best.residual:
            best = res
    raise FixedPointNotFoundError(
        f"no common fixed point within tol {tol}; best residual "
        f"{'n/a' if best is None else best.residual}", best=best)


def verify_fixed_point(space: PcmSpace, f: SelfMap, g: SelfMap, x: float, tol: float) -> bool:
    """Direct residual check, independent of any solver state."""
    if not (f.contains(x) and g.contains(x)):
        raise DomainError(f"{x} lies outside the domain {f.domain}")
    return abs(f(x) - x) <= tol and abs(g(x) - x) <= tol
