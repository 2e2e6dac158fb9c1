"""Menger probabilistic cone metric spaces.

A space couples a carrier set, a cone, a t-norm and a kernel
``F(p, q, t) in [0, 1]`` that plays the role of a distance distribution:
``F(p, q, t)`` is the probability that p and q are closer than ``t``.

Kernel families
---------------
``heaviside``        ``1`` if ``t > d(p, q)`` else ``0`` (a deterministic metric)
``from-cone-metric`` ``1`` if ``t - d(p, q)`` is interior to the cone, for a
                     vector-valued cone metric ``d``
``exp-ratio``        ``exp(-d(p, q) / ||t||)``
``fraction``         ``t / (t + d(p, q))``
``rational-pair``    ``min(p, q) / max(p, q)`` on positive integers, no ``t``

The real-valued families use ``d(p, q) = scale * |p - q| ** power``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

import numpy as np

from .cone import ConeSpec, as_vector
from .errors import ConstructionError, DomainError, InputError, PreconditionError
from .report import Report, Tally, flag_check
from .tnorm import TNorm

FAMILIES = ("heaviside", "exp-ratio", "fraction", "rational-pair", "from-cone-metric")
SCALARIZERS = ("norm", "first-component")


# -- carriers ---------------------------------------------------------------


@dataclass(frozen=True)
class Interval:
    """Closed real interval, sampled at ``samples`` evenly spaced points."""

    lo: float
    hi: float
    samples: int = 9

    def __post_init__(self):
        if not self.lo < self.hi:
            raise InputError(f"interval needs lo < hi, got [{self.lo}, {self.hi}]")
        if self.samples < 2:
            raise InputError("interval needs at least 2 samples")

    def contains(self, p) -> bool:
        return bool(self.lo <= float(p) <= self.hi)

    def points(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.samples)


@dataclass(frozen=True)
class FinitePoints:
    values: tuple

    def __post_init__(self):
        if len(self.values) == 0:
            raise InputError("finite carrier needs at least one point")
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))

    def contains(self, p) -> bool:
        return float(p) in self.values

    def points(self) -> np.ndarray:
        return np.asarray(self.values, dtype=float)


@dataclass(frozen=True)
class Naturals:
    """The integers ``1..max``."""

    max: int

    def __post_init__(self):
        if int(self.max) != self.max or self.max < 1:
            raise InputError(f"naturals carrier needs a positive integer max, got {self.max!r}")

    def contains(self, p) -> bool:
        p = float(p)
        return p == int(p) and 1 <= p <= self.max

    def points(self) -> np.ndarray:
        return np.arange(1, int(self.max) + 1, dtype=float)


# -- metrics and kernels ----------------------------------------------------


@dataclass(frozen=True)
class ConeMetric:
    """A cone-valued distance ``d(x, y)`` with values in R^dim.

    ``func`` must broadcast over numpy arrays. For ``dim > 1`` it returns an
    array with a trailing axis of length ``dim``.
    """

    func: Callable
    dim: int = 1
    name: str = "custom"

    @classmethod
    def power(cls, power: float = 1.0, scale: float = 1.0) -> "ConeMetric":
        def d(x, y):
            return scale * np.abs(np.subtract(x, y)) ** power

        name = "abs" if (power, scale) == (1.0, 1.0) else f"{scale}*|x-y|^{power}"
        return cls(d, 1, name)

    def __call__(self, x, y) -> np.ndarray:
        out = np.asarray(self.func(x, y), dtype=float)
        if self.dim == 1 and out.shape == np.broadcast(np.asarray(x), np.asarray(y)).shape:
            out = out[..., None]
        return out


@dataclass(frozen=True)
class Kernel:
    family: str
    params: Mapping = field(default_factory=dict)
    scalarizer: str | None = None
    metric: ConeMetric | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InputError(f"unknown kernel family {self.family!r}")
        if self.scalarizer is None:
            object.__setattr__(
                self, "scalarizer", "norm" if self.family == "exp-ratio" else "first-component"
            )
        if self.scalarizer not in SCALARIZERS:
            raise InputError(f"unknown scalarizer {self.scalarizer!r}")
        if self.family == "from-cone-metric" and self.metric is None:
            raise InputError("from-cone-metric kernel needs a metric")
        if self.metric is None and self.family != "rational-pair":
            p = dict(self.params)
            object.__setattr__(
                self, "metric",
                ConeMetric.power(float(p.get("power", 1.0)), float(p.get("scale", 1.0))),
            )

    @classmethod
    def heaviside(cls, power: float = 1.0, scale: float = 1.0) -> "Kernel":
        return cls("heaviside", {"power": power, "scale": scale})

    @classmethod
    def fraction(cls, power: float = 1.0, scale: float = 1.0) -> "Kernel":
        return cls("fraction", {"power": power, "scale": scale})

    @classmethod
    def exp_ratio(cls, power: float = 1.0, scale: float = 1.0) -> "Kernel":
        return cls("exp-ratio", {"power": power, "scale": scale})

    @classmethod
    def rational_pair(cls) -> "Kernel":
        return cls("rational-pair")

    @classmethod
    def from_metric(cls, metric: ConeMetric) -> "Kernel":
        return cls("from-cone-metric", metric=metric)

    def scalarize(self, cone: ConeSpec, t: np.ndarray) -> float:
        if self.scalarizer == "norm":
            return cone.norm_of(t)
        return float(t[0])

    def values(self, p, q, t: np.ndarray, cone: ConeSpec) -> np.ndarray:
        """Broadcasting evaluation at a single cone vector ``t`` (unchecked)."""
        p = np.asarray(p, dtype=float)
        q = np.asarray(q, dtype=float)
        if self.family == "rational-pair":
            return np.minimum(p, q) / np.maximum(p, q)
        d = self.metric(p, q)
        if self.family == "from-cone-metric":
            return np.all(t - d > 0, axis=-1).astype(float)
        d = d[..., 0]
        tau = self.scalarize(cone, t)
        if self.family == "heaviside":
            return (tau - d > 0).astype(float)
        if self.family == "fraction":
            return tau / (tau + d)
        return np.exp(-d / tau)


# -- the space --------------------------------------------------------------


@dataclass(frozen=True)
class PcmSpace:
    carrier: Interval | FinitePoints | Naturals
    cone: ConeSpec
    tnorm: TNorm
    kernel: Kernel

    def __post_init__(self):
        if self.kernel.family == "rational-pair" and not isinstance(self.carrier, Naturals):
            raise InputError("kernel family incompatible with carrier: rational-pair needs naturals")
        m = self.kernel.metric
        if self.kernel.family == "from-cone-metric" and m.dim != self.cone.dim:
            raise InputError("cone metric dimension must equal cone dimension")

    def t_vector(self, t) -> np.ndarray:
        """Validate ``t`` as an interior cone vector (scalars broadcast)."""
        v = self.cone.vector(t)
        if not self.cone.in_interior(v):
            raise DomainError(f"t = {v} is not interior to the cone")
        return v

    def F(self, p, q, t) -> np.ndarray:
        """Unchecked broadcasting kernel evaluation; ``t`` is a cone vector."""
        return self.kernel.values(p, q, t, self.cone)

    def eval_kernel(self, p, q, t) -> float:
        t = self.t_vector(t)
        for x in (p, q):
            if not self.carrier.contains(x):
                raise InputError(f"point {x!r} is outside the carrier")
        return float(self.F(float(p), float(q), t))

    def points(self) -> np.ndarray:
        return self.carrier.points()


def _check_points(space: PcmSpace, points) -> np.ndarray:
    pts = np.asarray(list(points), dtype=float).reshape(-1)
    if pts.size == 0:
        raise InputError("point samples must be nonempty")
    for p in pts:
        if not space.carrier.contains(p):
            raise InputError(f"point {p!r} is outside the carrier")
    return pts


def check_pcm_axioms(space: PcmSpace, point_samples, t_samples, tol: float = 1e-12) -> Report:
    """Sampled verification of PCM1-PCM5 plus distribution-function monotonicity.

    Hard checks (pass/fail):

    * ``PCM1``  every pair's profile is positive somewhere on the t-grid
    * ``PCM2``  ``p == q`` gives value 1 at every t
    * ``PCM3``  exact symmetry
    * ``PCM4``  ``F(p,q,t) = F(q,r,s) = 1`` implies ``F(p,r,t+s) = 1``
    * ``PCM5``  ``F(p,r,t+s) >= F(p,q,t) * F(q,r,s)`` over every 5-tuple
    * ``DF-nondecreasing`` ``t1 ⪯ t2`` implies ``F(.,.,t1) <= F(.,.,t2)``

    Soft flags (pass/degenerate): ``PCM1-pointwise`` marks a zero value at an
    individual t (step kernels do this below the distance) and
    ``PCM2-converse`` marks distinct points whose value reaches ``1 - tol``.
    """
    pts = _check_points(space, point_samples)
    if np.unique(pts).size < 2:
        raise PreconditionError("need at least two distinct points")
    if len(t_samples) == 0:
        raise InputError("t samples must be nonempty")
    ts = [space.t_vector(t) for t in t_samples]
    n, m = pts.size, len(ts)
    P, Q = pts[:, None], pts[None, :]
    M = np.stack([space.F(P, Q, t) for t in ts])  # (m, n, n)
    same = P == Q

    pcm1 = Tally("PCM1", strict=True)
    pcm1.observe_array(M.max(axis=0), lambda i: (pts[i // n], pts[i % n]))
    zero = np.argwhere(M <= 0)
    flag1 = None if zero.size == 0 else (pts[zero[0][1]], pts[zero[0][2]], ts[zero[0][0]])

    def at(i, shape=(m, n, n)):
        k, a, b = np.unravel_index(i, shape)
        return (pts[a], pts[b], ts[k])

    pcm2 = Tally("PCM2", tol=tol)
    pcm2.observe_array(np.where(same, -np.abs(M - 1.0), 0.0), at)
    near = np.argwhere((M >= 1.0 - tol) & ~same)
    flag2 = None if near.size == 0 else at(np.ravel_multi_index(near[0], (m, n, n)))

    pcm3 = Tally("PCM3")
    pcm3.observe_array(-np.abs(M - M.transpose(0, 2, 1)), at)

    pcm4 = Tally("PCM4", tol=tol)
    pcm5 = Tally("PCM5", tol=tol)
    for (i, t), (j, s) in itertools.product(enumerate(ts), repeat=2):
        far = space.F(P, Q, t + s)  # far[p, r]
        left = M[i][:, :, None]  # F(p, q, t) over [p, q, r]
        right = M[j][None, :, :]  # F(q, r, s)
        lhs = np.broadcast_to(far[:, None, :], (n, n, n))

        def tuple5(flat, t=t, s=s):
            a, b, c = np.unravel_index(flat, (n, n, n))
            return (pts[a], pts[b], pts[c], t, s)

        ones = (left >= 1.0) & (right >= 1.0)
        pcm4.observe_array(np.where(ones, lhs - 1.0, 0.0), tuple5)
        pcm5.observe_array(lhs - space.tnorm.combine(left, right), tuple5)

    mono = Tally("DF-nondecreasing", tol=tol)
    for i, j in itertools.permutations(range(m), 2):
        if space.cone.leq(ts[i], ts[j]):
            mono.observe_array(M[j] - M[i], lambda f, i=i, j=j: (
                pts[f // n], pts[f % n], ts[i], ts[j]))

    return Report("pcm-axioms", [
        pcm1.check(), pcm2.check(), pcm3.check(), pcm4.check(), pcm5.check(), mono.check(),
        flag_check("PCM1-pointwise", flag1, M.size),
        flag_check("PCM2-converse", flag2, M.size),
    ])


# -- cone metrics -----------------------------------------------------------


def check_cone_metric_axioms(d: ConeMetric, points, cone: ConeSpec | None = None,
                             tol: float = 1e-12) -> Report:
    """CM1-CM4 on every pair and triple of ``points``.

    The CM4 witness is ``(x, z, y)`` in path order: ``d(x, y)`` exceeds
    ``d(x, z) + d(z, y)``.
    """
    cone = cone or ConeSpec(d.dim)
    pts = np.asarray(list(points), dtype=float).reshape(-1)
    if pts.size == 0:
        raise InputError("need at least one point")
    D = d(pts[:, None], pts[None, :])  # (n, n, dim)
    n = pts.size
    pair = lambda i: (pts[i // n], pts[i % n])

    cm1 = Tally("CM1", tol=tol)
    cm1.observe_array(D.min(axis=-1), pair)
    cm2 = Tally("CM2")
    same = pts[:, None] == pts[None, :]
    is_zero = np.all(D == 0, axis=-1)
    cm2.observe_array(np.where(same == is_zero, 0.0, -1.0), pair)
    cm3 = Tally("CM3")
    cm3.observe_array(-np.abs(D - D.transpose(1, 0, 2)).max(axis=-1), pair)

    cm4 = Tally("CM4", tol=tol)
    # slack[x, z, y] = min component of d(x,z) + d(z,y) - d(x,y)
    slack = (D[:, :, None, :] + D[None, :, :, :] - D[:, None, :, :]).min(axis=-1)

    def path(i):
        a, b, c = np.unravel_index(i, (n, n, n))
        return (pts[a], pts[b], pts[c])

    cm4.observe_array(slack, path)
    return Report("cone-metric-axioms", [cm1.check(), cm2.check(), cm3.check(), cm4.check()])


def from_cone_metric(d: ConeMetric, carrier, cone: ConeSpec | None = None,
                     tnorm: TNorm | None = None, samples=None) -> PcmSpace:
    """Build the step-kernel space ``F(p, q, t) = H(t - d(p, q))``.

    The cone metric axioms are swept over ``samples`` (default: the carrier's
    sample points); a failure raises :class:`ConstructionError` with the
    witness attached.
    """
    cone = cone or ConeSpec(d.dim)
    pts = carrier.points() if samples is None else samples
    report = check_cone_metric_axioms(d, pts, cone)
    for c in report.failures():
        raise ConstructionError(f"{c.axiom_id} fails, witness {c.witness}", witness=c.witness)
    return PcmSpace(carrier, cone, tnorm or TNorm.minimum(), Kernel.from_metric(d))


# -- the spaces from the worked examples ------------------------------------


def heaviside_space(lo: float = 0.0, hi: float = 1.0, samples: int = 9) -> PcmSpace:
    """``H(t - |x - y|)`` on a real interval with the minimum t-norm."""
    return PcmSpace(Interval(lo, hi, samples), ConeSpec(1), TNorm.minimum(), Kernel.heaviside())


def fraction_space(lo: float = 0.0, hi: float = 1.0, samples: int = 9) -> PcmSpace:
    """``t / (t + |x - y|)`` on a real interval with the minimum t-norm."""
    return PcmSpace(Interval(lo, hi, samples), ConeSpec(1), TNorm.minimum(), Kernel.fraction())


def exp_ratio_space(lo: float = 0.0, hi: float = 1.0, samples: int = 9,
                    dim: int = 2, norm: str = "sup") -> PcmSpace:
    """``exp(-|x - y| / ||t||)`` with t in the orthant of R^dim and the product t-norm."""
    return PcmSpace(Interval(lo, hi, samples), ConeSpec(dim, norm=norm), TNorm.product(),
                    Kernel.exp_ratio())


def rational_pair_space(n_max: int = 12) -> PcmSpace:
    """``min(x, y) / max(x, y)`` on ``1..n_max`` with the product t-norm."""
    return PcmSpace(Naturals(n_max), ConeSpec(1), TNorm.product(), Kernel.rational_pair())
