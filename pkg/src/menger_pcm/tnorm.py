"""Continuous t-norms on [0, 1] and the solvability facts used in proofs.

Two t-norms are built in, ``a*b = ab`` and ``a*b = min(a, b)``. A custom
operation can be wrapped with :meth:`TNorm.custom`; it must accept numpy
arrays so sweeps stay vectorized.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import DomainError, InputError, PreconditionError
from .report import Report, Tally

_ONE_BELOW = 1.0 - np.finfo(float).eps


@dataclass(frozen=True)
class TNorm:
    kind: str
    op: Callable | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.kind not in ("product", "minimum") and self.op is None:
            raise InputError(f"unknown t-norm {self.kind!r}")

    @classmethod
    def product(cls) -> "TNorm":
        return cls("product")

    @classmethod
    def minimum(cls) -> "TNorm":
        return cls("minimum")

    @classmethod
    def custom(cls, name: str, op: Callable) -> "TNorm":
        return cls(name, op)

    def combine(self, a, b):
        """Unchecked, broadcasting evaluation used inside sweeps."""
        if self.op is not None:
            return self.op(a, b)
        if self.kind == "product":
            return np.multiply(a, b)
        return np.minimum(a, b)

    def apply(self, a: float, b: float) -> float:
        for v in (a, b):
            if not 0.0 <= v <= 1.0:
                raise DomainError(f"t-norm argument {v!r} outside [0, 1]")
        return float(self.combine(float(a), float(b)))


def check_tnorm_axioms(t: TNorm, grid: Sequence[float], tol: float = 1e-15) -> Report:
    """Commutativity, associativity, monotonicity, unit law and closure on a grid.

    Associativity is compared within ``tol`` (product rounds); everything
    else is exact.
    """
    if len(grid) == 0:
        raise InputError("grid must be nonempty")
    g = np.unique(np.asarray(grid, dtype=float))
    if np.any((g < 0) | (g > 1)):
        raise DomainError("grid values must lie in [0, 1]")
    n = g.size

    def tup(shape):
        return lambda i: tuple(g[k] for k in np.unravel_index(i, shape))

    a, b = np.meshgrid(g, g, indexing="ij")
    ab = t.combine(a, b)

    closure = Tally("closure")
    closure.observe_array(np.minimum(ab, 1.0 - ab), tup((n, n)))

    comm = Tally("commutativity")
    comm.observe_array(-np.abs(ab - t.combine(b, a)), tup((n, n)))

    x, y, z = np.meshgrid(g, g, g, indexing="ij")
    lhs = t.combine(x, t.combine(y, z))
    rhs = t.combine(t.combine(x, y), z)
    assoc = Tally("associativity", tol=tol)
    assoc.observe_array(-np.abs(lhs - rhs), tup((n, n, n)))

    # on a sorted grid, monotone in each argument <=> adjacent steps never decrease
    mono = Tally("monotonicity")
    for di, dj in ((1, 0), (0, 1)):
        step = ab[di:, dj:] - ab[: n - di, : n - dj]

        def witness(i, shape=step.shape, di=di, dj=dj):
            r, c = np.unravel_index(i, shape)
            return (g[r], g[c], g[r + di], g[c + dj])

        mono.observe_array(step, witness)

    unit = Tally("unit")
    for v in g:
        unit.observe(-abs(t.combine(v, 1.0) - v), (v,))
        unit.observe(-abs(t.combine(1.0, v) - v), (v,))

    return Report("tnorm-axioms", [comm.check(), assoc.check(), mono.check(),
                                   unit.check(), closure.check()])


def _bisect_least(pred, lo=0.0, hi=1.0, iters=200):
    """Smallest-ish x in (lo, hi] with pred(x), for pred monotone in x."""
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        if pred(mid):
            hi = mid
        else:
            lo = mid
    return hi


def _nudge_up(x, pred):
    while not pred(x) and x < 1.0:
        x = float(np.nextafter(x, 2.0))
    return x


def find_companion(t: TNorm, r1: float, r2: float) -> float:
    """Some r3 in (0, 1) with ``r1 * r3 >= r2``, given 1 > r1 > r2 > 0."""
    if not 0.0 < r2 < r1 < 1.0:
        raise PreconditionError(f"need 1 > r1 > r2 > 0, got r1={r1!r}, r2={r2!r}")
    ok = lambda r3: t.combine(r1, r3) >= r2
    if t.kind == "minimum" and t.op is None:
        return float(r2)
    if t.kind == "product" and t.op is None:
        return _nudge_up(min(_ONE_BELOW, r2 / r1), ok)
    return _bisect_least(ok)


def find_idempotent_bound(t: TNorm, r4: float) -> float:
    """Some r5 in (0, 1) with ``r5 * r5 >= r4``."""
    if not 0.0 < r4 < 1.0:
        raise DomainError(f"r4 must lie in (0, 1), got {r4!r}")
    ok = lambda r5: t.combine(r5, r5) >= r4
    if t.kind == "minimum" and t.op is None:
        return float(r4)
    if t.kind == "product" and t.op is None:
        # sqrt can round low (sqrt(0.49)**2 < 0.49), so step up to the next float
        return _nudge_up(float(np.sqrt(r4)), ok)
    return _bisect_least(ok)
