"""Nonnegative-orthant cones in R^n and the orders they induce.

Given a cone P, ``x ⪯ y`` means ``y - x`` lies in P and ``x ≪ y`` means it
lies in the interior of P. Vectors are plain numpy arrays; for ``dim == 1``
bare floats are accepted everywhere.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionError, InputError, PreconditionError
from .report import Report, Tally

KINDS = ("nonnegative-orthant",)
NORMS = ("sup", "euclidean")


def as_vector(v, dim: int | None = None) -> np.ndarray:
    """Coerce ``v`` to a finite 1-d float array, optionally checking ``dim``."""
    arr = np.atleast_1d(np.asarray(v, dtype=float))
    if arr.ndim != 1:
        raise InputError(f"expected a vector, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InputError(f"vector has non-finite components: {arr}")
    if dim is not None and arr.size != dim:
        raise DimensionError(f"vector of dim {arr.size} used with cone of dim {dim}")
    return arr


class Order(enum.IntEnum):
    """Strongest relation of x to y. Larger members imply smaller ones."""

    NOT_COMPARABLE = 0
    LEQ = 1
    LT = 2
    LL = 3


@dataclass(frozen=True)
class ConeSpec:
    dim: int = 1
    kind: str = "nonnegative-orthant"
    norm: str = "sup"

    def __post_init__(self):
        if not isinstance(self.dim, (int, np.integer)) or self.dim < 1:
            raise InputError(f"cone dim must be a positive integer, got {self.dim!r}")
        if self.kind not in KINDS:
            raise InputError(f"unknown cone kind {self.kind!r}")
        if self.norm not in NORMS:
            raise InputError(f"unknown norm {self.norm!r}")

    @property
    def zero(self) -> np.ndarray:
        return np.zeros(self.dim)

    def vector(self, v) -> np.ndarray:
        """Vector of this cone's dimension; a scalar ``s`` means ``s * (1, ..., 1)``."""
        arr = np.atleast_1d(np.asarray(v, dtype=float))
        if arr.size == 1 and self.dim > 1:
            arr = np.full(self.dim, float(arr[0]))
        return as_vector(arr, self.dim)

    def norm_of(self, v) -> float:
        v = as_vector(v, self.dim)
        if self.norm == "sup":
            return float(np.max(np.abs(v)))
        return float(np.linalg.norm(v))

    def contains(self, v) -> bool:
        return bool(np.all(as_vector(v, self.dim) >= 0))

    def in_interior(self, v) -> bool:
        # strict, no epsilon: callers apply their own tolerance
        return bool(np.all(as_vector(v, self.dim) > 0))

    def order(self, x, y) -> Order:
        x = as_vector(x, self.dim)
        y = as_vector(y, self.dim)
        diff = y - x
        if np.all(diff > 0):
            return Order.LL
        if np.all(diff >= 0):
            return Order.LT if np.any(diff != 0) else Order.LEQ
        return Order.NOT_COMPARABLE

    def leq(self, x, y) -> bool:
        return self.order(x, y) >= Order.LEQ

    def ll(self, x, y) -> bool:
        return self.order(x, y) == Order.LL


def check_cone_axioms(c: ConeSpec, samples: Sequence, scalars: Iterable[float]) -> Report:
    """Sampled check of closure (P2), pointedness (P3) and the interior laws.

    ``samples`` are vectors claimed to lie in P. P3 fails on a nonzero sample
    ``x`` whose negation is also claimed (or actually lies) in P.
    """
    if len(samples) == 0:
        raise InputError("check_cone_axioms needs at least one sample")
    vs = [as_vector(s, c.dim) for s in samples]
    scalars = [float(a) for a in scalars]
    if any(a < 0 for a in scalars):
        raise PreconditionError("scalars must be nonnegative")
    claimed = {tuple(v) for v in vs}

    p2 = Tally("P2")
    for x, y in itertools.product(vs, repeat=2):
        for a, b in itertools.product(scalars, repeat=2):
            comb = a * x + b * y
            p2.observe(np.min(comb), (x, y, a, b))

    p3 = Tally("P3")
    for x in vs:
        if not np.any(x):
            p3.observe_bool(True, None)
            continue
        neg = -x
        p3.observe_bool(not (tuple(neg) in claimed or c.contains(neg)), x)

    interior = [v for v in vs if c.in_interior(v)] + [np.ones(c.dim)]
    members = [v for v in vs if c.contains(v)]
    add = Tally("P+IntP", strict=True)
    for p in members:
        for q in interior:
            add.observe(np.min(p + q), (p, q))
    scale = Tally("aIntP", strict=True)
    for a in scalars:
        if a == 0:
            continue
        for q in interior:
            scale.observe(np.min(a * q), (a, q))
    return Report("cone-axioms", [p2.check(), p3.check(), add.check(), scale.check()])


def normal_constant_estimate(c: ConeSpec, pairs: Sequence[tuple]) -> float:
    """Lower bound on the normal constant: max of ||x|| / ||y|| over 0 ⪯ x ⪯ y."""
    if not pairs:
        raise InputError("need at least one pair")
    best = 0.0
    for x, y in pairs:
        x = as_vector(x, c.dim)
        y = as_vector(y, c.dim)
        if not (c.contains(x) and c.leq(x, y)):
            raise PreconditionError(f"pair violates 0 ⪯ x ⪯ y: {x}, {y}")
        ny = c.norm_of(y)
        if ny == 0:
            raise PreconditionError("y must be nonzero")
        best = max(best, c.norm_of(x) / ny)
    return best


def common_lower_interior(c: ConeSpec, c1, c2) -> np.ndarray:
    """An interior point below both ``c1`` and ``c2``: half their componentwise min."""
    c1 = as_vector(c1, c.dim)
    c2 = as_vector(c2, c.dim)
    if not (c.in_interior(c1) and c.in_interior(c2)):
        raise PreconditionError("both inputs must lie in the interior of the cone")
    return np.minimum(c1, c2) / 2.0
