"""Space-definition documents (YAML) and their validation.

A document looks like::

    carrier:
      interval: {lo: 0.0, hi: 1.0, samples: 9}   # or naturals: {max: 12} / points: [...]
    cone: {dim: 1, norm: sup}
    tnorm: minimum                              # or product
    kernel:
      family: heaviside
      params: {power: 1.0, scale: 1.0}
      scalarizer: first-component
    structure: affine                           # or none
    grids:
      t_values: [0.5, 1.0, 2.0]
      mu_values: [0.25, 0.5, 0.75]
      lambda_values: [0.2, 0.5, 0.8]
      tolerance: 1.0e-12
    maps:                                       # optional, used by fixed-point
      domain: [0.0, 1.0]
      f: {kind: quad}
      g: {kind: quad}
      tol: 1.0e-9

Every validation failure raises :class:`ConfigError` naming the dotted field
and, when the document came from a file, its line.
"""
from __future__ import annotations

import copy
import math
from dataclasses import dataclass, field
from pathlib import Path

import yaml

from .cone import ConeSpec
from .fixedpoint import SelfMap
from .errors import ConfigError, PCMError
from .pcm_space import (FAMILIES, SCALARIZERS, ConeMetric, FinitePoints, Interval, Kernel,
                        Naturals, PcmSpace)
from .tnorm import TNorm

DEFAULT_GRIDS = {
    "t_values": [0.5, 1.0, 2.0],
    "mu_values": [0.25, 0.5, 0.75],
    "lambda_values": [0.2, 0.5, 0.8],
    "tolerance": 1e-12,
}
TOP_KEYS = ("carrier", "cone", "tnorm", "kernel", "structure", "grids", "maps")
MAP_KINDS = ("scale-half", "quad", "affine", "identity", "tabulated")


class _Lines:
    """Dotted field path -> 1-based line, from a composed YAML node tree."""

    def __init__(self, node=None):
        self.lines: dict[str, int] = {}
        if node is not None:
            self._walk(node, "")

    def _walk(self, node, prefix):
        if isinstance(node, yaml.MappingNode):
            for key, value in node.value:
                path = f"{prefix}.{key.value}" if prefix else str(key.value)
                self.lines[path] = key.start_mark.line + 1
                self._walk(value, path)
        elif isinstance(node, yaml.SequenceNode):
            for i, item in enumerate(node.value):
                path = f"{prefix}[{i}]"
                self.lines[path] = item.start_mark.line + 1
                self._walk(item, path)

    def __call__(self, path: str):
        while path:
            if path in self.lines:
                return self.lines[path]
            cut = max(path.rfind("."), path.rfind("["))
            path = path[:cut] if cut > 0 else ""
        return None


class _Validator:
    def __init__(self, lines: _Lines):
        self.lines = lines

    def fail(self, path, message):
        raise ConfigError(message, field=path, line=self.lines(path))

    def mapping(self, value, path, allowed, required=()):
        if not isinstance(value, dict):
            self.fail(path, "expected a mapping")
        for k in value:
            if k not in allowed:
                self.fail(f"{path}.{k}" if path else str(k), "unknown field")
        for k in required:
            if k not in value:
                self.fail(path or k, f"missing field {k!r}")
        return value

    def number(self, value, path, positive=False):
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            self.fail(path, f"expected a number, got {value!r}")
        value = float(value)
        if not math.isfinite(value):
            self.fail(path, "must be finite")
        if positive and value <= 0:
            self.fail(path, f"must be strictly positive, got {value}")
        return value

    def integer(self, value, path, minimum):
        if isinstance(value, bool) or not isinstance(value, int):
            self.fail(path, f"expected an integer, got {value!r}")
        if value < minimum:
            self.fail(path, f"must be at least {minimum}, got {value}")
        return value

    def numbers(self, value, path, positive=False, nonempty=True):
        if not isinstance(value, list):
            self.fail(path, "expected a list")
        if nonempty and not value:
            self.fail(path, "must not be empty")
        return [self.number(v, f"{path}[{i}]", positive) for i, v in enumerate(value)]

    def choice(self, value, path, options):
        if value not in options:
            self.fail(path, f"must be one of {', '.join(options)}, got {value!r}")
        return value


@dataclass
class SpaceConfig:
    """Normalized space definition; see the module docstring for the schema."""

    carrier: dict
    cone: dict = field(default_factory=lambda: {"dim": 1, "norm": "sup"})
    tnorm: str = "minimum"
    kernel: dict = field(default_factory=lambda: {"family": "heaviside"})
    structure: str = "affine"
    grids: dict = field(default_factory=lambda: dict(DEFAULT_GRIDS))
    maps: dict | None = None

    @classmethod
    def from_mapping(cls, doc, lines: _Lines | None = None) -> "SpaceConfig":
        v = _Validator(lines or _Lines())
        doc = v.mapping(doc, "", TOP_KEYS, required=("carrier", "kernel"))
        carrier = _carrier(v, doc["carrier"])
        cone = v.mapping(doc.get("cone", {}), "cone", ("dim", "norm"))
        cone = {"dim": v.integer(cone.get("dim", 1), "cone.dim", 1),
                "norm": v.choice(cone.get("norm", "sup"), "cone.norm", ("sup", "euclidean"))}
        tnorm = v.choice(doc.get("tnorm", "minimum"), "tnorm", ("minimum", "product"))
        kernel = _kernel(v, doc["kernel"], carrier, cone)
        structure = v.choice(doc.get("structure", "affine"), "structure", ("affine", "none"))
        if structure == "affine" and "naturals" in carrier:
            v.fail("structure", "affine structure needs a real carrier, use none for naturals")
        grids = _grids(v, doc.get("grids", {}))
        maps = None if doc.get("maps") is None else _maps(v, doc["maps"])
        return cls(carrier, cone, tnorm, kernel, structure, grids, maps)

    def to_mapping(self) -> dict:
        out = {k: copy.deepcopy(getattr(self, k)) for k in TOP_KEYS}
        if out["maps"] is None:
            del out["maps"]
        return out

    def build_space(self) -> PcmSpace:
        c = self.carrier
        if "interval" in c:
            carrier = Interval(**c["interval"])
        elif "naturals" in c:
            carrier = Naturals(c["naturals"]["max"])
        else:
            carrier = FinitePoints(tuple(c["points"]))
        cone = ConeSpec(self.cone["dim"], norm=self.cone["norm"])
        k = self.kernel
        metric = None
        if k["family"] == "from-cone-metric":
            metric = ConeMetric.power(k["params"].get("power", 1.0), k["params"].get("scale", 1.0))
        kernel = Kernel(k["family"], dict(k["params"]), k["scalarizer"], metric)
        tn = TNorm.product() if self.tnorm == "product" else TNorm.minimum()
        return PcmSpace(carrier, cone, tn, kernel)

    def build_maps(self) -> tuple[SelfMap, SelfMap]:
        if self.maps is None:
            raise ConfigError("the fixed-point suite needs a maps section", field="maps")
        dom = tuple(self.maps["domain"])
        built = []
        for name in ("f", "g"):
            spec = dict(self.maps[name])
            kind = spec.pop("kind")
            try:
                if kind == "affine":
                    built.append(SelfMap.affine(spec["a"], spec["b"], dom))
                elif kind == "tabulated":
                    built.append(SelfMap.tabulated(spec["xs"], spec["ys"], dom))
                else:
                    built.append(SelfMap(kind, dom))
            except PCMError as exc:
                raise ConfigError(str(exc), field=f"maps.{name}") from exc
        return built[0], built[1]


def _carrier(v, c):
    c = v.mapping(c, "carrier", ("interval", "naturals", "points"))
    if len(c) != 1:
        v.fail("carrier", "give exactly one of interval, naturals, points")
    if "interval" in c:
        iv = v.mapping(c["interval"], "carrier.interval", ("lo", "hi", "samples"),
                       required=("lo", "hi"))
        lo = v.number(iv["lo"], "carrier.interval.lo")
        hi = v.number(iv["hi"], "carrier.interval.hi")
        if not lo < hi:
            v.fail("carrier.interval.hi", f"need lo < hi, got lo={lo}, hi={hi}")
        samples = v.integer(iv.get("samples", 9), "carrier.interval.samples", 2)
        return {"interval": {"lo": lo, "hi": hi, "samples": samples}}
    if "naturals" in c:
        nat = v.mapping(c["naturals"], "carrier.naturals", ("max",), required=("max",))
        return {"naturals": {"max": v.integer(nat["max"], "carrier.naturals.max", 1)}}
    return {"points": v.numbers(c["points"], "carrier.points")}


def _kernel(v, k, carrier, cone):
    k = v.mapping(k, "kernel", ("family", "params", "scalarizer"), required=("family",))
    family = v.choice(k["family"], "kernel.family", FAMILIES)
    if (family == "rational-pair") != ("naturals" in carrier):
        v.fail("kernel.family", "kernel family incompatible with carrier")
    params = v.mapping(k.get("params") or {}, "kernel.params", ("power", "scale"))
    params = {name: v.number(val, f"kernel.params.{name}", positive=True)
              for name, val in sorted(params.items())}
    if family == "rational-pair" and params:
        v.fail("kernel.params", "rational-pair takes no parameters")
    if family == "from-cone-metric" and cone["dim"] != 1:
        v.fail("cone.dim", "from-cone-metric kernels use a scalar metric, need dim 1")
    default = "norm" if family == "exp-ratio" else "first-component"
    scalarizer = v.choice(k.get("scalarizer", default), "kernel.scalarizer", SCALARIZERS)
    return {"family": family, "params": params, "scalarizer": scalarizer}


def _grids(v, g):
    g = v.mapping(g, "grids", tuple(DEFAULT_GRIDS))
    out = {}
    out["t_values"] = v.numbers(g.get("t_values", DEFAULT_GRIDS["t_values"]), "grids.t_values",
                                positive=True)
    out["mu_values"] = v.numbers(g.get("mu_values", DEFAULT_GRIDS["mu_values"]),
                                 "grids.mu_values")
    for i, mu in enumerate(out["mu_values"]):
        if not 0.0 <= mu <= 1.0:
            v.fail(f"grids.mu_values[{i}]", f"must lie in [0, 1], got {mu}")
    out["lambda_values"] = v.numbers(g.get("lambda_values", DEFAULT_GRIDS["lambda_values"]),
                                     "grids.lambda_values")
    for i, lam in enumerate(out["lambda_values"]):
        if not 0.0 < lam < 1.0:
            v.fail(f"grids.lambda_values[{i}]", f"must lie in (0, 1), got {lam}")
    out["tolerance"] = v.number(g.get("tolerance", DEFAULT_GRIDS["tolerance"]), "grids.tolerance",
                                positive=True)
    return out


def _maps(v, m):
    m = v.mapping(m, "maps", ("domain", "f", "g", "tol"), required=("f", "g"))
    dom = v.numbers(m.get("domain", [0.0, 1.0]), "maps.domain")
    if len(dom) != 2 or not dom[0] < dom[1]:
        v.fail("maps.domain", "expected [lo, hi] with lo < hi")
    out = {"domain": dom}
    for name in ("f", "g"):
        path = f"maps.{name}"
        spec = v.mapping(m[name], path, ("kind", "a", "b", "xs", "ys"), required=("kind",))
        kind = v.choice(spec["kind"], f"{path}.kind", MAP_KINDS)
        entry = {"kind": kind}
        if kind == "affine":
            for p in ("a", "b"):
                if p not in spec:
                    v.fail(path, f"affine map needs {p!r}")
                entry[p] = v.number(spec[p], f"{path}.{p}")
        elif kind == "tabulated":
            for p in ("xs", "ys"):
                if p not in spec:
                    v.fail(path, f"tabulated map needs {p!r}")
                entry[p] = v.numbers(spec[p], f"{path}.{p}")
        elif len(spec) > 1:
            v.fail(path, f"{kind} map takes no parameters")
        out[name] = entry
    out["tol"] = v.number(m.get("tol", 1e-9), "maps.tol", positive=True)
    return out


def parse_config(text: str) -> SpaceConfig:
    try:
        node = yaml.compose(text, Loader=yaml.SafeLoader)
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        raise ConfigError(f"not valid YAML: {getattr(exc, 'problem', exc)}", field="document",
                          line=None if mark is None else mark.line + 1) from exc
    if doc is None:
        raise ConfigError("empty document", field="document")
    return SpaceConfig.from_mapping(doc, _Lines(node))


def load_config(path) -> SpaceConfig:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror}", field="config") from exc
    return parse_config(text)


def dump_config(cfg: SpaceConfig) -> str:
    return yaml.safe_dump(cfg.to_mapping(), sort_keys=False)
