"""Instance documents: the JSON surface of the toolkit.

Documents are plain JSON with integer-only numerics; infinities appear
only as the string sentinel "inf".  Every structure under test is
described declaratively and rebuilt here; names let queries and maps
refer to structures.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

from . import lineset as ls
from .backends import (
    ExplicitBackend,
    FiniteBackend,
    FromASRBackend,
    LSRBackend,
    MetricLineBackend,
    PartitionCoarseBackend,
    TopoTraceBackend,
)
from .dimension import Cover
from .maps import ExplicitMap, LineMap
from .setcore import Family, Universe
from .structures import (
    ExplicitASR,
    ExplicitCoarse,
    ExplicitLSR,
    ExplicitNearness,
    ExplicitProximity,
    discrete_closure,
)

SCHEMA_VERSION = 1


class SchemaError(ValueError):
    """The document does not follow the instance schema."""


@dataclass
class InstanceDocument:
    space: dict
    structures: list[dict] = field(default_factory=list)
    covers: list[dict] = field(default_factory=list)
    maps: list[dict] = field(default_factory=list)
    queries: dict = field(default_factory=dict)
    budgets: dict = field(default_factory=dict)

    @property
    def scale_budget(self) -> int:
        return int(self.budgets.get("scale", 32))

    @property
    def window(self) -> int:
        return int(self.budgets.get("window", 10**5))

    @property
    def asdim_windows(self) -> list[int]:
        return [int(n) for n in self.budgets.get("asdim_windows", [16, 32, 64, 128, 256, 512])]

    def universe(self) -> Universe:
        if self.space.get("kind") != "finite":
            raise SchemaError("document space is not a finite universe")
        return Universe(tuple(self.space["elements"]))

    def structure(self, name: str) -> dict:
        for s in self.structures:
            if s.get("name") == name:
                return s
        raise SchemaError(f"no structure named {name!r}")


def load_document(text: str) -> InstanceDocument:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"not valid JSON: {e}") from None
    if not isinstance(raw, dict):
        raise SchemaError("document must be a JSON object")
    if raw.get("version") != SCHEMA_VERSION:
        raise SchemaError(f"unsupported document version {raw.get('version')!r}")
    space = raw.get("space")
    if not isinstance(space, dict) or space.get("kind") not in ("finite", "nat-line"):
        raise SchemaError("space must be finite (with elements) or nat-line")
    if space["kind"] == "finite":
        elements = space.get("elements")
        if (
            not isinstance(elements, list)
            or not elements
            or not all(isinstance(x, str) for x in elements)
        ):
            raise SchemaError("finite space needs a nonempty list of string elements")
    doc = InstanceDocument(
        space=space,
        structures=raw.get("structures", []),
        covers=raw.get("covers", []),
        maps=raw.get("maps", []),
        queries=raw.get("queries", {}),
        budgets=raw.get("budgets", {}),
    )
    for s in doc.structures:
        if not isinstance(s, dict) or "type" not in s:
            raise SchemaError("each structure needs a type")
    _check_integers_only(raw)
    return doc


def _check_integers_only(node: Any) -> None:
    if isinstance(node, float):
        raise SchemaError("documents are integer-only; floats are not allowed")
    if isinstance(node, dict):
        for v in node.values():
            _check_integers_only(v)
    elif isinstance(node, list):
        for v in node:
            _check_integers_only(v)


# ---------------------------------------------------------------------------
# Structure builders
# ---------------------------------------------------------------------------


def _subset(universe: Universe, labels: list[str]):
    return universe.subset(labels)


def _family(universe: Universe, subsets: list[list[str]]) -> Family:
    return universe.family([_subset(universe, s) for s in subsets])


def build_backend(doc: InstanceDocument, desc: dict) -> LSRBackend:
    kind = desc["type"]
    if kind == "lsr-explicit":
        universe = doc.universe()
        gens = [_family(universe, fam) for fam in desc.get("generators", [])]
        return ExplicitBackend(ExplicitLSR.from_generators(universe, gens))
    if kind == "partition":
        return PartitionCoarseBackend.from_labels(doc.universe(), desc["blocks"])
    if kind == "from-asr":
        return FromASRBackend(build_asr(doc, desc))
    if kind == "metric-line":
        return MetricLineBackend(
            scale_budget=doc.scale_budget, window=doc.window
        )
    if kind == "topo-trace":
        return TopoTraceBackend(window=doc.window)
    raise SchemaError(f"not a backend structure: {kind!r}")


def build_asr(doc: InstanceDocument, desc: dict) -> ExplicitASR:
    universe = doc.universe()
    blocks = [
        [_subset(universe, labels).mask for labels in block] for block in desc["blocks"]
    ]
    return ExplicitASR.from_blocks(universe, blocks)


def build_nearness(doc: InstanceDocument, desc: dict) -> ExplicitNearness:
    universe = doc.universe()
    closure = desc.get("closure", "discrete")
    if closure == "discrete":
        table = discrete_closure(universe)
    else:
        table = tuple(
            _subset(universe, closure[str(s)]).mask for s in range(1 << universe.size)
        )
    keys = [_family(universe, fam).mask_key() for fam in desc["near"]]
    return ExplicitNearness(universe, keys, table)


def build_proximity(doc: InstanceDocument, desc: dict) -> ExplicitProximity:
    universe = doc.universe()
    if desc.get("rule") == "discrete":
        return ExplicitProximity.discrete(universe)
    pairs = {
        (_subset(universe, a).mask, _subset(universe, b).mask)
        for a, b in desc["pairs"]
    }
    return ExplicitProximity.from_predicate(
        universe, lambda x, y: (x, y) in pairs or (y, x) in pairs
    )


def build_coarse(doc: InstanceDocument, desc: dict) -> ExplicitCoarse:
    universe = doc.universe()
    pair_lists = [
        [(x, y) for x, y in gen] for gen in desc.get("generators", [])
    ]
    return ExplicitCoarse.from_pairs(universe, pair_lists)


def build_cover(doc: InstanceDocument, desc: dict) -> Cover:
    if "rule" in desc:
        return Cover.from_rule(desc["rule"])
    if "members" in desc:
        universe = doc.universe()
        return Cover.explicit([_subset(universe, s) for s in desc["members"]])
    if "line_members" in desc:
        return Cover.of_line_sets([ls.lineset_from_json(s) for s in desc["line_members"]])
    raise SchemaError("cover needs a rule, members, or line_members")


def build_map(doc: InstanceDocument, desc: dict):
    if "rule" in desc:
        return _line_map(desc)
    domain = build_backend(doc, doc.structure(desc["domain"]))
    codomain = build_backend(doc, doc.structure(desc["codomain"]))
    if not isinstance(domain, FiniteBackend) or not isinstance(codomain, FiniteBackend):
        raise SchemaError("table maps need finite structures")
    return ExplicitMap.from_labels(domain, codomain, desc["table"])


def _line_map(desc: dict) -> LineMap:
    rule = desc["rule"]
    if rule == "affine":
        return LineMap.affine(int(desc["a"]), int(desc.get("b", 0)))
    if rule == "floor-div":
        return LineMap.floor_div(int(desc["d"]))
    raise SchemaError(f"unknown map rule {rule!r}")


def build_line_sets(descs: list[dict]) -> list[ls.LineSet]:
    return [ls.lineset_from_json(d) for d in descs]
