"""JSON instance files and DOT export."""

from __future__ import annotations

import json
from typing import Mapping

from .graph import KEYCAST, MULTICAST, Instance, Network

FIELDS = {"vertices", "edges", "terminals", "source", "mode"}
REQUIRED = {"vertices", "edges", "terminals"}


class InstanceFormatError(ValueError):
    """The file is not a well-formed instance description."""


def _strings(value, what) -> list:
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise InstanceFormatError(f"{what} must be a list of strings")
    return value


def parse_instance(data) -> Instance:
    """Build an :class:`Instance` from decoded JSON.

    Raises:
        InstanceFormatError: missing, unknown or mistyped fields.
        GraphError: the graph itself violates the model (cycle, bad endpoint,
            terminal with out-edges).
    """
    if not isinstance(data, Mapping):
        raise InstanceFormatError("top level must be an object")
    unknown = set(data) - FIELDS
    if unknown:
        raise InstanceFormatError(f"unknown fields: {', '.join(sorted(unknown))}")
    missing = REQUIRED - set(data)
    if missing:
        raise InstanceFormatError(f"missing fields: {', '.join(sorted(missing))}")
    vertices = _strings(data["vertices"], "vertices")
    terminals = _strings(data["terminals"], "terminals")
    edges = data["edges"]
    if not isinstance(edges, list) or not all(
        isinstance(e, list) and len(e) == 2 and all(isinstance(x, str) for x in e) for e in edges
    ):
        raise InstanceFormatError("edges must be a list of [tail, head] string pairs")
    source = data.get("source")
    mode = data.get("mode", MULTICAST if source is not None else KEYCAST)
    if mode not in (MULTICAST, KEYCAST):
        raise InstanceFormatError(f"mode must be {MULTICAST!r} or {KEYCAST!r}")
    if source is not None and not isinstance(source, str):
        raise InstanceFormatError("source must be a string")
    if mode == MULTICAST and source is None:
        raise InstanceFormatError("multicast instances need a source")
    if mode == KEYCAST and source is not None:
        raise InstanceFormatError("keycast instances take no source")
    net = Network(vertices, [tuple(e) for e in edges], terminals)
    return Instance(net, mode, source)


def load_instance(path) -> Instance:
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InstanceFormatError(f"invalid JSON: {exc}") from exc
    return parse_instance(data)


def instance_to_dict(inst: Instance) -> dict:
    net = inst.network
    out = {
        "vertices": list(net.vertices),
        "edges": [list(e) for e in net.edges],
        "terminals": [v for v in net.vertices if v in inst.terminals],
        "mode": inst.mode,
    }
    if inst.message_source is not None:
        out["source"] = inst.message_source
    return out


def dumps_instance(inst: Instance) -> str:
    return json.dumps(instance_to_dict(inst), indent=2)


def to_dot(net: Network, highlight=(), labels: Mapping | None = None) -> str:
    """Graphviz source; terminals are boxes, ``highlight`` vertices are red."""
    lines = ["digraph G {", "  rankdir=LR;"]
    for v in net.vertices:
        attrs = []
        if v in net.terminals:
            attrs.append("shape=box")
        if v in highlight:
            attrs.append("color=red")
        lines.append(f'  "{v}"' + (f" [{', '.join(attrs)}]" if attrs else "") + ";")
    for k, (a, b) in enumerate(net.edges):
        label = labels.get(k) if labels else None
        lines.append(f'  "{a}" -> "{b}"' + (f' [label="{label}"]' if label else "") + ";")
    lines.append("}")
    return "\n".join(lines) + "\n"
