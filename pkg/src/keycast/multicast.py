"""Secure multicast code synthesis.

The single-terminal scheme walks the chain of cut vertices between source and
terminal. Each protected cut receives the message masked by a chain of
one-time pads whose pairwise sums hide it; each block between consecutive
cuts is crossed either on a single edge or on two vertex-disjoint paths
carrying ``m + r`` and ``r``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

from .altpath import AltPathWitness, InvalidWitness, extract_witness, is_protected, validate_witness
from .graph import (
    MULTICAST,
    KEYCAST,
    Block,
    Instance,
    InternalInvariant,
    Network,
    NoPath,
    block_decomposition,
    cut_vertices,
    shortest_path,
)
from .netcode import MESSAGE, SESSION_RANDOM, CodeBuilder, LinearCode, verify


class NoAuxPath(InternalInvariant):
    pass


class NoAvoidingPath(NoPath):
    def __init__(self, terminal):
        super().__init__(f"no path to {terminal!r} avoiding the multicast source")
        self.terminal = terminal


class SynthesisDefect(InternalInvariant):
    """A synthesized code failed its own verification."""

    def __init__(self, report):
        super().__init__("synthesized code failed verification:\n" + report.summary())
        self.report = report


@dataclass(frozen=True)
class Infeasible:
    """Negative verdict with the structural reason behind it."""

    reason: str
    cut: object = None
    terminal: object = None
    source: object = None
    detail: dict = field(default_factory=dict)

    def __bool__(self):
        return False

    def __str__(self):
        parts = [self.reason]
        if self.cut is not None:
            parts.append(f"cut vertex {self.cut!r} unprotected for ({self.source!r}, {self.terminal!r})")
        return ": ".join(parts)


class GadgetResult(NamedTuple):
    handle: int  # m + alpha + a_ell, computable at u
    last_pad: int  # a_ell, delivered to the witness terminal
    pads: tuple


def padding_gadget(
    builder: CodeBuilder,
    witness: AltPathWitness,
    u,
    carrier: int,
    beta: int,
    tag: str = "",
    session=None,
) -> GadgetResult:
    """Emit the pad chain protecting ``u``.

    ``carrier`` (m + alpha + beta) must be available at the first collider and
    ``beta`` at ``u``. Collider ``y_1`` sends ``carrier + a_1`` to ``u`` and
    collider ``y_k`` sends ``a_{k-1} + a_k``, so ``u`` can add everything up to
    ``m + alpha + a_ell`` while its view stays independent of ``m``.
    """
    net = builder.net
    w = witness
    try:
        validate_witness(net, w.seg_start[0], w.seg_end[-1], u, w)
    except (IndexError, KeyError) as exc:
        raise InvalidWitness(str(exc)) from exc
    pads = []
    for k, x in enumerate(w.pads, start=1):
        pads.append(builder.fresh(f"a[{tag},{k}]" if tag else f"a[{k}]", x, SESSION_RANDOM, session))
    for k in range(w.ell):
        builder.send(w.seg_down[k], pads[k])
        if k < w.ell - 1:
            builder.send(w.seg_up[k], pads[k])
    builder.send(w.seg_end, pads[-1])
    builder.send_edge(net.edge_between(w.colliders[0], u), carrier ^ pads[0])
    for k in range(1, w.ell):
        builder.send_edge(net.edge_between(w.colliders[k], u), pads[k - 1] ^ pads[k])
    return GadgetResult(carrier ^ beta ^ pads[-1], pads[-1], tuple(pads))


def build_r_paths(net: Network, block: Block, y1) -> tuple[tuple, tuple]:
    """Vertex-disjoint paths across a type-2 block, the first through ``y1``."""
    if block.kind != "type2":
        raise ValueError("R-paths are only defined for type-2 blocks")
    p1, p2 = block.paths
    start, end = block.start, block.end
    if y1 in p1:
        return p1, p2
    if y1 in p2:
        return p2, p1
    aux = shortest_path(net, start, y1)
    if aux is None:
        raise NoAuxPath(f"no path from {start!r} to {y1!r}")
    on_connectors = set(p1[1:-1]) | set(p2[1:-1])
    hits = [v for v in aux[1:] if v in on_connectors]
    if hits:
        pos = net.position
        p = max(hits, key=pos.__getitem__)
        if p not in p1:
            p1, p2 = p2, p1
        r1 = p1[: p1.index(p)] + aux[aux.index(p):] + (end,)
    else:
        r1 = aux + (end,)
    r2 = p2
    if set(r1[1:-1]) & set(r2[1:-1]) or len(set(r1)) != len(r1):
        raise InternalInvariant("R-paths are not vertex-disjoint")
    return r1, r2


def _transport(builder: CodeBuilder, block: Block, carrier: int, mask_name: str, session) -> None:
    """Carry ``carrier`` from ``block.start`` to ``block.end`` without padding."""
    if block.kind == "type1":
        builder.send_edge(block.edge, carrier)
        return
    r = builder.fresh(mask_name, block.start, SESSION_RANDOM, session)
    p1, p2 = block.paths
    builder.send(p1, carrier ^ r)
    builder.send(p2, r)


def route_session(
    builder: CodeBuilder,
    s,
    d,
    message: int,
    tag: str,
    session=None,
    pad_unprotected: bool = True,
) -> None:
    """Emit one source-to-terminal session carrying ``message`` to ``d``.

    With ``pad_unprotected=False`` unprotected cuts are crossed without the
    padding gadget and may learn the message. Otherwise every cut must be
    protected.
    """
    net = builder.net
    dec = block_decomposition(net, s, d)
    carrier = message
    nblocks = len(dec.blocks)
    for i, block in enumerate(dec.blocks, start=1):
        cur = block.end
        if i == nblocks:
            _transport(builder, block, carrier, f"r[{tag},{i}]", session)
            break
        if not is_protected(net, s, d, cur):
            if pad_unprotected:
                raise InternalInvariant(f"cut {cur!r} is unprotected")
            _transport(builder, block, carrier, f"r[{tag},{i}]", session)
            continue
        w = extract_witness(net, s, d, cur)
        y1 = w.colliders[0]
        if block.kind == "type1":
            if y1 != block.start:
                raise InternalInvariant(f"type-1 block but first collider is {y1!r}")
            beta = 0
        else:
            beta = builder.fresh(f"r[{tag},{i}]", block.start, SESSION_RANDOM, session)
            r1, r2 = build_r_paths(net, block, y1)
            builder.send(r1[: r1.index(y1) + 1], carrier ^ beta)
            builder.send(r2, beta)
        gadget = padding_gadget(builder, w, cur, carrier ^ beta, beta, tag=f"{tag},{i}", session=session)
        carrier = gadget.handle


def unprotected_cuts(net: Network, s, d) -> list:
    return [u for u in cut_vertices(net, s, d) if not is_protected(net, s, d, u)]


def _check_reachable(net: Network, s, terminals):
    for d in terminals:
        # raises NoPath
        cut_vertices(net, s, d)


def _ordered(net: Network, vertices: Iterable) -> list:
    return sorted(set(vertices), key=net.index.__getitem__)


def _multicast_into(builder: CodeBuilder, s, terminals) -> int | Infeasible:
    net = builder.net
    _check_reachable(net, s, terminals)
    for d in terminals:
        bad = unprotected_cuts(net, s, d)
        if bad:
            return Infeasible("unprotected cut vertex", cut=bad[0], terminal=d, source=s)
    m = builder.fresh("m", s, MESSAGE)
    for d in terminals:
        route_session(builder, s, d, m, tag=str(d), session=d)
    return m


def _finish(builder: CodeBuilder, inst: Instance, key) -> LinearCode:
    code = builder.build(inst, key)
    report = verify(code, inst)
    if not report.ok:
        raise SynthesisDefect(report)
    return code


def synth_single(net: Network, s, d) -> LinearCode | Infeasible:
    return synth_multicast(net, s, [d])


def synth_multicast(net: Network, s, terminals: Iterable) -> LinearCode | Infeasible:
    """Secure multicast of one bit from ``s`` to every terminal, or the blocking cut."""
    terminals = _ordered(net, terminals)
    if not terminals:
        raise ValueError("at least one terminal is required")
    sub = net.with_terminals(terminals)
    inst = Instance(sub, MULTICAST, s)
    builder = CodeBuilder(sub)
    m = _multicast_into(builder, s, terminals)
    if isinstance(m, Infeasible):
        return m
    return _finish(builder, inst, [m])


def extend_to_keycast(net: Network, s, s2, terminals: Iterable) -> LinearCode | Infeasible:
    """Key ``m + m'``: ``m`` multicast securely from ``s``, ``m'`` sent in the
    clear from ``s2`` on paths avoiding ``s``."""
    terminals = _ordered(net, terminals)
    if not terminals:
        raise ValueError("at least one terminal is required")
    if s2 == s:
        raise ValueError("the second source must differ from the multicast source")
    sub = net.with_terminals(terminals)
    routes = {}
    for d in terminals:
        path = shortest_path(sub, s2, d, forbidden={s})
        if path is None:
            raise NoAvoidingPath(d)
        routes[d] = path
    builder = CodeBuilder(sub)
    m = _multicast_into(builder, s, terminals)
    if isinstance(m, Infeasible):
        return m
    m2 = builder.fresh("m'", s2, MESSAGE)
    for d in terminals:
        builder.send(routes[d], m2)
    return _finish(builder, Instance(sub, KEYCAST), [m ^ m2])
