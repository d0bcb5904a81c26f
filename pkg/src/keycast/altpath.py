"""Alternating-path reachability around a fixed cut vertex.

An alternating walk moves along edges in either direction. The walk state is
the current vertex plus how it was entered: ``FORWARD`` when the last edge
pointed into the vertex, ``BACKWARD`` when the last edge was walked against its
direction. Turning from forward to backward makes the vertex a collider, which
is only allowed at in-nodes of the forbidden vertex ``u``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import NamedTuple

from .graph import Network, Path, UnknownVertex, reaching

FORWARD = "forward"
BACKWARD = "backward"


class NotProtected(ValueError):
    pass


class InvalidWitness(ValueError):
    pass


class TraversalState(NamedTuple):
    vertex: object
    arrival: str


@dataclass(frozen=True)
class AltPathWitness:
    """Decomposition of an alternating ``s -> d`` walk avoiding ``u``.

    ``seg_start`` runs from s to the first collider, ``seg_down[k]`` from pad
    ``pads[k]`` to collider ``colliders[k]``, ``seg_up[k]`` from ``pads[k]`` to
    ``colliders[k + 1]`` and ``seg_end`` from the last pad to d. All segments
    are directed paths given as vertex tuples; a 1-tuple is an empty path.
    """

    ell: int
    pads: tuple
    colliders: tuple
    seg_start: Path
    seg_down: tuple
    seg_up: tuple
    seg_end: Path


def _moves(net: Network, state: TraversalState, collider_ok: frozenset):
    v, mode = state
    # forward moves are always allowed: chain from FORWARD, fork from BACKWARD
    for k in net.out_edges[v]:
        yield TraversalState(net.edges[k][1], FORWARD)
    if mode == BACKWARD or v in collider_ok:
        for k in net.in_edges[v]:
            yield TraversalState(net.edges[k][0], BACKWARD)


def _search(net: Network, s, u):
    for v in (s, u):
        if v not in net.index:
            raise UnknownVertex(v)
    if s == u:
        raise ValueError("start vertex must differ from the forbidden vertex")
    collider_ok = frozenset(net.predecessors(u))
    start = TraversalState(s, FORWARD)
    parent = {start: None}
    queue = deque([start])
    while queue:
        state = queue.popleft()
        for nxt in _moves(net, state, collider_ok):
            if nxt.vertex == u or nxt in parent:
                continue
            parent[nxt] = state
            queue.append(nxt)
    return parent


def alt_reachable_states(net: Network, s, u) -> set:
    return set(_search(net, s, u))


def is_protected(net: Network, s, d, u) -> bool:
    states = _search(net, s, u)
    return TraversalState(d, FORWARD) in states or TraversalState(d, BACKWARD) in states


def extract_witness(net: Network, s, d, u) -> AltPathWitness:
    parent = _search(net, s, u)
    # BFS discovery order picks the shorter of the two arrival modes
    ends = [st for st in parent if st.vertex == d]
    if not ends:
        raise NotProtected(f"{u!r} is not protected for ({s!r}, {d!r})")
    walk = [ends[0]]
    while parent[walk[-1]] is not None:
        walk.append(parent[walk[-1]])
    walk.reverse()
    witness = _decompose(walk)
    validate_witness(net, s, d, u, witness)
    return witness


def _decompose(walk) -> AltPathWitness:
    # Split the state sequence into maximal runs of equal arrival mode. The
    # start state counts as a forward arrival.
    runs = []
    current = [walk[0].vertex]
    mode = FORWARD
    for st in walk[1:]:
        if st.arrival == mode:
            current.append(st.vertex)
        else:
            runs.append((mode, current))
            current = [current[-1], st.vertex]
            mode = st.arrival
    runs.append((mode, current))

    if runs[0][0] != FORWARD:
        raise InvalidWitness("walk must start forward")
    seg_start = tuple(runs[0][1])
    rest = runs[1:]
    if not rest:
        raise InvalidWitness("walk has no collider")

    colliders, pads, seg_down, seg_up = [], [], [], []
    seg_end = None
    for i, (mode, verts) in enumerate(rest):
        if mode == BACKWARD:
            colliders.append(verts[0])
            pads.append(verts[-1])
            seg_down.append(tuple(reversed(verts)))
        else:
            if i == len(rest) - 1:
                seg_end = tuple(verts)
            else:
                seg_up.append(tuple(verts))
    if seg_end is None:
        # walk ended while moving backward: the last pad is d itself
        seg_end = (pads[-1],)
    return AltPathWitness(
        ell=len(colliders),
        pads=tuple(pads),
        colliders=tuple(colliders),
        seg_start=seg_start,
        seg_down=tuple(seg_down),
        seg_up=tuple(seg_up),
        seg_end=seg_end,
    )


def validate_witness(net: Network, s, d, u, w: AltPathWitness) -> None:
    """Raise InvalidWitness unless ``w`` certifies that ``u`` is protected."""

    def check_path(path, start, end, label):
        if not path or path[0] != start or path[-1] != end:
            raise InvalidWitness(f"{label} does not run from {start!r} to {end!r}")
        if u in path:
            raise InvalidWitness(f"{label} passes through {u!r}")
        for a, b in zip(path, path[1:]):
            if not any(net.edges[k][1] == b for k in net.out_edges[a]):
                raise InvalidWitness(f"{label} uses missing edge {a!r} -> {b!r}")

    if w.ell < 1 or len(w.pads) != w.ell or len(w.colliders) != w.ell:
        raise InvalidWitness("inconsistent witness length")
    if len(w.seg_down) != w.ell or len(w.seg_up) != w.ell - 1:
        raise InvalidWitness("inconsistent segment counts")
    feeders = set(net.predecessors(u))
    for y in w.colliders:
        if y not in feeders:
            raise InvalidWitness(f"collider {y!r} is not an in-node of {u!r}")
    check_path(w.seg_start, s, w.colliders[0], "start segment")
    for k in range(w.ell):
        check_path(w.seg_down[k], w.pads[k], w.colliders[k], f"down segment {k + 1}")
    for k in range(w.ell - 1):
        check_path(w.seg_up[k], w.pads[k], w.colliders[k + 1], f"up segment {k + 1}")
    check_path(w.seg_end, w.pads[-1], d, "end segment")


def w_sets(net: Network, s, u) -> tuple[set, set, set]:
    """Return ``(W_u, W_su, W_bar)``.

    ``W_u`` holds the vertices other than ``u`` with a directed path to ``u``;
    ``W_su`` those of them alternating-reachable from ``s`` around ``u``.
    """
    states = _search(net, s, u)
    w_u = reaching(net, u) - {u}
    seen = {st.vertex for st in states}
    w_su = w_u & seen
    return w_u, w_su, w_u - w_su
