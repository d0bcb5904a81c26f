"""Directed acyclic network model and the path machinery built on it.

Vertices are hashable identifiers (strings in practice). Edges are kept as an
ordered list of ``(tail, head)`` pairs and addressed by their index, so
parallel edges are distinct objects.
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Iterable, Sequence

Vertex = Hashable
Path = tuple  # tuple of vertices; a single-vertex tuple is the empty path


class GraphError(ValueError):
    """Base class for model violations and graph-query failures."""


class CyclicGraph(GraphError):
    pass


class UnknownVertex(GraphError, KeyError):
    def __str__(self):
        return f"unknown vertex {self.args[0]!r}"


class NoPath(GraphError):
    pass


class InternalInvariant(RuntimeError):
    """Raised when a result the theory guarantees fails to materialize."""


@dataclass(frozen=True)
class Network:
    vertices: tuple
    edges: tuple
    terminals: frozenset = frozenset()

    def __init__(self, vertices: Iterable, edges: Iterable, terminals: Iterable = ()):
        object.__setattr__(self, "vertices", tuple(vertices))
        object.__setattr__(self, "edges", tuple((a, b) for a, b in edges))
        object.__setattr__(self, "terminals", frozenset(terminals))
        self._validate()

    def _validate(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise GraphError("duplicate vertex identifiers")
        known = set(self.vertices)
        for a, b in self.edges:
            for v in (a, b):
                if v not in known:
                    raise UnknownVertex(v)
        for t in self.terminals:
            if t not in known:
                raise UnknownVertex(t)
        for t in sorted(self.terminals, key=self.index.__getitem__):
            if self.out_edges[t]:
                raise GraphError(f"terminal {t!r} has outgoing edges")
        # raises CyclicGraph
        self.topological_order

    @cached_property
    def index(self) -> dict:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def out_edges(self) -> dict:
        out = {v: [] for v in self.vertices}
        for k, (a, _) in enumerate(self.edges):
            out[a].append(k)
        return {v: tuple(ks) for v, ks in out.items()}

    @cached_property
    def in_edges(self) -> dict:
        inc = {v: [] for v in self.vertices}
        for k, (_, b) in enumerate(self.edges):
            inc[b].append(k)
        return {v: tuple(ks) for v, ks in inc.items()}

    def successors(self, v) -> list:
        return _unique(self.edges[k][1] for k in self.out_edges[v])

    def predecessors(self, v) -> list:
        """In-nodes of ``v`` in declaration order, without repeats."""
        return _unique(self.edges[k][0] for k in self.in_edges[v])

    def edge_between(self, a, b) -> int:
        """Index of the first declared edge ``a -> b``."""
        for k in self.out_edges[a]:
            if self.edges[k][1] == b:
                return k
        raise NoPath(f"no edge {a!r} -> {b!r}")

    @cached_property
    def topological_order(self) -> tuple:
        indeg = {v: len(self.in_edges[v]) for v in self.vertices}
        heap = [self.index[v] for v in self.vertices if indeg[v] == 0]
        heapq.heapify(heap)
        order = []
        while heap:
            v = self.vertices[heapq.heappop(heap)]
            order.append(v)
            for k in self.out_edges[v]:
                w = self.edges[k][1]
                indeg[w] -= 1
                if indeg[w] == 0:
                    heapq.heappush(heap, self.index[w])
        if len(order) != len(self.vertices):
            raise CyclicGraph("network contains a directed cycle")
        return tuple(order)

    @cached_property
    def position(self) -> dict:
        return {v: i for i, v in enumerate(self.topological_order)}

    def check_vertex(self, v):
        if v not in self.index:
            raise UnknownVertex(v)

    def with_terminals(self, terminals: Iterable) -> "Network":
        return Network(self.vertices, self.edges, terminals)


def _unique(items) -> list:
    seen = set()
    out = []
    for x in items:
        if x not in seen:
            seen.add(x)
            out.append(x)
    return out


def topological_order(net: Network) -> list:
    """Deterministic topological order; ties broken by declaration order."""
    return list(net.topological_order)


def reachable_from(net: Network, v, forbidden: Iterable = ()) -> set:
    """Vertices reachable from ``v`` by directed paths avoiding ``forbidden``."""
    net.check_vertex(v)
    forbidden = set(forbidden)
    if v in forbidden:
        return set()
    seen = {v}
    stack = [v]
    while stack:
        x = stack.pop()
        for w in net.successors(x):
            if w not in seen and w not in forbidden:
                seen.add(w)
                stack.append(w)
    return seen


def reaching(net: Network, v, forbidden: Iterable = ()) -> set:
    """Vertices with a directed path to ``v`` avoiding ``forbidden`` (``v`` included)."""
    net.check_vertex(v)
    forbidden = set(forbidden)
    if v in forbidden:
        return set()
    seen = {v}
    stack = [v]
    while stack:
        x = stack.pop()
        for w in net.predecessors(x):
            if w not in seen and w not in forbidden:
                seen.add(w)
                stack.append(w)
    return seen


def shortest_path(net: Network, a, b, forbidden: Iterable = ()) -> Path | None:
    """Breadth-first shortest directed path from ``a`` to ``b``, or None."""
    net.check_vertex(a)
    net.check_vertex(b)
    forbidden = set(forbidden)
    if a in forbidden or b in forbidden:
        return None
    parent = {a: None}
    queue = deque([a])
    while queue:
        x = queue.popleft()
        if x == b:
            path = [x]
            while parent[path[-1]] is not None:
                path.append(parent[path[-1]])
            return tuple(reversed(path))
        for w in net.successors(x):
            if w not in parent and w not in forbidden:
                parent[w] = x
                queue.append(w)
    return None


def cut_vertices(net: Network, s, d) -> list:
    """Vertices other than ``s`` and ``d`` lying on every ``s -> d`` path.

    Works on the subgraph of vertices that lie on some s-d path. In topological
    order a vertex is avoidable exactly when some edge of that subgraph jumps
    over it, so a sweep over the jump intervals finds all cuts.
    """
    net.check_vertex(s)
    net.check_vertex(d)
    if s == d:
        raise NoPath("source and terminal coincide")
    fwd = reachable_from(net, s)
    if d not in fwd:
        raise NoPath(f"{d!r} is not reachable from {s!r}")
    relevant = fwd & reaching(net, d)
    pos = net.position
    # cover[p] counts edges (a, b) with pos[a] < p < pos[b]
    n = len(net.vertices)
    delta = [0] * (n + 1)
    for a, b in net.edges:
        if a in relevant and b in relevant:
            delta[pos[a] + 1] += 1
            delta[pos[b]] -= 1
    cuts = []
    running = 0
    for p, v in enumerate(net.topological_order):
        running += delta[p]
        if v in relevant and v != s and v != d and running == 0:
            cuts.append(v)
    return cuts


def vertex_disjoint_pair(net: Network, a, b) -> tuple[Path, Path] | None:
    """Two ``a -> b`` paths sharing only their endpoints, or None.

    Max flow of value 2 on the vertex-split graph, internal vertices having
    capacity 1. A lone direct edge ``a -> b`` counts for both paths since no
    internal vertex can separate its endpoints.
    """
    net.check_vertex(a)
    net.check_vertex(b)
    if a == b:
        raise ValueError("endpoints must differ")

    # Node ("in", v) / ("out", v); a and b are not split.
    def node_in(v):
        return v if v in (a, b) else ("in", v)

    def node_out(v):
        return v if v in (a, b) else ("out", v)

    cap: dict = {}
    adj: dict = {}

    def add(x, y, c):
        cap[(x, y)] = cap.get((x, y), 0) + c
        cap.setdefault((y, x), 0)
        adj.setdefault(x, []).append(y)
        adj.setdefault(y, []).append(x)

    for v in net.vertices:
        if v not in (a, b):
            add(node_in(v), node_out(v), 1)
    for x, y in net.edges:
        if y == a or x == b:
            continue
        add(node_out(x), node_in(y), 1)

    flow = 0
    while flow < 2:
        parent = {a: None}
        queue = deque([a])
        while queue and b not in parent:
            x = queue.popleft()
            for y in adj.get(x, ()):
                if y not in parent and cap[(x, y)] > 0:
                    parent[y] = x
                    queue.append(y)
        if b not in parent:
            break
        y = b
        while parent[y] is not None:
            x = parent[y]
            cap[(x, y)] -= 1
            cap[(y, x)] += 1
            y = x
        flow += 1

    if flow < 2:
        if flow == 1 and any(net.edges[k][1] == b for k in net.out_edges[a]):
            return (a, b), (a, b)
        return None

    # Decompose: follow saturated forward arcs (residual reverse capacity > 0
    # on an original arc means it carries flow).
    used: dict = {}
    for x, y in net.edges:
        if y == a or x == b:
            continue
        key = (node_out(x), node_in(y))
        used.setdefault(key, 0)
    for key in used:
        # original capacity counts parallel edges
        orig = sum(1 for x, y in net.edges if (node_out(x), node_in(y)) == key)
        used[key] = orig - cap[key]
    paths = []
    for _ in range(2):
        path = [a]
        x = a
        while x != b:
            for y in adj[x]:
                if used.get((x, y), 0) > 0:
                    used[(x, y)] -= 1
                    break
            else:
                raise InternalInvariant("flow decomposition failed")
            v = y if y in (a, b) else y[1]
            path.append(v)
            x = y if y in (a, b) else node_out(v)
        paths.append(tuple(path))
    return paths[0], paths[1]


@dataclass(frozen=True)
class Block:
    """Segment of the network between consecutive cut vertices."""

    start: Vertex
    end: Vertex
    members: frozenset
    kind: str  # "type1" or "type2"
    edge: int | None = None
    paths: tuple = ()


@dataclass(frozen=True)
class BlockDecomposition:
    source: Vertex
    terminal: Vertex
    cuts: tuple
    blocks: tuple = field(default=())

    @property
    def endpoints(self) -> tuple:
        return (self.source, *self.cuts, self.terminal)


def block_decomposition(net: Network, s, d) -> BlockDecomposition:
    cuts = cut_vertices(net, s, d)
    reach = reachable_from(net, s)
    pos = net.position
    ends = [s, *cuts, d]
    blocks = []
    for prev, cur in zip(ends, ends[1:]):
        members = frozenset(v for v in reach if pos[prev] <= pos[v] < pos[cur])
        feeders = [w for w in net.predecessors(cur) if w in reach]
        if feeders == [prev]:
            blocks.append(Block(prev, cur, members, "type1", edge=net.edge_between(prev, cur)))
            continue
        pair = vertex_disjoint_pair(net, prev, cur)
        if pair is None:
            raise InternalInvariant(
                f"no vertex-disjoint pair between consecutive cuts {prev!r} and {cur!r}"
            )
        blocks.append(Block(prev, cur, members, "type2", paths=pair))
    return BlockDecomposition(s, d, tuple(cuts), tuple(blocks))


def is_directed_path(net: Network, path: Sequence) -> bool:
    if not path:
        return False
    return all(b in net.successors(a) for a, b in zip(path, path[1:]))


MULTICAST = "multicast"
KEYCAST = "keycast"


@dataclass(frozen=True)
class Instance:
    """A network together with its role configuration.

    In multicast mode ``message_source`` holds the message and is exempt from
    secrecy; in keycast mode every non-terminal vertex is an eavesdropper.
    """

    network: Network
    mode: str = KEYCAST
    message_source: Vertex | None = None
    randomness_sources: frozenset | None = None

    def __post_init__(self):
        if self.mode not in (MULTICAST, KEYCAST):
            raise GraphError(f"unknown mode {self.mode!r}")
        if self.mode == MULTICAST:
            if self.message_source is None:
                raise GraphError("multicast instances need a message source")
            self.network.check_vertex(self.message_source)
            if self.message_source in self.network.terminals:
                raise GraphError("message source cannot be a terminal")
        elif self.message_source is not None:
            raise GraphError("keycast instances have no message source")
        if self.randomness_sources is None:
            object.__setattr__(self, "randomness_sources", frozenset(self.network.vertices))
        else:
            object.__setattr__(self, "randomness_sources", frozenset(self.randomness_sources))
            for v in self.randomness_sources:
                self.network.check_vertex(v)

    @property
    def terminals(self) -> frozenset:
        return self.network.terminals

    @cached_property
    def secrecy_sets(self) -> dict:
        """Eavesdropped vertex -> tuple of its in-edge indices."""
        net = self.network
        exempt = set(net.terminals)
        if self.mode == MULTICAST:
            exempt.add(self.message_source)
        return {v: net.in_edges[v] for v in net.vertices if v not in exempt}
