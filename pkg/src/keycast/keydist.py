"""Secure key-cast: choosing source sets and synthesizing the key code.

Every source ``s_i`` of a support set sends its own bit ``m_i`` to every
terminal; cuts that cannot be protected simply relay it. The key is the sum
of the ``m_i``, which stays hidden as long as no eavesdropper sees all of them.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .altpath import is_protected
from .graph import KEYCAST, Instance, Network, cut_vertices, reachable_from
from .multicast import Infeasible, _finish, _ordered, route_session
from .netcode import MESSAGE, CodeBuilder, LinearCode


@dataclass(frozen=True)
class UnprotectedMap:
    """For each candidate source, the vertices that are unprotected cuts
    toward at least one terminal."""

    blocked: dict

    @property
    def candidates(self) -> list:
        return list(self.blocked)

    def __getitem__(self, s) -> frozenset:
        return self.blocked[s]


@dataclass(frozen=True)
class SupportSearch:
    sources: tuple | None
    heuristic: bool = False
    largest_size_examined: int = 0


def candidate_sources(net: Network, terminals: Iterable) -> list:
    terminals = set(terminals)
    return [
        s
        for s in net.vertices
        if s not in terminals and terminals <= reachable_from(net, s)
    ]


def unprotected_map(net: Network, terminals: Iterable, candidates: Iterable | None = None) -> UnprotectedMap:
    terminals = _ordered(net, terminals)
    if candidates is None:
        candidates = candidate_sources(net, terminals)
    blocked = {}
    for s in candidates:
        reach = reachable_from(net, s)
        if s in terminals or not set(terminals) <= reach:
            continue
        hit = set()
        for d in terminals:
            for u in cut_vertices(net, s, d):
                if u not in hit and not is_protected(net, s, d, u):
                    hit.add(u)
        blocked[s] = frozenset(hit)
    return UnprotectedMap(blocked)


def support_violations(net: Network, terminals: Iterable, umap: UnprotectedMap, sources: Iterable) -> list:
    """Vertices that would learn the key if ``sources`` were used.

    A non-source, non-terminal vertex fails when it is blocked for every
    source; a source fails when it is blocked for every other source.
    """
    terminals = set(terminals)
    sources = list(sources)
    chosen = set(sources)
    bad = []
    for u in net.vertices:
        if u in terminals or u in chosen:
            continue
        if all(u in umap[s] for s in sources):
            bad.append(u)
    for si in sources:
        if si in terminals:
            continue
        others = [s for s in sources if s != si]
        if all(si in umap[s] for s in others):
            bad.append(si)
    return bad


def find_support_set(
    net: Network,
    terminals: Iterable,
    umap: UnprotectedMap,
    max_size: int | None = None,
) -> SupportSearch:
    """Smallest valid source set, searched by size then declaration order.

    Validity is monotone under adding candidates, so the full candidate set
    decides existence up front. If nothing is found within ``max_size`` a
    greedy cover is returned and flagged as heuristic.
    """
    cands = umap.candidates
    if max_size is None:
        max_size = len(net.vertices)
    if not cands or support_violations(net, terminals, umap, cands):
        return SupportSearch(None, largest_size_examined=len(cands))
    top = min(max_size, len(cands))
    for size in range(1, top + 1):
        for combo in combinations(cands, size):
            if not support_violations(net, terminals, umap, combo):
                return SupportSearch(tuple(combo), largest_size_examined=size)
    chosen: list = []
    while support_violations(net, terminals, umap, chosen):
        uncovered = set(support_violations(net, terminals, umap, chosen))

        def gain(c):
            return len(uncovered) - len(set(support_violations(net, terminals, umap, chosen + [c])))

        rest = [c for c in cands if c not in chosen]
        chosen.append(max(rest, key=gain))
    return SupportSearch(tuple(_ordered(net, chosen)), heuristic=True, largest_size_examined=top)


def protocol2_route(builder: CodeBuilder, s, d, message: int, tag: str | None = None, session=None) -> None:
    """Route ``message`` from ``s`` to ``d``, padding only the protected cuts."""
    route_session(
        builder, s, d, message, tag=tag or f"{s}>{d}", session=session, pad_unprotected=False
    )


def synth_keycast(
    net: Network, terminals: Iterable, max_size: int | None = None
) -> LinearCode | Infeasible:
    terminals = _ordered(net, terminals)
    if not terminals:
        raise ValueError("at least one terminal is required")
    sub = net.with_terminals(terminals)
    inst = Instance(sub, KEYCAST)
    builder = CodeBuilder(sub)
    if len(terminals) == 1:
        k = builder.fresh("k", terminals[0], MESSAGE)
        return _finish(builder, inst, [k])
    umap = unprotected_map(sub, terminals)
    found = find_support_set(sub, terminals, umap, max_size)
    if found.sources is None:
        witnesses = support_violations(sub, terminals, umap, umap.candidates)
        return Infeasible(
            "no valid source set",
            detail={
                "candidates": umap.candidates,
                "exposed": witnesses,
                "largest_size_examined": found.largest_size_examined,
            },
        )
    key = 0
    for i, s in enumerate(found.sources, start=1):
        m = builder.fresh(f"m_{i}", s, MESSAGE)
        key ^= m
        for d in terminals:
            protocol2_route(builder, s, d, m, tag=f"{i}>{d}", session=d)
    return _finish(builder, inst, [key])
