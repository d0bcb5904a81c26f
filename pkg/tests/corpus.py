"""Seeded random instances shared by the property and acceptance tests."""

from __future__ import annotations

import numpy as np

from keycast.generate import random_network
from keycast.graph import reachable_from
from keycast.netcode import NODE_RANDOM, LinearCode, Symbol, SymbolBasis


def networks(count, seed, n_range=(3, 9), p_range=(0.2, 0.6), t_range=(1, 3), max_edges=None):
    """Yield ``count`` random networks, reproducibly."""
    rng = np.random.default_rng(seed)
    made = 0
    sub = 0
    while made < count:
        sub += 1
        n = int(rng.integers(n_range[0], n_range[1] + 1))
        p = float(rng.uniform(*p_range))
        t = int(rng.integers(t_range[0], min(t_range[1], n - 1) + 1))
        net = random_network(n, p, t, seed=seed * 100003 + sub)
        if max_edges is not None and len(net.edges) > max_edges:
            continue
        made += 1
        yield net


def source_terminal_pairs(net):
    for s in net.vertices:
        if s in net.terminals:
            continue
        reach = reachable_from(net, s)
        for d in net.vertices:
            if d in net.terminals and d in reach:
                yield s, d


def multicast_sources(net):
    """Non-terminal vertices reaching every terminal."""
    terms = set(net.terminals)
    return [s for s in net.vertices if s not in terms and terms <= reachable_from(net, s)]


def random_local_code(net, rng, max_symbols=8, width=2, key_bits=None) -> LinearCode:
    """A random locally computable code: each edge carries random combinations
    of its tail's view; the key is a random set of independent functionals."""
    nonterm = [v for v in net.vertices if v not in net.terminals]
    n = int(rng.integers(1, max_symbols + 1))
    origins = [nonterm[int(i)] for i in rng.integers(0, len(nonterm), size=n)]
    symbols = [Symbol(f"b{i}", origins[i], NODE_RANDOM) for i in range(n)]
    view = {v: [1 << i for i in range(n) if origins[i] == v] for v in net.vertices}
    payloads = [[] for _ in net.edges]
    for v in net.topological_order:
        for k in net.out_edges[v]:
            rows = view[v]
            w = int(rng.integers(0, width + 1))
            for _ in range(w):
                if not rows:
                    break
                pick = rng.integers(0, 2, size=len(rows))
                vec = 0
                for r, bit in zip(rows, pick):
                    if bit:
                        vec ^= r
                payloads[k].append(vec)
            view[net.edges[k][1]] = view[net.edges[k][1]] + payloads[k]
    if key_bits is None:
        key_bits = 1 if rng.random() < 0.8 else 2
    key = []
    basis_rows = {}
    while len(key) < min(key_bits, n):
        cand = int(rng.integers(1, 1 << n))
        r = cand
        while r and (r.bit_length() - 1) in basis_rows:
            r ^= basis_rows[r.bit_length() - 1]
        if r:
            basis_rows[r.bit_length() - 1] = r
            key.append(cand)
    return LinearCode(SymbolBasis(symbols), payloads, key)
