"""Seeded random acyclic instances."""

from __future__ import annotations

import numpy as np

from .graph import Network


def random_network(
    n_vertices: int,
    edge_prob: float,
    n_terminals: int = 1,
    seed=None,
) -> Network:
    """Random DAG whose edges point forward in a random permutation.

    The last ``n_terminals`` vertices of the permutation become terminals and
    lose their out-edges. Vertices are named ``v0 .. v{n-1}`` by creation.
    """
    if n_vertices < 2:
        raise ValueError("need at least two vertices")
    if not 0.0 <= edge_prob <= 1.0:
        raise ValueError("edge probability must lie in [0, 1]")
    if not 1 <= n_terminals < n_vertices:
        raise ValueError("terminal count must be between 1 and n_vertices - 1")
    rng = np.random.default_rng(seed)
    names = [f"v{i}" for i in range(n_vertices)]
    perm = rng.permutation(n_vertices)
    coins = rng.random((n_vertices, n_vertices))
    terminals = {names[i] for i in perm[n_vertices - n_terminals:]}
    edges = []
    for a in range(n_vertices):
        for b in range(a + 1, n_vertices):
            tail, head = names[perm[a]], names[perm[b]]
            if coins[a, b] < edge_prob and tail not in terminals:
                edges.append((tail, head))
    return Network(names, edges, sorted(terminals, key=names.index))
