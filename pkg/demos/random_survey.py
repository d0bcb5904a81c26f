"""
How often is secrecy possible?
==============================

Sample random acyclic networks and tally how often secure multicast and
secure key-cast are feasible as the edge density grows.
"""

import numpy as np

from keycast import Infeasible, reachable_from, synth_keycast, synth_multicast
from keycast.generate import random_network

densities = np.linspace(0.2, 0.8, 4)
samples = 60
rows = []
for p in densities:
    multicast = keycast = 0
    for seed in range(samples):
        net = random_network(8, float(p), 2, seed=seed)
        terms = sorted(net.terminals)
        sources = [s for s in net.vertices if s not in terms and set(terms) <= reachable_from(net, s)]
        multicast += any(not isinstance(synth_multicast(net, s, terms), Infeasible) for s in sources)
        keycast += not isinstance(synth_keycast(net, terms), Infeasible)
    rows.append((p, multicast / samples, keycast / samples))

table = np.array(rows)
print("edge prob | some multicast feasible | key-cast feasible")
for p, m, k in table:
    print(f"{p:9.2f} | {m:23.2f} | {k:17.2f}")

# Multicast feasibility does not carry over: in key-cast the sources are
# eavesdroppers too, so a lone source that knows m cannot use it as the key.
