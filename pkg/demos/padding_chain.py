"""
Relaying a secret through a cut vertex
======================================

Every path from ``s`` to ``d`` in a ladder network runs through ``u``, yet
``u`` can forward the message without learning it. Helper vertices ``x_k``
draw one-time pads and chain them together so the pads cancel at ``d`` only.
"""

from keycast import Instance, MULTICAST, cut_vertices, extract_witness, synth_single, verify
from keycast.figures import ladder
from keycast.netcode import node_view

net = ladder(3)
print("edges:", net.edges)
print("cut vertices between s and d:", cut_vertices(net, "s", "d"))

# The certificate for u: pads x_k, colliders y_k feeding u, and the segments
# joining them.
w = extract_witness(net, "s", "d", "u")
print(f"pads {w.pads}, colliders {w.colliders}, last pad reaches d via {w.seg_end}")

code = synth_single(net, "s", "d")
inst = Instance(net, MULTICAST, "s")

# What each vertex receives. u sees m masked by a chain of pads.
for v in net.vertices:
    rows = node_view(code, inst, v).rows
    print(f"{v:>3}: " + ", ".join(code.basis.format(r) for r in rows))

report = verify(code, inst, bruteforce=True)
print(report.summary())
