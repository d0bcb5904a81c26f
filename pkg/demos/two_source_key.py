"""
A shared key where no secure multicast exists
=============================================

Two sources each sit behind their own bottleneck. Neither can multicast a
secret, but both together can give the two terminals a common key that no
single relay learns.
"""

from keycast import Instance, KEYCAST, find_support_set, synth_keycast, synth_multicast, unprotected_map, verify
from keycast.figures import two_fan

net = two_fan()
terminals = ["d1", "d2"]

for s in ("s1", "s2"):
    verdict = synth_multicast(net, s, terminals)
    print(f"multicast from {s}: {verdict}")

# Each candidate source with the relays that would see its bit in the clear.
umap = unprotected_map(net, terminals)
for s in umap.candidates:
    print(f"U({s}) = {sorted(umap[s])}")

print("chosen sources:", find_support_set(net, terminals, umap).sources)

code = synth_keycast(net, terminals)
print("key:", code.basis.format(code.key[0]))
for k, (a, b) in enumerate(net.edges):
    print(f"  {a} -> {b}: " + "; ".join(code.basis.format(v) for v in code.payloads[k]))

# u1 learns m_1 and u2 learns m_2, but neither learns their sum.
print(verify(code, Instance(net, KEYCAST), bruteforce=True).summary())
