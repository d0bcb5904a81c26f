"""
Checking secrecy by rank and by counting
========================================

For linear codes over GF(2) a node learns nothing about the key exactly when
the span of its view meets the span of the key only in zero. The same verdict
falls out of enumerating every assignment of the underlying random bits.
"""

import numpy as np

from keycast import Instance, MULTICAST, LinearCode, Network, Symbol, SymbolBasis
from keycast import check_secrecy_bruteforce, check_secrecy_rank, mutual_information
from keycast.netcode import MESSAGE, NODE_RANDOM

net = Network("sabd", [("s", "a"), ("s", "b"), ("a", "d"), ("b", "d")], ["d"])
basis = SymbolBasis([Symbol("k", "s", MESSAGE), Symbol("r", "s", NODE_RANDOM)])
k, r = basis.vector("k"), basis.vector("r")

# a one-time pad split over two branches
safe = LinearCode(basis, [[k ^ r], [r], [k ^ r], [r]], [k])
# the same, but a also gets the pad
leaky = LinearCode(basis, [[k ^ r, r], [r], [k ^ r], [r]], [k])

# s holds the secret, so only a and b are eavesdroppers
inst = Instance(net, MULTICAST, "s")
for name, code in (("safe", safe), ("leaky", leaky)):
    rank = check_secrecy_rank(code, inst)
    count = check_secrecy_bruteforce(code, inst)
    mi = {v: mutual_information(code, inst, v) for v in rank}
    print(name, "rank:", rank, "enumeration:", count, "I(K; view) bits:", mi)

# Random agreement check on many small codes.
rng = np.random.default_rng(0)
agree = 0
for trial in range(200):
    n = int(rng.integers(2, 7))
    rows = [int(x) for x in rng.integers(0, 1 << n, size=4)]
    key = int(rng.integers(1, 1 << n))
    b = SymbolBasis([Symbol(f"b{i}", "s", NODE_RANDOM) for i in range(n)])
    # random payloads need not be locally computable; secrecy is still well defined
    code = LinearCode(b, [[rows[0]], [rows[1]], [rows[0], rows[2]], [rows[1], rows[3]]], [key])
    agree += check_secrecy_rank(code, inst) == check_secrecy_bruteforce(code, inst)
print(f"verdicts agree on {agree}/200 random codes")
