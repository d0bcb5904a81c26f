"""Scalar-linear binary network codes and their exact verification.

A code assigns every edge an ordered tuple of GF(2) functionals over a global
symbol basis; each functional is one transmitted bit. Secrecy is checked two
ways: by a span-intersection test, and by enumerating every assignment of the
basis bits and comparing distributions.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Mapping, NamedTuple, Sequence

import numpy as np

from . import gf2
from .graph import MULTICAST, Instance, Network, Vertex

MESSAGE = "message"
NODE_RANDOM = "node_random"
SESSION_RANDOM = "session_random"
KINDS = (MESSAGE, NODE_RANDOM, SESSION_RANDOM)

DEFAULT_MAX_SYMBOLS = 20


class CodeError(ValueError):
    pass


class TooLarge(ValueError):
    pass


@dataclass(frozen=True)
class Symbol:
    name: str
    origin: Vertex
    kind: str = NODE_RANDOM
    session: Vertex | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise CodeError(f"unknown symbol kind {self.kind!r}")
        if not self.name or "+" in self.name or self.name != self.name.strip() or self.name == "0":
            raise CodeError(f"bad symbol name {self.name!r}")


@dataclass(frozen=True)
class SymbolBasis:
    symbols: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "symbols", tuple(self.symbols))
        names = [s.name for s in self.symbols]
        if len(set(names)) != len(names):
            raise CodeError("duplicate symbol names")

    def __len__(self):
        return len(self.symbols)

    @property
    def names(self) -> list[str]:
        return [s.name for s in self.symbols]

    def index(self, name: str) -> int:
        for i, s in enumerate(self.symbols):
            if s.name == name:
                return i
        raise CodeError(f"unknown symbol {name!r}")

    def vector(self, *names: str) -> int:
        v = 0
        for n in names:
            v ^= 1 << self.index(n)
        return v

    def owned_by(self, v) -> int:
        """Mask of the symbols generated at vertex ``v``."""
        mask = 0
        for i, s in enumerate(self.symbols):
            if s.origin == v:
                mask |= 1 << i
        return mask

    def format(self, vec: int) -> str:
        if vec >> len(self.symbols):
            raise gf2.DimensionMismatch("vector wider than the basis")
        terms = [s.name for i, s in enumerate(self.symbols) if vec >> i & 1]
        return " + ".join(terms) if terms else "0"

    def parse(self, text: str) -> int:
        text = text.strip()
        if text == "0":
            return 0
        vec = 0
        for term in text.split("+"):
            vec ^= 1 << self.index(term.strip())
        return vec


@dataclass(frozen=True)
class LinearCode:
    basis: SymbolBasis
    payloads: tuple  # per edge index: tuple of packed functionals
    key: tuple
    certificates: Mapping = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "payloads", tuple(tuple(p) for p in self.payloads))
        object.__setattr__(self, "key", tuple(self.key))
        n = len(self.basis)
        for p in self.payloads:
            for vec in p:
                if vec < 0 or vec >> n:
                    raise gf2.DimensionMismatch("payload vector wider than the basis")
        for k in self.key:
            if k <= 0 or k >> n:
                raise CodeError("key functionals must be nonzero and fit the basis")
        if gf2.rank(self.key) != len(self.key):
            raise CodeError("key functionals are linearly dependent")

    @property
    def key_matrix(self) -> gf2.Gf2Matrix:
        return gf2.Gf2Matrix(len(self.basis), self.key)

    def payload_width(self) -> int:
        return max((len(p) for p in self.payloads), default=0)


def _check_compatible(code: LinearCode, net: Network):
    if len(code.payloads) != len(net.edges):
        raise CodeError(f"code has {len(code.payloads)} edges, network has {len(net.edges)}")
    for s in code.basis.symbols:
        if s.origin not in net.index:
            raise CodeError(f"symbol {s.name!r} originates at unknown vertex {s.origin!r}")


def view_rows(code: LinearCode, inst: Instance, v) -> list[tuple[str, int]]:
    """Labelled rows available at ``v``: in-edge payloads, then own symbols."""
    net = inst.network
    net.check_vertex(v)
    _check_compatible(code, net)
    rows = []
    for k in net.in_edges[v]:
        for slot, vec in enumerate(code.payloads[k]):
            rows.append((f"e{k}.{slot}", vec))
    for i, s in enumerate(code.basis.symbols):
        if s.origin == v:
            rows.append((f"own.{s.name}", 1 << i))
    return rows


def node_view(code: LinearCode, inst: Instance, v) -> gf2.Gf2Matrix:
    return gf2.Gf2Matrix(len(code.basis), (vec for _, vec in view_rows(code, inst, v)))


class Violation(NamedTuple):
    edge: int | None
    slot: int | None
    reason: str


def check_local(code: LinearCode, inst: Instance) -> tuple[bool, list[Violation]]:
    """Every transmitted functional must be computable at the tail of its edge."""
    net = inst.network
    _check_compatible(code, net)
    violations = []
    for i, s in enumerate(code.basis.symbols):
        if s.kind == MESSAGE:
            if inst.mode == MULTICAST and s.origin != inst.message_source:
                violations.append(Violation(None, None, f"message symbol {s.name} not at the source"))
        elif s.origin not in inst.randomness_sources:
            violations.append(Violation(None, None, f"{s.origin!r} may not generate {s.name}"))
    views = {}
    for v in net.topological_order:
        basis = gf2.echelon(vec for _, vec in view_rows(code, inst, v))
        views[v] = basis
        for k in net.out_edges[v]:
            for slot, vec in enumerate(code.payloads[k]):
                if gf2.reduce(vec, basis):
                    violations.append(
                        Violation(k, slot, f"{code.basis.format(vec)} not computable at {v!r}")
                    )
    return not violations, violations


def decode_certificate(code: LinearCode, inst: Instance, d) -> list[list[int]] | None:
    rows = [vec for _, vec in view_rows(code, inst, d)]
    cert = []
    for k in code.key:
        combo = gf2.solve(k, rows)
        if combo is None:
            return None
        cert.append(combo)
    return cert


def check_decoding(code: LinearCode, inst: Instance) -> dict:
    net = inst.network
    order = sorted(inst.terminals, key=net.index.__getitem__)
    return {d: decode_certificate(code, inst, d) is not None for d in order}


def check_secrecy_rank(code: LinearCode, inst: Instance) -> dict:
    key = code.key_matrix
    return {
        v: gf2.spans_independent(node_view(code, inst, v), key) for v in inst.secrecy_sets
    }


def _assignments(n: int) -> np.ndarray:
    return np.arange(1 << n, dtype=np.uint64)


def _joint_counts(code: LinearCode, inst: Instance, v, x: np.ndarray):
    rows = [vec for _, vec in view_rows(code, inst, v)]
    if rows:
        bits = np.stack([gf2.parity(x, r) for r in rows], axis=1).astype(np.uint8)
        packed = np.packbits(bits, axis=1)
        _, view_id = np.unique(packed, axis=0, return_inverse=True)
        view_id = view_id.reshape(-1).astype(np.int64)
    else:
        view_id = np.zeros(len(x), dtype=np.int64)
    key_val = np.zeros(len(x), dtype=np.int64)
    for j, k in enumerate(code.key):
        key_val |= gf2.parity(x, k).astype(np.int64) << j
    nkeys = 1 << len(code.key)
    nviews = int(view_id.max()) + 1
    joint = np.bincount(view_id * nkeys + key_val, minlength=nviews * nkeys)
    return joint.reshape(nviews, nkeys)


def _check_size(code: LinearCode, max_symbols: int):
    if len(code.basis) > max_symbols:
        raise TooLarge(f"{len(code.basis)} symbols exceeds the limit of {max_symbols}")


def mutual_information(code: LinearCode, inst: Instance, v, max_symbols: int = DEFAULT_MAX_SYMBOLS) -> float:
    """Exact I(K; view of v) in bits by full enumeration."""
    _check_size(code, max_symbols)
    joint = _joint_counts(code, inst, v, _assignments(len(code.basis)))
    total = joint.sum()
    pv = joint.sum(axis=1, keepdims=True)
    pk = joint.sum(axis=0, keepdims=True)
    mi = 0.0
    for (i, j), c in np.ndenumerate(joint):
        if c:
            mi += c / total * math.log2(c * total / (pv[i, 0] * pk[0, j]))
    return max(mi, 0.0)


def check_secrecy_bruteforce(
    code: LinearCode, inst: Instance, max_symbols: int = DEFAULT_MAX_SYMBOLS
) -> dict:
    """Secure iff the key is independent of the view, tested on exact counts."""
    _check_size(code, max_symbols)
    x = _assignments(len(code.basis))
    total = len(x)
    out = {}
    for v in inst.secrecy_sets:
        joint = _joint_counts(code, inst, v, x)
        pv = joint.sum(axis=1, keepdims=True)
        pk = joint.sum(axis=0, keepdims=True)
        out[v] = bool(np.array_equal(joint * total, pv * pk))
    return out


class Evaluation(NamedTuple):
    edges: dict
    key: tuple
    decoded: dict


def evaluate(code: LinearCode, inst: Instance, assignment) -> Evaluation:
    """Run the code on concrete symbol bits.

    ``assignment`` is a sequence aligned with the basis or a name -> bit map.
    Terminals decode with freshly computed certificates.
    """
    n = len(code.basis)
    if isinstance(assignment, Mapping):
        bits = [int(assignment[name]) & 1 for name in code.basis.names]
    else:
        bits = [int(b) & 1 for b in assignment]
        if len(bits) != n:
            raise gf2.DimensionMismatch(f"assignment has {len(bits)} bits, basis has {n}")
    x = gf2.pack(bits)

    def value(vec):
        return (vec & x).bit_count() & 1

    net = inst.network
    trace = {k: tuple(value(vec) for vec in code.payloads[k]) for k in range(len(net.edges))}
    key = tuple(value(k) for k in code.key)
    decoded = {}
    for d in sorted(inst.terminals, key=net.index.__getitem__):
        cert = decode_certificate(code, inst, d)
        if cert is None:
            continue
        # replay from observed values, not from the assignment
        observed = []
        for label, vec in view_rows(code, inst, d):
            if label.startswith("own."):
                observed.append(value(vec))
            else:
                k, slot = label[1:].split(".")
                observed.append(trace[int(k)][int(slot)])
        decoded[d] = tuple(sum(observed[i] for i in combo) & 1 for combo in cert)
    return Evaluation(trace, key, decoded)


@dataclass
class VerificationReport:
    local_ok: bool
    violations: list
    decoding: dict
    secrecy: dict
    achieved_key_bits: int
    bruteforce: dict | None = None
    bruteforce_skipped: bool = False
    failures: list = field(default_factory=list)

    @property
    def disagreements(self) -> list:
        if self.bruteforce is None:
            return []
        return [v for v in self.secrecy if self.secrecy[v] != self.bruteforce[v]]

    @property
    def ok(self) -> bool:
        return not self.failures and not self.disagreements

    def summary(self) -> str:
        lines = [
            f"local computability: {'ok' if self.local_ok else 'FAILED'}",
            f"key bits: {self.achieved_key_bits}",
        ]
        for d, good in self.decoding.items():
            lines.append(f"decode at {d}: {'ok' if good else 'FAILED'}")
        insecure = [v for v, good in self.secrecy.items() if not good]
        lines.append(
            f"secrecy (rank) at {len(self.secrecy)} nodes: "
            + ("ok" if not insecure else "LEAKS at " + ", ".join(map(str, insecure)))
        )
        if self.bruteforce is not None:
            lines.append(
                "secrecy (enumeration): "
                + ("agrees" if not self.disagreements else "DISAGREES at " + ", ".join(map(str, self.disagreements)))
            )
        elif self.bruteforce_skipped:
            lines.append("secrecy (enumeration): skipped, basis too large")
        return "\n".join(lines)


def verify(
    code: LinearCode,
    inst: Instance,
    bruteforce: bool = False,
    max_symbols: int = DEFAULT_MAX_SYMBOLS,
) -> VerificationReport:
    local_ok, violations = check_local(code, inst)
    decoding = check_decoding(code, inst)
    secrecy = check_secrecy_rank(code, inst)
    report = VerificationReport(local_ok, violations, decoding, secrecy, len(code.key))
    if bruteforce:
        if len(code.basis) <= max_symbols:
            report.bruteforce = check_secrecy_bruteforce(code, inst, max_symbols)
        else:
            report.bruteforce_skipped = True
    for viol in violations:
        node = None if viol.edge is None else inst.network.edges[viol.edge][0]
        report.failures.append((node, viol.reason))
    for d, good in decoding.items():
        if not good:
            report.failures.append((d, "cannot decode the key"))
    for v, good in secrecy.items():
        if not good:
            report.failures.append((v, "learns information about the key"))
    if not code.key:
        report.failures.append((None, "empty key"))
    return report


class CodeBuilder:
    """Accumulates symbols and per-edge transmissions during synthesis.

    Every call to :meth:`send_edge` takes a fresh slot on the edge, so separate
    logical transmissions never get merged.
    """

    def __init__(self, net: Network):
        self.net = net
        self.symbols: list[Symbol] = []
        self.payloads: list[list[int]] = [[] for _ in net.edges]

    def fresh(self, name: str, origin, kind: str = SESSION_RANDOM, session=None) -> int:
        self.net.check_vertex(origin)
        if any(s.name == name for s in self.symbols):
            raise CodeError(f"symbol {name!r} already exists")
        self.symbols.append(Symbol(name, origin, kind, session))
        return 1 << (len(self.symbols) - 1)

    def send_edge(self, k: int, vec: int):
        self.payloads[k].append(vec)

    def send(self, path: Sequence, vec: int):
        for a, b in zip(path, path[1:]):
            self.send_edge(self.net.edge_between(a, b), vec)

    def build(self, inst: Instance, key: Sequence[int]) -> LinearCode:
        code = LinearCode(SymbolBasis(self.symbols), self.payloads, key)
        certs = {}
        for d in sorted(inst.terminals, key=self.net.index.__getitem__):
            cert = decode_certificate(code, inst, d)
            if cert is not None:
                certs[d] = cert
        return LinearCode(code.basis, code.payloads, code.key, certs)


def code_to_dict(code: LinearCode, net: Network) -> dict:
    _check_compatible(code, net)
    return {
        "symbols": [
            {"name": s.name, "origin": s.origin, "kind": s.kind, "session": s.session}
            for s in code.basis.symbols
        ],
        "edges": [
            {
                "index": k,
                "tail": a,
                "head": b,
                "payload": [code.basis.format(vec) for vec in code.payloads[k]],
            }
            for k, (a, b) in enumerate(net.edges)
        ],
        "key": [code.basis.format(k) for k in code.key],
        "certificates": {str(d): cert for d, cert in code.certificates.items()},
    }


def code_from_dict(data: Mapping, net: Network) -> LinearCode:
    try:
        basis = SymbolBasis(
            Symbol(s["name"], s["origin"], s.get("kind", NODE_RANDOM), s.get("session"))
            for s in data["symbols"]
        )
        payloads = [[] for _ in net.edges]
        for e in data["edges"]:
            k = int(e["index"])
            if not 0 <= k < len(net.edges) or tuple(net.edges[k]) != (e["tail"], e["head"]):
                raise CodeError(f"edge entry {e!r} does not match the network")
            payloads[k] = [basis.parse(t) for t in e["payload"]]
        key = [basis.parse(t) for t in data["key"]]
        certs = {}
        by_name = {str(v): v for v in net.vertices}
        for d, cert in data.get("certificates", {}).items():
            certs[by_name.get(d, d)] = [list(map(int, c)) for c in cert]
    except (KeyError, TypeError, AttributeError) as exc:
        raise CodeError(f"malformed code data: {exc}") from exc
    code = LinearCode(basis, payloads, key, certs)
    _check_compatible(code, net)
    return code


def dumps(code: LinearCode, net: Network) -> str:
    return json.dumps(code_to_dict(code, net), indent=2)


def loads(text: str, net: Network) -> LinearCode:
    return code_from_dict(json.loads(text), net)
