import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from keycast import (
    KEYCAST,
    MULTICAST,
    Block,
    CodeBuilder,
    Infeasible,
    Instance,
    Network,
    NoAvoidingPath,
    NoPath,
    block_decomposition,
    build_r_paths,
    check_secrecy_bruteforce,
    check_secrecy_rank,
    cut_vertices,
    extend_to_keycast,
    extract_witness,
    is_protected,
    padding_gadget,
    synth_multicast,
    synth_single,
    verify,
)
from keycast import gf2
from keycast.figures import ladder
from keycast.generate import random_network
from keycast.netcode import MESSAGE, node_view

import oracles
from corpus import multicast_sources, networks, source_terminal_pairs

DIAMOND = Network("sabd", [("s", "a"), ("s", "b"), ("a", "d"), ("b", "d")], ["d"])
CHAIN = Network("sud", [("s", "u"), ("u", "d")], ["d"])
PADDED = ladder(1)


def fmt(code, vecs):
    return [code.basis.format(v) for v in vecs]


def test_diamond_code():
    code = synth_single(DIAMOND, "s", "d")
    assert code.basis.names == ["m", "r[d,1]"]
    assert fmt(code, [p[0] for p in code.payloads]) == ["m + r[d,1]", "r[d,1]", "m + r[d,1]", "r[d,1]"]
    assert fmt(code, code.key) == ["m"]


def test_chain_is_infeasible():
    verdict = synth_single(CHAIN, "s", "d")
    assert isinstance(verdict, Infeasible) and not verdict
    assert verdict.cut == "u" and verdict.terminal == "d"


def test_padded_graph_code():
    code = synth_single(PADDED, "s", "d")
    inst = Instance(PADDED, MULTICAST, "s")
    assert fmt(code, node_view(code, inst, "u").rows) == ["m + a[d,1,1]"]
    assert set(fmt(code, node_view(code, inst, "d").rows)) == {"m + a[d,1,1]", "a[d,1,1]"}
    assert verify(code, inst, bruteforce=True).ok


def test_unreachable_terminal():
    net = Network("sudx", [("s", "u"), ("x", "d")], ["d"])
    with pytest.raises(NoPath):
        synth_single(net, "s", "d")


def test_gadget_single_pad():
    b = CodeBuilder(PADDED)
    m = b.fresh("m", "s", MESSAGE)
    w = extract_witness(PADDED, "s", "d", "u")
    g = padding_gadget(b, w, "u", m, 0)
    assert g.handle == m ^ g.last_pad
    code = b.build(Instance(PADDED, MULTICAST, "s"), [m])
    inst = Instance(PADDED, MULTICAST, "s")
    assert gf2.in_span(g.last_pad, node_view(code, inst, "d").rows)
    assert check_secrecy_rank(code, inst)["u"]


def test_gadget_four_pads():
    net = ladder(4)
    b = CodeBuilder(net)
    m = b.fresh("m", "s", MESSAGE)
    alpha = b.fresh("alpha", "s")
    w = extract_witness(net, "s", "d", "u")
    g = padding_gadget(b, w, "u", m ^ alpha, 0, tag="x")
    assert b.symbols[-1].name == "a[x,4]"
    assert g.handle == m ^ alpha ^ g.pads[-1]
    inst = Instance(net, MULTICAST, "s")
    code = b.build(inst, [m])
    assert gf2.spans_independent(list(node_view(code, inst, "u").rows) + [alpha], [m])


# A type-2 block s..u with a third route through y; u is protected through y.
CASES = Network(
    ["s", "a", "b", "c", "y", "x", "u", "d"],
    [
        ("s", "a"), ("a", "b"), ("b", "u"), ("s", "c"), ("c", "u"),
        ("a", "y"), ("y", "u"), ("x", "y"), ("x", "d"), ("u", "d"),
    ],
    ["d"],
)


def _block(paths):
    return Block("s", "u", frozenset(), "type2", None, paths)


def test_r_paths_case_a():
    p1, p2 = ("s", "c", "u"), ("s", "a", "y", "u")
    assert build_r_paths(CASES, _block((p1, p2)), "y") == (p2, p1)


def test_r_paths_case_b_splices_at_last_intersection():
    p1, p2 = ("s", "a", "b", "u"), ("s", "c", "u")
    r1, r2 = build_r_paths(CASES, _block((p1, p2)), "y")
    assert r1 == ("s", "a", "y", "u") and r2 == p2
    r1, r2 = build_r_paths(CASES, _block((p2, p1)), "y")
    assert r1 == ("s", "a", "y", "u") and r2 == p2


def test_r_paths_case_c():
    net = Network(
        ["s", "a", "c", "y", "x", "u", "d"],
        [("s", "a"), ("a", "u"), ("s", "c"), ("c", "u"), ("s", "y"), ("y", "u"), ("x", "y"), ("x", "d"), ("u", "d")],
        ["d"],
    )
    p1, p2 = ("s", "a", "u"), ("s", "c", "u")
    assert build_r_paths(net, _block((p1, p2)), "y") == (("s", "y", "u"), p2)
    code = synth_single(net, "s", "d")
    assert verify(code, Instance(net, MULTICAST, "s"), bruteforce=True).ok


def test_r_paths_need_type2():
    with pytest.raises(ValueError):
        build_r_paths(CHAIN, block_decomposition(CHAIN, "s", "d").blocks[0], "s")


def test_two_terminal_fan():
    net = Network(
        ["s", "a", "b", "d1", "d2"],
        [("s", "a"), ("s", "b"), ("a", "d1"), ("b", "d1"), ("a", "d2"), ("b", "d2")],
        ["d1", "d2"],
    )
    code = synth_multicast(net, "s", ["d1", "d2"])
    inst = Instance(net, MULTICAST, "s")
    report = verify(code, inst, bruteforce=True)
    assert report.ok and not report.disagreements
    # sessions share m but nothing else
    sessions = {sym.session for sym in code.basis.symbols if sym.kind != MESSAGE}
    assert sessions == {"d1", "d2"}


def test_single_terminal_multicast_matches_single():
    a = synth_single(PADDED, "s", "d")
    b = synth_multicast(PADDED, "s", ["d"])
    assert a.payloads == b.payloads and a.basis == b.basis


def test_extension_to_keycast():
    net = ladder(4, ("d1", "d2"))
    code = extend_to_keycast(net, "s", "u", ["d1", "d2"])
    assert fmt(code, code.key) == ["m + m'"]
    inst = Instance(net, KEYCAST)
    report = verify(code, inst)
    assert report.ok and report.secrecy["s"]


def test_extension_needs_avoiding_paths():
    net = Network("tsabd", [("t", "s"), *DIAMOND.edges], ["d"])
    with pytest.raises(NoAvoidingPath) as info:
        extend_to_keycast(net, "s", "t", ["d"])
    assert info.value.terminal == "d"
    code = extend_to_keycast(net, "s", "a", ["d"])
    assert verify(code, Instance(net, KEYCAST)).ok


@settings(max_examples=100, deadline=None)
@given(st.integers(3, 9), st.floats(0.2, 0.6), st.integers(1, 3), st.integers(0, 10**6))
def test_synthesis_sound_and_witnesses_honest(n, p, t, seed):
    net = random_network(n, p, min(t, n - 1), seed)
    terms = sorted(net.terminals, key=net.index.__getitem__)
    for s in multicast_sources(net):
        result = synth_multicast(net, s, terms)
        if isinstance(result, Infeasible):
            assert result.cut in oracles.brute_cut_vertices(net, s, result.terminal)
            assert not oracles.alt_walk_exists(net, s, result.terminal, result.cut)
            continue
        inst = Instance(net, MULTICAST, s)
        report = verify(result, inst, bruteforce=len(result.basis) <= 14)
        assert report.ok, report.summary()


def test_type1_blocks_start_their_witness():
    for net in networks(200, seed=17):
        for s, d in source_terminal_pairs(net):
            dec = block_decomposition(net, s, d)
            for blk in dec.blocks[:-1]:
                if blk.kind == "type1" and is_protected(net, s, d, blk.end):
                    assert extract_witness(net, s, d, blk.end).colliders[0] == blk.start
