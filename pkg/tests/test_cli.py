import json
import subprocess
import sys

import pytest

from keycast.cli import main

CHAIN = {"vertices": ["s", "u", "d"], "edges": [["s", "u"], ["u", "d"]], "terminals": ["d"], "source": "s", "mode": "multicast"}
PADDED = {
    "vertices": ["x", "s", "u", "d"],
    "edges": [["x", "s"], ["s", "u"], ["u", "d"], ["x", "d"]],
    "terminals": ["d"],
    "source": "s",
    "mode": "multicast",
}
DIAMOND = {
    "vertices": ["s", "a", "b", "d"],
    "edges": [["s", "a"], ["s", "b"], ["a", "d"], ["b", "d"]],
    "terminals": ["d"],
    "source": "s",
    "mode": "multicast",
}
FAN = {
    "vertices": ["s1", "s2", "u1", "u2", "d1", "d2"],
    "edges": [["s1", "u1"], ["u1", "d1"], ["u1", "d2"], ["s2", "u2"], ["u2", "d1"], ["u2", "d2"]],
    "terminals": ["d1", "d2"],
    "mode": "keycast",
}


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_analyze(capsys, tmp_json, tmp_path):
    code, out, err = run(capsys, "analyze", tmp_json("chain.json", CHAIN))
    assert code == 0 and "cut u: UNPROTECTED" in out and not err
    dot = tmp_path / "g.dot"
    code, out, _ = run(capsys, "analyze", tmp_json("p.json", PADDED), "--w-sets", "u", "--dot", str(dot))
    assert "cut u: protected (ℓ=1)" in out
    assert "W-sets for (s, u): W_u={x, s} W_su={x, s} W_bar={}" in out
    assert dot.read_text().startswith("digraph")


def test_parse_and_model_errors(capsys, tmp_json):
    assert run(capsys, "analyze", tmp_json("bad.json", "{not json"))[0] == 2
    assert run(capsys, "analyze", tmp_json("extra.json", {**CHAIN, "colour": "red"}))[0] == 2
    assert run(capsys, "analyze", tmp_json("nosrc.json", {**CHAIN, "source": None}))[0] == 2
    cyc = {**CHAIN, "edges": [["s", "u"], ["u", "s"], ["u", "d"]]}
    code, _, err = run(capsys, "analyze", tmp_json("cyc.json", cyc))
    assert code == 3 and "model violation" in err
    outdeg = {**CHAIN, "edges": CHAIN["edges"] + [["d", "s"]]}
    assert run(capsys, "analyze", tmp_json("term.json", outdeg))[0] == 3
    assert run(capsys, "analyze", "/nonexistent/file.json")[0] == 2


def test_synth_and_verify(capsys, tmp_json, tmp_path):
    out_path = tmp_path / "code.json"
    inst = tmp_json("diamond.json", DIAMOND)
    code, out, err = run(capsys, "synth", inst, "-o", str(out_path))
    assert code == 0 and "feasible: 2 symbols" in out and not err
    code, out, _ = run(capsys, "verify", inst, str(out_path), "--bruteforce")
    assert code == 0 and "agrees" in out

    data = json.loads(out_path.read_text())
    data["edges"][0]["payload"] = ["m"]
    data["edges"][2]["payload"] = ["m"]
    tampered = tmp_json("tampered.json", data)
    code, out, _ = run(capsys, "verify", inst, tampered)
    assert code == 4 and "FAIL a" in out


def test_synth_infeasible(capsys, tmp_json):
    code, out, _ = run(capsys, "synth", tmp_json("chain.json", CHAIN))
    assert code == 1 and "cut u is unprotected" in out


def test_synth_keycast(capsys, tmp_json):
    code, out, _ = run(capsys, "synth", tmp_json("fan.json", FAN))
    assert code == 0 and "key m_1 + m_2" in out


def test_synth_extension(capsys, tmp_json):
    behind = {**DIAMOND, "vertices": ["t", *DIAMOND["vertices"]], "edges": DIAMOND["edges"] + [["t", "s"]]}
    code, out, _ = run(capsys, "synth", tmp_json("p.json", behind), "--second-source", "t")
    assert code == 1 and "avoiding" in out
    fan_src = {**DIAMOND, "vertices": ["t", *DIAMOND["vertices"]], "edges": DIAMOND["edges"] + [["t", "a"]]}
    code, out, _ = run(capsys, "synth", tmp_json("f.json", fan_src), "--second-source", "t")
    assert code == 0 and "key m + m'" in out


def test_verify_bad_code_file(capsys, tmp_json):
    inst = tmp_json("diamond.json", DIAMOND)
    assert run(capsys, "verify", inst, tmp_json("c.json", "{]"))[0] == 2
    assert run(capsys, "verify", inst, tmp_json("c2.json", {"symbols": []}))[0] == 2


def test_gen_is_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    args = ["--vertices", "7", "--edge-prob", "0.5", "--terminals", "2", "--seed", "3"]
    assert run(capsys, "gen", *args, "-o", str(a))[0] == 0
    assert run(capsys, "gen", *args, "-o", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()
    data = json.loads(a.read_text())
    assert len(data["terminals"]) == 2 and data["mode"] == "keycast"
    assert all(e[0] not in data["terminals"] for e in data["edges"])
    assert run(capsys, "gen", "--vertices", "1", "--edge-prob", "0.5")[0] == 2
    assert run(capsys, "gen", "--vertices", "5", "--edge-prob", "1.5")[0] == 2


def test_gen_multicast(capsys):
    code, out, _ = run(capsys, "gen", "--vertices", "6", "--edge-prob", "0.9", "--seed", "1", "--mode", "multicast")
    assert code == 0 and json.loads(out)["mode"] == "multicast"


@pytest.mark.parametrize("name", ["fig1a", "fig1b", "fig1c", "fig1d", "fig1e"])
def test_demos(capsys, name):
    code, out, err = run(capsys, "demo", name)
    assert code == 0 and "MISMATCH" not in out and not err


def test_reports_are_byte_identical(capsys, tmp_json):
    inst = tmp_json("fan.json", FAN)
    first = run(capsys, "synth", inst)[1]
    assert run(capsys, "synth", inst)[1] == first


def test_unknown_command_exits_2():
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "keycast", "demo", "fig1e"], capture_output=True, text=True)
    assert proc.returncode == 0 and "m_1 + m_2" in proc.stdout
