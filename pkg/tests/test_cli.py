import io
import json
import subprocess
import sys

import pytest

from stickydel import cli
from stickydel import systematic as S
from stickydel.channel import ChannelSpec, ball
from stickydel.sequences import parse_bits


def run(argv, stdin="", monkeypatch=None, capsys=None):
    monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def sh(monkeypatch, capsys):
    return lambda argv, stdin="": run(argv, stdin, monkeypatch, capsys)


def test_hex_round_trip():
    for bits in ["", "0", "1", "0001", "10110", "1" * 17]:
        x = parse_bits(bits)
        assert cli.unpack_hex(cli.pack_hex(x)) == x
    assert cli.pack_hex(parse_bits("10110")) == "5:16"
    with pytest.raises(ValueError):
        cli.unpack_hex("3:ff")
    with pytest.raises(ValueError):
        cli.unpack_hex("zz")


def test_decode_ns_example(sh):
    code, out, _ = sh(["decode-ns", "--n", "10", "--t", "3", "--l", "2", "--coset", "001211", "--json"], "010101\n")
    assert code == 0
    rec = json.loads(out)
    assert rec == {"ok": True, "word": "0100111001", "correction": "0,0,1,2,1,0", "p": 3}


def test_decode_ns_plain_and_failure(sh):
    code, out, err = sh(["decode-ns", "--n", "10", "--t", "3", "--l", "2", "--coset", "001211"], "010101\n01\n")
    assert code == 1
    assert out.split() == ["0100111001", "-"]
    assert "stage length" in err


def test_corrupt_seeded_member_of_ball(sh):
    argv = ["corrupt", "--t", "3", "--l", "2", "--seed", "7"]
    code, out, err = sh(argv, "0100111001\n")
    assert code == 0
    y = parse_bits(out.strip())
    assert y in ball(parse_bits("0100111001"), ChannelSpec(3, 2))
    assert "pattern" in json.loads(err)
    assert sh(argv, "0100111001\n")[1] == out
    code, out, _ = sh(argv + ["--json"], "0100111001\n")
    rec = json.loads(out)
    assert rec["input"] == "0100111001" and len(rec["pattern"]) == 6


def test_encode_corrupt_decode_pipeline(sh):
    msgs = ["0110100111010001", "0000000000000000", "1111111111111111"]
    code, enc, _ = sh(["encode", "--k", "16", "--t", "2", "--l", "2"], "\n".join(msgs) + "\n")
    assert code == 0
    P = S.derive_params(16, ChannelSpec(2, 2))
    assert [len(w) for w in enc.split()] == [P.N] * 3
    code, bad, _ = sh(["corrupt", "--t", "2", "--l", "2", "--seed", "3"], enc)
    code, dec, _ = sh(["decode", "--k", "16", "--t", "2", "--l", "2"], bad)
    assert code == 0 and dec.split() == msgs
    code, dec, _ = sh(["decode", "--k", "16", "--t", "2", "--l", "2", "--f0-method", "brute", "--json"], bad)
    assert [json.loads(line)["message"] for line in dec.splitlines()] == msgs


def test_hex_pipeline(sh):
    msg = "01101001110100010110"
    code, enc, _ = sh(["encode", "--k", "20", "--t", "1", "--l", "2", "--hex"], cli.pack_hex(parse_bits(msg)) + "\n")
    assert ":" in enc
    code, dec, _ = sh(["decode", "--k", "20", "--t", "1", "--l", "2", "--hex"], enc)
    assert code == 0 and cli.unpack_hex(dec.strip()) == parse_bits(msg)


def test_decode_failure_exit_one(sh):
    code, out, err = sh(["decode", "--k", "8", "--t", "1", "--l", "1"], "0101\n")
    assert code == 1 and out.strip() == "-"
    code, out, _ = sh(["decode", "--k", "8", "--t", "1", "--l", "1", "--json"], "0101\n")
    assert json.loads(out) == {"ok": False, "stage": "length"}


def test_usage_errors(sh):
    code, _, err = sh(["decode-ns", "--n", "6", "--t", "1", "--l", "1"], "01x1\n")
    assert code == 2 and "line 1" in err and "position 2" in err
    code, _, err = sh(["encode", "--k", "8", "--t", "1", "--l", "1"], "0101\n")
    assert code == 2 and "expected 8" in err
    assert sh(["params", "--k", "2", "--t", "1", "--l", "1"])[0] == 2
    assert sh(["params", "--k", "8", "--t", "0", "--l", "1"])[0] == 2
    assert sh(["codebook", "--n", "30", "--l", "1"])[0] == 2
    with pytest.raises(SystemExit) as ei:
        cli.main(["frobnicate"])
    assert ei.value.code == 2


def test_codebook_counts(sh):
    assert sh(["codebook", "--n", "10", "--t", "1", "--l", "1", "--count"])[1].strip() == "107"
    assert sh(["codebook", "--n", "8", "--l", "1", "--single", "--count"])[1].strip() == "13"
    code, out, _ = sh(["codebook", "--n", "6", "--t", "1", "--l", "1"])
    assert all(len(w) == 6 for w in out.split())


def test_params_json(sh):
    code, out, _ = sh(["params", "--k", "64", "--t", "2", "--l", "2", "--json"])
    d = json.loads(out)
    P = S.derive_params(64, ChannelSpec(2, 2))
    assert d == json.loads(json.dumps(P.to_dict()))
    assert d["N"] == 64 + d["n1"] + d["n2"]
    code, out, _ = sh(["params", "--k", "64", "--t", "2", "--l", "2"])
    assert "redundancy" in out


def test_stats_reports_both_primes(sh):
    code, out, _ = sh(["stats", "--n", "10", "--t", "1", "--l", "1"])
    rep = json.loads(out)
    assert [b["p"] for b in rep["branches"]] == [2, 3]
    assert rep["branches"][0]["size"] == 107
    assert rep["branches"][0]["meets_primary"]


def test_verify_small_suites(sh):
    for suite, n in [("mappings", "8"), ("nonsys", "6"), ("single", "4"), ("bounds", "8")]:
        code, out, _ = sh(["verify", "--suite", suite, "--max-n", n])
        rep = json.loads(out)
        assert code == 0 and rep["ok"] and rep["suite"] == suite


def test_output_file_and_workers(tmp_path, monkeypatch, capsys):
    src = tmp_path / "in.txt"
    dst = tmp_path / "out.txt"
    src.write_text("01101001\n11110000\n00000001\n")
    monkeypatch.setenv(cli.WORKERS_ENV, "2")
    assert cli.main(["encode", "--k", "8", "--t", "1", "--l", "1", "-i", str(src), "-o", str(dst)]) == 0
    monkeypatch.setenv(cli.WORKERS_ENV, "1")
    assert cli.main(["decode", "--k", "8", "--t", "1", "--l", "1", "-i", str(dst)]) == 0
    assert capsys.readouterr().out.split() == ["01101001", "11110000", "00000001"]
    monkeypatch.setenv(cli.WORKERS_ENV, "lots")
    assert cli.main(["encode", "--k", "8", "--t", "1", "--l", "1", "-i", str(src)]) == 2


def test_module_entry_point_pipe():
    enc = subprocess.run(
        [sys.executable, "-m", "stickydel", "encode", "--k", "8", "--t", "1", "--l", "2"],
        input="10011010\n", capture_output=True, text=True, check=True,
    ).stdout
    bad = subprocess.run(
        [sys.executable, "-m", "stickydel", "corrupt", "--t", "1", "--l", "2", "--seed", "1"],
        input=enc, capture_output=True, text=True, check=True,
    ).stdout
    dec = subprocess.run(
        [sys.executable, "-m", "stickydel", "decode", "--k", "8", "--t", "1", "--l", "2"],
        input=bad, capture_output=True, text=True, check=True,
    ).stdout
    assert dec.strip() == "10011010"
