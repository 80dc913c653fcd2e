import json

import pytest

from sterntwist.cli import BFile, BFileFormatError, parse_bfile, run
from sterntwist.config import ORDER_ENV_VAR
from sterntwist.regularity import h_series
from sterntwist.sequences import stern


def invoke(capsys, argv):
    code = run(argv)
    out = capsys.readouterr().out
    return code, out


def test_seq_text_matches_first_terms(capsys, stern_first_terms, twisted_first_terms):
    code, out = invoke(capsys, ["seq", "--kind", "s", "--from", "0", "--to", "28"])
    assert code == 0
    assert [int(line.split()[1]) for line in out.strip().splitlines()] == stern_first_terms
    code, out = invoke(capsys, ["seq", "--kind", "t", "--from", "0", "--to", "25"])
    assert code == 0
    assert [int(line.split()[1]) for line in out.strip().splitlines()] == twisted_first_terms


def test_seq_formats(capsys):
    code, out = invoke(capsys, ["seq", "--kind", "s", "--from", "2", "--to", "4", "--format", "csv"])
    assert code == 0 and out == "2,1\n3,2\n4,1\n"
    code, out = invoke(capsys, ["seq", "--kind", "s", "--from", "2", "--to", "4", "--format", "json"])
    payload = json.loads(out)
    assert payload == {"kind": "s", "from": 2, "to": 4, "values": ["1", "2", "1"]}
    code, out = invoke(capsys, ["seq", "--kind", "S", "--from", "11", "--to", "11"])
    assert out.strip() == "11 3 + 2*w"
    code, out = invoke(capsys, ["seq", "--kind", "Se", "--from", "6", "--to", "6", "--format", "json"])
    assert json.loads(out)["values"] == [["1", "2"]]


def test_seq_bad_range(capsys):
    code, _ = invoke(capsys, ["seq", "--kind", "s", "--from", "5", "--to", "1"])
    assert code == 2


def test_series_output(capsys):
    code, out = invoke(capsys, ["series", "--name", "stern", "--order", "5"])
    assert code == 0
    assert out.strip() == "0 + 1*z + 1*z^2 + 2*z^3 + 1*z^4 + 3*z^5"
    code, out = invoke(capsys, ["series", "--name", "u", "--order", "12", "--format", "json"])
    payload = json.loads(out)
    assert payload["coefficients"] == [
        "1", "0", "-2", "0", "0", "-2", "4", "2", "-6", "4", "2", "-6", "8",
    ]
    code, out = invoke(capsys, ["series", "--name", "A", "--order", "6", "--format", "json"])
    assert json.loads(out)["coefficients"] == ["1", "-2", "2", "0", "-4", "4", "2"]
    code, out = invoke(capsys, ["series", "--name", "B", "--order", "7", "--format", "json"])
    assert json.loads(out)["coefficients"] == ["1", "-2", "-2", "4", "0", "0", "6", "-6"]


def test_series_psi_needs_e(capsys):
    code, _ = invoke(capsys, ["series", "--name", "psi"])
    assert code == 2
    code, out = invoke(capsys, ["series", "--name", "psi", "--e", "1", "--format", "json"])
    assert code == 0
    assert json.loads(out)["coefficients"] == ["0", "1", "1", "2", "1", "1"]


def test_series_env_default_order(capsys, monkeypatch):
    monkeypatch.setenv(ORDER_ENV_VAR, "7")
    code, out = invoke(capsys, ["series", "--name", "stern", "--format", "json"])
    assert json.loads(out)["order"] == 7
    # an explicit flag wins over the environment
    code, out = invoke(capsys, ["series", "--name", "stern", "--order", "3", "--format", "json"])
    assert json.loads(out)["order"] == 3
    monkeypatch.setenv(ORDER_ENV_VAR, "not-a-number")
    code, out = invoke(capsys, ["series", "--name", "stern", "--format", "json"])
    assert json.loads(out)["order"] == 1024


def test_verify_exit_codes_and_formats(capsys):
    code, out = invoke(capsys, ["verify", "--suite", "matrices", "--max-e", "6", "--max-n", "512"])
    assert code == 0
    assert "DET-M" in out and "DET-FAMILIES" in out
    code, out = invoke(
        capsys,
        ["verify", "--suite", "identities", "--max-e", "5", "--format", "json"],
    )
    assert code == 0  # ID7 fails but is a flagged typo
    lines = [json.loads(line) for line in out.strip().splitlines()]
    by_id = {entry["id"]: entry for entry in lines}
    assert by_id["ID7"]["failures"] > 0
    assert by_id["ID7"]["status"] == "suspected-typo"
    assert by_id["STID-S"]["failures"] == 0
    code, _ = invoke(capsys, ["verify", "--suite", "mod2", "--max-n", "512"])
    assert code == 0
    code, _ = invoke(capsys, ["verify", "--suite", "palindrome", "--max-e", "6"])
    assert code == 0


def test_verify_deterministic_output(capsys):
    args = ["verify", "--suite", "identities", "--max-e", "4", "--format", "json"]
    _, first = invoke(capsys, args)
    _, second = invoke(capsys, args)
    assert first == second


def test_verify_jobs_do_not_change_output(capsys):
    serial = ["verify", "--suite", "identities", "--max-e", "4", "--format", "json"]
    parallel = serial + ["--jobs", "2"]
    _, expected = invoke(capsys, serial)
    _, got = invoke(capsys, parallel)
    assert got == expected


def test_scan(capsys):
    code, out = invoke(capsys, ["scan", "--identity", "ID3", "--e", "4", "--format", "json"])
    assert code == 0
    payload = json.loads(out)
    assert payload["scanned_range"]["4"] == {"lo": 0, "hi": 16, "open_right": False}
    code, _ = invoke(capsys, ["scan", "--identity", "NOPE", "--e", "2"])
    assert code == 2


def test_kernel(capsys):
    code, out = invoke(
        capsys,
        ["kernel", "--target", "stern", "--k", "2", "--depth", "4", "--order", "256",
         "--format", "json"],
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["ranks"] == [1, 2, 2, 2, 2]
    assert payload["stable"] is True
    code, out = invoke(
        capsys, ["kernel", "--target", "C", "--depth", "3", "--order", "128"]
    )
    assert code == 0 and "ranks by depth" in out
    code, _ = invoke(capsys, ["kernel", "--target", "stern", "--depth", "9", "--order", "16"])
    assert code == 2


def test_conjecture(capsys):
    code, out = invoke(
        capsys, ["conjecture", "--which", "gen", "--max-e", "3", "--order", "128",
                 "--format", "json"]
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["conjecture"] is True and payload["failures"] == 0
    code, _ = invoke(capsys, ["conjecture", "--which", "ab", "--max-e", "2", "--order", "64"])
    assert code == 0
    code, _ = invoke(capsys, ["conjecture", "--which", "gen", "--max-e", "9", "--order", "64"])
    assert code == 2


def test_count(capsys):
    code, out = invoke(capsys, ["count", "--pattern", "admissible", "--n", "11"])
    assert code == 0 and out.strip() == "5"
    code, out = invoke(capsys, ["count", "--pattern", "admissible", "--n", "11", "--weighted"])
    assert out.strip() == "3 + 2*w"
    code, out = invoke(capsys, ["count", "--pattern", "ones", "--n", "21"])
    assert out.strip() == "3"
    code, out = invoke(capsys, ["count", "--pattern", "factor11", "--n", "255"])
    assert out.strip() == "7"
    code, _ = invoke(capsys, ["count", "--pattern", "ones", "--n", "3", "--weighted"])
    assert code == 2


def test_parse_bfile():
    bfile = parse_bfile("0 0\n1 1\n2 1\n")
    assert bfile.entries == ((0, 0), (1, 1), (2, 1))
    assert parse_bfile("# comment\n5 3\n").entries == ((5, 3),)
    assert parse_bfile("  3   7  \n\n").entries == ((3, 7),)
    with pytest.raises(BFileFormatError):
        parse_bfile("1 2 3\n")
    with pytest.raises(BFileFormatError):
        parse_bfile("abc def\n")
    with pytest.raises(BFileFormatError):
        parse_bfile("2 1\n1 1\n")
    assert isinstance(parse_bfile("", "A000001"), BFile)


def test_oeis_check_stern(capsys, tmp_path, stern_first_terms):
    path = tmp_path / "b002487.txt"
    lines = [f"{n} {v}" for n, v in enumerate(stern_first_terms)]
    path.write_text("# header\n" + "\n".join(lines) + "\n")
    code, out = invoke(capsys, ["oeis-check", "--id", "A002487", "--bfile", str(path)])
    assert code == 0 and "29 entries match" in out
    path.write_text("\n".join(lines) + "\n29 999\n")
    code, out = invoke(capsys, ["oeis-check", "--id", "A002487", "--bfile", str(path)])
    assert code == 1 and "mismatch" in out


def test_oeis_check_binary_partitions(capsys, tmp_path):
    # independent oracle: coin-style dynamic program for partitions into
    # powers of two, emitted at doubled index like the catalogued sequence
    dp = [1] + [0] * 64
    power = 1
    while power <= 64:
        for n in range(power, 65):
            dp[n] += dp[n - power]
        power *= 2
    path = tmp_path / "b000123.txt"
    path.write_text("".join(f"{n} {dp[2 * n]}\n" for n in range(33)))
    code, out = invoke(capsys, ["oeis-check", "--id", "A000123", "--bfile", str(path)])
    assert code == 0, out


def test_oeis_check_h_series(capsys, tmp_path):
    coeffs = h_series(64).coeffs
    path = tmp_path / "b163659.txt"
    path.write_text("".join(f"{n} {coeffs[n]}\n" for n in range(65)))
    code, out = invoke(capsys, ["oeis-check", "--id", "A163659", "--bfile", str(path)])
    assert code == 0, out


def test_oeis_check_errors(capsys, tmp_path):
    code, _ = invoke(capsys, ["oeis-check", "--id", "A002487", "--bfile", str(tmp_path / "nope")])
    assert code == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("1 1\n1 2\n")
    code, _ = invoke(capsys, ["oeis-check", "--id", "A002487", "--bfile", str(bad)])
    assert code == 2
    empty = tmp_path / "far.txt"
    empty.write_text("999999999 1\n")
    code, _ = invoke(capsys, ["oeis-check", "--id", "A002487", "--bfile", str(empty), "--limit", "10"])
    assert code == 2


def test_usage_errors(capsys):
    assert run(["nonsense"]) == 2
    assert run([]) == 2
    assert run(["seq", "--kind", "x", "--from", "0", "--to", "1"]) == 2
