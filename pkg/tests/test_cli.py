import json

import pytest

from realtoric import pipeline
from realtoric.cli import EXIT_BUDGET, EXIT_INVALID, EXIT_MISMATCH, EXIT_OK, main
from realtoric.io import parse_complex


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_betti_json(capsys):
    code, out, _ = run(capsys, "betti", "F4", "--json")
    assert code == EXIT_OK
    assert json.loads(out)["betti"] == [1, 57, 264]


def test_betti_table(capsys):
    code, out, _ = run(capsys, "betti", "b3")
    assert code == EXIT_OK and "Euler characteristic" in out


def test_verify_ok_and_mismatch(capsys, monkeypatch):
    assert run(capsys, "verify", "G2")[0] == EXIT_OK
    monkeypatch.setitem(pipeline.KNOWN_BETTI, "G2", (1, 8))
    code, out, _ = run(capsys, "verify", "G2", "--json")
    assert code == EXIT_MISMATCH
    assert json.loads(out)["ok"] is False


def test_budget_exit(capsys, tmp_path):
    code, _, err = run(capsys, "betti", "F4", "--max-facets", "50", "--cache-dir", str(tmp_path))
    assert code == EXIT_BUDGET and "rerun" in err


def test_invalid(capsys):
    assert run(capsys, "betti", "X9")[0] == EXIT_INVALID
    assert run(capsys, "reduce", "E6", "--orbit-rep", "0101")[0] == EXIT_INVALID
    with pytest.raises(SystemExit) as exc:
        main(["nosuchcommand", "A2"])
    assert exc.value.code == EXIT_INVALID


def test_orbits(capsys):
    code, out, _ = run(capsys, "orbits", "E7", "--json")
    doc = json.loads(out)
    assert code == EXIT_OK and sum(o["size"] for o in doc["orbits"]) == 127


def test_complex_stats(capsys):
    code, out, _ = run(capsys, "complex", "E7", "--json")
    doc = json.loads(out)
    assert doc["vertices"] == 17642 and doc["facets"] == 2903040 and doc["cosets"] == 126


def test_complex_dump_round_trip(capsys, tmp_path):
    out = tmp_path / "k.txt"
    code, _, _ = run(capsys, "complex", "F4", "--orbit-rep", "0001", "--reduced", "--dump", "-o", str(out))
    assert code == EXIT_OK
    K, meta = parse_complex(out.read_text())
    assert meta["kind"] == "K_hat" and meta["key"] == "0001"
    code, text, _ = run(capsys, "complex", "F4", "--orbit-rep", "0001", "--reduced", "--json")
    assert json.loads(text)["fvector"] == K.f_vector()


def test_reduce_and_oracle(capsys):
    code, out, _ = run(capsys, "reduce", "D4", "--orbit-rep", "1000", "--json")
    doc = json.loads(out)
    assert code == EXIT_OK and doc["schema"] == "realtoric.trace/1"
    code, out, _ = run(capsys, "oracle", "C4", "--json")
    doc = json.loads(out)
    assert doc["closed_form_betti"] == [1, 27, 106] and doc["euler_characteristic"] == 80
