import json

import pytest

from lorflat.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, main
from lorflat.io import parse_algebra

A2 = {"dim": 2, "basis": ["eb", "e"], "metric": [[0, 1], [1, 0]], "brackets": {"0,1": [0, 1]}}
HEIS = {"dim": 3, "metric": [[1, 0, 0], [0, 1, 0], [0, 0, 1]], "brackets": {"0,1": [0, 0, 1]}}
G6 = {"lambda": 1, "rep": {"uvecs": [[1]], "adim": 1}}


def write(path, obj):
    path.write_text(json.dumps(obj))
    return str(path)


def run(capsysbinary, *argv):
    code = main(list(argv))
    out = capsysbinary.readouterr()
    return code, out.out.decode(), out.err.decode()


def test_check_a2(tmp_path, capsysbinary):
    code, out, _ = run(capsysbinary, "check", write(tmp_path / "a2.json", A2), "--format", "json")
    assert code == EXIT_OK
    flags = json.loads(out)["flags"]
    assert flags["flat"] and flags["lorentzian"]
    assert not flags["novikov"] and not flags["unimodular"]


def test_check_heisenberg_fails_with_witness(tmp_path, capsysbinary):
    code, out, _ = run(capsysbinary, "check", write(tmp_path / "h.json", HEIS))
    assert code == EXIT_FAIL
    # sectional curvature of span(e1, e2) in the Heisenberg algebra is -3/4
    assert "[FAIL] curvature_zero" in out and '"-3/4"' in out


def test_build_then_check_with_witness(tmp_path, capsysbinary):
    params = write(tmp_path / "p.json", G6)
    out = tmp_path / "g6.json"
    code, _, _ = run(capsysbinary, "build", "--family", "g6", "--params", params, "-o", str(out))
    assert code == EXIT_OK
    assert parse_algebra(out.read_bytes()).dim == 5
    code, text, _ = run(capsysbinary, "check", str(out), "--witness", "e", "--format", "json")
    assert code == EXIT_OK
    rep = json.loads(text)
    assert rep["flags"]["geodesic"] in (True, False)
    assert any(c["name"].startswith("witness: ") for c in rep["checks"])


def test_check_auto_witness(tmp_path, capsysbinary):
    code, text, _ = run(capsysbinary, "check", write(tmp_path / "a2.json", A2), "--witness", "auto", "--format", "json")
    assert code == EXIT_OK
    assert json.loads(text)["data"]["witness"]["kind"] == "null"


def test_check_spacelike_witness_fails(tmp_path, capsysbinary):
    code, _, _ = run(capsysbinary, "check", write(tmp_path / "a2.json", A2), "--witness", "1,1")
    assert code == EXIT_FAIL


def test_build_invalid_params(tmp_path, capsysbinary):
    params = write(tmp_path / "p.json", {**G6, "lambda": 0})
    code, _, err = run(capsysbinary, "build", "--family", "g6", "--params", params, "-o", str(tmp_path / "x.json"))
    assert code == EXIT_FAIL and "lambda!=0" in err


def test_validate_params(tmp_path, capsysbinary):
    good = write(tmp_path / "s.json", {"family": "g6", "params": G6})
    assert run(capsysbinary, "validate-params", good)[0] == EXIT_OK
    bad = write(tmp_path / "b.json", {"family": "g3", "params": {"rep": {"uvecs": [[1]], "adim": 1}, "A1": [[1, 0], [0, 0]]}})
    code, out, _ = run(capsysbinary, "validate-params", bad)
    assert code == EXIT_FAIL and "[A1,rho(a)]=0" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["check", "missing.json"],
        ["frobnicate"],
        ["corpus", "models"],
        ["corpus", "models", "--dim", "11"],
    ],
)
def test_usage_errors(tmp_path, capsysbinary, argv):
    assert run(capsysbinary, *argv)[0] == EXIT_USAGE


def test_float_rejected(tmp_path, capsysbinary):
    path = tmp_path / "f.json"
    path.write_text('{"dim": 1, "metric": [[0.5]]}')
    code, _, err = run(capsysbinary, "check", str(path))
    assert code == EXIT_USAGE and "0.5" in err


def test_json_output_deterministic(tmp_path, capsysbinary):
    path = write(tmp_path / "a2.json", A2)
    first = run(capsysbinary, "check", path, "--witness", "auto", "--format", "json")[1]
    second = run(capsysbinary, "check", path, "--witness", "auto", "--format", "json")[1]
    assert first == second
    assert first.endswith("\n")


def test_corpus_lowdim(tmp_path, capsysbinary):
    code, out, _ = run(capsysbinary, "corpus", "lowdim", "-o", str(tmp_path / "c"))
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines == sorted(lines, key=lambda s: s.split("] ", 1)[1].split(":")[0])
    assert all(line.startswith("[PASS]") for line in lines)
    assert len(list((tmp_path / "c").iterdir())) > 0


@pytest.mark.parametrize("dim", [6, 7])
def test_corpus_models(tmp_path, capsysbinary, dim):
    code, out, _ = run(capsysbinary, "corpus", "models", "--dim", str(dim), "-o", str(tmp_path))
    assert code == EXIT_OK
    assert len([l for l in out.splitlines() if l.startswith("[PASS]")]) == 6
    assert (tmp_path / f"g3-dim{dim}.spec.json").exists()


def test_extend_classical(tmp_path, capsysbinary):
    inp = {
        "base": {"dim": 2, "metric": [[1, 0], [0, 1]]},
        "A": [[0, 0], [0, 0]],
        "D": [[0, 1], [-1, 0]],
    }
    out = tmp_path / "x.json"
    code, _, _ = run(capsysbinary, "extend", "classical", "--input", write(tmp_path / "i.json", inp), "-o", str(out))
    assert code == EXIT_OK
    alg = parse_algebra(out.read_bytes())
    assert alg.dim == 4
    assert run(capsysbinary, "check", str(out))[0] == EXIT_OK


def test_extend_classical_rejects(tmp_path, capsysbinary):
    inp = {"base": {"dim": 2, "metric": [[1, 0], [0, 1]]}, "A": [[0, 0], [0, 0]], "D": [[1, 0], [0, 0]]}
    code, _, err = run(capsysbinary, "extend", "classical", "--input", write(tmp_path / "i.json", inp))
    assert code == EXIT_FAIL and "D-A skew" in err


def test_extend_generalized(tmp_path, capsysbinary):
    inp = {"hmetric": [[1]], "alpha": 1}
    out = tmp_path / "x.json"
    code, _, _ = run(capsysbinary, "extend", "generalized", "--input", write(tmp_path / "i.json", inp), "-o", str(out))
    assert code == EXIT_OK
    assert parse_algebra(out.read_bytes()).brackets[0][2] == (0, 0, -1)
