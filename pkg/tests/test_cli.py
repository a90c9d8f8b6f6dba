import json

import pytest

from primaltop.cli import main

S1 = {"n": 3, "open": [0, 1, 7], "primal": {"generator": 4}}


@pytest.fixture
def write(tmp_path):
    def _write(doc, name="space.json"):
        path = tmp_path / name
        path.write_text(json.dumps(doc) if not isinstance(doc, str) else doc)
        return str(path)
    return _write


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_validate(write, capsys):
    assert run(["validate", write(S1)], capsys)[:2] == (0, "valid\n")
    code, _, err = run(["validate", write({**S1, "open": [0, 1, 2, 7]})], capsys)
    assert code == 2 and "not-union-closed(1, 2)" in err
    code, _, err = run(["validate", write({**S1, "primal": {"sets": [0, 7]}})], capsys)
    assert code == 2 and "contains-full" in err


@pytest.mark.parametrize("doc, message", [
    ({**S1, "extra": 1}, "unknown field"),
    ({**S1, "primal": {"generator": 4, "sets": [0]}}, "exactly one"),
    ({**S1, "primal": {"gen": 4}}, "unknown primal field"),
    ({"n": 3, "open": [0, 7]}, "missing field"),
    ({**S1, "n": "3"}, "'n' must be"),
    ("{not json", "Expecting"),
])
def test_malformed_documents(write, capsys, doc, message):
    code, _, err = run(["validate", write(doc)], capsys)
    assert code == 2 and message in err


def test_validate_sets_primal(write, capsys):
    assert run(["validate", write({**S1, "primal": {"sets": [0, 1, 2, 3]}})], capsys)[0] == 0


def test_missing_file(capsys):
    assert run(["validate", "/nonexistent/space.json"], capsys)[0] == 2


@pytest.mark.parametrize("expr, a, expected", [
    ("d(A)", "0b100", "0b110 = {1,2}"),
    ("intd(A)", "0b011", "0b001 = {0}"),
    ("cl(d(A))", "4", "0b110 = {1,2}"),
])
def test_compute(write, capsys, expr, a, expected):
    code, out, _ = run(["compute", write(S1), "--expr", expr, "--bind", f"A={a}"], capsys)
    assert code == 0 and out.strip() == expected


def test_compute_errors(write, capsys):
    path = write(S1)
    code, _, err = run(["compute", path, "--expr", "d(A"], capsys)
    assert code == 2 and "offset 3" in err
    assert run(["compute", path, "--expr", "d(A)"], capsys)[0] == 2
    assert run(["compute", path, "--expr", "d(A)", "--bind", "A=8"], capsys)[0] == 2
    assert run(["compute", path, "--expr", "d(A)", "--bind", "A=x"], capsys)[0] == 2


def test_compute_json(write, capsys):
    code, out, _ = run(["compute", write(S1), "--expr", "psi(A)", "--bind", "A=3",
                        "--format", "json"], capsys)
    assert code == 0 and json.loads(out)["value"] == 1


def test_check_all_n_pass(capsys):
    code, out, _ = run(["check", "--all-n", "2", "forall U:open: U <= psi(U)"], capsys)
    assert code == 0 and out.startswith("PASS over 16 spaces")


def test_check_all_n_fail_and_replay(write, capsys):
    code, out, _ = run(["check", "--all-n", "3", "--format", "json", "forall A: d(A) <= A"], capsys)
    assert code == 1
    doc = json.loads(out)
    a = doc["bindings"]["A"]
    code, out, _ = run(["compute", write(doc["space"]), "--expr", "d(A) - A",
                        "--bind", f"A={a}", "--format", "json"], capsys)
    assert code == 0 and json.loads(out)["value"] != 0


def test_check_single_space(write, capsys):
    path = write(S1)
    assert run(["check", path, "forall A,B: d(A|B) = d(A)|d(B)"], capsys)[:2] == (0, "PASS\n")
    code, out, _ = run(["check", path, "forall A: d(A) <= A"], capsys)
    assert code == 1 and "A = 0b100 = {2}" in out
    code, out, _ = run(["check", path, "forall U:open: ccc => U <= d(U)"], capsys)
    assert code == 0 and out.strip() == "HYPOTHESIS-NOT-MET"


def test_check_usage_errors(write, capsys):
    assert run(["check", "forall A: A = A"], capsys)[0] == 2
    assert run(["check", "--all-n", "2", "forall A: A ="], capsys)[0] == 2
    assert run(["check", "--all-n", "7", "forall A: A = A"], capsys)[0] == 2
    assert run(["frobnicate"], capsys)[0] == 2


def test_verify_paper_n2(tmp_path, capsys):
    out_file = tmp_path / "report.json"
    code, out, _ = run(["verify-paper", "--n", "2", "--format", "json", "--out", str(out_file)],
                       capsys)
    assert code == 0 and out.startswith("PASS")
    doc = json.loads(out_file.read_text())
    assert doc["space_count"] == 16 and doc["totals"]["fail"] == 0
    assert list(doc) == ["tool", "version", "command", "n", "space_count", "check_count",
                         "checks", "totals", "verdict"]
    assert "elapsed_seconds" not in doc


def test_verify_paper_text_and_timing(capsys):
    code, out, _ = run(["verify-paper", "--n", "1", "--timing"], capsys)
    assert code == 0 and "elapsed:" in out and out.splitlines()[-2].startswith("PASS:")


def test_verify_paper_capacity(capsys):
    code, _, err = run(["verify-paper", "--n", "9"], capsys)
    assert code == 2 and "bound" in err


@pytest.mark.parametrize("kind, n, expected", [("topologies", 3, "29"), ("primals", 3, "8"),
                                               ("spaces", 2, "16"), ("topologies", 4, "355")])
def test_enumerate_count(capsys, kind, n, expected):
    code, out, _ = run(["enumerate", kind, "--n", str(n), "--count"], capsys)
    assert code == 0 and out.strip() == expected


def test_enumerate_list(capsys):
    code, out, _ = run(["enumerate", "topologies", "--n", "2", "--list"], capsys)
    assert code == 0
    assert [json.loads(line) for line in out.splitlines()] == \
        [[0, 1, 2, 3], [0, 1, 3], [0, 2, 3], [0, 3]]
    code, out, _ = run(["enumerate", "spaces", "--n", "1", "--list"], capsys)
    assert [json.loads(line)["primal"]["generator"] for line in out.splitlines()] == [0, 1]
    code, out, _ = run(["enumerate", "primals", "--n", "1", "--list"], capsys)
    assert json.loads(out.splitlines()[1]) == {"generator": 1, "sets": [0]}
