import json

import pytest

from clusterlab.cli import main
from clusterlab.cluster import ExtendedExchangeMatrix, freeze, mutate_path
from clusterlab.isolated import isotypic_table
from clusterlab.quivers import louise_certificate

EXAMPLE_4 = {"n": 4, "m": 0, "rows": [[0, -1, -1, -1], [1, 0, 1, -1], [1, -1, 0, 1], [1, 1, -1, 0]]}
D4 = {"n": 4, "m": 2, "rows": [[0, 1, 1, 1], [-1, 0, 0, 0], [-1, 0, 0, 0], [-1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]]}
TAIL = {"n": 4, "m": 0, "rows": [[0, 1, 1, 0], [-1, 0, 1, 0], [-1, -1, 0, 1], [0, 0, -1, 0]]}


@pytest.fixture
def write(tmp_path):
    def _write(name, data):
        path = tmp_path / name
        path.write_text(json.dumps(data))
        return str(path)

    return _write


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_mutate_example_child(capsys, write):
    child = freeze(ExtendedExchangeMatrix.from_json(EXAMPLE_4), [2, 3, 4])
    code, out, _ = run(capsys, "mutate", "--matrix", write("c.json", child.to_json()), "--at", "1")
    assert code == 0
    mutated = ExtendedExchangeMatrix.from_json(json.loads(out))
    assert mutated == mutate_path(child, [1])
    # vertex labels 2, 3, 4: edges 3 -> 2 and 2 -> 4 only
    assert mutated.principal.tolist() == [[0, -1, 1], [1, 0, 0], [-1, 0, 0]]


def test_mutate_path_list(capsys, write):
    code, out, _ = run(capsys, "mutate", "--matrix", write("m.json", EXAMPLE_4), "--at", "1,2,2,1")
    assert code == 0 and json.loads(out) == EXAMPLE_4


def test_poincare_d4(capsys, write):
    code, out, _ = run(capsys, "poincare", "--matrix", write("d4.json", D4))
    assert code == 0
    factored, expanded = out.splitlines()
    assert factored == "(1+t)(1+t+...+t^5)"
    assert expanded == "1 + 2*t + 2*t^2 + 2*t^3 + 2*t^4 + 2*t^5 + t^6"


def test_verify_fixtures(capsys):
    code, out, _ = run(capsys, "verify-fixtures")
    assert code == 0
    assert out.strip().endswith("fixture checks passed")


def test_separating_and_quiver(capsys, write):
    path = write("m.json", EXAMPLE_4)
    code, out, _ = run(capsys, "separating-edges", "--matrix", path)
    assert code == 0 and json.loads(out)["separating"] == [[2, 1], [3, 1], [4, 1]]
    code, out, _ = run(capsys, "quiver", "--matrix", path)
    assert json.loads(out)["edges"][0] == [2, 1, 1]


def test_acyclic_verdicts(capsys, write):
    markov = {"n": 3, "m": 0, "rows": [[0, 2, -2], [-2, 0, 2], [2, -2, 0]]}
    code, out, _ = run(capsys, "acyclic", "--matrix", write("k.json", markov))
    assert code == 0 and json.loads(out)["verdict"] == "no"
    code, out, _ = run(capsys, "acyclic", "--matrix", write("t.json", TAIL))
    assert json.loads(out)["verdict"] == "yes"


def test_louise_and_verify(capsys, write, tmp_path):
    m = write("m.json", EXAMPLE_4)
    cert_path = str(tmp_path / "cert.json")
    code, out, _ = run(capsys, "louise", "--matrix", m, "--output", cert_path)
    assert code == 0
    with open(cert_path) as fh:
        assert json.load(fh) == louise_certificate(ExtendedExchangeMatrix.from_json(EXAMPLE_4)).to_json()
    assert run(capsys, "verify-certificate", "--matrix", m, "--certificate", cert_path)[0] == 0
    bad = write("bad.json", {"path": [], "leaf": True})
    assert run(capsys, "verify-certificate", "--matrix", m, "--certificate", bad)[0] == 1


def test_louise_unknown_exit_code(capsys, write):
    markov = {"n": 3, "m": 0, "rows": [[0, 2, -2], [-2, 0, 2], [2, -2, 0]]}
    code, _, err = run(capsys, "louise", "--matrix", write("k.json", markov), "--budget", "50")
    assert code == 1 and "no certificate" in err


def test_standard_cohomology_labels(capsys, write, tmp_path):
    m = write("d4.json", D4)
    code, out, _ = run(capsys, "standard-cohomology", "--matrix", m)
    assert code == 0
    lines = out.splitlines()
    assert lines[1].split() == ["k-p=0", "1", "2", "2", "2", "2", "2", "1"]
    assert lines[-1] == "local acyclicity: unverified hypothesis"
    cert = write("c.json", louise_certificate(ExtendedExchangeMatrix.from_json(D4)).to_json())
    code, out, _ = run(capsys, "standard-cohomology", "--matrix", m, "--certificate", cert, "--json")
    data = json.loads(out)
    assert data == {"dims": [1, 2, 2, 2, 2, 2, 1], "status": "verified by Louise certificate"}
    bad = write("bad.json", {"path": [], "leaf": True})
    assert run(capsys, "standard-cohomology", "--matrix", m, "--certificate", bad)[0] == 1


def test_count_points_and_fit(capsys, write, tmp_path):
    m = write("t.json", TAIL)
    code, out, _ = run(capsys, "count-points", "--matrix", m, "--q", "3,5,7,9,11,13", "--threads", "2")
    assert code == 0
    samples = json.loads(out)
    assert [s["count"] for s in samples] == [q**4 + 1 for q in (3, 5, 7, 9, 11, 13)]
    assert [s["suspect"] for s in samples] == [False] * 6
    s = write("s.json", samples)
    code, out, _ = run(capsys, "fit", "--samples", s)
    assert code == 0 and out.strip() == "q^4 + 1"
    table = write("table.json", {"n": 4, "m": 0, "entries": [[0, 0, 1], [2, 2, 1], [3, 2, 1], [4, 4, 1]]})
    code, out, _ = run(capsys, "check-grothendieck", "--table", table, "--samples", s)
    assert code == 0


def test_count_points_suspect_and_input_errors(capsys, write):
    m = write("r.json", {"n": 1, "m": 1, "rows": [[0], [3]]})
    code, out, _ = run(capsys, "count-points", "--matrix", m, "--q", "3,7")
    assert code == 0
    assert [s["suspect"] for s in json.loads(out)] == [True, False]
    assert run(capsys, "count-points", "--matrix", m, "--q", "6")[0] == 2


def test_check_grothendieck_failure(capsys, write):
    table = write("t.json", {"n": 1, "m": 1, "entries": [[0, 0, 1], [1, 1, 1], [2, 2, 1]]})
    samples = write("s.json", [{"q": 3, "count": 100, "suspect": False}])
    code, out, _ = run(capsys, "check-grothendieck", "--table", table, "--samples", samples)
    assert code == 1 and "predicts" in out


def test_check_table(capsys, write):
    table = write("t.json", isotypic_table_json(3))
    m = write("m.json", {"n": 1, "m": 1, "rows": [[0], [3]]})
    code, out, _ = run(capsys, "check-table", "--table", table, "--matrix", m)
    assert code == 0
    assert "PASS  curious palindrome" in out and "PASS  isotypic table" in out
    broken = write("b.json", {"n": 1, "m": 1, "entries": [[0, 0, 2], [2, 2, 1]]})
    assert run(capsys, "check-table", "--table", broken)[0] == 1


def isotypic_table_json(b):
    from clusterlab.exactlinalg import IntMatrix

    return isotypic_table(IntMatrix([[b]]))[1].to_json()


def test_isolated_hodge(capsys, write):
    m = write("m.json", {"n": 1, "m": 1, "rows": [[0], [3]]})
    code, out, _ = run(capsys, "isolated-hodge", "--matrix", m)
    data = json.loads(out)
    assert code == 0
    assert data["table"] == isotypic_table_json(3)
    assert [c["j"] for c in data["components"]] == [0, 1, 1]
    assert run(capsys, "isolated-hodge", "--matrix", write("a.json", EXAMPLE_4))[0] == 2


def test_cover_and_gsv(capsys, write):
    m = write("r.json", {"n": 1, "m": 2, "rows": [[0], [2], [3]]})
    code, out, _ = run(capsys, "cover", "--matrix", m)
    data = json.loads(out)
    assert code == 0 and data["d"] == 1
    r = data["rows"]
    assert [sum(r[i][j] * x for j, x in enumerate([0, 2, 3])) for i in range(3)] == [0, 1, 0]
    code, out, _ = run(capsys, "gsv", "--matrix", write("d4.json", D4))
    assert code == 0 and json.loads(out)["determinant"] != 0
    assert run(capsys, "gsv", "--matrix", m)[0] == 2  # odd n + m


def test_input_errors(capsys, write, tmp_path):
    assert run(capsys, "mutate", "--matrix", str(tmp_path / "missing.json"), "--at", "1")[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "quiver", "--matrix", str(bad))[0] == 2
    assert run(capsys, "quiver", "--matrix", write("x.json", {"n": 2, "m": 0, "rows": [[0, 1], [1, 0]]}))[0] == 2
    assert run(capsys, "mutate", "--matrix", write("m.json", EXAMPLE_4), "--at", "7")[0] == 2
    assert run(capsys, "no-such-command")[0] == 2
    assert run(capsys, "--threads", "0", "verify-fixtures")[0] == 2


def test_threads_env_fallback(capsys, write, monkeypatch):
    monkeypatch.setenv("CLUSTERLAB_THREADS", "3")
    m = write("r.json", {"n": 1, "m": 1, "rows": [[0], [1]]})
    code, out, _ = run(capsys, "count-points", "--matrix", m, "--q", "5")
    assert code == 0 and json.loads(out)[0]["count"] == 21


def test_output_matches_library(capsys, write):
    """The CLI is a thin adapter: its JSON equals the library result."""
    b = ExtendedExchangeMatrix.from_json(D4)
    code, out, _ = run(capsys, "louise", "--matrix", write("d4.json", D4))
    assert json.loads(out) == louise_certificate(b).to_json()
