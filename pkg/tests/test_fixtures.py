import pytest

from clusterlab.fixtures import FixtureCase, load_fixtures, verify_fixture

CASES = load_fixtures()


def test_provenance_tags():
    assert {c.provenance for c in CASES} <= {"PAPER", "DERIVED", "TRIVIAL"}
    for c in CASES:
        if c.provenance == "PAPER":
            assert c.source


def test_suite_covers_every_table():
    sources = " ".join(c.source for c in CASES)
    for label in ("Table 1", "Table 2 (left)", "Table 2 (right)", "Table 3", "Table 4", "Table 5 (E6)",
                  "Table 5 (E7)", "Table 5 (E8)", "Section 9.5", "Section 10.4"):
        assert label in sources


def test_provenance_validated():
    with pytest.raises(ValueError):
        FixtureCase.from_json({"name": "x", "provenance": "GUESS", "matrix": {"n": 0, "m": 0, "rows": []}})
    with pytest.raises(ValueError):
        FixtureCase.from_json({"name": "x", "provenance": "PAPER", "matrix": {"n": 0, "m": 0, "rows": []}})


@pytest.mark.parametrize("case", CASES, ids=[c.name for c in CASES])
def test_fixture_replays(case):
    results = verify_fixture(case)
    assert results
    failed = [str(r) for r in results if not r.ok]
    assert not failed, failed
