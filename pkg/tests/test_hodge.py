import pytest

from clusterlab.fixtures import load_fixtures
from clusterlab.hodge import HodgeTable, PoincareSeries, curious_palindrome
from clusterlab.isolated import rank1_table

CASES = {c.name: c for c in load_fixtures()}


def test_rank1_table_palindrome():
    for b in range(1, 7):
        assert curious_palindrome(rank1_table(b))


def test_table3_palindrome():
    t = CASES["two-triangles"].table
    assert t.row(0) == [1, 0, 1, 0, 1, 0, 1, 0, 1]
    assert [x for x in t.row(1) if x] == [2, 2, 2]
    assert curious_palindrome(t)


def test_synthetic_table_fails():
    assert not curious_palindrome(HodgeTable(1, 1, {(0, 0): 1}))


def test_entry_range_enforced():
    with pytest.raises(ValueError):
        HodgeTable(1, 1, {(2, 0): 1})
    with pytest.raises(ValueError):
        HodgeTable(1, 1, {(3, 3): 1})
    with pytest.raises(ValueError):
        HodgeTable(1, 1, {(1, 1): -1})


def test_json_round_trip_and_rows():
    t = rank1_table(3)
    assert HodgeTable.from_json(t.to_json()) == t
    assert HodgeTable.from_rows(1, 1, [t.row(0), t.row(1)]) == t
    assert t.betti() == [1, 1, 3]


def test_evaluate_count_torus():
    torus = CASES["torus-3"].table
    for q in (2, 3, 5):
        assert torus.evaluate_count(q) == (q - 1) ** 3


def test_kunneth_of_rank1_tables():
    t = rank1_table(2).kunneth(rank1_table(2))
    assert t.betti() == [1, 2, 5, 4, 4]
    assert curious_palindrome(t)


def test_render_layout():
    text = rank1_table(3).render().splitlines()
    assert text[0].split() == ["H^0", "H^1", "H^2"]
    assert text[1].split() == ["k-p=0", "1", "1", "1"]
    assert text[2].split() == ["1", "2"]


def test_poincare_series():
    s = PoincareSeries((1, 2, 0, 1, 0))
    assert s.coefficients == (1, 2, 0, 1)
    assert str(s) == "1 + 2*t + t^3"
    assert s(2) == 13
    with pytest.raises(ValueError):
        PoincareSeries((1, -1))
