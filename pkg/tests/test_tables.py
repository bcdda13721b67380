"""Row-by-row comparison with the published tables.

Each printed cell is its own test so a wrong printed digit shows up as one
red cell rather than hiding the rest of the row.
"""
import pytest

from hyperpairs.identities import IdentityInstance, rhs_sum
from hyperpairs.tables import TABLE_1, TABLE_2, matches_printed, truncate_like

# high-precision values of both sides (3 terms for table 1, 4 for table 2)
REFERENCE_1 = {
    (0, 0, 0.17): (1.0288813451190032, 1.0288813451190015),
    (0, 2, 0.17): (1.0344878191148285, 1.0344878191146490),
    (1, 1, 0.17): (1.0258250454427745, 1.0258250454427744),
    (1, 3, 0.17): (1.0230034607370343, 1.0230034607370230),
    (0, 0, 17.0): (23.04933023, 23.04488709),
}
REFERENCE_2 = {
    (0, 0, 0.17): (1.0521754852662355, 1.0521754852662355),
    (1, 1, 0.17): (1.0307786670736816, 1.0307786670736816),
}


def _cells(which, rows, p, terms):
    for row in rows:
        for side in ("lhs", "rhs"):
            yield pytest.param(row, p, terms, side, id=f"table{which} {row.key} {side}")


@pytest.mark.parametrize("row, p, terms, side", [*_cells(1, TABLE_1, 0, 3), *_cells(2, TABLE_2, 1, 4)])
def test_printed_cell(row, p, terms, side):
    rep = rhs_sum(IdentityInstance.munu(row.mu, row.nu, p, row.z), terms)
    value = rep.lhs if side == "lhs" else rep.rhs
    printed = getattr(row, side)
    assert matches_printed(value, printed), f"computed {value!r}, printed {printed}"


@pytest.mark.parametrize("key, ref", REFERENCE_1.items())
def test_table_1_high_precision(key, ref):
    mu, nu, z = key
    rep = rhs_sum(IdentityInstance.munu(mu, nu, 0, z), 3)
    assert rep.lhs == pytest.approx(ref[0], rel=1e-9 if z > 1 else 4e-16)
    assert rep.rhs == pytest.approx(ref[1], rel=1e-9 if z > 1 else 4e-16)


@pytest.mark.parametrize("key, ref", REFERENCE_2.items())
def test_table_2_high_precision(key, ref):
    mu, nu, z = key
    rep = rhs_sum(IdentityInstance.munu(mu, nu, 1, z), 4)
    assert rep.lhs == pytest.approx(ref[0], rel=4e-16)
    assert rep.rhs == pytest.approx(ref[1], rel=4e-16)


def test_table_2_even_rows_match_degree_cutoff():
    # the printed RHS of the even rows corresponds to stopping at L = 6 (three terms)
    for row in TABLE_2:
        rep = rhs_sum(IdentityInstance.munu(row.mu, row.nu, 1, row.z), 4, max_L=6)
        assert matches_printed(rep.rhs, row.rhs)


def test_matches_printed_rule():
    assert matches_printed(1.0288813451190033, "1.028881345119003")
    assert matches_printed(1.01777403286, "1.01777403")
    assert not matches_printed(1.0230034607370343, "1.0230034607369")
    assert matches_printed(1.0258250454427744, "1.0258250454427744")
    assert not matches_printed(float("nan"), "1.0")


def test_truncate_like():
    assert truncate_like(1.0140011741, "1.0140011") == "1.0140011"
    assert truncate_like(23.04933, "23.049") == "23.049"
    assert truncate_like(1.99999, "1.9") == "1.9"
