import logging
import random

from mpmath import mp
import pytest

from services.errors import ArcDomainError, DegenerateInputError, SmallArcAdvisedError
from services.large_arc_service import (
    MADHAVA_ANCHORS,
    Branch,
    arc_difference,
    arcsin_large,
    build_madhava_table,
    format_madhava_table_for_api,
    kojya_from_jya,
    max_error_bound,
    oracle_arcsin_thirds,
    oracle_jya_thirds,
)
from services.sexagesimal_service import format_sexagesimal
from services.trig_oracle_service import to_fraction, to_mpf


@pytest.fixture(scope="module")
def table():
    return build_madhava_table()


class TestMadhavaTable:
    def test_anchors(self, table):
        for arc, expected in MADHAVA_ANCHORS.items():
            assert table.jya(arc // 810000) == expected

    def test_no_anchor_warning(self, caplog):
        with caplog.at_level(logging.WARNING):
            build_madhava_table()
        assert not caplog.records

    def test_shape(self, table, r):
        jyas = [jya for _, jya in table.entries]
        assert len(jyas) == 24
        assert all(a < b for a, b in zip(jyas, jyas[1:]))
        assert table.jya(24) == r.thirds
        assert table.arc(16) == 3600 * 3600

    def test_entries_are_plain_ints(self, table):
        assert all(type(arc) is int and type(jya) is int for arc, jya in table.entries)
        assert type(oracle_jya_thirds(810000)) is int

    def test_kojya_is_complement(self, table):
        assert table.kojya(16) == table.jya(8) == 6187944
        assert table.kojya(24) == 0
        with pytest.raises(ArcDomainError):
            table.kojya(0)

    def test_api_rows(self, table):
        rows = format_madhava_table_for_api(table)
        assert rows[0] == {
            "j": 1, "arc_minutes": 225, "jya_thirds": 809422, "jya_sexagesimal": "224'50''22'''"
        }


class TestKojya:
    def test_worked_value(self, r):
        assert kojya_from_jya(10800000, r) == 6043393

    def test_ends(self, r):
        assert kojya_from_jya(0, r) == r.thirds
        assert kojya_from_jya(r.thirds, r) == 0

    def test_domain(self, r):
        with pytest.raises(ArcDomainError):
            kojya_from_jya(r.thirds + 1, r)


class TestArcDifference:
    def test_worked_value(self, r):
        p = arc_difference(10717834, 6187944, 10800000, 6043393, r)
        assert round(p) == 166274

    def test_equal_jyas(self, r):
        assert arc_difference(5, 7, 5, 9, r) == 0

    def test_sign_follows_jya_difference(self, r):
        assert arc_difference(10800000, 6043393, 10717834, 6187944, r) < 0

    def test_degenerate(self, r):
        with pytest.raises(DegenerateInputError):
            arc_difference(r.thirds, 0, r.thirds - 1, 0, r)

    def test_tangent_identity(self, r):
        with mp.workdps(40):
            radius = to_mpf(r.thirds)
            theta1 = mp.pi / 6
            theta2 = theta1 + mp.mpf("0.01")
            p = arc_difference(
                to_fraction(radius * mp.sin(theta1)), to_fraction(radius * mp.cos(theta1)),
                to_fraction(radius * mp.sin(theta2)), to_fraction(radius * mp.cos(theta2)),
                r,
            )
            assert abs(to_mpf(p) - 2 * radius * mp.tan((theta2 - theta1) / 2)) <= radius * mp.mpf(10) ** -9


class TestArcsinLarge:
    def test_three_thousand_minutes(self, r, table):
        result = arcsin_large(10800000, r, table)
        assert result.j == 16
        assert result.s1 == 3600 * 3600
        assert result.kojya_m == 6043393
        assert result.p == 166274
        assert result.branch == Branch.ADD
        assert result.s == 13126274
        assert format_sexagesimal(result.s) == "3646'11''14'''"
        assert abs(oracle_jya_thirds(result.s, r) - 10800001) <= 1

    def test_subtract_branch(self, r, table):
        result = arcsin_large(11050000, r, table)
        assert result.j == 17
        assert result.branch == Branch.SUBTRACT
        assert result.p < 0
        assert result.s == result.s1 + result.p
        assert abs(oracle_jya_thirds(result.s, r) - 11050000) <= 60

    def test_exact_entry(self, r, table):
        result = arcsin_large(table.jya(16), r, table)
        assert result.branch == Branch.EXACT
        assert result.p == 0
        assert result.s == table.arc(16)

    def test_radius(self, r, table):
        assert arcsin_large(r.thirds, r, table).s == 5400 * 3600

    def test_near_radius(self, r, table):
        bound = max_error_bound(r)
        for m in range(r.thirds * 990 // 1000, r.thirds * 999 // 1000, 1237):
            assert abs(arcsin_large(m, r, table).s - oracle_arcsin_thirds(m, r)) <= bound + 10

    def test_below_first_entry(self, r, table):
        with pytest.raises(SmallArcAdvisedError):
            arcsin_large(table.jya(1) - 1, r, table)

    def test_above_radius(self, r, table):
        with pytest.raises(ArcDomainError):
            arcsin_large(r.thirds + 1, r, table)

    def test_builds_table_when_missing(self, r):
        assert arcsin_large(10800000, r).s == 13126274

    def test_within_bound_of_true_arc(self, r, table):
        bound = max_error_bound(r)
        rng = random.Random(31)
        for _ in range(200):
            m = rng.randint(table.jya(1), r.thirds * 999 // 1000)
            result = arcsin_large(m, r, table)
            assert abs(result.s - oracle_arcsin_thirds(m, r)) <= bound + 10


class TestErrorBound:
    def test_standard_step(self, r):
        assert max_error_bound(r) == 289

    def test_grows_with_step(self, r):
        assert max_error_bound(r, 405000) < max_error_bound(r)

    def test_oracle_arcsin_domain(self, r):
        assert abs(oracle_arcsin_thirds(r.thirds, r) - 5400 * 3600) <= 1
        with pytest.raises(ArcDomainError):
            oracle_arcsin_thirds(-1, r)
