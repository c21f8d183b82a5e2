from fractions import Fraction
import random

import pytest

from services.errors import ArcDomainError, ComponentRangeError, NumericDomainError, SexagesimalParseError
from services.sexagesimal_service import (
    TRIJYA,
    ArcUnit,
    RadiusConstant,
    RoundingMode,
    components_from_thirds,
    default_radius,
    format_sexagesimal,
    icbrt_rational,
    isqrt_rational,
    minutes_to_thirds,
    parse_arc_text,
    parse_sexagesimal,
    radius_from_text,
    round_fraction,
    round_to_thirds,
    thirds_from_components,
    thirds_to_minutes,
)


class TestComponents:
    def test_standard_radius(self):
        assert thirds_from_components(3437, 44, 48) == 12375888
        assert TRIJYA.thirds == 12375888

    def test_zero_and_whole_minutes(self):
        assert thirds_from_components(0, 0, 0) == 0
        assert thirds_from_components(225, 0, 0) == 810000

    def test_negative_sign(self):
        assert thirds_from_components(0, 0, 1, sign=-1) == -1

    @pytest.mark.parametrize("args", [(1, 60, 0), (1, 0, 60), (-1, 0, 0), (1, -1, 0)])
    def test_component_out_of_range(self, args):
        with pytest.raises(ComponentRangeError):
            thirds_from_components(*args)

    def test_bad_sign(self):
        with pytest.raises(ComponentRangeError):
            thirds_from_components(1, sign=0)

    def test_decompose(self):
        assert components_from_thirds(166274) == (1, 46, 11, 14)
        assert components_from_thirds(-1) == (-1, 0, 0, 1)
        assert components_from_thirds(1082890) == (1, 300, 48, 10)

    def test_decompose_recompose_identity(self):
        rng = random.Random(7)
        for _ in range(1000):
            value = rng.randint(-10 ** 12, 10 ** 12)
            sign, minutes, seconds, thirds = components_from_thirds(value)
            assert thirds_from_components(minutes, seconds, thirds, sign) == value

    def test_sum_matches_hand_carry(self):
        # 224'50''22''' + 0'9''38''' carries into 225'
        a = thirds_from_components(224, 50, 22)
        b = thirds_from_components(0, 9, 38)
        assert a + b == thirds_from_components(225, 0, 0)


class TestParseAndFormat:
    @pytest.mark.parametrize("text, expected", [
        ("3646'11''14'''", 13126274),
        ("0'0''0'''", 0),
        ("224'50''22'''", 809422),
        ("225'", 810000),
        ("225'5''", 810300),
        ("-0'0''1'''", -1),
        ("3646′11″14‴", 13126274),
    ])
    def test_parse(self, text, expected):
        assert parse_sexagesimal(text) == expected

    def test_format_canonical(self):
        assert format_sexagesimal(13126274) == "3646'11''14'''"
        assert format_sexagesimal(810000) == "225'00''00'''"
        assert format_sexagesimal(-1) == "-0'00''01'''"

    def test_format_unicode(self):
        assert format_sexagesimal(1082890, unicode=True) == "300′48″10‴"

    @pytest.mark.parametrize("text, position", [
        ("", 0),
        ("12", 2),
        ("12'60''", 3),
        ("12'5'''", 4),
        ("12'5''7", 7),
        ("12'5''7''' x", 10),
        ("12'123''", 3),
        ("x'", 0),
    ])
    def test_parse_errors_carry_position(self, text, position):
        with pytest.raises(SexagesimalParseError) as info:
            parse_sexagesimal(text)
        assert info.value.position == position
        assert f"position {position}" in str(info.value)

    def test_round_trip(self):
        rng = random.Random(11)
        for _ in range(1000):
            value = rng.randint(-10 ** 10, 10 ** 10)
            text = format_sexagesimal(value)
            assert parse_sexagesimal(text) == value
            assert format_sexagesimal(parse_sexagesimal(text)) == text


class TestRounding:
    def test_nearest(self):
        assert round_fraction(Fraction(5774, 10)) == 577
        assert round_fraction(Fraction(1, 2)) == 1
        assert round_fraction(Fraction(-1, 2)) == -1
        assert round_fraction(12375888) == 12375888

    def test_modes(self):
        value = Fraction(5, 2)
        assert round_fraction(value, RoundingMode.FLOOR) == 2
        assert round_fraction(value, RoundingMode.CEIL) == 3
        assert round_fraction(value, RoundingMode.HALF_EVEN) == 2
        assert round_fraction(value, RoundingMode.NEAREST) == 3

    def test_round_to_thirds_from_minutes(self):
        assert round_to_thirds(Fraction(5774, 36000)) == 577
        assert round_to_thirds(thirds_to_minutes(12375888)) == 12375888

    def test_within_half_a_third(self):
        rng = random.Random(3)
        for _ in range(500):
            minutes = Fraction(rng.randint(-10 ** 9, 10 ** 9), rng.randint(1, 10 ** 6))
            assert abs(round_to_thirds(minutes) - minutes * 3600) <= Fraction(1, 2)

    def test_minutes_to_thirds_requires_whole_thirds(self):
        assert minutes_to_thirds(Fraction(1, 60)) == 60
        with pytest.raises(ArcDomainError):
            minutes_to_thirds(Fraction(1, 7200))


class TestRoots:
    def test_kojya_radicand(self):
        root = isqrt_rational(36522603788544, precision_thirds=1, scale=1)
        assert round_fraction(root) == 6043393

    def test_perfect_square_and_zero(self):
        assert isqrt_rational(TRIJYA.squared, scale=1) == TRIJYA.thirds
        assert isqrt_rational(0) == 0

    def test_perfect_cube(self):
        assert icbrt_rational(27) == 3

    def test_negative_input(self):
        with pytest.raises(NumericDomainError):
            isqrt_rational(-1)
        with pytest.raises(NumericDomainError):
            icbrt_rational(Fraction(-1, 2))

    def test_lookup_cube_roots(self):
        r = TRIJYA.minutes
        first = icbrt_rational(r ** 2 / 10)
        assert abs(float(first) - 105.7265) < 0.001
        assert round_fraction(first * 60) == 105 * 60 + 44
        last = icbrt_rational(24 * r ** 2 / 10)
        assert round_fraction(last * 60) == 304 * 60 + 58

    def test_precision_certificate_and_monotonicity(self):
        rng = random.Random(5)
        values = sorted(Fraction(rng.randint(0, 10 ** 12), rng.randint(1, 10 ** 4)) for _ in range(1000))
        step = Fraction(1, 8 * 3600)
        previous_sqrt = previous_cbrt = Fraction(-1)
        for value in values:
            y = isqrt_rational(value)
            assert y * y <= value < (y + step) ** 2
            z = icbrt_rational(value)
            assert z ** 3 <= value < (z + step) ** 3
            assert y >= previous_sqrt and z >= previous_cbrt
            previous_sqrt, previous_cbrt = y, z


class TestArcText:
    def test_sexagesimal_wins_over_unit(self):
        assert parse_arc_text("225'", ArcUnit.DEGREES) == 225

    def test_decimal_in_units(self):
        assert parse_arc_text("3000") == 3000
        assert parse_arc_text("810000", ArcUnit.THIRDS) == 225
        assert parse_arc_text("0.5", ArcUnit.DEGREES) == 30

    def test_rejects_garbage(self):
        with pytest.raises(SexagesimalParseError):
            parse_arc_text("abc")


class TestRadius:
    def test_radius_from_text(self):
        assert radius_from_text("3437'44''48'''") == TRIJYA

    def test_radius_must_be_positive(self):
        with pytest.raises(ArcDomainError):
            RadiusConstant(0)

    def test_default_radius_from_environment(self, monkeypatch):
        assert default_radius() == TRIJYA
        monkeypatch.setenv("KERALA_RADIUS", "3438'")
        assert default_radius().thirds == 3438 * 3600
