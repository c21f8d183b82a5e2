from fractions import Fraction

from mpmath import mp

from services.trig_oracle_service import (
    arc_minutes_oracle,
    jya_oracle,
    kojya_oracle,
    resolve_digits,
    sin_degrees,
    to_fraction,
    to_mpf,
)


def test_resolve_digits(monkeypatch):
    assert resolve_digits(None) == 30
    assert resolve_digits(50) == 50
    monkeypatch.setenv("ORACLE_DIGITS", "45")
    assert resolve_digits(None) == 45


def test_fraction_round_trip_is_exact():
    with mp.workdps(30):
        value = mp.mpf(1) / 3
        assert to_mpf(to_fraction(value)) == value
    assert to_fraction(mp.mpf("0.5")) == Fraction(1, 2)


def test_fraction_parts_are_python_ints():
    with mp.workdps(30):
        value = to_fraction(mp.sqrt(2) * 10 ** 6)
    assert type(value.numerator) is int
    assert type(value.denominator) is int


def test_sines():
    with mp.workdps(30):
        assert abs(sin_degrees(30) - mp.mpf(1) / 2) < mp.mpf(10) ** -28
        assert abs(jya_oracle(5400, 3438) - 3438) < mp.mpf(10) ** -25
        assert abs(kojya_oracle(5400, 3438)) < mp.mpf(10) ** -25


def test_arc_minutes_inverts_jya():
    with mp.workdps(30):
        jya = jya_oracle(Fraction(3000), Fraction(12375888, 3600))
        arc = arc_minutes_oracle(jya, Fraction(12375888, 3600))
        assert abs(arc - 3000) < mp.mpf(10) ** -20
