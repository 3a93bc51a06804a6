"""Tests for physical constants and frequency parsing"""

import math

import pytest

from atomech.constants import TWO_PI, parse_angular_frequency, rad_per_s, two_pi_hz


class TestParseAngularFrequency:
    """parse_angular_frequency"""

    def test_number_is_rad_per_s(self):
        """Plain numbers pass through unchanged"""
        assert parse_angular_frequency(1.5e6) == 1.5e6
        assert parse_angular_frequency(3) == 3.0

    def test_explicit_two_pi_prefix(self):
        """2pi*X with unit"""
        assert parse_angular_frequency("2pi*15 MHz") == pytest.approx(TWO_PI * 15e6)
        assert parse_angular_frequency("2π·1.1 GHz") == pytest.approx(TWO_PI * 1.1e9)

    def test_unit_without_prefix_means_two_pi(self):
        """'15 MHz' is a frequency, so it is read as 2pi*15 MHz"""
        assert parse_angular_frequency("15 MHz") == pytest.approx(TWO_PI * 15e6)

    def test_two_pi_without_unit(self):
        """'2pi*15e6' is 2pi*15e6 rad/s"""
        assert parse_angular_frequency("2pi*15e6") == pytest.approx(TWO_PI * 15e6)

    def test_bare_numeric_string(self):
        """A numeric string without prefix or unit is rad/s"""
        assert parse_angular_frequency("1e3") == 1e3

    @pytest.mark.parametrize("bad", ["fast", "2pi*", "15 furlongs"])
    def test_rejects_garbage(self, bad):
        """Unparseable strings raise ValueError"""
        with pytest.raises(ValueError):
            parse_angular_frequency(bad)


class TestConversions:
    """two_pi_hz / rad_per_s"""

    def test_inverse_pair(self):
        """The helpers undo each other"""
        assert two_pi_hz(rad_per_s(2.5e6)) == pytest.approx(2.5e6)
        assert rad_per_s(1.0) == pytest.approx(2 * math.pi)
