from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from topocircuit.dtm import Circuit, receptor, transmitter
from topocircuit.multigraph import Branch, BranchKind
from topocircuit.netlist import NetlistError, format_netlist, format_value, parse, parse_value

DIVIDER = "R1 1 2 1k\nR2 2 0 1000\nVIN 1 0\nOUT 2 0"


def error_of(text):
    with pytest.raises(NetlistError) as info:
        parse(text)
    return info.value


class TestParse:
    def test_divider(self):
        c = parse(DIVIDER)
        r1, r2 = c.component_branches
        assert (r1.nature_name, r1.first_node, r1.second_node, r1.value) == ("R1", 1, 2, Fraction(1000))
        assert (r1.category_name, r2.category_name) == ("Z1", "Z2")
        assert r1.kind is BranchKind.RESISTOR
        assert c.transmitter == transmitter(1, 0)
        assert c.receptor == receptor(2, 0)

    def test_looped_capacitor(self):
        c = parse("C1 2 2 1u\nR1 1 2 1\nVIN 1 0\nOUT 2 0")
        cap = c.component_branches[0]
        assert cap.is_loop and cap.first_node == 2 and cap.value == Fraction(1, 10**6)
        assert cap.category_name == "Y1"

    def test_categories_in_file_order(self):
        c = parse("L1 1 2 1m\nC1 2 0 1n\nR1 2 0 1\nC2 1 0 2n\nVIN 1 0\nOUT 2 0")
        assert [b.category_name for b in c.component_branches] == ["Z1", "Y1", "Z2", "Y2"]

    def test_comments_blank_lines_crlf_case(self):
        text = "# header\r\n\r\nr1 1 2 1k  # series\r\nR2 2 0 1k\r\nvin 1 0\r\nOut 2 0\r\n"
        c = parse(text)
        assert [b.nature_name for b in c.component_branches] == ["R1", "R2"]

    def test_bytes(self):
        assert parse(DIVIDER.encode()) == parse(DIVIDER)

    @pytest.mark.parametrize("text", ["1k", "1000", "1e3", "1.0e+3", "0.001M", "1000000m", ".001e6"])
    def test_si_equivalence(self, text):
        assert parse_value(text) == 1000

    @pytest.mark.parametrize("text,value", [
        ("1u", Fraction(1, 10**6)), ("4.7n", Fraction(47, 10**10)), ("2p", Fraction(2, 10**12)),
        ("3G", 3 * 10**9), ("1e-6", Fraction(1, 10**6)),
    ])
    def test_values(self, text, value):
        assert parse_value(text) == value


class TestErrors:
    def test_negative_value(self):
        e = error_of("R1 1 2 -5")
        assert str(e).startswith("line 1: value must be positive")
        assert (e.line, e.column) == (1, 8)

    def test_zero_value(self):
        assert error_of("R1 1 2 0\nVIN 1 0\nOUT 2 0").message == "value must be positive"

    def test_unknown_letter(self):
        e = error_of("VIN 1 0\nQ1 1 2 3")
        assert (e.line, e.column) == (2, 1) and "unknown element" in e.message

    def test_bad_name(self):
        assert "followed by digits" in error_of("Rx 1 2 3").message

    def test_malformed_value(self):
        e = error_of("R1 1 2 1kk")
        assert "malformed value" in e.message and e.column == 8

    def test_huge_exponent(self):
        assert "out of range" in error_of("R1 1 2 1e999999999").message

    def test_bad_node(self):
        e = error_of("R1 1 -2 5")
        assert e.column == 6

    def test_vin_same_nodes(self):
        e = error_of("R1 1 2 1\nVIN 3 3")
        assert (e.line, e.column) == (2, 7)

    def test_out_same_nodes(self):
        assert "must differ" in error_of("R1 1 2 1\nOUT 1 1").message

    def test_missing_vin(self):
        assert "missing VIN" in error_of("R1 1 2 1\nOUT 2 0").message

    def test_missing_out(self):
        assert "missing OUT" in error_of("R1 1 2 1\nVIN 2 0").message

    def test_duplicate_vin(self):
        e = error_of("VIN 1 0\nVIN 2 0\nOUT 1 0")
        assert e.line == 2 and "duplicate VIN" in e.message

    def test_duplicate_out(self):
        assert error_of("VIN 1 0\nOUT 1 0\nOUT 2 0").line == 3

    def test_duplicate_name_case_insensitive(self):
        e = error_of("R1 1 2 1\nr1 2 3 1\nVIN 1 0\nOUT 2 0")
        assert e.line == 2 and "duplicate component" in e.message

    def test_wrong_arity(self):
        assert error_of("R1 1 2").line == 1
        assert error_of("VIN 1 0 5").line == 1

    def test_invalid_utf8(self):
        e = error_of(b"R1 1 2 1\nR2 \xff 0 1")
        assert (e.line, e.column) == (2, 4)


class TestRoundTrip:
    def test_format_value(self):
        assert format_value(Fraction(1000)) == "1000"
        assert format_value(Fraction(47, 10**10)) == "47e-10"
        assert parse_value(format_value(Fraction(1, 8))) == Fraction(1, 8)
        with pytest.raises(ValueError):
            format_value(Fraction(1, 3))

    @st.composite
    def circuits(draw):
        n = draw(st.integers(0, 8))
        comps = []
        for i in range(n):
            letter = draw(st.sampled_from("RLC"))
            kind = {"R": BranchKind.RESISTOR, "L": BranchKind.INDUCTOR, "C": BranchKind.CAPACITOR}[letter]
            value = Fraction(draw(st.integers(1, 10**6)), 10 ** draw(st.integers(0, 15)))
            comps.append((f"{letter}{i + 1}", draw(st.integers(0, 6)), draw(st.integers(0, 6)), kind, value))
        zi = yi = 0
        branches = []
        for name, a, b, kind, value in comps:
            if kind is BranchKind.CAPACITOR:
                yi += 1
                cat = f"Y{yi}"
            else:
                zi += 1
                cat = f"Z{zi}"
            branches.append(Branch(a, b, name, cat, kind, value))
        g = draw(st.lists(st.integers(0, 6), min_size=2, max_size=2, unique=True))
        h = draw(st.lists(st.integers(0, 6), min_size=2, max_size=2, unique=True))
        return Circuit(tuple(branches), transmitter(*g), receptor(*h))

    @given(circuits())
    def test_round_trip(self, c):
        assert parse(format_netlist(c)) == c

    def test_fixture_round_trip(self):
        c = parse(DIVIDER)
        assert parse(format_netlist(c)) == c


class TestTotality:
    @settings(max_examples=500)
    @given(st.binary(max_size=200))
    def test_bytes(self, data):
        try:
            parse(data)
        except NetlistError as e:
            assert e.line >= 1 and e.column >= 1

    @settings(max_examples=500)
    @given(st.text(alphabet=st.sampled_from(list("RLCVINOUTvinout0123456789 .e-+kMunp#\n\r\t")), max_size=120))
    def test_grammar_like_text(self, text):
        try:
            parse(text)
        except NetlistError as e:
            assert e.line >= 1 and e.column >= 1
