from fractions import Fraction

import pytest
from hypothesis import given, strategies as st_

from heckext.constructions import principal_series
from heckext.linalg import format_scalar, parse_scalar
from heckext.textfmt import (ParseError, datum_from_text, datum_to_text, format_rows,
                             module_from_text, module_to_text, parse_rows, parse_sections)

from helpers import BATTERY_KEYS, battery, datum

fractions = st_.fractions(min_value=-10**6, max_value=10**6, max_denominator=10**4)


@given(fractions)
def test_scalar_round_trip(x):
    assert parse_scalar(format_scalar(x)) == x


def test_scalar_format():
    assert format_scalar(Fraction(-3, 4)) == "-3/4"
    assert format_scalar(Fraction(6, 3)) == "2"
    with pytest.raises(ValueError):
        parse_scalar("0.5")


@given(st_.lists(st_.lists(fractions, min_size=3, max_size=3), min_size=1, max_size=4))
def test_rows_round_trip(rows):
    text = "[s]\nm = " + format_rows(rows) + "\n"
    (sec,) = parse_sections(text)
    assert parse_rows(sec.get("m"), len(rows), 3) == rows


@pytest.mark.parametrize("key", BATTERY_KEYS, ids=[f"{t}-{k}" for t, k in BATTERY_KEYS])
def test_datum_round_trip(key):
    d = datum(*key)
    text = datum_to_text(d)
    d2 = datum_from_text(text)
    assert d2.same_as(d)
    assert datum_to_text(d2) == text


@pytest.mark.parametrize("key", BATTERY_KEYS, ids=[f"{t}-{k}" for t, k in BATTERY_KEYS])
def test_module_round_trip_is_bit_exact(key):
    for X in battery(*key):
        text = module_to_text(X)
        Y = module_from_text(text)
        assert Y.same_matrices(X)
        assert module_to_text(Y) == text


@given(st_.lists(fractions, min_size=2, max_size=2))
def test_principal_series_round_trip(gamma):
    X = principal_series(datum("A2"), gamma)
    assert module_from_text(module_to_text(X)).same_matrices(X)


def test_short_datum_form():
    d = datum_from_text("[datum]\ntype = B2\nparameters = 1 2\n")
    assert d.same_as(datum("B2", (1, 2)))
    d = datum_from_text("[datum]\ntype = G2\n")
    assert d.weyl_group().order == 12


def test_comments_and_blank_lines():
    secs = parse_sections("# top\n\n[a]\n  x = 1  \n# mid\n[b.c]\ny=2\n")
    assert [s.name for s in secs] == ["a", "b.c"]
    assert secs[1].kind == "b" and secs[1].suffix == "c"
    assert secs[0].get("x").value == "1"


@pytest.mark.parametrize("text,line,col,msg", [
    ("[a]\nx = 1\nx = 2\n", 3, 1, "duplicate key"),
    ("[a]\n[a]\n", 2, 1, "duplicate section"),
    ("x = 1\n", 1, 1, "outside any section"),
    ("[a]\njunk\n", 2, 1, "key = value"),
    ("[a\n", 1, 3, "unterminated"),
    ("[a]\nm = 1 2; 3 q\n", 2, 12, "bad scalar"),
])
def test_parse_errors_carry_position(text, line, col, msg):
    with pytest.raises(ParseError, match=msg) as exc:
        secs = parse_sections(text)
        parse_rows(secs[0].get("m"))
    assert (exc.value.line, exc.value.col) == (line, col)


def test_cartan_mismatch_rejected():
    text = datum_to_text(datum("B2")).replace("cartan = 2 -2; -1 2", "cartan = 2 -1; -2 2")
    with pytest.raises(ParseError, match="does not match"):
        datum_from_text(text)


def test_unknown_datum_key_rejected():
    with pytest.raises(ParseError, match="unknown key"):
        datum_from_text("[datum]\ntype = A1\ncolour = red\n")


def test_unsupported_type_is_a_parse_error():
    with pytest.raises(ParseError):
        datum_from_text("[datum]\ntype = H3\n")


def test_module_shape_errors():
    text = module_to_text(battery("A1")[1]).replace("gen_V.0 = -1", "gen_V.0 = -1 0")
    with pytest.raises(ParseError, match="columns"):
        module_from_text(text)
