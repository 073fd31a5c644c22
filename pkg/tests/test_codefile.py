"""Code file parsing, serialization, and round trips."""

import json

import pytest

from rankweights.codefile import (EXAMPLE_TEXT, example_code, parse,
                                  parse_text, serialize_json, serialize_text,
                                  to_json_obj)
from rankweights.errors import NotIrreducible, NotPrime, ParseError
from rankweights.gf import extension_field
from rankweights.sweep import Lcg, random_code


def test_example_text_parses_to_known_code():
    code = example_code()
    assert code.n == 4 and code.k == 2
    assert code.field.q == 2 and code.field.m == 3
    assert code.field.spec.l_poly == (1, 1, 0, 1)


def test_text_roundtrip_idempotent():
    lcg = Lcg(6)
    for q, s in ((2, 1), (3, 1)):
        F = extension_field(q, s, 3)
        for _ in range(8):
            code = random_code(lcg, F, 3, 2)
            text = serialize_text(code)
            again = parse_text(text)
            assert again == code
            assert serialize_text(again) == text


def test_tower_roundtrip_with_nested_coefficients():
    F = extension_field(2, 2, 2)  # K = GF(4)
    lcg = Lcg(12)
    code = random_code(lcg, F, 2, 1)
    text = serialize_text(code)
    assert "s 2" in text and "k_poly" in text and ":" in text
    assert parse_text(text) == code
    js = serialize_json(code)
    assert parse(js) == code


def test_json_roundtrip_and_determinism():
    code = example_code()
    js = serialize_json(code)
    assert parse(js) == code
    assert serialize_json(parse(js)) == js
    obj = json.loads(js)
    assert set(obj) == {"field", "n", "generators"}
    assert obj["field"]["l_poly"] == [1, 1, 0, 1]


def test_default_l_poly_filled_in():
    code = parse_text("p 2\nm 2\nn 2\ngen 1,0 0,1\n")
    assert code.field.spec.l_poly == (1, 1, 1)
    assert "l_poly 1 1 1" in serialize_text(code)


def test_parse_errors_carry_line_numbers():
    with pytest.raises(ParseError) as exc:
        parse_text("p 2\nm 3\nn 4\ngen 1,0,0 0,1,0\n")
    assert exc.value.line == 4  # wrong number of entries

    with pytest.raises(ParseError) as exc:
        parse_text("p 2\nm 2\nn 2\ngen 1,0 9,0\n")
    assert exc.value.line == 4 and exc.value.pos == 1  # digit out of range

    with pytest.raises(ParseError) as exc:
        parse_text("p 2\nm 2\nn 2\ngen 1 0\n")
    assert exc.value.line == 4  # entry with too few coefficients

    with pytest.raises(ParseError):
        parse_text("p 2\nn 2\ngen 1,0 0,1\n")  # missing m

    with pytest.raises(ParseError) as exc:
        parse_text("p 2\nm 2\nbogus 3\n")
    assert exc.value.line == 3

    with pytest.raises(ParseError):
        parse_text("p 2\nm 2\nn 0\n")


def test_field_errors_propagate():
    with pytest.raises(NotPrime):
        parse_text("p 4\nm 2\nn 2\ngen 1,0 0,1\n")
    with pytest.raises(NotIrreducible):
        parse_text("p 2\nm 2\nl_poly 1 0 1\nn 2\ngen 1,0 0,1\n")


def test_bad_json_rejected():
    with pytest.raises(ParseError):
        parse("{not valid json")
    with pytest.raises(ParseError):
        parse('{"field": {"p": 2, "m": 2}, "n": 2, "generators": [[1, 2]]}')
    with pytest.raises(ParseError):
        parse('{"n": 2, "generators": []}')


def test_comments_and_blank_lines_ignored():
    text = "# header\n\np 2  # prime\nm 2\nn 2\n# generators\ngen 1,0 0,1\n"
    code = parse_text(text)
    assert code.k == 1


def test_serialization_canonicalizes_generators():
    # two generator sets spanning the same code serialize identically
    F = extension_field(2, 1, 2)
    a = parse_text("p 2\nm 2\nn 2\ngen 1,0 0,1\ngen 0,1 0,1\n")
    b = parse_text("p 2\nm 2\nn 2\ngen 0,1 0,1\ngen 1,1 0,0\n")
    assert a == b
    assert serialize_text(a) == serialize_text(b)
