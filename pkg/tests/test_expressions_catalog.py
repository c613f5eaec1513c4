import random

import pytest

from catalog import STANDARD_EXPRESSIONS, build, build_text, catalog_listing, strn_expansion
from errors import ArityError, ExpressionSyntaxError, UnknownName, UnsupportedParameters
from expressions import Atom, Derived, Product, factors, parse_expression, to_text
from liecore import center, validate_structure


def test_parse_atoms_and_products():
    assert parse_expression("st(3,R)") == Atom("st", 3, "R")
    assert parse_expression(" abelian( 2 ) ") == Atom("abelian", 2)
    expr = parse_expression("st(2,R) x nt(3,R) x abelian(1)")
    assert expr == Product(Product(Atom("st", 2, "R"), Atom("nt", 3, "R")), Atom("abelian", 1))
    assert [to_text(f) for f in factors(expr)] == ["st(2,R)", "nt(3,R)", "abelian(1)"]


def test_parse_derived():
    expr = parse_expression("derived(st(4,R) x sl(2,R))")
    assert expr == Derived(Product(Atom("st", 4, "R"), Atom("sl", 2, "R")))
    assert to_text(expr) == "derived(st(4,R) x sl(2,R))"
    assert factors(expr) == [expr]


@pytest.mark.parametrize(
    "text, offset",
    [
        ("st(3 R)", 5),
        ("st(3,R) x", 9),
        ("st(3,R) y abelian(1)", 8),
        ("derived st(3,R)", 8),
        ("st(3,R)$", 7),
        ("", 0),
        ("(st(3,R))", 0),
    ],
)
def test_syntax_errors_report_offsets(text, offset):
    with pytest.raises(ExpressionSyntaxError) as info:
        parse_expression(text)
    assert info.value.offset == offset
    assert f"offset {offset}" in str(info.value)


def test_syntax_error_lists_expected_tokens():
    with pytest.raises(ExpressionSyntaxError) as info:
        parse_expression("st(3 R)")
    assert info.value.expected == [")", ","]


@pytest.mark.parametrize("text", ["st(3)", "nt(4)", "abelian(2,R)", "strn(2,R)"])
def test_arity_errors(text):
    with pytest.raises(ArityError):
        parse_expression(text)


@pytest.mark.parametrize("text", ["foo(3)", "nt(3,C)", "st(3,Q)", "heisenberg(3)"])
def test_unknown_names(text):
    with pytest.raises(UnknownName):
        parse_expression(text)


@pytest.mark.parametrize("text", ["sl(1,R)", "nt(1,R)", "st(0,R)", "abelian(0)", "st(11,R)"])
def test_unsupported_parameters(text):
    with pytest.raises(UnsupportedParameters):
        build_text(text)


def _random_expression(rng: random.Random, depth: int = 0):
    roll = rng.random()
    if depth < 2 and roll < 0.25:
        return Product(_random_expression(rng, depth + 1), _random_expression(rng, depth + 1))
    if depth < 2 and roll < 0.35:
        return Derived(_random_expression(rng, depth + 1))
    name = rng.choice(["st", "nt", "sl", "abelian", "strn"])
    if name in ("abelian", "strn"):
        return Atom(name, rng.randint(1, 9))
    return Atom(name, rng.randint(2, 9), "R" if name == "nt" else rng.choice(["R", "C"]))


def test_printed_expressions_parse_back():
    rng = random.Random(3)
    for _ in range(200):
        expr = _random_expression(rng)
        text = to_text(expr)
        assert to_text(parse_expression(text)) == text
        assert to_text(parse_expression(text.replace(",", " , ").replace("(", " ( "))) == text


@pytest.mark.parametrize("m", [1, 2, 3, 4, 5, 6])
def test_dimension_formulas(m):
    assert build_text(f"st({m},R)").dim == m * (m + 1) // 2
    assert build_text(f"abelian({m})").dim == m
    assert build_text(f"strn({m})").dim == m * (m + 1) // 2 + 1
    if m >= 2:
        assert build_text(f"nt({m},R)").dim == m * (m - 1) // 2
        assert build_text(f"st({m},C)").dim == m * (m + 1)
    if 2 <= m <= 4:
        assert build_text(f"sl({m},R)").dim == m * m - 1
        assert build_text(f"sl({m},C)").dim == 2 * (m * m - 1)


def test_strn_is_an_alias():
    assert strn_expansion(2) == parse_expression("derived(st(3,R)) x abelian(1)")
    L = build_text("strn(2)")
    assert L.dim == 4
    assert center(L).dim == 2
    assert L.constants == build_text("derived(st(3,R)) x abelian(1)").constants


def test_complex_atoms_are_realified():
    L = build_text("sl(2,C)")
    assert L.complex_dim == 3
    assert L.labels == ("h", "e", "f", "ih", "ie", "if")


def test_built_algebras_record_their_origin():
    assert build(parse_expression("st(2,R)  x  abelian(1)")).origin == "st(2,R) x abelian(1)"


@pytest.mark.parametrize("text", STANDARD_EXPRESSIONS)
def test_standard_expressions_build(text):
    L = build_text(text)
    assert validate_structure(L) is L


def test_catalog_listing():
    names = [entry["name"] for entry in catalog_listing()]
    assert names == ["st", "nt", "sl", "abelian", "strn", "derived"]
    assert all(entry["dimension"] and entry["description"] for entry in catalog_listing())
