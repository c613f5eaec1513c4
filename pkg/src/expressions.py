"""
Algebra expressions such as "st(3,R) x abelian(2)" or "derived(st(4,R))".

    expr := term ('x' term)*
    term := atom | 'derived(' expr ')'
    atom := name '(' int (',' field)? ')'
"""

import re
from dataclasses import dataclass

from errors import ArityError, ExpressionSyntaxError, UnknownName

TOKEN_RE = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<punct>[(),]))")

FIELDS = ("R", "C")

# name -> (whether a field argument follows the integer, allowed fields)
ATOM_SIGNATURES = {
    "st": (True, ("R", "C")),
    "nt": (True, ("R",)),
    "sl": (True, ("R", "C")),
    "abelian": (False, ()),
    "strn": (False, ()),
}


@dataclass(frozen=True)
class Atom:
    name: str
    size: int
    field: str | None = None


@dataclass(frozen=True)
class Product:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Derived:
    child: "Expr"


Expr = Atom | Product | Derived


def to_text(expr: Expr) -> str:
    match expr:
        case Atom(name, size, None):
            return f"{name}({size})"
        case Atom(name, size, field):
            return f"{name}({size},{field})"
        case Product(left, right):
            return f"{to_text(left)} x {to_text(right)}"
        case Derived(child):
            return f"derived({to_text(child)})"
    raise TypeError(f"not an expression: {expr!r}")


def factors(expr: Expr) -> list[Expr]:
    """Leaves of the product tree, left to right."""
    if isinstance(expr, Product):
        return factors(expr.left) + factors(expr.right)
    return [expr]


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = []
        position = 0
        while position < len(text):
            if text[position:].strip() == "":
                break
            match = TOKEN_RE.match(text, position)
            if not match or match.end() == position:
                offset = position + len(text[position:]) - len(text[position:].lstrip())
                raise ExpressionSyntaxError(
                    self._byte_offset(offset), ["name", "integer", "(", ")", ","], text
                )
            kind = match.lastgroup
            start = match.start(kind)
            self.tokens.append((kind, match.group(kind), start))
            position = match.end()
        self.index = 0

    def _byte_offset(self, char_offset: int) -> int:
        return len(self.text[:char_offset].encode("utf-8"))

    def _error(self, expected: list[str]):
        if self.index < len(self.tokens):
            offset = self.tokens[self.index][2]
        else:
            offset = len(self.text)
        raise ExpressionSyntaxError(self._byte_offset(offset), expected, self.text)

    def peek(self):
        return self.tokens[self.index] if self.index < len(self.tokens) else None

    def accept(self, kind: str, value: str | None = None):
        token = self.peek()
        if token and token[0] == kind and (value is None or token[1] == value):
            self.index += 1
            return token
        return None

    def expect(self, kind: str, value: str | None = None, label: str | None = None):
        token = self.accept(kind, value)
        if token is None:
            self._error([label or value or kind])
        return token

    def parse(self) -> Expr:
        expr = self.expr()
        if self.peek() is not None:
            self._error(["x", "end of input"])
        return expr

    def expr(self) -> Expr:
        expr = self.term()
        while self.accept("name", "x"):
            expr = Product(expr, self.term())
        return expr

    def term(self) -> Expr:
        token = self.peek()
        if token is None or token[0] != "name" or token[1] == "x":
            self._error(["name", "derived("])
        name, offset = token[1], token[2]
        self.index += 1
        if name == "derived":
            self.expect("punct", "(")
            child = self.expr()
            self.expect("punct", ")")
            return Derived(child)
        if name not in ATOM_SIGNATURES:
            raise UnknownName(
                f"unknown algebra name {name!r} at offset {self._byte_offset(offset)}; "
                f"known: {', '.join(sorted(ATOM_SIGNATURES))}, derived"
            )
        return self.atom(name, offset)

    def atom(self, name: str, offset: int) -> Atom:
        takes_field, fields = ATOM_SIGNATURES[name]
        self.expect("punct", "(")
        size = int(self.expect("int", label="integer")[1])
        field = None
        if self.accept("punct", ","):
            token = self.expect("name", label="field")
            field = token[1]
        elif not self.peek() or self.peek()[1] != ")":
            self._error([",", ")"] if takes_field else [")"])
        self.expect("punct", ")")

        if takes_field and field is None:
            raise ArityError(f"{name} at offset {offset} takes a size and a field, e.g. {name}({size},R)")
        if not takes_field and field is not None:
            raise ArityError(f"{name} at offset {offset} takes a single size argument")
        if field is not None and field not in fields:
            raise UnknownName(f"field {field!r} is not available for {name}; use {', '.join(fields)}")
        return Atom(name, size, field)


def parse_expression(text: str) -> Expr:
    return _Parser(text).parse()
