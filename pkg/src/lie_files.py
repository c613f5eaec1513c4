"""
Reading and writing the `.lie` structure-constant format:

    lie-sc v1
    dim 3
    label 1 h
    1 2 2 2        # [e1, e2] = 2 e2

Constant lines are `i j k p/q` with 1 <= i < j <= n and 1 <= k <= n.
Unlisted brackets are zero.
"""

import logging
import math
import re
from fractions import Fraction

from errors import DuplicateTriple, FormatError, IndexOutOfRange
from exactla import format_rational
from liecore import LieAlgebra

logger = logging.getLogger(__name__)

HEADER = "lie-sc v1"
RATIONAL_RE = re.compile(r"^(-?\d+)(?:/(\d+))?$")


def _parse_rational(token: str, line: int) -> Fraction:
    match = RATIONAL_RE.match(token)
    if not match:
        raise FormatError(line, f"{token!r} is not a rational number p/q")
    numerator = int(match.group(1))
    denominator = int(match.group(2) or 1)
    if denominator == 0:
        raise FormatError(line, "zero denominator")
    if math.gcd(numerator, denominator) != 1 and numerator != 0:
        raise FormatError(line, f"{token} is not in lowest terms")
    return Fraction(numerator, denominator)


def _parse_index(token: str, line: int, n: int) -> int:
    if not token.isdigit():
        raise FormatError(line, f"{token!r} is not a basis index")
    index = int(token)
    if not 1 <= index <= n:
        raise IndexOutOfRange(line, f"index {index} outside 1..{n}")
    return index - 1


def _content_lines(text: str):
    for number, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0].strip()
        if content:
            yield number, content


def parse_lie_text(text: str) -> LieAlgebra:
    lines = _content_lines(text)
    first = next(lines, None)
    if first is None or first[1] != HEADER:
        raise FormatError(first[0] if first else 1, f"expected header {HEADER!r}")

    second = next(lines, None)
    if second is None:
        raise FormatError(first[0] + 1, "expected `dim n`")
    number, content = second
    parts = content.split()
    if len(parts) != 2 or parts[0] != "dim" or not parts[1].isdigit():
        raise FormatError(number, "expected `dim n`")
    n = int(parts[1])

    labels = [f"e{i + 1}" for i in range(n)]
    constants: dict[tuple[int, int, int], Fraction] = {}
    for number, content in lines:
        parts = content.split()
        if parts[0] == "label":
            if len(parts) != 3:
                raise FormatError(number, "expected `label i name`")
            labels[_parse_index(parts[1], number, n)] = parts[2]
            continue
        if len(parts) != 4:
            raise FormatError(number, "expected `i j k p/q`")
        i, j, k = (_parse_index(token, number, n) for token in parts[:3])
        if i >= j:
            raise IndexOutOfRange(number, f"need i < j, got {i + 1} {j + 1}")
        if (i, j, k) in constants:
            raise DuplicateTriple(number, f"bracket coefficient ({i + 1}, {j + 1}, {k + 1}) given twice")
        constants[(i, j, k)] = _parse_rational(parts[3], number)

    logger.debug(f"Parsed structure constants: dim {n}, {len(constants)} entries")
    return LieAlgebra(
        n,
        {key: value for key, value in constants.items() if value},
        labels=tuple(labels),
    )


def load_lie_file(path) -> LieAlgebra:
    with open(path, encoding="utf-8") as f:
        return parse_lie_text(f.read())


def format_lie_text(L: LieAlgebra) -> str:
    lines = [HEADER, f"dim {L.dim}"]
    for i, label in enumerate(L.labels):
        if label != f"e{i + 1}":
            lines.append(f"label {i + 1} {label}")
    if L.origin:
        lines.insert(1, f"# {L.origin}")
    for (i, j, k), c in sorted(L.constants.items()):
        lines.append(f"{i + 1} {j + 1} {k + 1} {format_rational(c)}")
    return "\n".join(lines) + "\n"


def save_lie_file(L: LieAlgebra, path):
    with open(path, "w", encoding="utf-8") as f:
        f.write(format_lie_text(L))
