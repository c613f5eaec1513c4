"""
Builders for the named algebras and for whole expressions.

Matrix families use their standard matrix bases and carry that realization;
triangular families also carry the grading by distance from the diagonal.
Complex atoms are realified with basis b_1..b_N, i*b_1..i*b_N.
"""

import logging
from fractions import Fraction
from itertools import combinations
from typing import Callable

from errors import UnsupportedParameters
from exactla import ONE, ZERO, MatrixQ
from expressions import Atom, Derived, Expr, Product, parse_expression, to_text
from liecore import LieAlgebra, commutator_subalgebra, direct_sum, validate_structure

logger = logging.getLogger(__name__)

MAX_MATRIX_SIZE = 10

# name -> (form, real dimension formula, description)
ATOMS = {
    "st": ("st(m,R) | st(m,C)", "m(m+1)/2, doubled over C", "upper triangular m x m matrices"),
    "nt": ("nt(m,R)", "m(m-1)/2", "strictly upper triangular m x m matrices"),
    "sl": ("sl(m,R) | sl(m,C)", "m^2-1, doubled over C", "traceless m x m matrices"),
    "abelian": ("abelian(m)", "m", "the vector group R^m"),
    "strn": ("strn(n)", "n(n+1)/2 + 1", "alias for derived(st(n+1,R)) x abelian(1)"),
    "derived": ("derived(expr)", "dimension of the commutator ideal", "commutator subalgebra"),
}

# expressions exercised by the test grid and listed by `catalog list`
STANDARD_EXPRESSIONS = [
    "abelian(1)",
    "abelian(2)",
    "abelian(3)",
    "abelian(4)",
    "st(1,R)",
    "st(2,R)",
    "st(3,R)",
    "st(4,R)",
    "st(5,R)",
    "nt(2,R)",
    "nt(3,R)",
    "nt(4,R)",
    "nt(5,R)",
    "sl(2,R)",
    "sl(3,R)",
    "sl(2,C)",
    "st(2,C)",
    "st(3,C)",
    "strn(1)",
    "strn(2)",
    "strn(3)",
    "derived(st(3,R))",
    "derived(st(4,R))",
    "nt(3,R) x nt(3,R)",
    "st(2,R) x st(2,R)",
    "st(3,R) x st(3,R)",
    "st(4,R) x st(4,R)",
    "st(2,R) x abelian(1)",
    "st(3,R) x abelian(1)",
    "nt(3,R) x abelian(2)",
    "sl(2,R) x abelian(1)",
    "sl(2,R) x st(2,R)",
    "sl(2,R) x sl(2,R)",
    "sl(2,R) x st(2,R) x abelian(1)",
    "sl(2,R) x nt(3,R)",
    "st(2,R) x nt(3,R)",
    "abelian(2) x st(3,R)",
    "nt(4,R) x abelian(1)",
]


def _unit(m: int, i: int, j: int) -> MatrixQ:
    return MatrixQ(
        m,
        m,
        tuple(tuple(ONE if (r, c) == (i, j) else ZERO for c in range(m)) for r in range(m)),
    )


def _label(prefix: str, m: int, i: int, j: int) -> str:
    if m < 10:
        return f"{prefix}{i + 1}{j + 1}"
    return f"{prefix}{i + 1}_{j + 1}"


def _from_matrices(
    matrices: list[MatrixQ],
    coordinates: Callable[[MatrixQ], list[Fraction]],
    labels: list[str],
    grading: list[Fraction] | None,
) -> LieAlgebra:
    entries = []
    for a, b in combinations(range(len(matrices)), 2):
        coords = coordinates(matrices[a].commutator(matrices[b]))
        entries.extend((a, b, k, c) for k, c in enumerate(coords) if c)
    return LieAlgebra.from_brackets(
        len(matrices),
        entries,
        labels=tuple(labels),
        matrix_rep=tuple(matrices),
        grading=tuple(grading) if grading is not None else None,
    )


def _triangular(m: int, strict: bool) -> LieAlgebra:
    positions = [(i, j) for i in range(m) for j in range(i + (1 if strict else 0), m)]
    return _from_matrices(
        [_unit(m, i, j) for i, j in positions],
        lambda M: [M.entries[i][j] for i, j in positions],
        [_label("e", m, i, j) for i, j in positions],
        [Fraction(j - i) for i, j in positions],
    )


def _special_linear(m: int) -> LieAlgebra:
    off_diagonal = [(i, j) for i in range(m) for j in range(m) if i != j]
    cartan = []
    for k in range(m - 1):
        cartan.append(_unit(m, k, k) - _unit(m, k + 1, k + 1))

    def coordinates(M: MatrixQ) -> list[Fraction]:
        running, diagonal = ZERO, []
        for k in range(m - 1):
            running += M.entries[k][k]
            diagonal.append(running)
        return diagonal + [M.entries[i][j] for i, j in off_diagonal]

    if m == 2:
        labels = ["h", "e", "f"]
        # order (h, e, f) with e = E12, f = E21
        return _from_matrices(
            cartan + [_unit(2, 0, 1), _unit(2, 1, 0)],
            lambda M: [M.entries[0][0], M.entries[0][1], M.entries[1][0]],
            labels,
            None,
        )
    labels = [f"h{k + 1}" for k in range(m - 1)] + [_label("e", m, i, j) for i, j in off_diagonal]
    return _from_matrices(
        cartan + [_unit(m, i, j) for i, j in off_diagonal], coordinates, labels, None
    )


def _abelian(m: int) -> LieAlgebra:
    # realized by E_{1,k+1} in (m+1) x (m+1) matrices, which contain no scalars
    return LieAlgebra(
        m,
        {},
        labels=tuple(f"a{k + 1}" for k in range(m)),
        matrix_rep=tuple(_unit(m + 1, 0, k + 1) for k in range(m)),
        grading=tuple(ONE for _ in range(m)),
    )


def _realify_matrix(M: MatrixQ, imaginary: bool) -> MatrixQ:
    """[[Re, -Im], [Im, Re]] for M or for i*M (M real)."""
    zero = (ZERO,) * M.cols
    if imaginary:
        top = [zero + tuple(-x for x in row) for row in M.entries]
        bottom = [row + zero for row in M.entries]
    else:
        top = [row + zero for row in M.entries]
        bottom = [zero + row for row in M.entries]
    return MatrixQ(2 * M.rows, 2 * M.cols, tuple(top + bottom))


def realify(L: LieAlgebra) -> LieAlgebra:
    """
    The complex algebra with the same (rational) structure constants, viewed
    as a real algebra of twice the dimension.
    """
    N = L.dim
    entries = []
    for (a, b, k), c in L.constants.items():
        entries.append((a, b, k, c))
        entries.append((a, b + N, k + N, c))
        entries.append((a + N, b, k + N, c))
        entries.append((a + N, b + N, k, -c))
    matrix_rep = None
    if L.matrix_rep is not None:
        matrix_rep = tuple(_realify_matrix(M, False) for M in L.matrix_rep) + tuple(
            _realify_matrix(M, True) for M in L.matrix_rep
        )
    grading = L.grading + L.grading if L.grading is not None else None
    return LieAlgebra.from_brackets(
        2 * N,
        entries,
        labels=L.labels + tuple(f"i{label}" for label in L.labels),
        matrix_rep=matrix_rep,
        grading=grading,
        complex_dim=N,
    )


def _check_size(atom: Atom, minimum: int):
    if atom.size < minimum:
        raise UnsupportedParameters(f"{to_text(atom)}: size must be at least {minimum}")
    if atom.size > MAX_MATRIX_SIZE:
        raise UnsupportedParameters(f"{to_text(atom)}: sizes above {MAX_MATRIX_SIZE} are not supported")


def _build_atom(atom: Atom) -> LieAlgebra:
    match atom.name:
        case "st":
            _check_size(atom, 1)
            L = _triangular(atom.size, strict=False)
        case "nt":
            _check_size(atom, 2)
            L = _triangular(atom.size, strict=True)
        case "sl":
            _check_size(atom, 2)
            L = _special_linear(atom.size)
        case "abelian":
            _check_size(atom, 1)
            L = _abelian(atom.size)
        case "strn":
            _check_size(atom, 1)
            return build(strn_expansion(atom.size))
        case _:
            raise UnsupportedParameters(f"no builder for {atom.name}")
    if atom.field == "C":
        L = realify(L)
    return L


def strn_expansion(n: int) -> Expr:
    return Product(Derived(Atom("st", n + 1, "R")), Atom("abelian", 1))


def _build(expr: Expr) -> LieAlgebra:
    match expr:
        case Atom():
            return _build_atom(expr)
        case Product(left, right):
            return direct_sum(_build(left), _build(right))
        case Derived(child):
            return commutator_subalgebra(_build(child))
    raise TypeError(f"not an expression: {expr!r}")


def build(expr: Expr) -> LieAlgebra:
    L = _build(expr)
    logger.debug(f"Built {to_text(expr)}: dimension {L.dim}")
    return L.with_origin(to_text(expr))


def build_text(text: str, validate: bool = True) -> LieAlgebra:
    L = build(parse_expression(text))
    return validate_structure(L) if validate else L


def catalog_listing() -> list[dict]:
    return [
        {"name": name, "form": form, "dimension": dimension, "description": description}
        for name, (form, dimension, description) in ATOMS.items()
    ]
