import random
from fractions import Fraction
from itertools import product

import pytest

from catalog import build_text
from conftest import FIXTURES, algebra
from errors import JacobiViolation
from exactla import MatrixQ, Subspace, subspace_contains
from lie_files import load_lie_file
from liecore import (
    LieAlgebra,
    ad_matrix,
    basis_vector,
    bracket,
    bracket_span,
    center,
    centralizer,
    commutator_subalgebra,
    derivation_algebra,
    derived_series,
    direct_sum,
    is_derivation,
    is_ideal,
    is_semisimple,
    killing_determinant,
    killing_form,
    lower_central_series,
    normalizer,
    validate_structure,
)

VALIDATED = [
    *(f"st({m},R)" for m in range(1, 7)),
    *(f"nt({m},R)" for m in range(2, 7)),
    "sl(2,R)",
    "sl(3,R)",
    "sl(2,C)",
    "st(2,C)",
    "st(3,C)",
    "strn(3)",
    "derived(st(4,R))",
    "nt(3,R) x abelian(2)",
]


@pytest.mark.parametrize("text", VALIDATED)
def test_catalog_algebras_satisfy_jacobi(text):
    assert validate_structure(algebra(text)) is algebra(text)


@pytest.mark.parametrize(
    "name, triple",
    [
        ("corrupted_sl2.lie", (0, 1, 2)),
        ("corrupted_solvable.lie", (0, 1, 2)),
        ("corrupted_graded_heisenberg.lie", (0, 1, 3)),
    ],
)
def test_corrupted_constants_name_the_failing_triple(name, triple):
    L = load_lie_file(FIXTURES / name)
    with pytest.raises(JacobiViolation) as info:
        validate_structure(L)
    assert info.value.triple == triple
    i, j, k = triple
    assert f"(e{i + 1}, e{j + 1}, e{k + 1})" in str(info.value)


def test_corrupted_sl2_residual():
    with pytest.raises(JacobiViolation) as info:
        validate_structure(load_lie_file(FIXTURES / "corrupted_sl2.lie"))
    assert info.value.residual == [0, 2, 0]


def test_bracket_and_ad_matrix():
    sl2 = algebra("sl(2,R)")
    h, e, f = (basis_vector(3, i) for i in range(3))
    assert bracket(sl2, h, e) == (0, 2, 0)
    assert bracket(sl2, e, f) == (1, 0, 0)
    assert bracket(sl2, e, h) == (0, -2, 0)
    ad_h = ad_matrix(sl2, h)
    assert ad_h == MatrixQ.diagonal([0, 2, -2])


def _matrix_span(matrices: list[MatrixQ], size: int) -> Subspace:
    return Subspace.span([m.flatten() for m in matrices], size * size)


def _brute_force_derived_length(L: LieAlgebra) -> int:
    """Derived series computed on the matrix realization, independently of the constants."""
    size = L.matrix_rep[0].rows
    current = list(L.matrix_rep)
    length = 0
    while _matrix_span(current, size).dim:
        span = _matrix_span([a.commutator(b) for a, b in product(current, repeat=2)], size)
        current = [MatrixQ.from_flat(v, size, size) for v in span.vectors()]
        length += 1
    return length


@pytest.mark.parametrize("m, length", [(1, 1), (2, 2), (3, 3), (4, 3), (5, 4), (6, 4)])
def test_derived_length_of_triangular_algebras(m, length):
    L = algebra(f"st({m},R)")
    series = derived_series(L)
    assert series.terminates
    assert series.length == length
    assert _brute_force_derived_length(L) == length


@pytest.mark.parametrize("m", [3, 4, 5, 6])
def test_nilpotency_class_of_niltriangular_algebras(m):
    series = lower_central_series(algebra(f"nt({m},R)"))
    assert series.length == m - 1
    assert series.dims[-1] == 0


@pytest.mark.parametrize("n", [2, 3, 4])
def test_strn_has_two_dimensional_center(n):
    L = algebra(f"strn({n})")
    assert L.dim == n * (n + 1) // 2 + 1
    assert center(L).dim == 2
    assert lower_central_series(L).length == n


def test_sl2_is_not_solvable():
    assert not derived_series(algebra("sl(2,R)")).terminates
    assert derived_series(algebra("sl(2,R)")).length is None


def test_killing_form_of_sl2():
    sl2 = algebra("sl(2,R)")
    form = killing_form(sl2)
    assert form.row(0) == (8, 0, 0)
    assert form.row(1) == (0, 0, 4)
    assert killing_determinant(sl2) == -128
    assert killing_determinant(algebra("st(3,R)")) == 0


def test_center_and_ideals():
    heisenberg = load_lie_file(FIXTURES / "heisenberg.lie")
    z = center(heisenberg)
    assert z.vectors() == [(0, 0, 1)]
    assert is_ideal(heisenberg, z)
    assert not is_ideal(heisenberg, Subspace.span([(1, 0, 0)], 3))


@pytest.mark.parametrize(
    "text, expected",
    [("nt(3,R)", 6), ("abelian(2)", 4), ("sl(2,R)", 3), ("st(2,R)", 4)],
)
def test_derivation_algebra_dimension(text, expected):
    L = algebra(text)
    derivations = derivation_algebra(L)
    assert derivations.dim == expected
    for flat in derivations.vectors():
        assert is_derivation(L, MatrixQ.from_flat(flat, L.dim, L.dim))


def test_inner_derivations_are_derivations():
    L = algebra("st(3,R)")
    for i in range(L.dim):
        assert is_derivation(L, ad_matrix(L, basis_vector(L.dim, i)))


@pytest.mark.parametrize(
    "left, right",
    [("st(3,R)", "nt(3,R)"), ("st(2,R)", "abelian(2)"), ("nt(4,R)", "st(4,R)")],
)
def test_direct_sum_dimensions_and_derived_length(left, right):
    a, b = algebra(left), algebra(right)
    total = direct_sum(a, b)
    assert total.dim == a.dim + b.dim
    assert derived_series(total).length == max(derived_series(a).length, derived_series(b).length)
    assert validate_structure(total) is total


def test_commutator_subalgebra_of_st3_is_nt3():
    derived = commutator_subalgebra(algebra("st(3,R)"))
    assert derived.dim == 3
    assert lower_central_series(derived).length == 2
    assert validate_structure(derived) is derived


def test_from_brackets_folds_reversed_pairs():
    L = LieAlgebra.from_brackets(2, [(1, 0, 1, Fraction(-1))])
    assert L.constants == {(0, 1, 1): 1}
    assert build_text("st(2,R)").constants == {(0, 1, 1): 1, (1, 2, 1): 1}


def test_bracket_span_of_heisenberg():
    heisenberg = load_lie_file(FIXTURES / "heisenberg.lie")
    full = Subspace.full(3)
    assert bracket_span(heisenberg, full, full).vectors() == [(0, 0, 1)]
    assert bracket_span(heisenberg, full, center(heisenberg)).dim == 0


@pytest.mark.parametrize(
    "text, expected",
    [
        ("sl(2,R)", True),
        ("sl(3,R)", True),
        ("sl(2,C)", True),
        ("sl(2,R) x sl(2,R)", True),
        ("st(3,R)", False),
        ("sl(2,R) x abelian(1)", False),
    ],
)
def test_is_semisimple(text, expected):
    assert is_semisimple(algebra(text)) is expected


def _term(series, j):
    return series.terms[min(j, len(series.terms) - 1)]


@pytest.mark.parametrize("text", VALIDATED)
def test_series_terms_are_ideals(text):
    L = algebra(text)
    for series in (derived_series(L), lower_central_series(L)):
        for term in series.terms:
            assert is_ideal(L, term)


@pytest.mark.parametrize("text", [text for text in VALIDATED if algebra(text).dim <= 15])
def test_derived_series_sits_inside_lower_central_series(text):
    L = algebra(text)
    derived, lower = derived_series(L), lower_central_series(L)
    assert subspace_contains(_term(derived, 1), _term(lower, 1))
    for j in range(max(len(derived.terms), len(lower.terms))):
        assert subspace_contains(_term(lower, j), _term(derived, j))


def _form(K, u, v):
    return sum(u[i] * K.entries[i][j] * v[j] for i in range(len(u)) for j in range(len(v)))


@pytest.mark.parametrize("text", VALIDATED)
def test_killing_form_is_symmetric_and_invariant(text):
    L = algebra(text)
    K = killing_form(L)
    assert K == K.transpose()
    rng = random.Random(text)
    for _ in range(5):
        x, y, z = (tuple(Fraction(rng.randint(-3, 3)) for _ in range(L.dim)) for _ in range(3))
        assert _form(K, bracket(L, x, y), z) == _form(K, x, bracket(L, y, z))


@pytest.mark.parametrize("text", VALIDATED)
def test_semisimple_algebras_are_centerless_and_not_solvable(text):
    L = algebra(text)
    if is_semisimple(L):
        assert center(L).dim == 0
        assert not derived_series(L).terminates


def test_centralizer_and_normalizer_in_sl2():
    sl2 = algebra("sl(2,R)")
    assert centralizer(sl2, (1, 0, 0)).vectors() == [(1, 0, 0)]
    borel = normalizer(sl2, Subspace.span([(0, 1, 0)], 3))
    assert borel.dim == 2
    assert subspace_contains(borel, Subspace.span([(1, 0, 0), (0, 1, 0)], 3))
    assert normalizer(sl2, Subspace.full(3)).dim == 3
